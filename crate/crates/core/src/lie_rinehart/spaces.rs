//! Centers and derivation spaces of bundles of Lie algebras (zero anchor),
//! computed slice by slice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::{extend_basis, slice_degrees, span_rank, FreeGrading, SparseVec};
use crate::lie_rinehart::algebra::{Element, LieRinehartAlgebra};
use crate::lie_rinehart::representation::PolyMatrix;

/// A `k`-basis of one weight slice of a graded subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece<T> {
    pub degree: i64,
    pub basis: Vec<T>,
}

/// Result of [`center`]. Over the ground field the slices are exhaustive;
/// over a polynomial ring they cover weights up to the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub exhaustive: bool,
    pub pieces: Vec<GradedPiece<Element>>,
}

impl Center {
    /// All computed basis elements, in slice order.
    pub fn generators(&self) -> Vec<Element> {
        self.pieces
            .iter()
            .flat_map(|p| p.basis.iter().cloned())
            .collect()
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces
            .iter()
            .map(|p| (p.degree, p.basis.len()))
            .collect()
    }
}

fn require_zero_anchor(alg: &LieRinehartAlgebra, what: &str) -> Result<()> {
    if !alg.has_zero_anchor() {
        return Err(Error::precondition(format!(
            "{what} is only defined here for algebras with zero anchor"
        )));
    }
    Ok(())
}

/// The center `{z : {z, e_i} = 0 for all i}` of a zero-anchor algebra.
pub fn center(alg: &LieRinehartAlgebra, cutoff: i64) -> Result<Center> {
    require_zero_anchor(alg, "the center")?;
    let ring = alg.ring();
    let r = alg.rank();
    let w = alg.weights()?;
    let source = FreeGrading::new(ring.nvars(), w.clone());
    // component (i, l) of the target holds the e_l coefficient of {z, e_i}
    let target = FreeGrading::new(
        ring.nvars(),
        (0..r)
            .flat_map(|i| {
                let w = &w;
                w.iter().map(move |wl| wl - w[i])
            })
            .collect(),
    );
    let mut pieces = Vec::new();
    for d in slice_degrees(&[&source], cutoff) {
        let (m, src, _) =
            crate::exact_algebra::slice_matrix(ring, &source, &target, d, |c, mono| {
                let mut z = alg.zero_element();
                z[c] = mono.clone();
                (0..r)
                    .flat_map(|i| alg.bracket(&z, &alg.basis_element(i)))
                    .collect()
            })?;
        let basis: Vec<Element> = m
            .kernel_basis()
            .iter()
            .map(|v| source.element(ring, &src, v))
            .collect();
        if !src.is_empty() {
            pieces.push(GradedPiece { degree: d, basis });
        }
    }
    Ok(Center {
        exhaustive: ring.nvars() == 0,
        pieces,
    })
}

/// One weight slice of `Der(L)`, `Inn(L)` and a complement `Out(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSlice {
    pub degree: i64,
    pub derivations: Vec<PolyMatrix>,
    pub inner: Vec<PolyMatrix>,
    pub outer: Vec<PolyMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationDims {
    pub degree: i64,
    pub der: usize,
    pub inner: usize,
    pub outer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpaces {
    pub exhaustive: bool,
    pub slices: Vec<DerivationSlice>,
}

impl DerivationSpaces {
    pub fn dims(&self) -> Vec<DerivationDims> {
        self.slices
            .iter()
            .map(|s| DerivationDims {
                degree: s.degree,
                der: s.derivations.len(),
                inner: s.inner.len(),
                outer: s.outer.len(),
            })
            .collect()
    }

    pub fn total(&self) -> DerivationDims {
        let mut t = DerivationDims {
            degree: 0,
            der: 0,
            inner: 0,
            outer: 0,
        };
        for s in &self.slices {
            t.der += s.derivations.len();
            t.inner += s.inner.len();
            t.outer += s.outer.len();
        }
        t
    }
}

/// `D(e_k) = sum_l D[l][k] e_l`, flattened as index `l * r + k`.
fn matrix_from_flat(r: usize, flat: &[crate::exact_algebra::Poly]) -> PolyMatrix {
    (0..r)
        .map(|l| (0..r).map(|k| flat[l * r + k].clone()).collect())
        .collect()
}

/// Applies an `A`-linear endomorphism to an element.
pub fn apply_matrix(
    alg: &LieRinehartAlgebra,
    d: &PolyMatrix,
    u: &[crate::exact_algebra::Poly],
) -> Element {
    let r = alg.rank();
    (0..r)
        .map(|l| {
            let mut acc = alg.ring().zero();
            for (k, uk) in u.iter().enumerate() {
                if !uk.is_zero() && !d[l][k].is_zero() {
                    acc = &acc + &(&d[l][k] * uk);
                }
            }
            acc
        })
        .collect()
}

/// The derivation defect `D{e_i, e_j} - {D e_i, e_j} - {e_i, D e_j}` on all
/// frame pairs `i < j`, concatenated.
pub fn derivation_defect(
    alg: &LieRinehartAlgebra,
    d: &PolyMatrix,
) -> Vec<crate::exact_algebra::Poly> {
    let r = alg.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let lhs = apply_matrix(alg, d, &alg.frame_bracket(i, j));
            let a = alg.bracket(
                &apply_matrix(alg, d, &alg.basis_element(i)),
                &alg.basis_element(j),
            );
            let b = alg.bracket(
                &alg.basis_element(i),
                &apply_matrix(alg, d, &alg.basis_element(j)),
            );
            out.extend((0..r).map(|l| &(&lhs[l] - &a[l]) - &b[l]));
        }
    }
    out
}

/// The matrix of `ad(z)`.
pub fn ad_matrix(alg: &LieRinehartAlgebra, z: &[crate::exact_algebra::Poly]) -> PolyMatrix {
    let r = alg.rank();
    let cols: Vec<Element> = (0..r)
        .map(|k| alg.bracket(z, &alg.basis_element(k)))
        .collect();
    (0..r)
        .map(|l| (0..r).map(|k| cols[k][l].clone()).collect())
        .collect()
}

/// `A`-linear derivations of the bracket, inner derivations and a
/// complement of the inner ones, per weight slice.
pub fn derivation_spaces(alg: &LieRinehartAlgebra, cutoff: i64) -> Result<DerivationSpaces> {
    require_zero_anchor(alg, "the derivation space")?;
    let ring = alg.ring();
    let field = ring.field();
    let r = alg.rank();
    let w = alg.weights()?;
    let unknowns = FreeGrading::new(
        ring.nvars(),
        (0..r)
            .flat_map(|l| {
                let w = &w;
                w.iter().map(move |wk| w[l] - wk)
            })
            .collect(),
    );
    let mut target_w = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            target_w.extend(w.iter().map(|wl| wl - w[i] - w[j]));
        }
    }
    let target = FreeGrading::new(ring.nvars(), target_w);
    let elements = FreeGrading::new(ring.nvars(), w.clone());
    let mut slices = Vec::new();
    for d in slice_degrees(&[&unknowns], cutoff) {
        let (m, src, _) =
            crate::exact_algebra::slice_matrix(ring, &unknowns, &target, d, |c, mono| {
                let mut flat = vec![ring.zero(); r * r];
                flat[c] = mono.clone();
                derivation_defect(alg, &matrix_from_flat(r, &flat))
            })?;
        if src.is_empty() {
            continue;
        }
        let der = m.kernel_basis();
        let lsl = elements.slice(d);
        let mut inner_vecs: Vec<SparseVec> = Vec::new();
        for (c, mono) in &lsl.labels {
            let mut z = alg.zero_element();
            z[*c] = crate::exact_algebra::Poly::monomial(field.one(), mono.clone());
            let ad = ad_matrix(alg, &z);
            let flat: Vec<_> = ad.into_iter().flatten().collect();
            inner_vecs.push(unknowns.coordinates(&src, &flat)?);
        }
        let inner_idx = extend_basis(field, src.len(), &[], &inner_vecs);
        let inner: Vec<SparseVec> = inner_idx.iter().map(|&i| inner_vecs[i].clone()).collect();
        let outer_idx = extend_basis(field, src.len(), &inner, &der);
        debug_assert_eq!(span_rank(field, src.len(), &der), der.len());
        let to_mat = |v: &SparseVec| matrix_from_flat(r, &unknowns.element(ring, &src, v));
        slices.push(DerivationSlice {
            degree: d,
            derivations: der.iter().map(to_mat).collect(),
            inner: inner.iter().map(to_mat).collect(),
            outer: outer_idx.iter().map(|&i| to_mat(&der[i])).collect(),
        });
    }
    Ok(DerivationSpaces {
        exhaustive: ring.nvars() == 0,
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Field};

    #[test]
    fn heisenberg_center_is_z() {
        let h = LieRinehartAlgebra::heisenberg(Field::Rational);
        let c = center(&h, 0).unwrap();
        let gens = c.generators();
        assert_eq!(gens.len(), 1);
        assert!(gens[0][0].is_zero() && gens[0][1].is_zero() && !gens[0][2].is_zero());
    }

    #[test]
    fn sl2_center_vanishes() {
        assert!(center(&LieRinehartAlgebra::sl2(Field::Rational), 0)
            .unwrap()
            .generators()
            .is_empty());
    }

    #[test]
    fn abelian_center_is_everything() {
        let ring = BaseRing::ground(Field::Rational);
        assert_eq!(
            center(&LieRinehartAlgebra::abelian(&ring, 2), 0)
                .unwrap()
                .generators()
                .len(),
            2
        );
    }

    #[test]
    fn derivation_dims() {
        let ring = BaseRing::ground(Field::Rational);
        let t = derivation_spaces(&LieRinehartAlgebra::abelian(&ring, 2), 0)
            .unwrap()
            .total();
        assert_eq!((t.der, t.inner, t.outer), (4, 0, 4));
        let t = derivation_spaces(&LieRinehartAlgebra::sl2(Field::Rational), 0)
            .unwrap()
            .total();
        assert_eq!((t.der, t.inner, t.outer), (3, 3, 0));
        let t = derivation_spaces(&LieRinehartAlgebra::heisenberg(Field::Rational), 0)
            .unwrap()
            .total();
        assert_eq!((t.der, t.inner, t.outer), (6, 2, 4));
    }

    #[test]
    fn nonzero_anchor_rejected() {
        let ring = BaseRing::with_vars(Field::Rational, &["t"]);
        let mut b = LieRinehartAlgebra::builder(&ring, vec!["e".into()]).unwrap();
        b.anchor(0, crate::exact_algebra::Derivation::partial(&ring, 0))
            .unwrap();
        assert!(center(&b.build(), 3).is_err());
    }

    #[test]
    fn polynomial_center_is_graded() {
        // abelian rank 1 over Q[x]: the center in weight d is spanned by x^d e
        let ring = BaseRing::with_vars(Field::Rational, &["x"]);
        let c = center(&LieRinehartAlgebra::abelian(&ring, 1), 3).unwrap();
        assert!(!c.exhaustive);
        assert_eq!(c.dims(), vec![(0, 1), (1, 1), (2, 1), (3, 1)]);
    }
}
