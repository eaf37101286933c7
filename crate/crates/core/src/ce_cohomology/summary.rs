//! Cohomology dimensions, representatives and the sharp truncation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ce_cohomology::complex::CochainComplex;
use crate::error::Result;
use crate::exact_algebra::{extend_basis, Echelon, ExactMatrix, FreeGrading, Poly, SparseVec};

/// One `(p, weight)` entry of a cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub p: usize,
    pub degree: i64,
    pub dim_cochains: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySummary {
    /// True over the ground field, where every weight slice was computed.
    pub exhaustive: bool,
    pub cutoff: i64,
    pub top: usize,
    pub rows: Vec<CohomologyRow>,
    /// Representative cocycles per `(p, degree)`, as cochain coefficients.
    pub representatives: BTreeMap<(usize, i64), Vec<Vec<Poly>>>,
}

impl CohomologySummary {
    /// `dim H^p` summed over the computed slices.
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.top + 1];
        for r in &self.rows {
            out[r.p] += r.dim_h;
        }
        out
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.rows.iter().map(|r| r.degree).collect();
        ds.dedup();
        ds
    }

    pub fn row(&self, p: usize, degree: i64) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.p == p && r.degree == degree)
    }

    /// `dim H^p` in one slice (0 when the slice was not computed).
    pub fn dim(&self, p: usize, degree: i64) -> usize {
        self.row(p, degree).map_or(0, |r| r.dim_h)
    }

    pub fn total_cochains(&self, p: usize) -> usize {
        self.rows
            .iter()
            .filter(|r| r.p == p)
            .map(|r| r.dim_cochains)
            .sum()
    }

    /// `sum (-1)^p dim C^p == sum (-1)^p dim H^p` in every slice.
    pub fn euler_characteristic_holds(&self) -> bool {
        self.degrees().into_iter().all(|d| {
            let mut chi_c = 0i64;
            let mut chi_h = 0i64;
            for r in self.rows.iter().filter(|r| r.degree == d) {
                let s = if r.p % 2 == 0 { 1 } else { -1 };
                chi_c += s * r.dim_cochains as i64;
                chi_h += s * r.dim_h as i64;
            }
            chi_c == chi_h
        })
    }

    /// A label for reports: exhaustive dims, or graded dims up to the cutoff.
    pub fn scope(&self) -> String {
        if self.exhaustive {
            "exact dimensions".to_string()
        } else {
            format!("graded dims up to cutoff {}", self.cutoff)
        }
    }
}

/// The differentials of one slice, `d_0 .. d_top`.
pub fn slice_differentials(c: &CochainComplex, degree: i64) -> Result<Vec<ExactMatrix>> {
    (0..=c.top()).map(|p| c.differential(p, degree)).collect()
}

/// A basis of the column space of `m` (as vectors in the target).
pub fn image_basis(m: &ExactMatrix) -> Echelon {
    Echelon::of_rows(m.field(), m.rows(), m.columns())
}

/// Cocycles independent modulo coboundaries, reduced against the coboundary
/// RREF and put in reduced echelon form.
pub fn representatives(dim: usize, kernel: &[SparseVec], image: &Echelon) -> Vec<SparseVec> {
    let field = image.field();
    let image_rows = image.rref();
    let chosen = extend_basis(field, dim, image_rows.rows(), kernel);
    let reduced: Vec<SparseVec> = chosen
        .iter()
        .map(|&i| image_rows.reduce(&kernel[i]))
        .collect();
    Echelon::of_rows(field, dim, reduced).rref().rows().to_vec()
}

/// `H^p(L; M)` slice by slice. With `witness`, representative cocycles are
/// included.
pub fn cohomology(c: &CochainComplex, cutoff: i64, witness: bool) -> Result<CohomologySummary> {
    let mut rows = Vec::new();
    let mut reps = BTreeMap::new();
    for d in c.degrees(cutoff) {
        let ds = slice_differentials(c, d)?;
        let ranks: Vec<usize> = ds.iter().map(ExactMatrix::rank).collect();
        let dims: Vec<usize> = ds.iter().map(ExactMatrix::cols).collect();
        if dims.iter().all(|&n| n == 0) {
            continue;
        }
        for p in 0..=c.top() {
            let dim_kernel = dims[p] - ranks[p];
            let dim_image = if p == 0 { 0 } else { ranks[p - 1] };
            let dim_h = dim_kernel - dim_image;
            rows.push(CohomologyRow {
                p,
                degree: d,
                dim_cochains: dims[p],
                dim_kernel,
                dim_image,
                dim_h,
            });
            if witness && dim_h > 0 {
                let kernel = ds[p].kernel_basis();
                let image = if p == 0 {
                    Echelon::of_rows(c.algebra().field(), dims[0], Vec::new())
                } else {
                    image_basis(&ds[p - 1])
                };
                let slice = c.slice(p, d);
                let vecs = representatives(dims[p], &kernel, &image);
                reps.insert(
                    (p, d),
                    vecs.iter().map(|v| c.cochain(p, &slice, v)).collect(),
                );
            }
        }
    }
    Ok(CohomologySummary {
        exhaustive: c.algebra().ring().nvars() == 0,
        cutoff,
        top: c.top(),
        rows,
        representatives: reps,
    })
}

/// `d_{p+1} d_p = 0` on every computed slice; returns the failing `(p, degree)`.
pub fn d_squared_failures(c: &CochainComplex, cutoff: i64) -> Result<Vec<(usize, i64)>> {
    let mut bad = Vec::new();
    for d in c.degrees(cutoff) {
        let ds = slice_differentials(c, d)?;
        for p in 0..c.top() {
            if !ds[p + 1].mul(&ds[p]).is_zero() {
                bad.push((p, d));
            }
        }
    }
    Ok(bad)
}

/// The invariant submodule `{m : rho(e_i) m = 0 for all i}` computed directly
/// as a kernel, per slice: `(degree, dimension)`.
pub fn invariants(c: &CochainComplex, cutoff: i64) -> Result<Vec<(i64, usize)>> {
    let alg = c.algebra();
    let rep = c.representation();
    let ring = alg.ring();
    let m = rep.rank();
    let source = c.space(0).grading.clone();
    // weights of the stacked target, copied from C^1 (generator (b, {i}))
    let target_w: Vec<i64> = (0..alg.rank())
        .flat_map(|i| (0..m).map(move |b| (i, b)))
        .map(|(i, b)| {
            c.space(1).grading.weights()[c.space(1).position(b, &[i]).expect("generator")]
        })
        .collect();
    let target = FreeGrading::new(ring.nvars(), target_w);
    let mut out = Vec::new();
    for d in c.degrees(cutoff) {
        let (mat, src, _) =
            crate::exact_algebra::slice_matrix(ring, &source, &target, d, |b, mono| {
                let mut v = vec![ring.zero(); m];
                v[b] = mono.clone();
                (0..alg.rank()).flat_map(|i| rep.act(alg, i, &v)).collect()
            })?;
        if !src.is_empty() {
            out.push((d, src.len() - mat.rank()));
        }
    }
    Ok(out)
}

/// Cohomology of the sharp truncation (degree 0 removed), with the two
/// identities relating it to the ordinary groups checked slice by slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSummary {
    pub truncated: CohomologySummary,
    pub ordinary: CohomologySummary,
    /// `dim H^1_(1) = dim C^0 - dim H^0 + dim H^1` in every slice.
    pub split_formula_holds: bool,
    /// `H^p_(1) = H^p` for `p >= 2` in every slice.
    pub agrees_above_one: bool,
}

impl TruncatedSummary {
    pub fn dims(&self) -> Vec<usize> {
        self.truncated.dims()
    }
}

pub fn truncated_cohomology(
    c: &CochainComplex,
    cutoff: i64,
    witness: bool,
) -> Result<TruncatedSummary> {
    let ordinary = cohomology(c, cutoff, false)?;
    let mut rows = Vec::new();
    let mut reps = BTreeMap::new();
    for d in c.degrees(cutoff) {
        let ds = slice_differentials(c, d)?;
        let dims: Vec<usize> = ds.iter().map(ExactMatrix::cols).collect();
        if dims.iter().all(|&n| n == 0) {
            continue;
        }
        rows.push(CohomologyRow {
            p: 0,
            degree: d,
            dim_cochains: 0,
            dim_kernel: 0,
            dim_image: 0,
            dim_h: 0,
        });
        for p in 1..=c.top() {
            let rank_out = ds[p].rank();
            let dim_kernel = dims[p] - rank_out;
            // no incoming map into degree 1
            let dim_image = if p == 1 { 0 } else { ds[p - 1].rank() };
            let dim_h = dim_kernel - dim_image;
            rows.push(CohomologyRow {
                p,
                degree: d,
                dim_cochains: dims[p],
                dim_kernel,
                dim_image,
                dim_h,
            });
            if witness && dim_h > 0 {
                let kernel = ds[p].kernel_basis();
                let image = if p == 1 {
                    Echelon::of_rows(c.algebra().field(), dims[1], Vec::new())
                } else {
                    image_basis(&ds[p - 1])
                };
                let slice = c.slice(p, d);
                let vecs = representatives(dims[p], &kernel, &image);
                reps.insert(
                    (p, d),
                    vecs.iter().map(|v| c.cochain(p, &slice, v)).collect(),
                );
            }
        }
    }
    let truncated = CohomologySummary {
        exhaustive: ordinary.exhaustive,
        cutoff,
        top: c.top(),
        rows,
        representatives: reps,
    };
    let degrees = truncated.degrees();
    let split_formula_holds = degrees.iter().all(|&d| {
        let c0 = ordinary.row(0, d).map_or(0, |r| r.dim_cochains);
        truncated.dim(1, d) + ordinary.dim(0, d) == c0 + ordinary.dim(1, d)
    });
    let agrees_above_one = degrees
        .iter()
        .all(|&d| (2..=c.top()).all(|p| truncated.dim(p, d) == ordinary.dim(p, d)));
    Ok(TruncatedSummary {
        truncated,
        ordinary,
        split_formula_holds,
        agrees_above_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Derivation, Field};
    use crate::lie_rinehart::{LieRinehartAlgebra, Representation};

    fn trivial_dims(l: &LieRinehartAlgebra) -> Vec<usize> {
        let m = Representation::trivial(l, 1);
        let c = CochainComplex::new(l, &m).unwrap();
        cohomology(&c, 6, false).unwrap().dims()
    }

    #[test]
    fn golden_lie_algebras() {
        let ring = BaseRing::ground(Field::Rational);
        assert_eq!(
            trivial_dims(&LieRinehartAlgebra::abelian(&ring, 2)),
            vec![1, 2, 1]
        );
        assert_eq!(
            trivial_dims(&LieRinehartAlgebra::sl2(Field::Rational)),
            vec![1, 0, 0, 1]
        );
        assert_eq!(
            trivial_dims(&LieRinehartAlgebra::heisenberg(Field::Rational)),
            vec![1, 2, 2, 1]
        );
    }

    #[test]
    fn representatives_are_cocycles() {
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        let s = cohomology(&c, 0, true).unwrap();
        for ((p, _), reps) in &s.representatives {
            for xi in reps {
                assert!(c.apply(*p, xi).iter().all(Poly::is_zero));
            }
        }
        assert_eq!(s.representatives[&(1, 0)].len(), 2);
    }

    #[test]
    fn truncation_laws() {
        let l = LieRinehartAlgebra::sl2(Field::Rational);
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        let t = truncated_cohomology(&c, 0, false).unwrap();
        assert_eq!(t.dims(), vec![0, 0, 0, 1]);
        assert!(t.split_formula_holds && t.agrees_above_one);
        let ring = BaseRing::ground(Field::Rational);
        let ab = LieRinehartAlgebra::abelian(&ring, 2);
        let c = CochainComplex::new(&ab, &Representation::trivial(&ab, 1)).unwrap();
        assert_eq!(
            truncated_cohomology(&c, 0, false).unwrap().dims(),
            vec![0, 2, 1]
        );
    }

    #[test]
    fn line_de_rham_is_acyclic_above_zero() {
        let ring = BaseRing::with_vars(Field::Rational, &["t"]);
        let mut b = LieRinehartAlgebra::builder(&ring, vec!["e".into()]).unwrap();
        b.anchor(0, Derivation::partial(&ring, 0)).unwrap();
        let l = b.build();
        let c = CochainComplex::new(&l, &Representation::trivial(&l, 1)).unwrap();
        let s = cohomology(&c, 4, false).unwrap();
        assert_eq!(s.dims(), vec![1, 0]);
        assert!(s.euler_characteristic_holds());
        assert_eq!(
            invariants(&c, 4)
                .unwrap()
                .iter()
                .map(|x| x.1)
                .sum::<usize>(),
            1
        );
        assert!(d_squared_failures(&c, 4).unwrap().is_empty());
    }
}
