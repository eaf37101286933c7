//! The low-degree exact sequence of an ideal `L` in `E` with quotient `Q`:
//!
//! `0 -> H^1(Q; M^L) -> H^1(E; M) -> H^0(Q; H^1(L; M)) -> H^2(Q; M^L) -> H^2(E; M)`
//!
//! Inflation and restriction are built on cocycles and exactness is checked
//! at `H^1(E; M)` as an equality of subspaces. The connecting map is not
//! constructed. Only the ground-field case is supported.

use serde::Serialize;

use crate::ce_cohomology::complex::CochainComplex;
use crate::ce_cohomology::summary::cohomology;
use crate::error::{Error, Result};
use crate::exact_algebra::{same_span, span_rank, Echelon, ExactMatrix, Field, Scalar, SparseVec};
use crate::lie_rinehart::{AlgebraBuilder, LieRinehartAlgebra, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveTermReport {
    pub ideal: Vec<String>,
    pub quotient: Vec<String>,
    pub dim_invariants: usize,
    /// `H^1(Q; M^L), H^1(E; M), H^0(Q; H^1(L; M)), H^2(Q; M^L), H^2(E; M)`.
    pub dims: [usize; 5],
    pub inflation_injective: bool,
    pub dim_image_inflation: usize,
    pub dim_kernel_restriction: usize,
    pub exact_at_h1: bool,
    pub restriction_lands_in_invariants: bool,
}

impl FiveTermReport {
    pub fn passed(&self) -> bool {
        self.inflation_injective && self.exact_at_h1 && self.restriction_lands_in_invariants
    }
}

fn dot(a: &SparseVec, b: &SparseVec, field: Field) -> Scalar {
    let mut acc = field.zero();
    for (i, x) in a {
        if let Some(y) = b.get(i) {
            acc += &(x * y);
        }
    }
    acc
}

/// Rows spanning the annihilator of `span(vectors)` in `k^dim`.
fn annihilator(field: Field, dim: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    ExactMatrix::from_rows(field, dim, vectors.to_vec()).kernel_basis()
}

fn const_entry(alg: &LieRinehartAlgebra, p: &crate::exact_algebra::Poly) -> Scalar {
    p.as_constant().unwrap_or_else(|| alg.field().zero())
}

/// Sub-algebra on the frame subset `idx` (brackets must stay inside).
fn restrict_algebra(e: &LieRinehartAlgebra, idx: &[usize]) -> Result<LieRinehartAlgebra> {
    let ring = e.ring();
    let mut b = AlgebraBuilder::new(ring, idx.iter().map(|&i| e.name(i).to_string()).collect())?;
    for (li, &i) in idx.iter().enumerate() {
        for (lj, &j) in idx.iter().enumerate().skip(li + 1) {
            let br = e.frame_bracket(i, j);
            let v = idx.iter().map(|&k| br[k].clone()).collect();
            b.bracket(li, lj, v)?;
        }
    }
    Ok(b.build())
}

/// Column vectors (as sparse vectors) of the matrix.
fn image_vectors(m: &ExactMatrix) -> Vec<SparseVec> {
    Echelon::of_rows(m.field(), m.rows(), m.columns())
        .rows()
        .to_vec()
}

pub fn five_term_check(
    e: &LieRinehartAlgebra,
    ideal: &[usize],
    m: &Representation,
) -> Result<FiveTermReport> {
    if e.ring().nvars() != 0 {
        return Err(Error::Unsupported(
            "the five-term check is implemented over the ground field only".into(),
        ));
    }
    let field = e.field();
    let r = e.rank();
    let mut lidx = ideal.to_vec();
    lidx.sort_unstable();
    lidx.dedup();
    if lidx.iter().any(|&i| i >= r) {
        return Err(Error::input("ideal frame index out of range"));
    }
    let qidx: Vec<usize> = (0..r).filter(|i| !lidx.contains(i)).collect();
    for &i in &lidx {
        for j in 0..r {
            let br = e.frame_bracket(i, j);
            if let Some(k) = qidx.iter().find(|&&k| !br[k].is_zero()) {
                return Err(Error::input(format!(
                    "the frame subset is not an ideal: the bracket of ({}, {}) has a component on '{}'",
                    e.name(i),
                    e.name(j),
                    e.name(*k)
                )));
            }
        }
    }
    let mrank = m.rank();
    let l = restrict_algebra(e, &lidx)?;
    let m_l = Representation::new(
        &l,
        m.names().to_vec(),
        lidx.iter().map(|&i| m.matrix(i).clone()).collect(),
        None,
    )?;

    // M^L and the induced Q-action
    let stacked: Vec<SparseVec> = lidx
        .iter()
        .flat_map(|&i| {
            let n = m.matrix(i);
            (0..mrank).map(move |row| {
                (0..mrank)
                    .filter_map(|col| {
                        let c = const_entry(e, &n[row][col]);
                        (!c.is_zero()).then_some((col, c))
                    })
                    .collect()
            })
        })
        .collect();
    let inv = Echelon::of_rows(
        field,
        mrank,
        ExactMatrix::from_rows(field, mrank, stacked).kernel_basis(),
    )
    .rref();
    let s = inv.rank();
    let mut qb = AlgebraBuilder::new(
        e.ring(),
        qidx.iter().map(|&i| e.name(i).to_string()).collect(),
    )?;
    for (qa, &a) in qidx.iter().enumerate() {
        for (qb_, &b) in qidx.iter().enumerate().skip(qa + 1) {
            let br = e.frame_bracket(a, b);
            qb.bracket(qa, qb_, qidx.iter().map(|&k| br[k].clone()).collect())?;
        }
    }
    let q = qb.build();
    let act_const = |a: usize, v: &SparseVec| -> SparseVec {
        let n = m.matrix(a);
        let mut out = SparseVec::new();
        for row in 0..mrank {
            let mut acc = field.zero();
            for (col, x) in v {
                acc += &(&const_entry(e, &n[row][*col]) * x);
            }
            if !acc.is_zero() {
                out.insert(row, acc);
            }
        }
        out
    };
    let mut q_mats = Vec::new();
    for &a in &qidx {
        let mut mat = vec![vec![e.ring().zero(); s]; s];
        for (t, v) in inv.rows().iter().enumerate() {
            let img = act_const(a, v);
            let coords = inv
                .coordinates(&img)
                .ok_or_else(|| Error::input("the ideal does not preserve its invariants"))?;
            for (t2, c) in coords.into_iter().enumerate() {
                mat[t2][t] = e.ring().constant(c);
            }
        }
        q_mats.push(mat);
    }
    let m_inv = Representation::new(
        &q,
        (0..s).map(|t| format!("v{}", t + 1)).collect(),
        q_mats,
        None,
    )?;

    let ce = CochainComplex::ungraded(e, m)?;
    let cl = CochainComplex::ungraded(&l, &m_l)?;
    let cq = CochainComplex::ungraded(&q, &m_inv)?;
    let he = cohomology(&ce, 0, false)?.dims();
    let hq = cohomology(&cq, 0, false)?.dims();
    let h_at = |v: &Vec<usize>, p: usize| v.get(p).copied().unwrap_or(0);

    let dim_c1e = ce.space(1).len();
    let dim_c1l = cl.space(1).len();
    let b1e = if r > 0 {
        image_vectors(&ce.differential(0, 0)?)
    } else {
        Vec::new()
    };
    let z1e = if r > 0 {
        ce.differential(1, 0)?.kernel_basis()
    } else {
        Vec::new()
    };
    let (b1l, z1l) = if lidx.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        (
            image_vectors(&cl.differential(0, 0)?),
            cl.differential(1, 0)?.kernel_basis(),
        )
    };
    let ann_l = annihilator(field, dim_c1l, &b1l);

    // x . xi for x = e_a and xi in C^1(L; M):  (x.xi)(e_i) = rho(e_a) xi(e_i) - xi({e_a, e_i})
    let act_on_c1l = |a: usize, xi: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (li, &i) in lidx.iter().enumerate() {
            let val: SparseVec = (0..mrank)
                .filter_map(|b| xi.get(&(li * mrank + b)).map(|c| (b, c.clone())))
                .collect();
            let mut res = act_const(a, &val);
            let br = e.frame_bracket(a, i);
            for (lk, &k) in lidx.iter().enumerate() {
                let c = const_entry(e, &br[k]);
                if c.is_zero() {
                    continue;
                }
                for b in 0..mrank {
                    if let Some(x) = xi.get(&(lk * mrank + b)) {
                        let entry = res.entry(b).or_insert_with(|| field.zero());
                        *entry -= &(&c * x);
                    }
                }
            }
            for (b, c) in res {
                if !c.is_zero() {
                    out.insert(li * mrank + b, c);
                }
            }
        }
        out
    };
    let restrict = |xi: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (li, &i) in lidx.iter().enumerate() {
            for b in 0..mrank {
                if let Some(c) = xi.get(&(i * mrank + b)) {
                    out.insert(li * mrank + b, c.clone());
                }
            }
        }
        out
    };
    let invariant_condition = |vectors: &[SparseVec]| -> Vec<SparseVec> {
        // rows: for each a in Q and each annihilator y, t -> y . (e_a . v_t)
        let mut rows = Vec::new();
        for &a in &qidx {
            let moved: Vec<SparseVec> = vectors.iter().map(|v| act_on_c1l(a, v)).collect();
            for y in &ann_l {
                let row: SparseVec = moved
                    .iter()
                    .enumerate()
                    .filter_map(|(t, v)| {
                        let c = dot(y, v, field);
                        (!c.is_zero()).then_some((t, c))
                    })
                    .collect();
                rows.push(row);
            }
        }
        ExactMatrix::from_rows(field, vectors.len(), rows).kernel_basis()
    };
    let combine = |coeffs: &SparseVec, basis: &[SparseVec]| -> SparseVec {
        let mut out = SparseVec::new();
        for (t, c) in coeffs {
            out = crate::exact_algebra::matrix::axpy(&out, c, &basis[*t]);
        }
        out
    };

    // H^0(Q; H^1(L; M))
    let inv_classes: Vec<SparseVec> = invariant_condition(&z1l)
        .iter()
        .map(|c| combine(c, &z1l))
        .collect();
    let rank_b1l = span_rank(field, dim_c1l, &b1l);
    let mut with_b = b1l.clone();
    with_b.extend(inv_classes);
    let h0_q_h1 = span_rank(field, dim_c1l, &with_b) - rank_b1l;

    // restriction lands in the invariant classes
    let restricted: Vec<SparseVec> = z1e.iter().map(&restrict).collect();
    let restriction_lands_in_invariants = qidx.iter().all(|&a| {
        restricted.iter().all(|v| {
            let moved = act_on_c1l(a, v);
            ann_l.iter().all(|y| dot(y, &moved, field).is_zero())
        })
    });

    // inflation of Z^1(Q; M^L)
    let z1q = if qidx.is_empty() {
        Vec::new()
    } else {
        cq.differential(1, 0)?.kernel_basis()
    };
    let inflated: Vec<SparseVec> = z1q
        .iter()
        .map(|eta| {
            let mut out = SparseVec::new();
            for (qa, &a) in qidx.iter().enumerate() {
                let coeffs: SparseVec = (0..s)
                    .filter_map(|t| eta.get(&(qa * s + t)).map(|c| (t, c.clone())))
                    .collect();
                let v = combine(&coeffs, inv.rows());
                for (b, c) in v {
                    out.insert(a * mrank + b, c);
                }
            }
            out
        })
        .collect();
    let rank_b1e = span_rank(field, dim_c1e, &b1e);
    let mut inf_plus_b = b1e.clone();
    inf_plus_b.extend(inflated.iter().cloned());
    let dim_image_inflation = span_rank(field, dim_c1e, &inf_plus_b) - rank_b1e;
    let inflation_injective = dim_image_inflation == h_at(&hq, 1);

    // kernel of restriction on Z^1(E; M)
    let ann_rows: Vec<SparseVec> = ann_l.clone();
    let cond: Vec<SparseVec> = ann_rows
        .iter()
        .map(|y| {
            restricted
                .iter()
                .enumerate()
                .filter_map(|(t, v)| {
                    let c = dot(y, v, field);
                    (!c.is_zero()).then_some((t, c))
                })
                .collect()
        })
        .collect();
    let ker_coeffs = ExactMatrix::from_rows(field, z1e.len(), cond).kernel_basis();
    let mut ker_plus_b = b1e.clone();
    ker_plus_b.extend(ker_coeffs.iter().map(|c| combine(c, &z1e)));
    let dim_kernel_restriction = span_rank(field, dim_c1e, &ker_plus_b) - rank_b1e;
    let exact_at_h1 = same_span(field, dim_c1e, &inf_plus_b, &ker_plus_b);

    Ok(FiveTermReport {
        ideal: lidx.iter().map(|&i| e.name(i).to_string()).collect(),
        quotient: qidx.iter().map(|&i| e.name(i).to_string()).collect(),
        dim_invariants: s,
        dims: [
            h_at(&hq, 1),
            h_at(&he, 1),
            h0_q_h1,
            h_at(&hq, 2),
            h_at(&he, 2),
        ],
        inflation_injective,
        dim_image_inflation,
        dim_kernel_restriction,
        exact_at_h1,
        restriction_lands_in_invariants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_over_its_center() {
        let h = LieRinehartAlgebra::heisenberg(Field::Rational);
        let m = Representation::trivial(&h, 1);
        let rep = five_term_check(&h, &[2], &m).unwrap();
        assert_eq!(rep.dims, [2, 2, 1, 1, 2]);
        assert!(rep.passed());
        assert_eq!(rep.dim_image_inflation, 2);
        assert_eq!(rep.dim_kernel_restriction, 2);
    }

    #[test]
    fn whole_algebra_as_ideal() {
        let h = LieRinehartAlgebra::heisenberg(Field::Rational);
        let m = Representation::trivial(&h, 1);
        let rep = five_term_check(&h, &[0, 1, 2], &m).unwrap();
        assert_eq!(rep.dims[0], 0);
        assert_eq!(rep.dim_kernel_restriction, 0);
        assert!(rep.passed());
    }

    #[test]
    fn non_ideal_rejected() {
        let h = LieRinehartAlgebra::heisenberg(Field::Rational);
        let m = Representation::trivial(&h, 1);
        assert!(five_term_check(&h, &[0], &m).is_err());
    }
}
