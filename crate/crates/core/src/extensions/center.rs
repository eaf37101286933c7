//! The center of a kernel as a `Q`-module, and the linear solves onto
//! inner derivations that extension computations need.

use std::collections::{BTreeMap, BTreeSet};

use crate::ce_cohomology::CochainComplex;
use crate::error::{Error, Result};
use crate::exact_algebra::{Echelon, ExactMatrix, Monomial, Poly, Scalar, SparseVec};
use crate::extensions::triple::ExtensionTriple;
use crate::lie_rinehart::{Element, LieRinehartAlgebra, PolyMatrix, Representation};

/// The structure constants of `L` as a `k`-matrix `ad : L -> End(L)`, with
/// row `k * r + b` and column `a` holding `c_ab^k`. Requires constant
/// structure constants.
fn ad_operator(l: &LieRinehartAlgebra) -> Result<ExactMatrix> {
    let r = l.rank();
    let field = l.field();
    let mut m = ExactMatrix::zeros(field, r * r, r);
    for a in 0..r {
        for b in 0..r {
            let br = l.frame_bracket(a, b);
            for (k, c) in br.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = c.as_constant().ok_or_else(|| {
                    Error::Unsupported(format!(
                        "kernel structure constant of ('{}', '{}') is not constant; centers and inner derivations are only computed for constant brackets",
                        l.name(a),
                        l.name(b)
                    ))
                })?;
                m.set(k * r + b, a, c);
            }
        }
    }
    Ok(m)
}

/// Splits polynomial entries by monomial: `entries[n]` becomes one sparse
/// `k`-vector per monomial.
fn by_monomial(entries: &[Poly]) -> BTreeMap<Monomial, SparseVec> {
    let mut out: BTreeMap<Monomial, SparseVec> = BTreeMap::new();
    for (n, p) in entries.iter().enumerate() {
        for (m, c) in p.terms() {
            out.entry(m.clone()).or_default().insert(n, c.clone());
        }
    }
    out
}

/// Some `v` in `L` with `ad(v) = target`, or `None` when `target` is not
/// inner. Solved monomial by monomial against the constant `ad` operator;
/// the echelon solver picks the particular solution with free variables 0.
pub fn solve_inner(l: &LieRinehartAlgebra, target: &PolyMatrix) -> Result<Option<Element>> {
    let r = l.rank();
    let flat: Vec<Poly> = (0..r)
        .flat_map(|k| (0..r).map(move |b| (k, b)))
        .map(|(k, b)| target[k][b].clone())
        .collect();
    if flat.iter().all(Poly::is_zero) {
        return Ok(Some(l.zero_element()));
    }
    let ad = ad_operator(l)?;
    let mut out = l.zero_element();
    for (mono, rhs) in by_monomial(&flat) {
        match ad.solve(&rhs) {
            None => return Ok(None),
            Some(x) => {
                for (a, c) in x {
                    out[a].add_term(mono.clone(), c);
                }
            }
        }
    }
    Ok(Some(out))
}

fn project_onto(echelon: &Echelon, nvars: usize, v: &[Poly]) -> Option<Vec<Poly>> {
    let mut out = vec![Poly::zero(echelon.field(), nvars); echelon.rank()];
    for (mono, vec) in by_monomial(v) {
        for (u, c) in echelon.coordinates(&vec)?.into_iter().enumerate() {
            out[u].add_term(mono.clone(), c);
        }
    }
    Some(out)
}

/// `Z(L)` with the `Q`-action induced by a lift, as a representation on
/// `A^s` in the basis of constant central vectors in reduced echelon form.
#[derive(Clone, Debug)]
pub struct CentralPart {
    /// Basis vectors of `Z(L)` in the kernel frame.
    pub basis: Vec<Vec<Scalar>>,
    echelon: Echelon,
    pub rep: Representation,
    pub complex: CochainComplex,
}

impl CentralPart {
    pub fn of(t: &ExtensionTriple) -> Result<Self> {
        let l = &t.kernel;
        let q = &t.quotient;
        let r = l.rank();
        let field = l.field();
        let ring = l.ring();
        let echelon = Echelon::of_rows(field, r, ad_operator(l)?.kernel_basis()).rref();
        let basis: Vec<Vec<Scalar>> = echelon
            .rows()
            .iter()
            .map(|row| {
                (0..r)
                    .map(|a| row.get(&a).cloned().unwrap_or_else(|| field.zero()))
                    .collect()
            })
            .collect();
        let s = basis.len();
        let mut matrices = Vec::with_capacity(q.rank());
        for i in 0..q.rank() {
            let mut m = vec![vec![ring.zero(); s]; s];
            for (col, z) in basis.iter().enumerate() {
                let z: Element = z.iter().map(|c| ring.constant(c.clone())).collect();
                let img = crate::lie_rinehart::apply_matrix(l, &t.lift[i], &z);
                let coords = project_onto(&echelon, ring.nvars(), &img).ok_or_else(|| {
                    Error::input(format!(
                        "the lift of '{}' does not preserve the center of the kernel",
                        q.name(i)
                    ))
                })?;
                for (u, c) in coords.into_iter().enumerate() {
                    m[u][col] = c;
                }
            }
            matrices.push(m);
        }
        let weights = l
            .weights()
            .ok()
            .map(|w| echelon.pivots().iter().map(|&p| w[p]).collect());
        let names = (0..s).map(|u| format!("z{}", u + 1)).collect();
        let rep = Representation::new(q, names, matrices, weights)?;
        let complex = CochainComplex::new(q, &rep)?;
        Ok(CentralPart {
            basis,
            echelon,
            rep,
            complex,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Kernel frame positions of the leading entries of the basis vectors.
    pub fn pivot_positions(&self) -> &[usize] {
        self.echelon.pivots()
    }

    /// Length of the central cochain space of degree `p` (zero past the
    /// rank of `Q`).
    pub fn cochain_len(&self, p: usize) -> usize {
        if p > self.complex.algebra().rank() {
            0
        } else {
            self.complex.space(p).len()
        }
    }

    /// `sum_u f_u z_u` in the kernel frame.
    pub fn embed(&self, coords: &[Poly], kernel_rank: usize, zero: &Poly) -> Element {
        let mut out = vec![zero.clone(); kernel_rank];
        for (u, f) in coords.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (a, c) in self.basis[u].iter().enumerate() {
                if !c.is_zero() {
                    out[a] = &out[a] + &f.scale(c);
                }
            }
        }
        out
    }

    /// Coordinates of a kernel element in the central basis, or `None`
    /// when it is not central.
    pub fn project(&self, v: &[Poly]) -> Option<Vec<Poly>> {
        project_onto(&self.echelon, self.complex.algebra().ring().nvars(), v)
    }

    /// A `Z`-valued cochain on `Q` from its values on increasing index
    /// tuples (in central coordinates).
    pub fn cochain(&self, p: usize, values: &BTreeMap<Vec<usize>, Vec<Poly>>) -> Vec<Poly> {
        if self.cochain_len(p) == 0 {
            return Vec::new();
        }
        let space = self.complex.space(p);
        let ring = self.complex.algebra().ring();
        let mut out = vec![ring.zero(); space.len()];
        for (set, coords) in values {
            for (u, f) in coords.iter().enumerate() {
                if let Some(g) = space.position(u, set) {
                    out[g] = f.clone();
                }
            }
        }
        out
    }

    /// Values of a cochain on increasing index tuples, skipping zeros.
    pub fn values(&self, p: usize, xi: &[Poly]) -> BTreeMap<Vec<usize>, Vec<Poly>> {
        let ring = self.complex.algebra().ring();
        let mut out: BTreeMap<Vec<usize>, Vec<Poly>> = BTreeMap::new();
        if self.cochain_len(p) == 0 {
            return out;
        }
        for (g, f) in xi.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let (u, set) = &self.complex.space(p).gens[g];
            out.entry(set.clone())
                .or_insert_with(|| vec![ring.zero(); self.dim()])[*u] = f.clone();
        }
        out
    }

    /// Solves `d eta = xi` for a `Z`-valued `p`-cochain `xi`, slice by
    /// weight slice; `None` when `xi` is not exact.
    pub fn primitive(&self, p: usize, xi: &[Poly]) -> Result<Option<Vec<Poly>>> {
        let c = &self.complex;
        let ring = c.algebra().ring();
        if xi.iter().all(Poly::is_zero) {
            return Ok(Some(vec![ring.zero(); self.cochain_len(p - 1)]));
        }
        let target = &c.space(p).grading;
        let mut eta = vec![ring.zero(); c.space(p - 1).len()];
        let degrees: BTreeSet<i64> = target.split(ring, xi).into_keys().collect();
        for d in degrees {
            let slice = c.slice(p, d);
            let coords = c.coordinates(p, &slice, xi)?;
            let dm = c.differential(p - 1, d)?;
            match dm.solve(&coords) {
                None => return Ok(None),
                Some(sol) => {
                    let src = c.slice(p - 1, d);
                    let part = c.cochain(p - 1, &src, &sol);
                    for (e, q) in eta.iter_mut().zip(part) {
                        *e = &*e + &q;
                    }
                }
            }
        }
        Ok(Some(eta))
    }
}
