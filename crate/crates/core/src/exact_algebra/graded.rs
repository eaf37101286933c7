//! Graded slicing of free modules `A^m` over `A = k[x1..xn]`.
//!
//! Each variable has degree one and each free generator carries an integer
//! weight; the weight of `f * e_c` with `f` a monomial is `deg f + w(c)`.
//! Maps that preserve weight restrict to finite-dimensional matrices on
//! each weight slice.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact_algebra::matrix::{ExactMatrix, SparseVec};
use crate::exact_algebra::poly::{monomial_degree, BaseRing, Monomial, Poly};

/// All exponent vectors of total degree `d` in `n` variables, in descending
/// lexicographic order (`x^2, xy, y^2`).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Monomial basis labels `(component, exponents)` of the degree-`d` piece of
/// `A^rank` with all generators in weight zero.
pub fn graded_component_basis(rank: usize, nvars: usize, d: u32) -> Vec<(usize, Monomial)> {
    let monos = monomials_of_degree(nvars, d);
    (0..rank)
        .flat_map(|c| monos.iter().map(move |m| (c, m.clone())))
        .collect()
}

/// A free module `A^m` with integer weights on its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGrading {
    nvars: usize,
    weights: Vec<i64>,
}

/// The monomial basis of one weight slice, with a reverse index.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: i64,
    pub labels: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, comp: usize, mono: &Monomial) -> Option<usize> {
        self.index.get(&(comp, mono.clone())).copied()
    }
}

impl FreeGrading {
    pub fn new(nvars: usize, weights: Vec<i64>) -> Self {
        FreeGrading { nvars, weights }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.weights.iter().copied().min()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.weights.iter().copied().max()
    }

    pub fn slice(&self, degree: i64) -> SliceBasis {
        let mut labels = Vec::new();
        for (c, &w) in self.weights.iter().enumerate() {
            let d = degree - w;
            if d < 0 {
                continue;
            }
            for m in monomials_of_degree(self.nvars, d as u32) {
                labels.push((c, m));
            }
        }
        let index = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        SliceBasis {
            degree,
            labels,
            index,
        }
    }

    /// Weight of `f * e_c` for the homogeneous polynomial `f`.
    pub fn weight_of(&self, comp: usize, mono: &[u32]) -> i64 {
        self.weights[comp] + monomial_degree(mono) as i64
    }

    /// Coordinates of a module element in the given slice; errors if the
    /// element has a term of a different weight.
    pub fn coordinates(&self, slice: &SliceBasis, v: &[Poly]) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        for (c, p) in v.iter().enumerate() {
            for (m, coef) in p.terms() {
                let w = self.weight_of(c, m);
                if w != slice.degree {
                    return Err(Error::NotGraded(format!(
                        "term of weight {w} found while reading the weight-{} slice",
                        slice.degree
                    )));
                }
                let idx = slice
                    .position(c, m)
                    .expect("slice contains all labels of its weight");
                out.insert(idx, coef.clone());
            }
        }
        Ok(out)
    }

    /// The module element with the given slice coordinates.
    pub fn element(&self, ring: &BaseRing, slice: &SliceBasis, coords: &SparseVec) -> Vec<Poly> {
        let mut out = vec![ring.zero(); self.rank()];
        for (i, c) in coords {
            let (comp, m) = &slice.labels[*i];
            out[*comp].add_term(m.clone(), c.clone());
        }
        out
    }

    /// Splits a module element into its homogeneous weight components.
    pub fn split(&self, ring: &BaseRing, v: &[Poly]) -> BTreeMap<i64, Vec<Poly>> {
        let mut out: BTreeMap<i64, Vec<Poly>> = BTreeMap::new();
        for (c, p) in v.iter().enumerate() {
            for (m, coef) in p.terms() {
                let w = self.weight_of(c, m);
                let entry = out
                    .entry(w)
                    .or_insert_with(|| vec![ring.zero(); self.rank()]);
                entry[c].add_term(m.clone(), coef.clone());
            }
        }
        out
    }
}

/// Weight slices to compute for maps between the given modules: over the
/// ground field every occurring weight (the computation is then exhaustive),
/// over a polynomial ring every weight from the lowest one up to `cutoff`.
pub fn slice_degrees(gradings: &[&FreeGrading], cutoff: i64) -> Vec<i64> {
    let mut ws: Vec<i64> = gradings
        .iter()
        .flat_map(|g| g.weights().iter().copied())
        .collect();
    ws.sort_unstable();
    ws.dedup();
    if gradings.iter().all(|g| g.nvars() == 0) {
        return ws;
    }
    match ws.first() {
        None => Vec::new(),
        Some(&lo) => (lo..=cutoff).collect(),
    }
}

/// Matrix of a weight-preserving map `A^m -> A^k` on one weight slice.
///
/// `apply(c, mono)` must return the image of `mono * e_c`.
pub fn slice_matrix<F>(
    ring: &BaseRing,
    source: &FreeGrading,
    target: &FreeGrading,
    degree: i64,
    mut apply: F,
) -> Result<(ExactMatrix, SliceBasis, SliceBasis)>
where
    F: FnMut(usize, &Poly) -> Vec<Poly>,
{
    let src = source.slice(degree);
    let tgt = target.slice(degree);
    let mut columns = Vec::with_capacity(src.len());
    for (c, m) in &src.labels {
        let mono = Poly::monomial(ring.field().one(), m.clone());
        let img = apply(*c, &mono);
        columns.push(target.coordinates(&tgt, &img)?);
    }
    let mat = ExactMatrix::from_columns(ring.field(), tgt.len(), &columns);
    Ok((mat, src, tgt))
}
