//! Sparse exact matrices and elimination.
//!
//! Over the rationals, rows are kept integral and primitive while
//! eliminating (cross-multiplication followed by content removal), so
//! no fractions appear until the final normalization of pivots. Over a
//! prime field pivots are simply scaled to one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact_algebra::scalar::{Field, Scalar};

/// A sparse vector: index -> nonzero scalar, in index order.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn vec_is_zero(v: &SparseVec) -> bool {
    v.values().all(Scalar::is_zero)
}

/// `a + c * b`, dropping zeros.
pub fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    if c.is_zero() {
        return out;
    }
    for (k, v) in b {
        let t = c * v;
        match out.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    out.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    out.insert(*k, t);
                }
            }
        }
    }
    out
}

pub fn scale_vec(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// A sparse `rows x cols` matrix over an exact field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&k| k < cols)));
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect::<Vec<SparseVec>>();
        ExactMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, field.from_i64(*v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i]
            .get(&j)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// Entries in lexicographic `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| ((i, *j), v)))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for ((i, j), v) in self.entries() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = self.field.zero();
            for (j, a) in row {
                if let Some(b) = v.get(j) {
                    acc += &(a * b);
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zeros(self.field, self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, a) in row {
                acc = axpy(&acc, a, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Column vectors of the matrix.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::of_rows(self.field, self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// A basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        self.echelon().kernel_basis()
    }

    /// A particular solution of `M x = b` (free variables set to zero).
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut rows = Vec::with_capacity(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            let mut row = r.clone();
            if let Some(v) = b.get(&i) {
                if !v.is_zero() {
                    row.insert(self.cols, v.clone());
                }
            }
            rows.push(row);
        }
        for (i, v) in b {
            if *i >= self.rows && !v.is_zero() {
                return None;
            }
        }
        let ech = Echelon::of_rows(self.field, self.cols + 1, rows);
        let rref = ech.rref();
        let mut x = SparseVec::new();
        for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
            if pc == self.cols {
                return None;
            }
            if let Some(v) = row.get(&self.cols) {
                x.insert(pc, v.clone());
            }
        }
        Some(x)
    }
}

/// Row echelon form of a list of rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    reduced: bool,
}

fn integer_row(field: Field, row: &SparseVec) -> SparseVec {
    if field != Field::Rational || row.is_empty() {
        return row.clone();
    }
    let mut lcm = BigInt::one();
    for v in row.values() {
        let (_, d) = v.as_ratio();
        lcm = lcm.lcm(&d);
    }
    let mut ints: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(k, v)| {
            let (n, d) = v.as_ratio();
            (*k, n * (&lcm / d))
        })
        .collect();
    let mut g = BigInt::zero();
    for (_, n) in &ints {
        g = g.gcd(n);
    }
    if ints[0].1.is_negative() {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, n) in ints.iter_mut() {
            *n = &*n / &g;
        }
    }
    ints.into_iter()
        .map(|(k, n)| (k, field.from_bigint(&n)))
        .collect()
}

/// Eliminates column `col` of `target` using `pivot` (which has a nonzero entry there).
fn eliminate(field: Field, target: &SparseVec, pivot: &SparseVec, col: usize) -> SparseVec {
    let t = match target.get(&col) {
        Some(t) => t.clone(),
        None => return target.clone(),
    };
    let p = &pivot[&col];
    match field {
        Field::Rational => {
            // p * target - t * pivot, then strip content
            let scaled = scale_vec(target, p);
            let out = axpy(&scaled, &-&t, pivot);
            integer_row(field, &out)
        }
        Field::Prime(_) => {
            let c = -&t.div(p).expect("nonzero pivot");
            axpy(target, &c, pivot)
        }
    }
}

impl Echelon {
    pub fn of_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        let mut pending: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<SparseVec>()
            })
            .filter(|r: &SparseVec| !r.is_empty())
            .map(|r| integer_row(field, &r))
            .collect();
        let mut out_rows = Vec::new();
        let mut pivots = Vec::new();
        while !pending.is_empty() {
            let lead = pending
                .iter()
                .map(|r| *r.keys().next().unwrap())
                .min()
                .unwrap();
            // sparsest, then smallest, row with leading column `lead`
            let (best, _) = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| *r.keys().next().unwrap() == lead)
                .min_by_key(|(_, r)| (r.len(), r[&lead].height()))
                .unwrap();
            let pivot = pending.swap_remove(best);
            pending = pending
                .into_iter()
                .map(|r| {
                    if r.keys().next() == Some(&lead) {
                        eliminate(field, &r, &pivot, lead)
                    } else {
                        r
                    }
                })
                .filter(|r| !r.is_empty())
                .collect();
            out_rows.push(pivot);
            pivots.push(lead);
        }
        Echelon {
            field,
            cols,
            rows: out_rows,
            pivots,
            reduced: false,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduced row echelon form: pivots equal one and are the only nonzero entry
    /// in their column.
    pub fn rref(&self) -> Echelon {
        if self.reduced {
            return self.clone();
        }
        let mut rows = self.rows.clone();
        let n = rows.len();
        for i in (0..n).rev() {
            let col = self.pivots[i];
            for k in 0..i {
                if rows[k].contains_key(&col) {
                    rows[k] = eliminate(self.field, &rows[k], &rows[i], col);
                }
            }
        }
        for (row, &col) in rows.iter_mut().zip(&self.pivots) {
            let inv = row[&col].inv().expect("pivot nonzero");
            *row = scale_vec(row, &inv);
        }
        Echelon {
            field: self.field,
            cols: self.cols,
            rows,
            pivots: self.pivots.clone(),
            reduced: true,
        }
    }

    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        if !self.reduced {
            return self.rref().kernel_basis();
        }
        let rref = self;
        let pivot_set: std::collections::BTreeSet<usize> = rref.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = SparseVec::new();
            v.insert(free, self.field.one());
            for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
                if let Some(a) = row.get(&free) {
                    v.insert(pc, -a);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduces `v` against the rows of this (reduced) echelon form.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if !self.reduced {
            return self.rref().reduce(v);
        }
        let rref = self;
        let mut out = v.clone();
        for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
            if let Some(c) = out.get(&pc).cloned() {
                out = axpy(&out, &-&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Expresses `v` in terms of the RREF rows; `None` if `v` is not in the row space.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.reduced {
            return self.rref().coordinates(v);
        }
        let rref = self;
        let coords: Vec<Scalar> = rref
            .pivots
            .iter()
            .map(|pc| v.get(pc).cloned().unwrap_or_else(|| self.field.zero()))
            .collect();
        let mut rebuilt = SparseVec::new();
        for (c, row) in coords.iter().zip(&rref.rows) {
            rebuilt = axpy(&rebuilt, c, row);
        }
        let diff = axpy(&rebuilt, &-self.field.one(), v);
        if diff.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank(field: Field, dim: usize, vectors: &[SparseVec]) -> usize {
    Echelon::of_rows(field, dim, vectors.to_vec()).rank()
}

/// Whether two families span the same subspace.
pub fn same_span(field: Field, dim: usize, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ra = span_rank(field, dim, a);
    let rb = span_rank(field, dim, b);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    let rab = span_rank(field, dim, &both);
    ra == rab && rb == rab
}

/// Indices of a maximal subfamily of `candidates` independent modulo `base`.
pub fn extend_basis(
    field: Field,
    dim: usize,
    base: &[SparseVec],
    candidates: &[SparseVec],
) -> Vec<usize> {
    let mut current = base.to_vec();
    let mut rank = span_rank(field, dim, &current);
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let r = span_rank(field, dim, &current);
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}
