//! Shared fixtures and an independent dense oracle for Chevalley-Eilenberg
//! cohomology.
//!
//! The oracle reads only raw data from the library (structure constants,
//! anchors, action matrices, weights) and evaluates the differential by the
//! textbook formula on frame tuples, with its own polynomial arithmetic and
//! dense Gaussian elimination.

#![allow(dead_code, clippy::needless_range_loop, clippy::type_complexity)]

use std::collections::BTreeMap;

use lierinehart::exact_algebra::{BaseRing, Derivation, Field, Poly, Scalar};
use lierinehart::lie_rinehart::{transformation_algebroid, LieRinehartAlgebra, Representation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// Ground field arithmetic on rationals; mod `p` values are kept as
/// integers in `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct K {
    pub p: Option<u64>,
}

impl K {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Rational => K { p: None },
            Field::Prime(p) => K { p: Some(p as u64) },
        }
    }

    pub fn norm(&self, x: Q) -> Q {
        let Some(p) = self.p else { return x };
        let p = BigInt::from(p);
        let m = |a: &BigInt| ((a % &p) + &p) % &p;
        let (n, d) = (m(x.numer()), m(x.denom()));
        // d^(p-2) mod p
        let inv = d.modpow(&(&p - 2), &p);
        Q::from_integer((n * inv) % &p)
    }

    pub fn inv(&self, x: &Q) -> Q {
        self.norm(Q::one() / x)
    }

    pub fn scalar(&self, s: &Scalar) -> Q {
        match s {
            Scalar::Rat(r) => r.clone(),
            Scalar::Mod { value, .. } => Q::from_integer(BigInt::from(*value)),
        }
    }
}

/// Polynomials as monomial -> coefficient.
pub type P = BTreeMap<Vec<u32>, Q>;

pub fn p_from(k: &K, f: &Poly) -> P {
    f.terms()
        .map(|(m, c)| (m.to_vec(), k.scalar(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

pub fn p_add(k: &K, a: &mut P, m: Vec<u32>, c: Q) {
    let e = a.entry(m.clone()).or_insert_with(Q::zero);
    *e = k.norm(&*e + c);
    if e.is_zero() {
        a.remove(&m);
    }
}

pub fn p_mul(k: &K, a: &P, b: &P) -> P {
    let mut out = P::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            p_add(k, &mut out, m, ca * cb);
        }
    }
    out
}

fn p_scale(k: &K, a: &P, c: &Q) -> P {
    let mut out = P::new();
    for (m, x) in a {
        p_add(k, &mut out, m.clone(), x * c);
    }
    out
}

fn p_sum(k: &K, a: &mut P, b: &P) {
    for (m, c) in b {
        p_add(k, a, m.clone(), c.clone());
    }
}

/// `sum_j images[j] * d/dx_j`.
fn p_derive(k: &K, images: &[P], f: &P) -> P {
    let mut out = P::new();
    for (j, img) in images.iter().enumerate() {
        let mut partial = P::new();
        for (m, c) in f {
            if m[j] > 0 {
                let mut m2 = m.clone();
                m2[j] -= 1;
                p_add(k, &mut partial, m2, c * Q::from_integer(BigInt::from(m[j])));
            }
        }
        p_sum(k, &mut out, &p_mul(k, img, &partial));
    }
    out
}

/// Monomials of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: i64) -> Vec<Vec<u32>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d as u32).rev() {
        for mut rest in monomials(n - 1, d - a as i64) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..r {
        for rest in subsets(r, p - 1) {
            if rest.first().is_none_or(|&x| x > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

/// The raw data the oracle works from.
pub struct Data {
    pub k: K,
    pub nvars: usize,
    pub r: usize,
    pub m: usize,
    /// `c[i][j][k]`.
    pub c: Vec<Vec<Vec<P>>>,
    pub anchor: Vec<Vec<P>>,
    /// `rho[i][a][b]`: `e_i . m_b = sum_a rho[i][a][b] m_a` (plus the anchor).
    pub rho: Vec<Vec<Vec<P>>>,
    pub w: Vec<i64>,
    pub u: Vec<i64>,
}

impl Data {
    pub fn of(alg: &LieRinehartAlgebra, rep: &Representation) -> Self {
        let k = K::of(alg.field());
        let r = alg.rank();
        let c = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        (0..r)
                            .map(|l| p_from(&k, &alg.structure_constant(i, j, l)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let anchor = (0..r)
            .map(|i| {
                alg.anchor(i)
                    .images()
                    .iter()
                    .map(|f| p_from(&k, f))
                    .collect()
            })
            .collect();
        let rho = (0..r)
            .map(|i| {
                rep.matrix(i)
                    .iter()
                    .map(|row| row.iter().map(|f| p_from(&k, f)).collect())
                    .collect()
            })
            .collect();
        Data {
            k,
            nvars: alg.ring().nvars(),
            r,
            m: rep.rank(),
            c,
            anchor,
            rho,
            w: alg.weights().unwrap(),
            u: rep.weights(alg).unwrap(),
        }
    }

    /// Generators `(monomial, b, I)` of `C^p` in weight `d`.
    pub fn basis(&self, p: usize, d: i64) -> Vec<(Vec<u32>, usize, Vec<usize>)> {
        let mut out = Vec::new();
        if p > self.r {
            return out;
        }
        for set in subsets(self.r, p) {
            let ws: i64 = set.iter().map(|&i| self.w[i]).sum();
            for b in 0..self.m {
                for mono in monomials(self.nvars, d - self.u[b] + ws) {
                    out.push((mono, b, set.clone()));
                }
            }
        }
        out
    }

    /// `omega(e_args)` for the basis cochain `f m_b e^I`.
    fn eval(&self, gen: &(Vec<u32>, usize, Vec<usize>), args: &[usize]) -> Option<(usize, Q)> {
        let mut v = args.to_vec();
        let mut sign = 1i64;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        (v == gen.2).then(|| (gen.1, Q::from_integer(BigInt::from(sign))))
    }

    /// `(d omega)(e_J)` as a vector of polynomials.
    fn d_on(&self, gen: &(Vec<u32>, usize, Vec<usize>), big: &[usize]) -> Vec<P> {
        let k = &self.k;
        let f: P = [(gen.0.clone(), Q::one())].into_iter().collect();
        let mut out = vec![P::new(); self.m];
        let sgn = |e: usize| {
            if e.is_multiple_of(2) {
                Q::one()
            } else {
                -Q::one()
            }
        };
        for i in 0..big.len() {
            let rest: Vec<usize> = big
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i)
                .map(|(_, &x)| x)
                .collect();
            if let Some((b, s)) = self.eval(gen, &rest) {
                let x = big[i];
                let s = s * sgn(i);
                // anchor on the coefficient, then the action matrix
                p_sum(
                    k,
                    &mut out[b],
                    &p_scale(k, &p_derive(k, &self.anchor[x], &f), &s),
                );
                for a in 0..self.m {
                    p_sum(
                        k,
                        &mut out[a],
                        &p_scale(k, &p_mul(k, &self.rho[x][a][b], &f), &s),
                    );
                }
            }
        }
        for i in 0..big.len() {
            for l in i + 1..big.len() {
                let rest: Vec<usize> = big
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != l)
                    .map(|(_, &x)| x)
                    .collect();
                for kk in 0..self.r {
                    let cst = &self.c[big[i]][big[l]][kk];
                    if cst.is_empty() {
                        continue;
                    }
                    let mut args = vec![kk];
                    args.extend(&rest);
                    if let Some((b, s)) = self.eval(gen, &args) {
                        let s = s * sgn(i + l);
                        p_sum(k, &mut out[b], &p_scale(k, &p_mul(k, cst, &f), &s));
                    }
                }
            }
        }
        out
    }

    /// Dense matrix of `d : C^p_d -> C^{p+1}_d`, one row per target
    /// generator.
    pub fn differential(&self, p: usize, d: i64) -> Vec<Vec<Q>> {
        let src = self.basis(p, d);
        let tgt = self.basis(p + 1, d);
        let index: BTreeMap<&(Vec<u32>, usize, Vec<usize>), usize> =
            tgt.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut m = vec![vec![Q::zero(); src.len()]; tgt.len()];
        for (col, gen) in src.iter().enumerate() {
            for big in subsets(self.r, p + 1) {
                for (b, poly) in self.d_on(gen, &big).into_iter().enumerate() {
                    for (mono, c) in poly {
                        let row = index[&(mono, b, big.clone())];
                        m[row][col] = c;
                    }
                }
            }
        }
        m
    }

    /// Every weight with a nonzero cochain space, capped at `cutoff` when
    /// the ring has variables.
    pub fn degrees(&self, cutoff: i64) -> Vec<i64> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for p in 0..=self.r {
            for set in subsets(self.r, p) {
                let ws: i64 = set.iter().map(|&i| self.w[i]).sum();
                for b in 0..self.m {
                    lo = lo.min(self.u[b] - ws);
                    hi = hi.max(self.u[b] - ws);
                }
            }
        }
        if lo > hi {
            return Vec::new();
        }
        let hi = if self.nvars == 0 { hi } else { cutoff };
        (lo..=hi).collect()
    }

    /// `dim H^p` for every `p` in one slice.
    pub fn slice_dims(&self, d: i64) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.r)
            .map(|p| rank(&self.k, self.differential(p, d)))
            .collect();
        (0..=self.r)
            .map(|p| self.basis(p, d).len() - ranks[p] - if p == 0 { 0 } else { ranks[p - 1] })
            .collect()
    }

    /// `dim H^p` summed over the slices up to `cutoff`.
    pub fn dims(&self, cutoff: i64) -> Vec<usize> {
        let mut out = vec![0; self.r + 1];
        for d in self.degrees(cutoff) {
            for (p, h) in self.slice_dims(d).into_iter().enumerate() {
                out[p] += h;
            }
        }
        out
    }

    /// `dim d(C^p)` summed over the slices up to `cutoff`.
    pub fn image_dims(&self, cutoff: i64) -> Vec<usize> {
        let mut out = vec![0; self.r + 1];
        for d in self.degrees(cutoff) {
            for (p, slot) in out.iter_mut().enumerate() {
                *slot += rank(&self.k, self.differential(p, d));
            }
        }
        out
    }
}

/// Rank by dense Gaussian elimination.
pub fn rank(k: &K, mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = k.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = k.norm(&m[r][j] * &inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = k.norm(v);
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `v` lies in the column span of `m`.
pub fn in_column_span(k: &K, m: &[Vec<Q>], v: &[Q]) -> bool {
    let base = rank(k, m.to_vec());
    let with: Vec<Vec<Q>> = m
        .iter()
        .zip(v)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    rank(k, with) == base
}

pub fn is_negative(q: &Q) -> bool {
    q.is_negative()
}

/// The golden algebroids with their names.
pub fn golden_algebroids() -> Vec<(&'static str, LieRinehartAlgebra)> {
    let q = Field::Rational;
    let k = BaseRing::ground(q);
    let t = BaseRing::with_vars(q, &["t"]);
    let dt = Derivation::partial(&t, 0);
    let tdt = dt.times(&t.var(0));
    let minus = |d: &Derivation| d.times(&t.int(-1));

    let aff = LieRinehartAlgebra::lie_algebra(q, &["x", "y"], &[(0, 1, &[(1, 1)])]).unwrap();
    let aff_t = transformation_algebroid(&aff, &t, vec![minus(&tdt), dt.clone()]).unwrap();
    // sl2 by vector fields on the line: e = d/dt, h = -2t d/dt, f = -t^2 d/dt
    let sl2 = LieRinehartAlgebra::sl2(q);
    let t2dt = dt.times(&t.var(0).pow(2));
    let sl2_t = transformation_algebroid(
        &sl2,
        &t,
        vec![tdt.times(&t.int(-2)), dt.clone(), minus(&t2dt)],
    )
    .unwrap();
    let free_line =
        lierinehart::free_lie::free_lie_rinehart(&t, vec!["s".into()], vec![dt.clone()], 3)
            .unwrap();
    let free_two = lierinehart::free_lie::free_lie_rinehart(
        &k,
        vec!["a".into(), "b".into()],
        vec![Derivation::zero(&k), Derivation::zero(&k)],
        3,
    )
    .unwrap();

    use lierinehart::extensions::ExtensionTriple;
    let ab2 = LieRinehartAlgebra::abelian(&k, 2)
        .with_names(vec!["x".into(), "y".into()])
        .unwrap();
    let line = LieRinehartAlgebra::abelian(&k, 1)
        .with_names(vec!["z".into()])
        .unwrap();
    let heis = ExtensionTriple::new(
        &ab2,
        &line,
        vec![vec![vec![k.zero()]]; 2],
        [((0, 1), vec![k.one()])].into(),
    )
    .unwrap();
    let plane = Representation::new(
        &sl2,
        vec!["v1".into(), "v2".into()],
        vec![
            vec![vec![k.int(1), k.zero()], vec![k.zero(), k.int(-1)]],
            vec![vec![k.zero(), k.one()], vec![k.zero(), k.zero()]],
            vec![vec![k.zero(), k.zero()], vec![k.one(), k.zero()]],
        ],
        None,
    )
    .unwrap();
    let sl2_plane = ExtensionTriple::from_representation(&sl2, &plane).unwrap();

    vec![
        ("abelian2", LieRinehartAlgebra::abelian(&k, 2)),
        ("sl2", sl2.clone()),
        ("h3", LieRinehartAlgebra::heisenberg(q)),
        ("aff1", aff),
        ("aff1_on_line", aff_t),
        ("sl2_on_line", sl2_t),
        ("free_line", free_line.algebra().clone()),
        ("free_two", free_two.algebra().clone()),
        ("heisenberg_total", heis.total().unwrap()),
        ("sl2_plane_total", sl2_plane.total().unwrap()),
    ]
}

/// Coefficient modules used with every golden algebroid.
pub fn modules(alg: &LieRinehartAlgebra) -> Vec<(&'static str, Representation)> {
    vec![
        ("trivial", Representation::trivial(alg, 1)),
        ("adjoint", Representation::adjoint(alg)),
    ]
}

pub const GOLDEN_CUTOFF: i64 = 3;

pub fn load_session(name: &str) -> lierinehart::cli::Session {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    lierinehart::cli::Session::from_json(&text, &Default::default(), true).unwrap()
}

/// A constant polynomial vector from small integers.
pub fn consts(ring: &BaseRing, xs: &[i64]) -> Vec<Poly> {
    xs.iter().map(|&x| ring.int(x)).collect()
}

impl Data {
    /// Oracle coordinates in weight `d` of a cochain given by its values on
    /// increasing tuples (one polynomial per module generator).
    pub fn vector(&self, p: usize, d: i64, values: &BTreeMap<Vec<usize>, Vec<Poly>>) -> Vec<Q> {
        self.basis(p, d)
            .iter()
            .map(|(mono, b, set)| {
                values
                    .get(set)
                    .and_then(|v| p_from(&self.k, &v[*b]).get(mono).cloned())
                    .unwrap_or_else(Q::zero)
            })
            .collect()
    }

    /// Whether the cochain is `d` of a `(p - 1)`-cochain, slice by slice.
    pub fn is_exact(
        &self,
        p: usize,
        values: &BTreeMap<Vec<usize>, Vec<Poly>>,
        cutoff: i64,
    ) -> bool {
        self.degrees(cutoff).into_iter().all(|d| {
            let v = self.vector(p, d, values);
            v.iter().all(Zero::is_zero) || in_column_span(&self.k, &self.differential(p - 1, d), &v)
        })
    }
}
