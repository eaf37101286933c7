//! The Chevalley–Eilenberg complex `M (x) Lambda^p L*` on a global frame.
//!
//! A cochain of degree `p` is stored by its coefficients on the generators
//! `m_b (x) e^I` with `I` strictly increasing; generators are ordered by `I`
//! (lexicographically) and then by `b`. With 0-based positions the
//! differential reads
//!
//! `(d xi)(e_J) = sum_i (-1)^i rho(e_{J_i}) xi(e_{J - J_i})
//!              + sum_{i<l} (-1)^{i+l} xi({e_{J_i}, e_{J_l}}, e_{J - J_i - J_l})`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact_algebra::{slice_degrees, ExactMatrix, FreeGrading, Poly, SliceBasis, SparseVec};
use crate::lie_rinehart::{LieRinehartAlgebra, Representation};

/// All `p`-subsets of `0..r`, lexicographically.
pub fn subsets(r: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            if r - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, r, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= r {
        rec(0, r, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Generators and grading of `C^p`.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub p: usize,
    pub gens: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
    pub grading: FreeGrading,
}

impl CochainSpace {
    pub fn position(&self, b: usize, set: &[usize]) -> Option<usize> {
        self.index.get(&(b, set.to_vec())).copied()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// The complex of `L` with coefficients in `M`, ready to be sliced.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    alg: LieRinehartAlgebra,
    rep: Representation,
    spaces: Vec<CochainSpace>,
    /// Highest degree whose cohomology is computed.
    top: usize,
    /// `pairs_by_target[k]` lists `(a, b, c_ab^k)` with `a < b` and `c_ab^k != 0`.
    pairs_by_target: Vec<Vec<(usize, usize, Poly)>>,
}

fn position_of(sorted: &[usize], x: usize) -> usize {
    sorted.iter().take_while(|&&y| y < x).count()
}

fn sign(parity: usize) -> bool {
    parity % 2 == 1
}

impl CochainComplex {
    /// Builds the complex using the frame weights of `L` and `M`.
    pub fn new(alg: &LieRinehartAlgebra, rep: &Representation) -> Result<Self> {
        let w = alg.weights()?;
        let u = rep.weights(alg)?;
        Self::with_weights(alg, rep, &w, &u, alg.rank())
    }

    /// Like [`CochainComplex::new`] but only builds `C^0 .. C^{max_p + 1}`,
    /// for algebras of large rank where only low degrees matter.
    pub fn up_to_degree(
        alg: &LieRinehartAlgebra,
        rep: &Representation,
        max_p: usize,
    ) -> Result<Self> {
        let w = alg.weights()?;
        let u = rep.weights(alg)?;
        Self::with_weights(alg, rep, &w, &u, max_p.min(alg.rank()))
    }

    /// Builds the complex with every weight zero; over the ground field this
    /// puts the whole complex in a single slice of degree 0.
    pub fn ungraded(alg: &LieRinehartAlgebra, rep: &Representation) -> Result<Self> {
        if alg.ring().nvars() != 0 {
            return Err(Error::precondition(
                "an ungraded complex is only finite over the ground field",
            ));
        }
        Self::with_weights(
            alg,
            rep,
            &vec![0; alg.rank()],
            &vec![0; rep.rank()],
            alg.rank(),
        )
    }

    fn with_weights(
        alg: &LieRinehartAlgebra,
        rep: &Representation,
        w: &[i64],
        u: &[i64],
        top: usize,
    ) -> Result<Self> {
        if rep.matrix_count() != alg.rank() {
            return Err(Error::input(
                "representation and algebra have different ranks",
            ));
        }
        let r = alg.rank();
        let m = rep.rank();
        let spaces = (0..=(top + 1).min(r))
            .map(|p| {
                let mut gens = Vec::new();
                let mut weights = Vec::new();
                for set in subsets(r, p) {
                    let ws: i64 = set.iter().map(|&i| w[i]).sum();
                    for b in 0..m {
                        gens.push((b, set.clone()));
                        weights.push(u[b] - ws);
                    }
                }
                let index = gens
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, g)| (g, i))
                    .collect();
                CochainSpace {
                    p,
                    gens,
                    index,
                    grading: FreeGrading::new(alg.ring().nvars(), weights),
                }
            })
            .collect();
        let mut pairs_by_target = vec![Vec::new(); r];
        for (&(a, b), v) in alg.structure_constants() {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    pairs_by_target[k].push((a, b, c.clone()));
                }
            }
        }
        Ok(CochainComplex {
            alg: alg.clone(),
            rep: rep.clone(),
            spaces,
            top,
            pairs_by_target,
        })
    }

    pub fn algebra(&self) -> &LieRinehartAlgebra {
        &self.alg
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// Highest cochain degree computed; the rank of `L` unless limited.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn space(&self, p: usize) -> &CochainSpace {
        &self.spaces[p]
    }

    /// Weight slices worth computing (see [`slice_degrees`]).
    pub fn degrees(&self, cutoff: i64) -> Vec<i64> {
        let gs: Vec<&FreeGrading> = self.spaces.iter().map(|s| &s.grading).collect();
        slice_degrees(&gs, cutoff)
    }

    /// `d(f m_b e^I)` as sparse contributions on the generators of `C^{p+1}`.
    fn push_generator(
        &self,
        p: usize,
        b: usize,
        set: &[usize],
        f: &Poly,
        out: &mut BTreeMap<usize, Poly>,
    ) {
        let r = self.alg.rank();
        let target = &self.spaces[p + 1];
        let mut add = |gen: usize, val: Poly, negate: bool| {
            if val.is_zero() {
                return;
            }
            let e = out.entry(gen).or_insert_with(|| self.alg.ring().zero());
            *e = if negate { &*e - &val } else { &*e + &val };
        };
        // rho(e_j) applied to xi(e_{J - j}) with J = I + {j}
        let mut v = vec![self.alg.ring().zero(); self.rep.rank()];
        v[b] = f.clone();
        for j in 0..r {
            if set.contains(&j) {
                continue;
            }
            let pos = position_of(set, j);
            let mut big = set.to_vec();
            big.insert(pos, j);
            let image = self.rep.act(&self.alg, j, &v);
            for (bb, val) in image.into_iter().enumerate() {
                if !val.is_zero() {
                    let gen = target.position(bb, &big).expect("cochain generator");
                    add(gen, val, sign(pos));
                }
            }
        }
        // xi({e_a, e_b'}, rest) where rest = I - {k} and c_{ab'}^k != 0
        for (kpos, &k) in set.iter().enumerate() {
            let rest: Vec<usize> = set.iter().copied().filter(|&x| x != k).collect();
            for (a, bp, c) in &self.pairs_by_target[k] {
                if rest.contains(a) || rest.contains(bp) {
                    continue;
                }
                let mut big = rest.clone();
                let pa = position_of(&big, *a);
                big.insert(pa, *a);
                let pb = position_of(&big, *bp);
                big.insert(pb, *bp);
                // pa < pb because a < b'
                let gen = target.position(b, &big).expect("cochain generator");
                add(gen, f * c, sign(pa + pb + kpos));
            }
        }
    }

    /// The differential of an arbitrary cochain of degree `p`.
    pub fn apply(&self, p: usize, xi: &[Poly]) -> Vec<Poly> {
        if p >= self.alg.rank() {
            return Vec::new();
        }
        let mut out = BTreeMap::new();
        for (g, f) in xi.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let (b, set) = &self.spaces[p].gens[g];
            self.push_generator(p, *b, set, f, &mut out);
        }
        let mut dense = vec![self.alg.ring().zero(); self.spaces[p + 1].len()];
        for (g, v) in out {
            dense[g] = v;
        }
        dense
    }

    pub fn slice(&self, p: usize, degree: i64) -> SliceBasis {
        self.spaces[p].grading.slice(degree)
    }

    /// Matrix of `d : C^p -> C^{p+1}` on one weight slice (zero rows when
    /// `p` is the top degree).
    pub fn differential(&self, p: usize, degree: i64) -> Result<ExactMatrix> {
        if p > self.top() {
            return Err(Error::input(format!(
                "cochain degree {p} exceeds the computed range 0..={}",
                self.top()
            )));
        }
        let field = self.alg.field();
        let src = self.slice(p, degree);
        if p == self.alg.rank() {
            return Ok(ExactMatrix::zeros(field, 0, src.len()));
        }
        let tgt_space = &self.spaces[p + 1];
        let tgt = tgt_space.grading.slice(degree);
        let mut columns = Vec::with_capacity(src.len());
        for (g, mono) in &src.labels {
            let (b, set) = &self.spaces[p].gens[*g];
            let f = Poly::monomial(field.one(), mono.clone());
            let mut out = BTreeMap::new();
            self.push_generator(p, *b, set, &f, &mut out);
            let mut col = SparseVec::new();
            for (gen, val) in out {
                for (m, c) in val.terms() {
                    let idx = tgt.position(gen, m).ok_or_else(|| {
                        Error::NotGraded(format!(
                            "the differential leaves the weight-{degree} slice; check the frame weights"
                        ))
                    })?;
                    col.insert(idx, c.clone());
                }
            }
            columns.push(col);
        }
        Ok(ExactMatrix::from_columns(field, tgt.len(), &columns))
    }

    /// Reads cochain coefficients from slice coordinates.
    pub fn cochain(&self, p: usize, slice: &SliceBasis, coords: &SparseVec) -> Vec<Poly> {
        self.spaces[p]
            .grading
            .element(self.alg.ring(), slice, coords)
    }

    /// Slice coordinates of a homogeneous cochain.
    pub fn coordinates(&self, p: usize, slice: &SliceBasis, xi: &[Poly]) -> Result<SparseVec> {
        self.spaces[p].grading.coordinates(slice, xi)
    }

    /// `xi(e_{t_1}, ..., e_{t_p})` for any tuple of frame indices.
    pub fn evaluate(&self, xi: &[Poly], tuple: &[usize]) -> Vec<Poly> {
        let zero = vec![self.alg.ring().zero(); self.rep.rank()];
        let mut sorted = tuple.to_vec();
        // sign of the sorting permutation, zero on repeats
        let mut parity = 0;
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    parity += 1;
                } else if sorted[j] == sorted[j + 1] {
                    return zero;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return zero;
        }
        (0..self.rep.rank())
            .map(|b| {
                let g = self.spaces[tuple.len()]
                    .position(b, &sorted)
                    .expect("generator");
                if sign(parity) {
                    -&xi[g]
                } else {
                    xi[g].clone()
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Derivation, Field};

    #[test]
    fn subsets_in_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn abelian_trivial_differential_vanishes() {
        let ring = BaseRing::ground(Field::Rational);
        let l = LieRinehartAlgebra::abelian(&ring, 3);
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        for p in 0..=3 {
            assert!(c.differential(p, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn sl2_first_differential_has_rank_three() {
        let l = LieRinehartAlgebra::sl2(Field::Rational);
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        let d1 = c.differential(1, 0).unwrap();
        assert_eq!(d1.rank(), 3);
        // d(e^h)(e, f) = -e^h({e, f}) = -1
        let ef = c.space(2).position(0, &[1, 2]).unwrap();
        assert_eq!(d1.get(ef, 0), Field::Rational.from_i64(-1));
    }

    #[test]
    fn de_rham_on_the_line() {
        // a(e) = d/dt, M = A: d(t^3) = 3 t^2 e*
        let ring = BaseRing::with_vars(Field::Rational, &["t"]);
        let mut b = LieRinehartAlgebra::builder(&ring, vec!["e".into()]).unwrap();
        b.anchor(0, Derivation::partial(&ring, 0)).unwrap();
        let l = b.build();
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        let out = c.apply(0, &[ring.var(0).pow(3)]);
        assert_eq!(
            out,
            vec![ring.var(0).pow(2).scale(&Field::Rational.from_i64(3))]
        );
        let d0 = c.differential(0, 3).unwrap();
        assert_eq!((d0.rows(), d0.cols(), d0.rank()), (1, 1, 1));
    }

    #[test]
    fn evaluation_signs() {
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        let m = Representation::trivial(&l, 1);
        let c = CochainComplex::new(&l, &m).unwrap();
        let ring = l.ring();
        let mut xi = vec![ring.zero(); 3];
        xi[c.space(2).position(0, &[0, 1]).unwrap()] = ring.one();
        assert_eq!(c.evaluate(&xi, &[1, 0]), vec![ring.int(-1)]);
        assert_eq!(c.evaluate(&xi, &[0, 0]), vec![ring.zero()]);
    }
}
