//! Extension data `(lift, curvature cochain)` on a split module `L (+) Q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::Poly;
use crate::lie_rinehart::{
    apply_matrix, display_vector, Element, LieRinehartAlgebra, PolyMatrix, Representation,
    ValidationReport,
};

/// An extension `0 -> L -> E -> Q -> 0` presented on `E = L (+) Q`.
///
/// `lift[i]` is the matrix `N_i` of `lift(x_i) = N_i + a_Q(x_i)`, acting on
/// `L` by a derivation of its bracket; `rho[(i, j)]` (for `i < j`) is the
/// `L`-component of the bracket of two frame elements of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionTriple {
    pub quotient: LieRinehartAlgebra,
    pub kernel: LieRinehartAlgebra,
    pub lift: Vec<PolyMatrix>,
    pub rho: BTreeMap<(usize, usize), Element>,
}

fn check_matrix(l: &LieRinehartAlgebra, m: &PolyMatrix, what: &str) -> Result<()> {
    let r = l.rank();
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(Error::input(format!("{what} is not a {r}x{r} matrix")));
    }
    if m.iter()
        .flatten()
        .any(|p| p.nvars() != l.ring().nvars() || p.field() != l.field())
    {
        return Err(Error::config(format!(
            "{what} has entries in a different ring"
        )));
    }
    Ok(())
}

impl ExtensionTriple {
    pub fn new(
        quotient: &LieRinehartAlgebra,
        kernel: &LieRinehartAlgebra,
        lift: Vec<PolyMatrix>,
        rho: BTreeMap<(usize, usize), Element>,
    ) -> Result<Self> {
        if quotient.ring() != kernel.ring() {
            return Err(Error::config(
                "kernel and quotient live over different rings",
            ));
        }
        if !kernel.has_zero_anchor() {
            return Err(Error::input(
                "the kernel of an extension must have zero anchor",
            ));
        }
        if lift.len() != quotient.rank() {
            return Err(Error::input(format!(
                "{} lift matrices given for a quotient of rank {}",
                lift.len(),
                quotient.rank()
            )));
        }
        for (i, m) in lift.iter().enumerate() {
            check_matrix(kernel, m, &format!("lift of '{}'", quotient.name(i)))?;
        }
        let mut clean = BTreeMap::new();
        for ((i, j), v) in rho {
            if i >= quotient.rank() || j >= quotient.rank() {
                return Err(Error::input(format!(
                    "cochain pair ({i}, {j}) out of range"
                )));
            }
            if v.len() != kernel.rank() {
                return Err(Error::input(format!(
                    "cochain value on ({i}, {j}) has the wrong length"
                )));
            }
            let (key, v) = match i.cmp(&j) {
                std::cmp::Ordering::Less => ((i, j), v),
                std::cmp::Ordering::Greater => ((j, i), v.iter().map(|p| -p).collect()),
                std::cmp::Ordering::Equal if v.iter().all(Poly::is_zero) => continue,
                std::cmp::Ordering::Equal => {
                    return Err(Error::input(format!(
                        "cochain value on the diagonal pair ({i}, {i})"
                    )))
                }
            };
            if clean.contains_key(&key) {
                return Err(Error::input(format!("cochain pair {key:?} given twice")));
            }
            if v.iter().any(|p| !p.is_zero()) {
                clean.insert(key, v);
            }
        }
        Ok(ExtensionTriple {
            quotient: quotient.clone(),
            kernel: kernel.clone(),
            lift,
            rho: clean,
        })
    }

    /// The semidirect product data of a representation: abelian kernel
    /// `A^m`, lift = the action, zero cochain.
    pub fn from_representation(
        quotient: &LieRinehartAlgebra,
        rep: &Representation,
    ) -> Result<Self> {
        let mut b = LieRinehartAlgebra::builder(quotient.ring(), rep.names().to_vec())?;
        if let Some(w) = rep.explicit_weights() {
            b.weights(w.to_vec())?;
        }
        let kernel = b.build();
        let lift = (0..quotient.rank())
            .map(|i| rep.matrix(i).clone())
            .collect();
        ExtensionTriple::new(quotient, &kernel, lift, BTreeMap::new())
    }

    /// Reads the data of an extension from an algebra `E` whose frame
    /// elements `ideal` span an ideal with zero anchor; the remaining frame
    /// elements give the section of the quotient.
    pub fn from_extension(e: &LieRinehartAlgebra, ideal: &[usize]) -> Result<Self> {
        let r = e.rank();
        let mut in_ideal = vec![false; r];
        for &i in ideal {
            if i >= r || in_ideal[i] {
                return Err(Error::input(format!("invalid or repeated ideal index {i}")));
            }
            in_ideal[i] = true;
        }
        let lpos: Vec<usize> = (0..r).filter(|&i| in_ideal[i]).collect();
        let qpos: Vec<usize> = (0..r).filter(|&i| !in_ideal[i]).collect();
        let ring = e.ring();
        for &i in &lpos {
            if !e.anchor(i).is_zero() {
                return Err(Error::input(format!(
                    "'{}' has nonzero anchor, so it cannot lie in the kernel",
                    e.name(i)
                )));
            }
            for j in 0..r {
                let br = e.frame_bracket(i, j);
                if let Some(&k) = qpos.iter().find(|&&k| !br[k].is_zero()) {
                    return Err(Error::input(format!(
                        "the span of the kernel frame is not an ideal: {{{}, {}}} has a '{}' component",
                        e.name(i),
                        e.name(j),
                        e.name(k)
                    )));
                }
            }
        }
        let restrict =
            |v: &Element, pos: &[usize]| -> Element { pos.iter().map(|&k| v[k].clone()).collect() };

        let mut lb = LieRinehartAlgebra::builder(
            ring,
            lpos.iter().map(|&i| e.name(i).to_string()).collect(),
        )?;
        for (a, &i) in lpos.iter().enumerate() {
            for (b, &j) in lpos.iter().enumerate().skip(a + 1) {
                let br = e.frame_bracket(i, j);
                if br.iter().any(|p| !p.is_zero()) {
                    lb.bracket(a, b, restrict(&br, &lpos))?;
                }
            }
        }
        let mut qb = LieRinehartAlgebra::builder(
            ring,
            qpos.iter().map(|&i| e.name(i).to_string()).collect(),
        )?;
        let mut rho = BTreeMap::new();
        for (a, &i) in qpos.iter().enumerate() {
            qb.anchor(a, e.anchor(i).clone())?;
            for (b, &j) in qpos.iter().enumerate().skip(a + 1) {
                let br = e.frame_bracket(i, j);
                let qpart = restrict(&br, &qpos);
                if qpart.iter().any(|p| !p.is_zero()) {
                    qb.bracket(a, b, qpart)?;
                }
                let lpart = restrict(&br, &lpos);
                if lpart.iter().any(|p| !p.is_zero()) {
                    rho.insert((a, b), lpart);
                }
            }
        }
        if let Some(w) = e.explicit_weights() {
            lb.weights(lpos.iter().map(|&i| w[i]).collect())?;
            qb.weights(qpos.iter().map(|&i| w[i]).collect())?;
        }
        let (kernel, quotient) = (lb.build(), qb.build());
        // lift(x)(l_b) = {x, l_b}, restricted to the kernel
        let lift = qpos
            .iter()
            .map(|&i| {
                let cols: Vec<Element> = lpos
                    .iter()
                    .map(|&j| restrict(&e.frame_bracket(i, j), &lpos))
                    .collect();
                (0..lpos.len())
                    .map(|row| (0..lpos.len()).map(|col| cols[col][row].clone()).collect())
                    .collect()
            })
            .collect();
        ExtensionTriple::new(&quotient, &kernel, lift, rho)
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel.rank()
    }

    pub fn quotient_rank(&self) -> usize {
        self.quotient.rank()
    }

    /// `lift(x_i)(v) = N_i v + a_Q(x_i)(v)`.
    pub fn apply_lift(&self, i: usize, v: &[Poly]) -> Element {
        let a = self.quotient.anchor(i);
        apply_matrix(&self.kernel, &self.lift[i], v)
            .into_iter()
            .zip(v)
            .map(|(nv, f)| &nv + &a.act(f))
            .collect()
    }

    /// `lift(x)(v)` for an arbitrary `x` of `Q`.
    pub fn apply_lift_element(&self, x: &[Poly], v: &[Poly]) -> Element {
        let mut out = self.kernel.zero_element();
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                add_scaled(&mut out, xi, &self.apply_lift(i, v));
            }
        }
        out
    }

    /// `rho(x_i, x_j)`, antisymmetric.
    pub fn rho_pair(&self, i: usize, j: usize) -> Element {
        let zero = self.kernel.zero_element();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.rho.get(&(i, j)).cloned().unwrap_or(zero),
            std::cmp::Ordering::Greater => self
                .rho
                .get(&(j, i))
                .map_or(zero, |v| v.iter().map(|p| -p).collect()),
            std::cmp::Ordering::Equal => zero,
        }
    }

    /// `rho(x, y)` extended `A`-bilinearly.
    pub fn rho_of(&self, x: &[Poly], y: &[Poly]) -> Element {
        let mut out = self.kernel.zero_element();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if i != j && !xi.is_zero() && !yj.is_zero() {
                    add_scaled(&mut out, &(xi * yj), &self.rho_pair(i, j));
                }
            }
        }
        out
    }

    /// `[lift(x_i), lift(x_j)] - lift({x_i, x_j})` as a matrix on `L`.
    pub fn curvature(&self, i: usize, j: usize) -> PolyMatrix {
        let r = self.kernel.rank();
        let br = self.quotient.frame_bracket(i, j);
        let cols: Vec<Element> = (0..r)
            .map(|b| {
                let e = self.kernel.basis_element(b);
                let ij = self.apply_lift(i, &self.apply_lift(j, &e));
                let ji = self.apply_lift(j, &self.apply_lift(i, &e));
                let k = self.apply_lift_element(&br, &e);
                (0..r).map(|l| &(&ij[l] - &ji[l]) - &k[l]).collect()
            })
            .collect();
        (0..r)
            .map(|l| (0..r).map(|b| cols[b][l].clone()).collect())
            .collect()
    }

    /// `sum_cyc lift(x)(rho(y, z)) - sum_cyc rho({x, y}, z)` on a frame triple.
    pub fn cocycle_defect(&self, i: usize, j: usize, k: usize) -> Element {
        let q = &self.quotient;
        let mut out = self.kernel.zero_element();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            add_scaled(
                &mut out,
                &self.kernel.ring().one(),
                &self.apply_lift(a, &self.rho_pair(b, c)),
            );
            let bc = self.rho_of(&q.frame_bracket(a, b), &q.basis_element(c));
            add_scaled(&mut out, &self.kernel.ring().int(-1), &bc);
        }
        out
    }

    /// Frame names of the total algebra: kernel first, then quotient,
    /// prefixed when the two overlap.
    fn total_names(&self) -> Vec<String> {
        let ln = self.kernel.names();
        let qn = self.quotient.names();
        if ln.iter().any(|n| qn.contains(n)) {
            ln.iter()
                .map(|n| format!("l_{n}"))
                .chain(qn.iter().map(|n| format!("q_{n}")))
                .collect()
        } else {
            ln.iter().chain(qn).cloned().collect()
        }
    }

    /// `E = L (+) Q` with `{x, l} = lift(x)(l)`, `{x, y} = rho(x, y) + {x, y}_Q`
    /// and anchor `a_Q` on the `Q` part. Kernel frame first.
    pub fn total(&self) -> Result<LieRinehartAlgebra> {
        let (r, q) = (self.kernel.rank(), self.quotient.rank());
        let ring = self.kernel.ring();
        let mut b = LieRinehartAlgebra::builder(ring, self.total_names())?;
        let zero = || vec![ring.zero(); r + q];
        for a in 0..r {
            for c in a + 1..r {
                let br = self.kernel.frame_bracket(a, c);
                if br.iter().any(|p| !p.is_zero()) {
                    let mut v = zero();
                    v[..r].clone_from_slice(&br);
                    b.bracket(a, c, v)?;
                }
            }
        }
        for i in 0..q {
            for c in 0..r {
                // {l_c, x_i} = -lift(x_i)(l_c)
                let img = self.apply_lift(i, &self.kernel.basis_element(c));
                if img.iter().any(|p| !p.is_zero()) {
                    let mut v = zero();
                    for (k, p) in img.iter().enumerate() {
                        v[k] = -p;
                    }
                    b.bracket(c, r + i, v)?;
                }
            }
            for j in i + 1..q {
                let mut v = zero();
                v[..r].clone_from_slice(&self.rho_pair(i, j));
                v[r..].clone_from_slice(&self.quotient.frame_bracket(i, j));
                if v.iter().any(|p| !p.is_zero()) {
                    b.bracket(r + i, r + j, v)?;
                }
            }
            b.anchor(r + i, self.quotient.anchor(i).clone())?;
        }
        if let (Some(lw), Some(qw)) = (
            self.kernel.explicit_weights(),
            self.quotient.explicit_weights(),
        ) {
            b.weights(lw.iter().chain(qw).copied().collect())?;
        }
        Ok(b.build())
    }

    /// Checks that each lift is a derivation of the kernel bracket, the
    /// curvature identity, the cocycle identity, and then the axioms of
    /// the total algebra.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let l = &self.kernel;
        let q = &self.quotient;
        let (r, n) = (l.rank(), q.rank());

        let mut witness = None;
        'lifts: for i in 0..n {
            for a in 0..r {
                for b in a + 1..r {
                    let (ea, eb) = (l.basis_element(a), l.basis_element(b));
                    let lhs = self.apply_lift(i, &l.bracket(&ea, &eb));
                    let x = l.bracket(&self.apply_lift(i, &ea), &eb);
                    let y = l.bracket(&ea, &self.apply_lift(i, &eb));
                    if (0..r).any(|k| lhs[k] != &x[k] + &y[k]) {
                        witness = Some(format!(
                            "lift of '{}' on ({}, {})",
                            q.name(i),
                            l.name(a),
                            l.name(b)
                        ));
                        break 'lifts;
                    }
                }
            }
        }
        report.record("lift_derivation", witness);

        let mut witness = None;
        'curv: for i in 0..n {
            for j in i + 1..n {
                let ad = crate::lie_rinehart::ad_matrix(l, &self.rho_pair(i, j));
                if self.curvature(i, j) != ad {
                    witness = Some(format!("({}, {})", q.name(i), q.name(j)));
                    break 'curv;
                }
            }
        }
        report.record("curvature", witness);

        let mut witness = None;
        'cocycle: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = self.cocycle_defect(i, j, k);
                    if d.iter().any(|p| !p.is_zero()) {
                        witness = Some(format!(
                            "({}, {}, {}): defect {}",
                            q.name(i),
                            q.name(j),
                            q.name(k),
                            display_vector(l.ring(), l.names(), &d)
                        ));
                        break 'cocycle;
                    }
                }
            }
        }
        report.record("cocycle", witness);

        match self.total() {
            Ok(e) => {
                for mut c in e.validate().checks {
                    c.axiom = format!("total_{}", c.axiom);
                    report.checks.push(c);
                }
            }
            Err(err) => report.record("total_construction", Some(err.to_string())),
        }
        report
    }

    /// The data of the same extension read through the section
    /// `x -> x + psi(x)`: `lift' = lift + ad psi`, and
    /// `rho'(x, y) = rho + lift(x) psi(y) - lift(y) psi(x) + [psi x, psi y] - psi({x, y})`.
    pub fn gauge(&self, psi: &[Element]) -> Result<Self> {
        let l = &self.kernel;
        let q = &self.quotient;
        if psi.len() != q.rank() || psi.iter().any(|v| v.len() != l.rank()) {
            return Err(Error::input(
                "gauge map needs one kernel element per quotient frame element",
            ));
        }
        let lift = (0..q.rank())
            .map(|i| {
                let ad = crate::lie_rinehart::ad_matrix(l, &psi[i]);
                self.lift[i]
                    .iter()
                    .zip(&ad)
                    .map(|(row, arow)| row.iter().zip(arow).map(|(a, b)| a + b).collect())
                    .collect()
            })
            .collect();
        let psi_of = |x: &Element| -> Element {
            let mut out = l.zero_element();
            for (k, f) in x.iter().enumerate() {
                if !f.is_zero() {
                    add_scaled(&mut out, f, &psi[k]);
                }
            }
            out
        };
        let mut rho = BTreeMap::new();
        let one = l.ring().one();
        let minus = l.ring().int(-1);
        for i in 0..q.rank() {
            for j in i + 1..q.rank() {
                let mut v = self.rho_pair(i, j);
                add_scaled(&mut v, &one, &self.apply_lift(i, &psi[j]));
                add_scaled(&mut v, &minus, &self.apply_lift(j, &psi[i]));
                add_scaled(&mut v, &one, &l.bracket(&psi[i], &psi[j]));
                add_scaled(&mut v, &minus, &psi_of(&q.frame_bracket(i, j)));
                rho.insert((i, j), v);
            }
        }
        ExtensionTriple::new(q, l, lift, rho)
    }
}

pub(crate) fn add_scaled(acc: &mut Element, c: &Poly, v: &[Poly]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

/// The semidirect product for a genuine action (zero curvature).
pub fn semidirect(
    quotient: &LieRinehartAlgebra,
    kernel: &LieRinehartAlgebra,
    lift: Vec<PolyMatrix>,
) -> Result<ExtensionTriple> {
    let t = ExtensionTriple::new(quotient, kernel, lift, BTreeMap::new())?;
    for i in 0..quotient.rank() {
        for j in i + 1..quotient.rank() {
            if t.curvature(i, j).iter().flatten().any(|p| !p.is_zero()) {
                return Err(Error::precondition(format!(
                    "the lift is not an action: its curvature on ({}, {}) is nonzero; use the obstruction workflow instead",
                    quotient.name(i),
                    quotient.name(j)
                )));
            }
        }
    }
    Ok(t)
}

/// The total algebra of a validated triple; invalid triples are rejected.
pub fn extend_from_cocycle(t: &ExtensionTriple) -> Result<LieRinehartAlgebra> {
    let report = t.validate();
    if !report.passed() {
        return Err(Error::precondition(format!(
            "the extension data is invalid: {}",
            report.summary()
        )));
    }
    t.total()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Derivation, Field};

    fn ab(r: usize) -> LieRinehartAlgebra {
        LieRinehartAlgebra::abelian(&BaseRing::ground(Field::Rational), r)
    }

    fn zero_lift(q: &LieRinehartAlgebra, r: usize) -> Vec<PolyMatrix> {
        vec![vec![vec![q.ring().zero(); r]; r]; q.rank()]
    }

    #[test]
    fn heisenberg_as_central_extension() {
        let q = ab(2).with_names(vec!["x".into(), "y".into()]).unwrap();
        let l = ab(1).with_names(vec!["z".into()]).unwrap();
        let ring = q.ring().clone();
        let rho = BTreeMap::from([((0, 1), vec![ring.one()])]);
        let t = ExtensionTriple::new(&q, &l, zero_lift(&q, 1), rho).unwrap();
        assert!(t.validate().passed(), "{}", t.validate().summary());
        let e = t.total().unwrap();
        assert_eq!(e.names(), ["z", "x", "y"]);
        assert_eq!(
            e.frame_bracket(1, 2),
            vec![ring.one(), ring.zero(), ring.zero()]
        );
        let back = ExtensionTriple::from_extension(&e, &[0]).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn broken_cocycle_is_caught() {
        // Q = sl2 on the plane with rho(h, e) = (1, 0): not closed
        let q = LieRinehartAlgebra::sl2(Field::Rational);
        let ring = q.ring().clone();
        let c = |v: &[[i64; 2]; 2]| -> PolyMatrix {
            v.iter()
                .map(|r| r.iter().map(|&x| ring.int(x)).collect())
                .collect()
        };
        let lift = vec![
            c(&[[1, 0], [0, -1]]),
            c(&[[0, 1], [0, 0]]),
            c(&[[0, 0], [1, 0]]),
        ];
        let rho = BTreeMap::from([((0, 1), vec![ring.one(), ring.zero()])]);
        let t = ExtensionTriple::new(&q, &ab(2), lift, rho).unwrap();
        let report = t.validate();
        assert!(!report.check("cocycle").unwrap().passed);
        assert!(!report.passed());
    }

    #[test]
    fn semidirect_on_the_line() {
        let ring = BaseRing::with_vars(Field::Rational, &["t"]);
        let mut b = LieRinehartAlgebra::builder(&ring, vec!["e".into()]).unwrap();
        b.anchor(0, Derivation::partial(&ring, 0)).unwrap();
        let q = b.build();
        let l = LieRinehartAlgebra::abelian(&ring, 1)
            .with_names(vec!["m".into()])
            .unwrap();
        let t = semidirect(&q, &l, zero_lift(&q, 1)).unwrap();
        assert!(t.validate().passed(), "{}", t.validate().summary());
        assert_eq!(t.total().unwrap().rank(), 2);
    }

    #[test]
    fn sl2_on_the_plane() {
        let q = LieRinehartAlgebra::sl2(Field::Rational);
        let ring = q.ring().clone();
        let c = |v: &[[i64; 2]; 2]| -> PolyMatrix {
            v.iter()
                .map(|r| r.iter().map(|&x| ring.int(x)).collect())
                .collect()
        };
        // h, e, f in the defining representation
        let lift = vec![
            c(&[[1, 0], [0, -1]]),
            c(&[[0, 1], [0, 0]]),
            c(&[[0, 0], [1, 0]]),
        ];
        let t = semidirect(&q, &ab(2), lift).unwrap();
        assert!(t.validate().passed(), "{}", t.validate().summary());
        let bad = vec![
            c(&[[1, 0], [0, -1]]),
            c(&[[0, 1], [0, 0]]),
            c(&[[0, 0], [2, 0]]),
        ];
        assert!(matches!(
            semidirect(&q, &ab(2), bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gauge_preserves_validity() {
        let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
        let t = ExtensionTriple::from_extension(&h3, &[2]).unwrap();
        let ring = h3.ring().clone();
        let g = t.gauge(&[vec![ring.int(3)], vec![ring.int(-2)]]).unwrap();
        assert!(g.validate().passed());
    }
}
