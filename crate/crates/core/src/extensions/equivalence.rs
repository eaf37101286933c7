//! Equivalence of extensions, the star sum, and the action of central
//! cocycles on extensions with a fixed outer action.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ce_cohomology::cohomology;
use crate::error::{Error, Result};
use crate::exact_algebra::{ExactMatrix, Poly, Scalar, SparseVec};
use crate::extensions::center::{solve_inner, CentralPart};
use crate::extensions::triple::{add_scaled, ExtensionTriple};
use crate::lie_rinehart::{
    apply_matrix, display_vector, Element, LieRinehartAlgebra, ValidationReport,
};

/// An isomorphism `E1 -> E2` that is the identity on `L` and covers the
/// identity of `Q`: `F(x_i) = x_i + psi_i`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub psi: Vec<Element>,
    /// Inner part: `ad phi_i = lift2_i - lift1_i`.
    pub phi: Vec<Element>,
    /// Central part `b`, with `psi = b - phi`.
    pub central: Vec<Element>,
    /// `F` on the frame of the total algebra of `E1`, in the frame of `E2`.
    pub images: Vec<Element>,
    pub report: ValidationReport,
}

#[derive(Clone, Debug)]
pub enum Equivalence {
    Equivalent(EquivalenceWitness),
    Inequivalent { reason: String },
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

fn same_base(e1: &ExtensionTriple, e2: &ExtensionTriple) -> Result<()> {
    if e1.quotient != e2.quotient {
        return Err(Error::input("the two extensions have different quotients"));
    }
    if e1.kernel != e2.kernel {
        return Err(Error::input("the two extensions have different kernels"));
    }
    Ok(())
}

fn diff(a: &[Poly], b: &[Poly]) -> Element {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Decides whether two extensions of `Q` by the same `L` are equivalent.
///
/// The lifts are first aligned by an inner shift `phi`; the remaining
/// difference of the cochains must then be `d b` for a central 1-cochain
/// `b`, solved exactly on every weight slice where the difference lives.
pub fn equivalent(e1: &ExtensionTriple, e2: &ExtensionTriple) -> Result<Equivalence> {
    same_base(e1, e2)?;
    let l = &e1.kernel;
    let q = &e1.quotient;
    let n = q.rank();
    let mut phi = Vec::with_capacity(n);
    for i in 0..n {
        let target: Vec<Vec<Poly>> = e2.lift[i]
            .iter()
            .zip(&e1.lift[i])
            .map(|(a, b)| diff(a, b))
            .collect();
        let v = solve_inner(l, &target)?.ok_or_else(|| {
            Error::precondition(format!(
                "different outer actions: the two lifts of '{}' differ by a derivation that is not inner",
                q.name(i)
            ))
        })?;
        phi.push(v);
    }
    let minus_phi: Vec<Element> = phi.iter().map(|v| v.iter().map(|p| -p).collect()).collect();
    let aligned = e2.gauge(&minus_phi)?;
    debug_assert_eq!(aligned.lift, e1.lift);

    let central = CentralPart::of(e1)?;
    let mut values = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = diff(&e1.rho_pair(i, j), &aligned.rho_pair(i, j));
            if d.iter().all(Poly::is_zero) {
                continue;
            }
            match central.project(&d) {
                Some(c) => {
                    values.insert(vec![i, j], c);
                }
                None => {
                    return Ok(Equivalence::Inequivalent {
                        reason: format!(
                            "after aligning the lifts the cochains differ on ({}, {}) by {}, which is not central",
                            q.name(i),
                            q.name(j),
                            display_vector(l.ring(), l.names(), &d)
                        ),
                    })
                }
            }
        }
    }
    let delta = central.cochain(2, &values);
    let Some(b) = central.primitive(2, &delta)? else {
        return Ok(Equivalence::Inequivalent {
            reason: "the difference of the cochains is a central cocycle that is not exact".into(),
        });
    };
    let zero = l.ring().zero();
    let bvals = central.values(1, &b);
    let central_part: Vec<Element> = (0..n)
        .map(|i| {
            bvals
                .get(&vec![i])
                .map_or_else(|| l.zero_element(), |c| central.embed(c, l.rank(), &zero))
        })
        .collect();
    let psi: Vec<Element> = central_part
        .iter()
        .zip(&phi)
        .map(|(bv, pv)| diff(bv, pv))
        .collect();
    let (images, report) = check_morphism(e1, e2, &psi)?;
    Ok(Equivalence::Equivalent(EquivalenceWitness {
        psi,
        phi,
        central: central_part,
        images,
        report,
    }))
}

/// Builds `F(l) = l`, `F(x_i) = x_i + psi_i` between the total algebras and
/// checks that it is a morphism of algebroids.
fn check_morphism(
    e1: &ExtensionTriple,
    e2: &ExtensionTriple,
    psi: &[Element],
) -> Result<(Vec<Element>, ValidationReport)> {
    let (t1, t2) = (e1.total()?, e2.total()?);
    let r = e1.kernel_rank();
    let ring = t1.ring();
    let images: Vec<Element> = (0..t1.rank())
        .map(|a| {
            let mut v = t2.basis_element(a);
            if a >= r {
                for (k, p) in psi[a - r].iter().enumerate() {
                    v[k] = &v[k] + p;
                }
            }
            v
        })
        .collect();
    let apply = |u: &[Poly]| -> Element {
        let mut out = t2.zero_element();
        for (a, f) in u.iter().enumerate() {
            if !f.is_zero() {
                add_scaled(&mut out, f, &images[a]);
            }
        }
        out
    };
    let mut report = ValidationReport::default();
    let anchor_bad = (0..t1.rank()).find(|&a| t2.anchor_of(&images[a]) != *t1.anchor(a));
    report.record(
        "anchor_compatible",
        anchor_bad.map(|a| t1.name(a).to_string()),
    );
    let mut witness = None;
    'pairs: for a in 0..t1.rank() {
        for b in a + 1..t1.rank() {
            let lhs = apply(&t1.frame_bracket(a, b));
            let rhs = t2.bracket(&images[a], &images[b]);
            if lhs != rhs {
                witness = Some(format!("({}, {})", t1.name(a), t1.name(b)));
                break 'pairs;
            }
        }
    }
    report.record("bracket_preserving", witness);
    let fixes_kernel = (0..r).all(|a| images[a] == t2.basis_element(a));
    report.record(
        "identity_on_kernel",
        (!fixes_kernel).then(|| "kernel frame moved".to_string()),
    );
    let covers = (r..t1.rank()).all(|a| {
        (r..t2.rank()).all(|k| images[a][k] == if k == a { ring.one() } else { ring.zero() })
    });
    report.record(
        "covers_quotient_identity",
        (!covers).then(|| "quotient component changed".to_string()),
    );
    Ok((images, report))
}

fn invert(m: &ExactMatrix) -> Result<ExactMatrix> {
    let s = m.rows();
    if m.cols() != s || m.rank() != s {
        return Err(Error::input(
            "the identification of the centers is not invertible",
        ));
    }
    let cols: Vec<SparseVec> = (0..s)
        .map(|t| {
            m.solve(&SparseVec::from([(t, m.field().one())]))
                .expect("invertible")
        })
        .collect();
    Ok(ExactMatrix::from_columns(m.field(), s, &cols))
}

/// The star sum of two extensions of the same `Q`: the fibre product over
/// `Q` modulo the antidiagonal copy of the center.
///
/// `center_map` sends central coordinates of `E1` to those of `E2`
/// (`z_u -> sum_t M[t][u] z'_t`); the identity when omitted. For abelian
/// kernels this is the Baer sum and the cochains add.
pub fn star_sum(
    e1: &ExtensionTriple,
    e2: &ExtensionTriple,
    center_map: Option<&ExactMatrix>,
) -> Result<ExtensionTriple> {
    if e1.quotient != e2.quotient {
        return Err(Error::input(
            "star sum needs extensions of the same quotient",
        ));
    }
    let q = &e1.quotient;
    let (l1, l2) = (&e1.kernel, &e2.kernel);
    let (c1, c2) = (CentralPart::of(e1)?, CentralPart::of(e2)?);
    let s = c1.dim();
    if c2.dim() != s {
        return Err(Error::input(format!(
            "center mismatch: dimensions {} and {}",
            s,
            c2.dim()
        )));
    }
    let field = l1.field();
    let theta = match center_map {
        Some(m) if m.rows() != s || m.cols() != s => {
            return Err(Error::input(format!("center map must be {s}x{s}")));
        }
        Some(m) => m.clone(),
        None => ExactMatrix::identity(field, s),
    };
    let inv = invert(&theta)?;
    let ring = l1.ring();
    let constant = |c: Scalar| ring.constant(c);
    for i in 0..q.rank() {
        let (a1, a2) = (c1.rep.matrix(i), c2.rep.matrix(i));
        for t in 0..s {
            for u in 0..s {
                // (A2 M)[t][u] == (M A1)[t][u]
                let mut lhs = ring.zero();
                let mut rhs = ring.zero();
                for v in 0..s {
                    lhs = &lhs + &(&a2[t][v] * &constant(theta.get(v, u)));
                    rhs = &rhs + &(&constant(theta.get(t, v)) * &a1[v][u]);
                }
                if lhs != rhs {
                    return Err(Error::input(format!(
                        "center mismatch: the actions of '{}' on the two centers do not correspond",
                        q.name(i)
                    )));
                }
            }
        }
    }

    let (r1, r2) = (l1.rank(), l2.rank());
    let pivots = c2.pivot_positions();
    let kept: Vec<usize> = (0..r2).filter(|c| !pivots.contains(c)).collect();
    let rank = r1 + kept.len();
    let project = |v1: &[Poly], v2: &[Poly]| -> Element {
        let mut out: Element = v1.to_vec();
        out.extend(kept.iter().map(|&c| v2[c].clone()));
        for (t, &p) in pivots.iter().enumerate() {
            let f = &v2[p];
            if f.is_zero() {
                continue;
            }
            // e'_p = z'_t - sum_c r_tc e'_c, and z'_t = theta(sum_u inv[u][t] z_u)
            for u in 0..s {
                let w = inv.get(u, t);
                if w.is_zero() {
                    continue;
                }
                for a in 0..r1 {
                    let coef = &w * &c1.basis[u][a];
                    if !coef.is_zero() {
                        out[a] = &out[a] + &f.scale(&coef);
                    }
                }
            }
            for (k, &c) in kept.iter().enumerate() {
                let rc = &c2.basis[t][c];
                if !rc.is_zero() {
                    out[r1 + k] = &out[r1 + k] - &f.scale(rc);
                }
            }
        }
        out
    };
    let split = |k: &[Poly]| -> (Element, Element) {
        let v1 = k[..r1].to_vec();
        let mut v2 = l2.zero_element();
        for (n, &c) in kept.iter().enumerate() {
            v2[c] = k[r1 + n].clone();
        }
        (v1, v2)
    };

    let n1 = l1.names();
    let n2: Vec<&String> = kept.iter().map(|&c| &l2.names()[c]).collect();
    let clash = n1.iter().any(|n| n2.contains(&n)) || n1.iter().any(|n| n.is_empty());
    let names: Vec<String> = if clash {
        n1.iter()
            .map(|n| format!("{n}_1"))
            .chain(n2.iter().map(|n| format!("{n}_2")))
            .collect()
    } else {
        n1.iter()
            .cloned()
            .chain(n2.iter().map(|n| n.to_string()))
            .collect()
    };
    let mut b = LieRinehartAlgebra::builder(ring, names)?;
    for a in 0..rank {
        for c in a + 1..rank {
            let (x1, x2) = split(&unit(ring, rank, a));
            let (y1, y2) = split(&unit(ring, rank, c));
            let v = project(&l1.bracket(&x1, &y1), &l2.bracket(&x2, &y2));
            if v.iter().any(|p| !p.is_zero()) {
                b.bracket(a, c, v)?;
            }
        }
    }
    if let (Some(w1), Some(w2)) = (l1.explicit_weights(), l2.explicit_weights()) {
        b.weights(
            w1.iter()
                .copied()
                .chain(kept.iter().map(|&c| w2[c]))
                .collect(),
        )?;
    }
    let kernel = b.build();
    let lift = (0..q.rank())
        .map(|i| {
            let cols: Vec<Element> = (0..rank)
                .map(|a| {
                    let (v1, v2) = split(&unit(ring, rank, a));
                    project(
                        &apply_matrix(l1, &e1.lift[i], &v1),
                        &apply_matrix(l2, &e2.lift[i], &v2),
                    )
                })
                .collect();
            (0..rank)
                .map(|row| (0..rank).map(|col| cols[col][row].clone()).collect())
                .collect()
        })
        .collect();
    let mut rho = BTreeMap::new();
    for i in 0..q.rank() {
        for j in i + 1..q.rank() {
            let v = project(&e1.rho_pair(i, j), &e2.rho_pair(i, j));
            rho.insert((i, j), v);
        }
    }
    ExtensionTriple::new(q, &kernel, lift, rho)
}

fn unit(ring: &crate::exact_algebra::BaseRing, n: usize, a: usize) -> Element {
    let mut v = vec![ring.zero(); n];
    v[a] = ring.one();
    v
}

/// The abelian extension of `Q` by the center of `e`'s kernel with the
/// induced action and cochain `c` (central coordinates).
pub fn central_extension(e: &ExtensionTriple, c: &[Poly]) -> Result<ExtensionTriple> {
    let central = CentralPart::of(e)?;
    if c.len() != central.cochain_len(2) {
        return Err(Error::input(format!(
            "a central 2-cochain has {} coefficients here, got {}",
            central.cochain_len(2),
            c.len()
        )));
    }
    let base = ExtensionTriple::from_representation(&e.quotient, &central.rep)?;
    let rho = central
        .values(2, c)
        .into_iter()
        .map(|(set, v)| ((set[0], set[1]), v))
        .collect();
    ExtensionTriple::new(&e.quotient, &base.kernel, base.lift, rho)
}

/// Acts on `e0` by the class of a closed central 2-cochain `c`: the star
/// sum of `e0` with the abelian extension by the center with cochain `c`.
pub fn classify(e0: &ExtensionTriple, c: &[Poly]) -> Result<ExtensionTriple> {
    let central = CentralPart::of(e0)?;
    let d = central.complex.apply(2, c);
    if d.iter().any(|p| !p.is_zero()) {
        return Err(Error::input("the central 2-cochain is not closed"));
    }
    star_sum(e0, &central_extension(e0, c)?, None)
}

/// All extensions `classify(e0, c)` for `c` running over the closed central
/// 2-cochains, grouped into equivalence classes.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub field_order: u32,
    pub cocycle_dim: usize,
    pub h2_dim: usize,
    /// The cocycles, in central cochain coordinates over the ground field.
    #[serde(skip)]
    pub cocycles: Vec<Vec<Poly>>,
    /// Indices into `cocycles`, one list per class; the zero cocycle is in
    /// the first class.
    pub classes: Vec<Vec<usize>>,
}

/// The cocycles are enumerated exhaustively, so this needs a finite ground
/// field, `A = k`, and at most `max_members` cocycles.
pub fn enumerate_extensions(e0: &ExtensionTriple, max_members: usize) -> Result<Enumeration> {
    let field = e0.kernel.field();
    let elements = field
        .elements()
        .ok_or_else(|| Error::Unsupported("enumeration needs a finite ground field".into()))?;
    let ring = e0.kernel.ring();
    if ring.nvars() != 0 {
        return Err(Error::Unsupported(
            "enumeration needs the ground field as base ring".into(),
        ));
    }
    let central = CentralPart::of(e0)?;
    let c = &central.complex;
    let mut basis: Vec<Vec<Poly>> = Vec::new();
    for d in c.degrees(0) {
        let slice = c.slice(2, d);
        for v in c.differential(2, d)?.kernel_basis() {
            basis.push(c.cochain(2, &slice, &v));
        }
    }
    let p = elements.len();
    let total = (0..basis.len()).try_fold(1usize, |acc, _| {
        acc.checked_mul(p).filter(|&t| t <= max_members)
    });
    let total = total.ok_or_else(|| {
        Error::Unsupported(format!(
            "{} cocycles of dimension {} exceed the enumeration limit {max_members}",
            field,
            basis.len()
        ))
    })?;
    let h2_dim = cohomology(c, 0, false)?.dims().get(2).copied().unwrap_or(0);
    let len = central.cochain_len(2);
    let mut cocycles = Vec::with_capacity(total);
    for mut k in 0..total {
        let mut v = vec![ring.zero(); len];
        for vec in &basis {
            let coef = &elements[k % p];
            k /= p;
            if !coef.is_zero() {
                for (a, f) in v.iter_mut().zip(vec) {
                    *a = &*a + &f.scale(coef);
                }
            }
        }
        cocycles.push(v);
    }
    let members: Vec<ExtensionTriple> = cocycles
        .iter()
        .map(|c| classify(e0, c))
        .collect::<Result<_>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, m) in members.iter().enumerate() {
        let mut home = None;
        for (n, class) in classes.iter().enumerate() {
            if equivalent(&members[class[0]], m)?.holds() {
                home = Some(n);
                break;
            }
        }
        match home {
            Some(n) => classes[n].push(k),
            None => classes.push(vec![k]),
        }
    }
    Ok(Enumeration {
        field_order: p as u32,
        cocycle_dim: basis.len(),
        h2_dim,
        cocycles,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Field};
    use crate::extensions::triple::semidirect;
    use crate::lie_rinehart::PolyMatrix;

    fn plane(field: Field) -> (LieRinehartAlgebra, LieRinehartAlgebra) {
        let ring = BaseRing::ground(field);
        let q = LieRinehartAlgebra::abelian(&ring, 2)
            .with_names(vec!["x".into(), "y".into()])
            .unwrap();
        let l = LieRinehartAlgebra::abelian(&ring, 1)
            .with_names(vec!["z".into()])
            .unwrap();
        (q, l)
    }

    fn zero_lift(q: &LieRinehartAlgebra, r: usize) -> Vec<PolyMatrix> {
        vec![vec![vec![q.ring().zero(); r]; r]; q.rank()]
    }

    fn central(q: &LieRinehartAlgebra, l: &LieRinehartAlgebra, c: i64) -> ExtensionTriple {
        let rho = BTreeMap::from([((0, 1), vec![q.ring().int(c)])]);
        ExtensionTriple::new(q, l, zero_lift(q, 1), rho).unwrap()
    }

    #[test]
    fn heisenberg_is_not_split() {
        let (q, l) = plane(Field::Rational);
        let h = central(&q, &l, 1);
        let s = semidirect(&q, &l, zero_lift(&q, 1)).unwrap();
        assert!(!equivalent(&h, &s).unwrap().holds());
        match equivalent(&h, &h).unwrap() {
            Equivalence::Equivalent(w) => {
                assert!(w.report.passed());
                assert!(w.psi.iter().flatten().all(Poly::is_zero));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gauge_transforms_are_equivalences() {
        let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
        let ring = h3.ring().clone();
        let t = ExtensionTriple::from_extension(&h3, &[2]).unwrap();
        let g = t.gauge(&[vec![ring.int(3)], vec![ring.int(-2)]]).unwrap();
        match equivalent(&t, &g).unwrap() {
            Equivalence::Equivalent(w) => {
                assert!(w.report.passed(), "{}", w.report.summary());
                assert_eq!(g.gauge(&w.psi).unwrap(), t);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn baer_sum_adds_cochains() {
        let (q, l) = plane(Field::Rational);
        let sum = star_sum(&central(&q, &l, 1), &central(&q, &l, 1), None).unwrap();
        assert_eq!(sum.rho_pair(0, 1), vec![q.ring().int(2)]);
        assert_eq!(sum.kernel.names(), ["z"]);
    }

    #[test]
    fn doubled_class_vanishes_in_characteristic_two() {
        let (q, l) = plane(Field::prime(2).unwrap());
        let h = central(&q, &l, 1);
        let sum = star_sum(&h, &h, None).unwrap();
        let s = semidirect(&q, &l, zero_lift(&q, 1)).unwrap();
        assert!(equivalent(&sum, &s).unwrap().holds());
    }

    #[test]
    fn five_classes_over_f5() {
        let (q, l) = plane(Field::prime(5).unwrap());
        let s = semidirect(&q, &l, zero_lift(&q, 1)).unwrap();
        let e = enumerate_extensions(&s, 1000).unwrap();
        assert_eq!((e.cocycle_dim, e.h2_dim), (1, 1));
        assert_eq!(e.classes.len(), 5);
        assert!(e.classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn sl2_extensions_split() {
        let q = LieRinehartAlgebra::sl2(Field::prime(7).unwrap());
        let l = LieRinehartAlgebra::abelian(q.ring(), 1);
        let s = semidirect(&q, &l, zero_lift(&q, 1)).unwrap();
        let e = enumerate_extensions(&s, 1000).unwrap();
        assert_eq!(e.h2_dim, 0);
        assert_eq!(e.classes.len(), 1);
        assert_eq!(e.classes[0].len(), 7usize.pow(e.cocycle_dim as u32));
    }

    #[test]
    fn nonabelian_star_with_split_center_extension() {
        let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
        let ring = h3.ring().clone();
        let t = ExtensionTriple::from_extension(&h3, &[1, 2]).unwrap();
        let zero = vec![ring.zero(); CentralPart::of(&t).unwrap().cochain_len(2)];
        let d = central_extension(&t, &zero).unwrap();
        let star = star_sum(&t, &d, None).unwrap();
        assert_eq!(star, t);
        assert!(equivalent(&star, &t).unwrap().holds());
    }
}
