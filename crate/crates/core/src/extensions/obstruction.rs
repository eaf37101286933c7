//! The obstruction to realizing an outer action by an extension.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::Poly;
use crate::extensions::center::{solve_inner, CentralPart};
use crate::extensions::triple::{add_scaled, ExtensionTriple};
use crate::lie_rinehart::{LieRinehartAlgebra, PolyMatrix};

/// The `Z(L)`-valued 3-cochain of a lift together with the data used to
/// build it.
///
/// `attempt` carries the lift and a `rho` with `ad rho = curvature`; it is a
/// valid triple exactly when the cocycle vanishes identically.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub attempt: ExtensionTriple,
    pub central: CentralPart,
    /// The cocycle in the central cochain space of degree 3.
    pub cocycle: Vec<Poly>,
    pub closed: bool,
    /// Some `beta` with `d beta = cocycle`, when the class vanishes.
    pub primitive: Option<Vec<Poly>>,
}

impl Obstruction {
    pub fn is_exact(&self) -> bool {
        self.primitive.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.cocycle.iter().all(Poly::is_zero)
    }

    /// Values of the cocycle on increasing frame triples of `Q`, in central
    /// coordinates.
    pub fn values(&self) -> BTreeMap<Vec<usize>, Vec<Poly>> {
        self.central.values(3, &self.cocycle)
    }

    /// A valid triple with the given lift: `rho - beta` for the primitive.
    pub fn complete(&self) -> Result<ExtensionTriple> {
        let beta = self.primitive.as_ref().ok_or_else(|| {
            Error::precondition(
                "the obstruction class is nonzero, so no extension realizes this outer action",
            )
        })?;
        let t = &self.attempt;
        let zero = t.kernel.ring().zero();
        let minus = t.kernel.ring().int(-1);
        let mut rho = t.rho.clone();
        for (set, coords) in self.central.values(2, beta) {
            let v = self.central.embed(&coords, t.kernel_rank(), &zero);
            let entry = rho
                .entry((set[0], set[1]))
                .or_insert_with(|| t.kernel.zero_element());
            add_scaled(entry, &minus, &v);
        }
        ExtensionTriple::new(&t.quotient, &t.kernel, t.lift.clone(), rho)
    }
}

/// Computes the obstruction of the outer action represented by `lift`.
///
/// Each lift must be a derivation of `L`, and its curvature must be inner;
/// otherwise the lift does not define a morphism into outer derivations.
pub fn obstruction(
    q: &LieRinehartAlgebra,
    l: &LieRinehartAlgebra,
    lift: Vec<PolyMatrix>,
) -> Result<Obstruction> {
    let probe = ExtensionTriple::new(q, l, lift, BTreeMap::new())?;
    if let Some(c) = probe
        .validate()
        .check("lift_derivation")
        .filter(|c| !c.passed)
    {
        return Err(Error::input(format!(
            "the lift is not by derivations of the kernel: {}",
            c.witness.clone().unwrap_or_default()
        )));
    }
    let n = q.rank();
    let mut rho = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = solve_inner(l, &probe.curvature(i, j))?.ok_or_else(|| {
                Error::precondition(format!(
                    "alpha does not land in Out-morphisms: the curvature on ({}, {}) is not an inner derivation",
                    q.name(i),
                    q.name(j)
                ))
            })?;
            rho.insert((i, j), v);
        }
    }
    let attempt = ExtensionTriple::new(q, l, probe.lift, rho)?;
    let central = CentralPart::of(&attempt)?;
    let mut values = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let defect = attempt.cocycle_defect(i, j, k);
                let coords = central.project(&defect).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "the cocycle defect on ({}, {}, {}) is not central; the kernel bracket is likely not constant",
                        q.name(i),
                        q.name(j),
                        q.name(k)
                    ))
                })?;
                values.insert(vec![i, j, k], coords);
            }
        }
    }
    let cocycle = central.cochain(3, &values);
    let closed =
        3 >= central.complex.top() || central.complex.apply(3, &cocycle).iter().all(Poly::is_zero);
    let primitive = central.primitive(3, &cocycle)?;
    Ok(Obstruction {
        attempt,
        central,
        cocycle,
        closed,
        primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{BaseRing, Field};

    fn consts(ring: &BaseRing, rows: &[&[i64]]) -> PolyMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| ring.int(x)).collect())
            .collect()
    }

    #[test]
    fn abelian_kernel_is_unobstructed() {
        let q = LieRinehartAlgebra::sl2(Field::Rational);
        let ring = q.ring().clone();
        let l = LieRinehartAlgebra::abelian(&ring, 2);
        let lift = vec![
            consts(&ring, &[&[1, 0], &[0, -1]]),
            consts(&ring, &[&[0, 1], &[0, 0]]),
            consts(&ring, &[&[0, 0], &[1, 0]]),
        ];
        let o = obstruction(&q, &l, lift).unwrap();
        assert!(o.is_zero() && o.closed && o.is_exact());
        assert!(o.complete().unwrap().validate().passed());
    }

    #[test]
    fn heisenberg_kernel_with_curved_lift() {
        // Q abelian of rank 3 acting on h3 through outer derivations that
        // commute only up to inner ones
        let ring = BaseRing::ground(Field::Rational);
        let q = LieRinehartAlgebra::abelian(&ring, 3);
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        // h3 frame (x, y, z), {x, y} = z; [D1, D2] = ad x
        let d1 = consts(&ring, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let d2 = consts(&ring, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
        let d3 = consts(&ring, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let o = obstruction(&q, &l, vec![d1, d2, d3]).unwrap();
        assert!(o.closed);
        assert!(o.attempt.validate().check("curvature").unwrap().passed);
        assert!(o.attempt.rho.contains_key(&(0, 1)));
        if o.is_exact() {
            let done = o.complete().unwrap();
            assert!(done.validate().passed(), "{}", done.validate().summary());
        }
    }

    #[test]
    fn rank_one_quotient_has_no_three_cochains() {
        let ring = BaseRing::ground(Field::Rational);
        let q = LieRinehartAlgebra::abelian(&ring, 1);
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        let d = consts(&ring, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let o = obstruction(&q, &l, vec![d]).unwrap();
        assert!(o.is_zero() && o.is_exact());
    }

    #[test]
    fn non_derivation_lift_is_rejected() {
        let ring = BaseRing::ground(Field::Rational);
        let q = LieRinehartAlgebra::abelian(&ring, 1);
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        let d = consts(&ring, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(matches!(obstruction(&q, &l, vec![d]), Err(Error::Input(_))));
    }

    #[test]
    fn non_inner_curvature_is_rejected() {
        // the commutator of y -> x and x -> y is diag(-1, 1, 0), not inner
        let ring = BaseRing::ground(Field::Rational);
        let q = LieRinehartAlgebra::abelian(&ring, 2);
        let l = LieRinehartAlgebra::heisenberg(Field::Rational);
        let d1 = consts(&ring, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let d2 = consts(&ring, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let err = obstruction(&q, &l, vec![d1, d2]).unwrap_err();
        assert!(err.to_string().contains("Out-morphisms"), "{err}");
    }

    /// A six-dimensional nilpotent kernel with one-dimensional center and
    /// three outer derivations commuting modulo inner ones, over F3.
    pub(crate) fn obstructed_over_f3() -> (LieRinehartAlgebra, LieRinehartAlgebra, Vec<PolyMatrix>)
    {
        let f = Field::prime(3).unwrap();
        let l = LieRinehartAlgebra::lie_algebra(
            f,
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &[
                (0, 1, &[(3, 2)]),
                (0, 2, &[(5, 1)]),
                (0, 3, &[(5, 2)]),
                (1, 2, &[(5, 1)]),
                (1, 3, &[(4, 2)]),
                (1, 4, &[(5, 1)]),
            ],
        )
        .unwrap();
        let ring = l.ring().clone();
        let q = LieRinehartAlgebra::abelian(&ring, 3);
        let m = |rows: [[i64; 6]; 6]| -> PolyMatrix {
            rows.iter()
                .map(|r| r.iter().map(|&x| ring.int(x)).collect())
                .collect()
        };
        let lift = vec![
            m([
                [0, 2, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [2, 2, 0, 0, 0, 0],
                [1, 1, 0, 0, 0, 0],
                [0, 0, 1, 2, 0, 0],
                [1, 1, 1, 1, 0, 0],
            ]),
            m([
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 1, 1, 0, 0, 0],
            ]),
            m([
                [0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0],
                [0, 2, 0, 0, 0, 0],
                [1, 2, 0, 0, 0, 0],
                [1, 2, 0, 2, 0, 0],
                [0, 0, 1, 1, 1, 0],
            ]),
        ];
        (q, l, lift)
    }

    #[test]
    fn nonzero_class_blocks_every_completion() {
        let (q, l, lift) = obstructed_over_f3();
        assert!(l.validate().passed());
        let o = obstruction(&q, &l, lift).unwrap();
        assert_eq!(o.central.dim(), 1);
        assert!(o.closed && !o.is_zero() && !o.is_exact());
        assert!(o.complete().is_err());
        // every cochain with the same lift differs from rho by a central one
        let ring = l.ring().clone();
        let z = o.central.embed(&[ring.one()], l.rank(), &ring.zero());
        for k in 0..27 {
            let mut rho = o.attempt.rho.clone();
            for (n, pair) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                let c = ring.int((k / 3i64.pow(n as u32)) % 3);
                let entry = rho.entry(pair).or_insert_with(|| l.zero_element());
                add_scaled(entry, &c, &z);
            }
            let t = ExtensionTriple::new(&q, &l, o.attempt.lift.clone(), rho).unwrap();
            assert!(!t.validate().passed());
        }
    }
}
