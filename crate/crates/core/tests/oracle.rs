//! Cohomology tables against the dense oracle in `common`, slice by slice.

mod common;

use common::{golden_algebroids, modules, Data, GOLDEN_CUTOFF};
use lierinehart::ce_cohomology::{cohomology, CochainComplex};
use lierinehart::exact_algebra::Field;
use lierinehart::lie_rinehart::{LieRinehartAlgebra, Representation};

fn compare(name: &str, alg: &LieRinehartAlgebra, rep_name: &str, rep: &Representation) {
    let c = CochainComplex::new(alg, rep).unwrap();
    let lib = cohomology(&c, GOLDEN_CUTOFF, false).unwrap();
    let oracle = Data::of(alg, rep);
    for d in oracle.degrees(GOLDEN_CUTOFF) {
        let want = oracle.slice_dims(d);
        for (p, &h) in want.iter().enumerate() {
            assert_eq!(
                lib.dim(p, d),
                h,
                "{name} with {rep_name}: H^{p} in weight {d}"
            );
            let cochains = lib.row(p, d).map_or(0, |r| r.dim_cochains);
            assert_eq!(
                cochains,
                oracle.basis(p, d).len(),
                "{name} with {rep_name}: C^{p} in weight {d}"
            );
        }
    }
    assert_eq!(
        lib.dims(),
        oracle.dims(GOLDEN_CUTOFF),
        "{name} with {rep_name}"
    );
}

#[test]
fn golden_algebroids_match_the_oracle() {
    for (name, alg) in golden_algebroids() {
        assert!(alg.validate().passed(), "{name} is not a valid algebroid");
        for (rep_name, rep) in modules(&alg) {
            if rep_name == "adjoint" && !alg.has_zero_anchor() {
                continue;
            }
            compare(name, &alg, rep_name, &rep);
        }
    }
}

#[test]
fn finite_fields_match_the_oracle() {
    for p in [2, 3, 5] {
        let f = Field::Prime(p);
        for (name, alg) in [
            ("sl2", LieRinehartAlgebra::sl2(f)),
            ("h3", LieRinehartAlgebra::heisenberg(f)),
        ] {
            for (rep_name, rep) in modules(&alg) {
                compare(&format!("{name} over F{p}"), &alg, rep_name, &rep);
            }
        }
    }
}

#[test]
fn oracle_reproduces_known_tables() {
    let q = Field::Rational;
    let sl2 = LieRinehartAlgebra::sl2(q);
    assert_eq!(
        Data::of(&sl2, &Representation::trivial(&sl2, 1)).dims(0),
        [1, 0, 0, 1]
    );
    let h3 = LieRinehartAlgebra::heisenberg(q);
    assert_eq!(
        Data::of(&h3, &Representation::trivial(&h3, 1)).dims(0),
        [1, 2, 2, 1]
    );
}
