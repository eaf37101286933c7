//! Cohomology tables of a few small algebroids.
//!
//! ```text
//! cargo run --example cohomology
//! ```

use lierinehart::ce_cohomology::{cohomology, CochainComplex};
use lierinehart::exact_algebra::{BaseRing, Derivation, Field};
use lierinehart::lie_rinehart::{LieRinehartAlgebra, Representation};

fn main() -> lierinehart::Result<()> {
    let q = Field::Rational;
    for alg in [
        LieRinehartAlgebra::sl2(q),
        LieRinehartAlgebra::heisenberg(q),
    ] {
        let c = CochainComplex::new(&alg, &Representation::trivial(&alg, 1))?;
        let h = cohomology(&c, 0, true)?;
        println!(
            "{:?} with trivial coefficients: {:?}",
            alg.names(),
            h.dims()
        );
        for ((p, d), reps) in &h.representatives {
            println!("  H^{p} (weight {d}): {} representative(s)", reps.len());
        }
    }

    // vector fields on the line: the de Rham complex of k[t]
    let ring = BaseRing::with_vars(q, &["t"]);
    let mut b = LieRinehartAlgebra::builder(&ring, vec!["d".into()])?;
    b.anchor(0, Derivation::partial(&ring, 0))?;
    let line = b.build();
    let c = CochainComplex::new(&line, &Representation::trivial(&line, 1))?;
    let h = cohomology(&c, 4, false)?;
    println!("{}: {:?}", h.scope(), h.dims());
    for row in &h.rows {
        println!(
            "  p={} weight={} C={} H={}",
            row.p, row.degree, row.dim_cochains, row.dim_h
        );
    }
    Ok(())
}
