//! The sharp truncation of the complex next to the ordinary one.

use lierinehart::ce_cohomology::{truncated_cohomology, CochainComplex};
use lierinehart::exact_algebra::{BaseRing, Field};
use lierinehart::lie_rinehart::{LieRinehartAlgebra, Representation};

fn main() -> lierinehart::Result<()> {
    let k = BaseRing::ground(Field::Rational);
    let ab2 = LieRinehartAlgebra::abelian(&k, 2);
    let c = CochainComplex::new(&ab2, &Representation::trivial(&ab2, 1))?;
    let t = truncated_cohomology(&c, 0, false)?;
    println!("ordinary:  {:?}", t.ordinary.dims());
    println!("truncated: {:?}", t.dims());
    println!(
        "dim H^1_(1) = dim C^0 - dim H^0 + dim H^1: {}",
        t.split_formula_holds
    );
    println!("agree from degree 2 on: {}", t.agrees_above_one);
    Ok(())
}
