//! The low-degree exact sequence of h3 over its center.

use lierinehart::ce_cohomology::five_term_check;
use lierinehart::exact_algebra::Field;
use lierinehart::lie_rinehart::{LieRinehartAlgebra, Representation};

fn main() -> lierinehart::Result<()> {
    let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
    let z = h3.index_of("z").expect("frame element z");
    let r = five_term_check(&h3, &[z], &Representation::trivial(&h3, 1))?;
    println!("ideal {:?}, quotient {:?}", r.ideal, r.quotient);
    println!(
        "H^1(Q), H^1(E), H^0(Q; H^1(L)), H^2(Q), H^2(E) = {:?}",
        r.dims
    );
    println!("inflation injective: {}", r.inflation_injective);
    println!(
        "im inf = ker res ({} = {}): {}",
        r.dim_image_inflation, r.dim_kernel_restriction, r.exact_at_h1
    );
    Ok(())
}
