//! An algebroid as a quotient of the free one on its frame.

use lierinehart::exact_algebra::Field;
use lierinehart::free_lie::present_as_quotient;
use lierinehart::lie_rinehart::LieRinehartAlgebra;

fn main() -> lierinehart::Result<()> {
    let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
    let p = present_as_quotient(&h3, 3)?;
    println!("surjective: {}", p.surjective);
    println!(
        "kernel dims by bracket length: {:?}",
        p.homogeneous_kernel_dims()
    );
    for (len, rels) in &p.relations {
        for r in rels {
            println!("  length {len}: {} = 0", p.display(h3.ring(), r));
        }
    }
    Ok(())
}
