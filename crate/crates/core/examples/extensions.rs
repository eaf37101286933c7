//! Equivalence, Baer sums and the classification of extensions over F5.

use std::collections::BTreeMap;

use lierinehart::exact_algebra::{BaseRing, Field};
use lierinehart::extensions::{
    central_extension, classify, enumerate_extensions, equivalent, star_sum, ExtensionTriple,
};
use lierinehart::lie_rinehart::LieRinehartAlgebra;

fn main() -> lierinehart::Result<()> {
    let k = BaseRing::ground(Field::Rational);
    let q = LieRinehartAlgebra::abelian(&k, 2).with_names(vec!["x".into(), "y".into()])?;
    let z = LieRinehartAlgebra::abelian(&k, 1).with_names(vec!["z".into()])?;
    let zero_lift = vec![vec![vec![k.zero()]]; 2];
    let split = ExtensionTriple::new(&q, &z, zero_lift.clone(), BTreeMap::new())?;
    let heis = ExtensionTriple::new(&q, &z, zero_lift, BTreeMap::from([((0, 1), vec![k.one()])]))?;
    println!(
        "Heisenberg equivalent to the split extension: {}",
        equivalent(&heis, &split)?.holds()
    );
    println!("read back from h3 it is: {}", {
        let h3 = LieRinehartAlgebra::heisenberg(Field::Rational);
        equivalent(&heis, &ExtensionTriple::from_extension(&h3, &[2])?)?.holds()
    });

    let f5 = BaseRing::ground(Field::Prime(5));
    let q5 = LieRinehartAlgebra::abelian(&f5, 2);
    let l5 = LieRinehartAlgebra::abelian(&f5, 1);
    let base = ExtensionTriple::new(&q5, &l5, vec![vec![vec![f5.zero()]]; 2], BTreeMap::new())?;
    let n = enumerate_extensions(&base, 100)?;
    println!(
        "F5: {} cocycles, dim H^2 = {}, {} classes",
        n.cocycles.len(),
        n.h2_dim,
        n.classes.len()
    );

    let (c1, c2) = (vec![f5.int(1)], vec![f5.int(2)]);
    let sum = star_sum(
        &central_extension(&base, &c1)?,
        &central_extension(&base, &c2)?,
        None,
    )?;
    println!("Baer sum of 1 and 2: cocycle {}", sum.rho[&(0, 1)][0]);
    let moved = classify(&classify(&base, &c1)?, &c2)?;
    println!(
        "acting by 1 then 2 equals acting by 3: {}",
        equivalent(&moved, &classify(&base, &[f5.int(3)])?)?.holds()
    );
    Ok(())
}
