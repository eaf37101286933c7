//! Lyndon bases, the skew enveloping algebra and vanishing of free
//! cohomology.

use lierinehart::exact_algebra::{BaseRing, Derivation, Field};
use lierinehart::free_lie::{
    display_lie, free_cohomology_vanishing_check, free_lie_rinehart, witt_count, FreeLieAlgebra,
    SkewAlgebra,
};
use lierinehart::lie_rinehart::Representation;

fn main() -> lierinehart::Result<()> {
    let free = FreeLieAlgebra::new(Field::Rational, vec!["a".into(), "b".into()], 5)?;
    for n in 1..=5 {
        let words: Vec<_> = free.basis().into_iter().filter(|w| w.len() == n).collect();
        println!(
            "length {n}: {} words (Witt: {})",
            words.len(),
            witt_count(2, n)
        );
    }
    let x = free.evaluate(&free.parse("a")?)?;
    let y = free.evaluate(&free.parse("[b, [a, [a, b]]]")?)?;
    println!(
        "[{}, {}] = {}",
        display_lie(&x, free.names()),
        display_lie(&y, free.names()),
        display_lie(&free.bracket(&x, &y)?, free.names())
    );

    // s t - t s = 1 in the skew algebra of d/dt
    let ring = BaseRing::with_vars(Field::Rational, &["t"]);
    let skew = SkewAlgebra::new(&ring, vec!["s".into()], vec![Derivation::partial(&ring, 0)])?;
    for expr in ["s*t - t*s", "s^2*t^3", "(s + t)^2"] {
        let u = skew.parse(expr)?;
        println!(
            "{expr} = {}   eps = {}",
            skew.display(&u),
            skew.augmentation(&u).display_with(ring.vars())
        );
    }

    let fr = free_lie_rinehart(
        &ring,
        vec!["s".into()],
        vec![Derivation::partial(&ring, 0)],
        3,
    )?;
    let report = free_cohomology_vanishing_check(&fr, &Representation::trivial(fr.algebra(), 1))?;
    println!(
        "H^2 = H^3 = 0 on slices up to {}: {}",
        report.safe_bound, report.all_vanish
    );
    Ok(())
}
