//! An outer action over F3 whose obstruction class does not vanish, next to
//! one that is realized by an extension.

use lierinehart::cli::Session;
use lierinehart::extensions::obstruction;

fn main() -> lierinehart::Result<()> {
    let session = Session::from_json(
        include_str!("../tests/data/obstruction_f3.json"),
        &Default::default(),
        true,
    )?;
    for name in ["obstructed", "curved"] {
        let a = session.outer_action(name)?;
        let o = obstruction(&a.quotient, &a.kernel, a.lift.clone())?;
        println!(
            "{name}: center of dim {}, cocycle closed: {}, exact: {}",
            o.central.dim(),
            o.closed,
            o.is_exact()
        );
        for (set, coords) in o.values() {
            let shown: Vec<String> = coords.iter().map(ToString::to_string).collect();
            println!("  o{set:?} = {shown:?}");
        }
        match o.complete() {
            Ok(t) => println!("  completed; total algebra of rank {}", t.total()?.rank()),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}
