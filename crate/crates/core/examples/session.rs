//! Drives the command line entry point on a session file and prints the
//! result documents.

use lierinehart::cli::run;

fn main() {
    let session = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/golden.json");
    let commands: [&[&str]; 4] = [
        &["cohomology", "--algebroid", "sl2"],
        &["five-term", "--algebroid", "h3", "--ideal", "z"],
        &["equiv", "--e1", "heis", "--e2", "semidirect"],
        &["derivations", "--algebroid", "h3"],
    ];
    for args in commands {
        let mut argv = vec!["lrcalc", "--session", session, "--json-indent", "0"];
        argv.extend_from_slice(args);
        let out = run(argv);
        println!("$ lrcalc {} -> exit {}", args.join(" "), out.code);
        print!("{}", out.stdout);
        eprint!("{}", out.stderr);
    }
}
