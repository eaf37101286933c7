//! Golden documents for the command line. Set `UPDATE_GOLDEN=1` to rewrite
//! the files under `tests/golden/` after an intended output change.

use std::path::PathBuf;
use std::process::Command;

use lierinehart::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

fn lrcalc(session: &str, args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["lrcalc".to_string(), "--session".into(), data(session)];
    argv.extend(args.iter().map(|s| s.to_string()));
    let out = run(argv);
    (out.code, out.stdout, out.stderr)
}

/// Runs the case twice, compares with the golden file and returns the
/// parsed result payload.
fn case(name: &str, session: &str, args: &[&str], code: i32) -> Value {
    let (c, stdout, stderr) = lrcalc(session, args);
    assert_eq!(c, code, "{name}: exit code; stderr: {stderr}");
    assert_eq!(
        lrcalc(session, args).1,
        stdout,
        "{name}: output is not deterministic"
    );
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &stdout).unwrap();
    } else {
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(stdout, want, "{name}: differs from {}", path.display());
    }
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    doc["result"].clone()
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

#[test]
fn cohomology_tables() {
    let sl2 = case(
        "sl2_trivial",
        "golden.json",
        &["cohomology", "--algebroid", "sl2", "--rep", "trivial"],
        0,
    );
    assert_eq!(dims(&sl2), [1, 0, 0, 1]);
    let h3 = case(
        "h3_trivial",
        "golden.json",
        &["cohomology", "--algebroid", "h3", "--witness"],
        0,
    );
    assert_eq!(dims(&h3), [1, 2, 2, 1]);
    let plane = case(
        "sl2_plane",
        "golden.json",
        &[
            "cohomology",
            "--algebroid",
            "sl2",
            "--rep",
            "plane",
            "--witness",
        ],
        0,
    );
    assert_eq!(dims(&plane), [0, 0, 0, 0]);
    let adj = case(
        "aff1_adjoint",
        "golden.json",
        &[
            "cohomology",
            "--algebroid",
            "aff1",
            "--rep",
            "adjoint",
            "--witness",
        ],
        0,
    );
    assert_eq!(adj["table"].as_array().unwrap().len(), 3);
    let line = case(
        "line_de_rham",
        "polynomial.json",
        &["cohomology", "--algebroid", "vf"],
        0,
    );
    assert_eq!(dims(&line), [1, 0]);
}

#[test]
fn truncated_table_has_no_degree_zero() {
    let t = case(
        "ab2_truncated",
        "golden.json",
        &["truncated", "--algebroid", "ab2", "--rep", "trivial"],
        0,
    );
    let h0: Vec<&Value> = t["table"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["p"] == 0)
        .collect();
    assert!(!h0.is_empty() && h0.iter().all(|r| r["dim_H"] == 0));
    assert_eq!(dims(&t), [0, 2, 1]);
    assert_eq!(t["split_formula_holds"], true);
}

#[test]
fn five_term_and_structure() {
    let f = case(
        "h3_five_term",
        "golden.json",
        &["five-term", "--algebroid", "h3", "--ideal", "z"],
        0,
    );
    assert_eq!(f["dims"], serde_json::json!([2, 2, 1, 1, 2]));
    let z = case(
        "h3_center",
        "golden.json",
        &["center", "--algebroid", "h3"],
        0,
    );
    assert_eq!(z["dim"], 1);
    let d = case(
        "h3_derivations",
        "golden.json",
        &["derivations", "--algebroid", "h3"],
        0,
    );
    // Der(h3) = 6, Inn = 2
    assert_eq!(d["total"]["der"], 6);
    assert_eq!(d["total"]["inner"], 2);
    let g = case(
        "line_graded_bracket",
        "polynomial.json",
        &["graded-bracket", "--algebroid", "vf"],
        0,
    );
    assert_eq!(g["passed"], true);
    case("golden_validate", "golden.json", &["validate"], 0);
}

#[test]
fn free_objects() {
    let argv = [
        "lrcalc",
        "--json-indent",
        "0",
        "freelie",
        "basis",
        "--generators",
        "a,b,c",
        "--length",
        "4",
    ];
    let out = run(argv);
    assert_eq!(out.code, 0);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    let counts: Vec<u64> = doc["result"]["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [3, 3, 8, 18]);
    assert_eq!(doc["input_sha256"], Value::Null);

    let nf = case(
        "skew_commutator",
        "polynomial.json",
        &["skew", "nf", "--algebroid", "fr", "--expr", "s*t^2 - t^2*s"],
        0,
    );
    assert_eq!(nf["normal_form"], "2*t");
    let p = case(
        "line_presentation",
        "polynomial.json",
        &["present", "--algebroid", "vf"],
        0,
    );
    assert_eq!(p["surjective"], true);
    let v = case(
        "free_vanishing",
        "polynomial.json",
        &["free-vanishing", "--algebroid", "fr2"],
        0,
    );
    assert_eq!(v["all_vanish"], true);
}

#[test]
fn extension_commands() {
    let e = case(
        "equiv_heis_semidirect",
        "golden.json",
        &["equiv", "--e1", "heis", "--e2", "semidirect"],
        1,
    );
    assert_eq!(e["equivalent"], false);
    let w = case(
        "equiv_heis_read",
        "golden.json",
        &["equiv", "--e1", "heis", "--e2", "read", "--witness"],
        0,
    );
    assert_eq!(w["witness"]["morphism"]["passed"], true);
    let o = case(
        "obstruct_f3",
        "obstruction_f3.json",
        &["obstruct", "--action", "obstructed"],
        1,
    );
    assert_eq!(o["obstructed"], true);
    assert_eq!(o["closed"], true);
    let c = case(
        "obstruct_curved",
        "obstruction_f3.json",
        &["obstruct", "--action", "curved"],
        0,
    );
    assert!(c["completion"].is_object());
    let x = case(
        "extend_c1",
        "torsor_f5.json",
        &["extend", "--extension", "c1"],
        0,
    );
    assert_eq!(x["total"]["brackets"]["x,y"], "z");
    let b = case(
        "baer_c1_c2",
        "torsor_f5.json",
        &["baer", "--e1", "c1", "--e2", "c2"],
        0,
    );
    assert_eq!(b["sum"]["cocycle"]["values"][0]["coeffs"][0], "3");
    let n = case(
        "classify_enumerate",
        "torsor_f5.json",
        &["classify", "--extension", "split", "--enumerate"],
        0,
    );
    assert_eq!(n["class_count"], 5);
    let k = case(
        "classify_cocycle",
        "torsor_f5.json",
        &[
            "classify",
            "--extension",
            "c1",
            "--cocycle",
            r#"{"deg": 2, "values": [{"pair": [0, 1], "coeffs": [4]}]}"#,
        ],
        0,
    );
    assert_eq!(k["equivalent_to_input"], false);
    assert_eq!(k["extension"]["cocycle"]["values"], serde_json::json!([]));
}

#[test]
fn input_errors_exit_two() {
    let (c, out, err) = lrcalc("bad_dangling.json", &["validate"]);
    assert_eq!((c, out.as_str()), (2, ""));
    assert!(err.contains("missing_kernel"), "{err}");
    let (c, _, err) = lrcalc("bad_antisymmetry.json", &["center", "--algebroid", "bad"]);
    assert_eq!(c, 2);
    assert!(err.contains("antisymmetry"), "{err}");
    let (c, _, _) = lrcalc("golden.json", &["cohomology", "--algebroid", "nowhere"]);
    assert_eq!(c, 2);
    let (c, _, err) = lrcalc("golden.json", &["transmogrify"]);
    assert_eq!(c, 2);
    assert!(err.contains("Usage"), "{err}");
    let (c, _, _) = lrcalc("golden.json", &["classify", "--extension", "heis"]);
    assert_eq!(c, 2);
    let (c, _, _) = lrcalc("golden.json", &["obstruct", "--action", "none"]);
    assert_eq!(c, 2);
    // a lift whose curvature is not inner does not define an outer action
    let (c, _, err) = lrcalc(
        "obstruction_f3.json",
        &["obstruct", "--action", "not_outer"],
    );
    assert_eq!(c, 2);
    assert!(err.contains("Out-morphisms"), "{err}");
}

#[test]
fn failed_axioms_are_answers_in_validate_only() {
    let (c, _, _) = lrcalc("bad_jacobi.json", &["center", "--algebroid", "bad"]);
    assert_eq!(c, 2);
    let (c, out, _) = lrcalc("bad_jacobi.json", &["--json-indent", "0", "validate"]);
    assert_eq!(c, 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["passed"], false);
}

#[test]
fn overrides_and_formatting() {
    let (c, out, _) = lrcalc(
        "golden.json",
        &[
            "--json-indent",
            "0",
            "--field",
            "F7",
            "cohomology",
            "--algebroid",
            "sl2",
        ],
    );
    assert_eq!(c, 0);
    assert_eq!(out.lines().count(), 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["field"], "F7");
    assert_eq!(doc["result"]["dims"], serde_json::json!([1, 0, 0, 1]));
    let (_, out, _) = lrcalc(
        "polynomial.json",
        &["--cutoff", "2", "cohomology", "--algebroid", "vf"],
    );
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        doc["warnings"],
        serde_json::json!(["graded dims up to cutoff 2"])
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lrcalc");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&[
        "--session",
        &data("golden.json"),
        "cohomology",
        "--algebroid",
        "sl2",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    let neg = status(&[
        "--session",
        &data("golden.json"),
        "equiv",
        "--e1",
        "heis",
        "--e2",
        "semidirect",
    ]);
    assert_eq!(neg.status.code(), Some(1));
    let bad = status(&["--session", &data("bad_dangling.json"), "validate"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
