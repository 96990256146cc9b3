use plumbing_core::cli::run_with;
use serde_json::Value;
use std::path::{Path, PathBuf};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("plumbing").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn entries(r: &Run) -> Vec<Value> {
    serde_json::from_str::<Value>(&r.stdout)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

fn find<'a>(es: &'a [Value], check: &str, params: Value) -> &'a Value {
    es.iter()
        .find(|e| e["check"] == check && e["params"] == params)
        .unwrap_or_else(|| panic!("no entry {check} {params}"))
}

#[test]
fn build_circle_reports_the_intersection_class() {
    let r = run(&["build", &data("circle.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let es = entries(&r);
    let hom = find(
        &es,
        "build.cohomology",
        serde_json::json!({"source": "Q2", "target": "Q1"}),
    );
    let ranks: Vec<(i64, i64)> = hom["computed"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["rank"].as_i64().unwrap() > 0)
        .map(|g| (g["degree"].as_i64().unwrap(), g["rank"].as_i64().unwrap()))
        .collect();
    assert_eq!(ranks, vec![(1, 1)]);
}

#[test]
fn sphere_and_two_arc_specs_pass() {
    for spec in ["sphere.json", "hexagons_two_arcs.json"] {
        let r = run(&["verify", "dg", &data(spec), "--format", "text"]);
        assert_eq!(r.code, 0, "{spec}: {}", r.stdout);
        assert!(r.stdout.ends_with("0 failed\n"));
    }
}

#[test]
fn malformed_input_exits_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"q1\": [1,\n").unwrap();
    let r = run(&["build", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line"), "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let missing = run(&["build", "/nonexistent/spec.json"]);
    assert_eq!(missing.code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["signs", "check", "collapse", "3", "1"]).code, 2);
}

#[test]
fn corrupted_count_file_fails_verification() {
    let text = std::fs::read_to_string(data("morse_circle.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    // Flip the sign of the left unit action on the top class.
    v["counts"][1]["coeff"] = Value::from(1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupt.json");
    std::fs::write(&path, v.to_string()).unwrap();

    assert_eq!(run(&["verify", "ainf", &data("morse_circle.json")]).code, 0);
    let r = run(&["verify", "ainf", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert!(r.stdout.contains("FAIL"));
}

#[test]
fn identity_functor_verifies() {
    let r = run(&["verify", "functor", &data("identity_functor.json")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn minimal_model_of_circle_endomorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let emitted: PathBuf = dir.path().join("model.json");
    let r = run(&[
        "minimal-model",
        &data("circle.json"),
        "--object",
        "Q1",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let es = entries(&r);
    let ranks = find(
        &es,
        "minimal_model.ranks",
        serde_json::json!({"source": "Q1", "target": "Q1"}),
    );
    assert_eq!(ranks["computed"], serde_json::json!({"0": 1, "1": 1}));

    // The emitted model imports and satisfies the relations on its own.
    let again = run(&["formal", "import", emitted.to_str().unwrap()]);
    assert_eq!(again.code, 0, "{}", again.stdout);

    // Over a prime field the answer is the same.
    let modp = run(&[
        "minimal-model",
        &data("circle.json"),
        "--object",
        "Q1",
        "--modulus",
        "3",
    ]);
    assert_eq!(modp.code, 0, "{}", modp.stdout);
    assert_eq!(run(&["minimal-model", &data("circle.json"), "--modulus", "4"]).code, 2);
}

#[test]
fn polytope_table() {
    let r = run(&["polytopes", "enumerate", "--d-max", "5"]);
    assert_eq!(r.code, 0);
    let rows: Vec<Value> = serde_json::from_str(&r.stdout).unwrap();
    let vertices: Vec<i64> = rows
        .iter()
        .map(|row| row["mushroom_vertices"].as_i64().unwrap())
        .collect();
    assert_eq!(vertices, vec![1, 2, 6, 21, 80]);
    assert_eq!(run(&["verify", "polytopes", "--d-max", "5"]).code, 0);
}

#[test]
fn sign_queries() {
    let r = run(&["signs", "check", "stasheff", "3", "2", "1"]);
    assert_eq!(r.code, 0);
    let r = run(&["signs", "check", "twist", "maltese", "2;1,3", "--format", "text"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(run(&["signs", "check", "twist", "nonsense"]).code, 2);
    // Breaking into one multi-input shrub and one single-input shrub is a
    // known disagreement between the formula and the orientation forms.
    let r = run(&["signs", "check", "break", "2,1"]);
    assert_eq!(r.code, 1);
    let es = entries(&r);
    assert!(es
        .iter()
        .any(|e| e["check"] == "orientations.boundary.shrub_break.discrepancy" && e["pass"] == true));
}

#[test]
fn verify_signs_reports_only_the_known_disagreements() {
    let r = run(&[
        "verify",
        "signs",
        "--d-max",
        "5",
        "--samples",
        "200",
        "--format",
        "text",
    ]);
    assert_eq!(r.code, 1);
    for line in r.stdout.lines().filter(|l| l.starts_with("FAIL")) {
        let check = line.split_whitespace().nth(1).unwrap();
        assert!(
            [
                "orientations.boundary.shrub_break",
                "orientations.boundary.shrub_collapse",
                "orientations.ledger.shrub.total",
                "orientations.ledger.shrub.opposite",
            ]
            .contains(&check),
            "{line}"
        );
    }
    assert!(r.stdout.contains("PASS orientations.boundary.stasheff "));
    assert!(r.stdout.contains("PASS orientations.ledger.mushroom.cancel "));
}

#[test]
fn output_is_deterministic_and_out_writes_a_file() {
    let args = ["verify", "signs", "--d-max", "4", "--samples", "50", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let r = run(&["build", &data("circle.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        run(&["build", &data("circle.json")]).stdout
    );
}
