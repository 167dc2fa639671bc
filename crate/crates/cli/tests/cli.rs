use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use posetpoly::Rational;
use serde_json::Value;
use tempfile::NamedTempFile;

const CHAIN: &str = "elements: 2\n0 < 1\n";
const STRICT_CHAIN: &str = "elements: 2\nlabels: 2 1\n0 < 1\n";
const MIXED: &str = "# a Y shape with a twist\nelements: 4\nlabels: 3 1 4 2\n0 < 2\n1 < 2\n2 < 3\n";

fn poset_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetpoly")).args(args).output().unwrap()
}

fn run_on(text: &str, args: &[&str]) -> Output {
    let f = poset_file(text);
    let mut full: Vec<&str> = args.to_vec();
    full.push(f.path().to_str().unwrap());
    run(&full)
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn order_poly_of_the_chain() {
    assert_eq!(stdout(&run_on(CHAIN, &["order-poly"])), "1/2·t^2 + 1/2·t");
    assert_eq!(stdout(&run_on(STRICT_CHAIN, &["order-poly"])), "1/2·t^2 - 1/2·t");
}

#[test]
fn order_poly_routes_print_the_same() {
    for text in [CHAIN, STRICT_CHAIN, MIXED] {
        let outputs: Vec<String> = ["matrix", "recursive", "oracle"]
            .iter()
            .map(|r| stdout(&run_on(text, &["order-poly", "--route", r, "--cross-check"])))
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{outputs:?}");
    }
}

#[test]
fn other_routes_print_the_same() {
    let e = stdout(&run_on(MIXED, &["eulerian", "--route", "chains"]));
    assert_eq!(e, stdout(&run_on(MIXED, &["eulerian", "--route", "recursive", "--cross-check"])));
    let t = stdout(&run_on(MIXED, &["eulerian", "--tilde"]));
    assert_eq!(t, stdout(&run_on(MIXED, &["eulerian", "--tilde", "--route", "recursive"])));
    let q = stdout(&run_on(MIXED, &["qsym", "--vars", "3"]));
    assert_eq!(q, stdout(&run_on(MIXED, &["qsym", "--vars", "3", "--route", "recursive", "--cross-check"])));
    let b: Vec<String> = ["oracle", "shrub", "multinomial"]
        .iter()
        .map(|r| stdout(&run(&["bernoulli", "--n", "6", "--route", r])))
        .collect();
    assert_eq!(b, vec!["1/42"; 3]);
}

#[test]
fn bernoulli_via_shrub() {
    assert_eq!(stdout(&run(&["bernoulli", "--n", "2", "--route", "shrub"])), "1/6");
    assert_eq!(stdout(&run(&["bernoulli", "--n", "1"])), "-1/2");
}

#[test]
fn unlabeled_flavors() {
    let weak = stdout(&run_on(STRICT_CHAIN, &["order-poly", "--unlabeled", "weak", "--cross-check"]));
    assert_eq!(weak, "1/2·t^2 + 1/2·t");
    let strict = stdout(&run_on(CHAIN, &["order-poly", "--unlabeled", "strict", "--cross-check"]));
    assert_eq!(strict, "1/2·t^2 - 1/2·t");
    let nabla = stdout(&run_on("elements: 1\n", &["order-poly", "--unlabeled", "nabla", "--cross-check"]));
    assert_eq!(nabla, "-t");
    let clash = run_on(CHAIN, &["order-poly", "--unlabeled", "weak", "--route", "matrix"]);
    assert_eq!(clash.status.code(), Some(1));
}

#[test]
fn invariant_specs_match_dedicated_commands() {
    assert_eq!(stdout(&run_on(MIXED, &["invariant", "--spec", "omega"])), stdout(&run_on(MIXED, &["order-poly"])));
    assert_eq!(stdout(&run_on(MIXED, &["invariant", "--spec", "eulerian"])), stdout(&run_on(MIXED, &["eulerian"])));
    assert_eq!(
        stdout(&run_on(MIXED, &["invariant", "--spec", "etilde"])),
        stdout(&run_on(MIXED, &["eulerian", "--tilde"]))
    );
    assert_eq!(
        stdout(&run_on(MIXED, &["invariant", "--spec", "qsym:3"])),
        stdout(&run_on(MIXED, &["qsym", "--vars", "3"]))
    );
}

#[test]
fn phi_and_ideals() {
    assert_eq!(stdout(&run_on(STRICT_CHAIN, &["phi"])), "-1/2");
    assert_eq!(stdout(&run_on(CHAIN, &["ideals"])), "{}\n{0}\n{0,1}");
    assert_eq!(stdout(&run_on(STRICT_CHAIN, &["ideals", "--omega-natural"])).lines().count(), 2);
}

#[test]
fn dot_output() {
    let dot = stdout(&run_on(CHAIN, &["omega-graph", "--dot"]));
    assert!(dot.starts_with("digraph omega {"));
    assert_eq!(dot.matches("->").count(), 3);
    let text = stdout(&run_on(CHAIN, &["omega-graph"]));
    assert!(text.contains("v0 -> v2"));
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let f = poset_file(MIXED);
    let path = f.path().to_str().unwrap();
    let first = stdout(&run(&["--json", "order-poly", path]));
    assert_eq!(first, stdout(&run(&["--json", "order-poly", path])));
    let doc: Value = serde_json::from_str(&first).unwrap();
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["invariant", "metadata", "poset", "route", "value"]);
    assert!(first.find("\"poset\"").unwrap() < first.find("\"invariant\"").unwrap());
    let coeffs: Vec<Rational> = doc["value"]["polynomial"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect();
    // Ω(m) is a count of maps; at m = 2 the Y shape with these labels gives 1
    let at_two: Rational =
        coeffs.iter().enumerate().map(|(k, c)| c * Rational::from_integer(2.into()).pow(k as i32)).sum();
    assert_eq!(at_two, Rational::from_integer(1.into()));
    assert_eq!(doc["metadata"]["size"], 4);
    assert_eq!(doc["poset"]["labels"], serde_json::json!([3, 1, 4, 2]));
}

#[test]
fn json_for_scalars_and_checks() {
    let doc: Value = serde_json::from_str(&stdout(&run(&["--json", "bernoulli", "--n", "4"]))).unwrap();
    assert_eq!(doc["value"]["scalar"], "-1/30");
    let rows: Value = serde_json::from_str(&stdout(&run(&["--json", "check", "--max-size", "2"]))).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn timing_only_on_request() {
    let plain = stdout(&run_on(CHAIN, &["--json", "phi"]));
    assert!(!plain.contains("elapsed_ms"));
    let timed = stdout(&run_on(CHAIN, &["--json", "--timing", "phi"]));
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_posetpoly"))
        .args(["order-poly", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(CHAIN.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "1/2·t^2 + 1/2·t");
}

#[test]
fn oracle_bound_from_environment() {
    let f = poset_file(MIXED);
    let path = f.path().to_str().unwrap();
    let oracle_with = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_posetpoly"))
            .env("POSET_ORACLE_MAX", bound)
            .args(["order-poly", "--route", "oracle", path])
            .output()
            .unwrap()
    };
    let refused = oracle_with("3");
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("POSET_ORACLE_MAX"));
    assert!(oracle_with("4").status.success());
    assert_eq!(oracle_with("many").status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run_on(CHAIN, &["order-poly", "--route", "psychic"]).status.code(), Some(1));
    assert_eq!(run_on(CHAIN, &["invariant", "--spec", "qsym:0"]).status.code(), Some(1));
    assert_eq!(run(&["order-poly", Path::new("/nonexistent/poset").to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["check", "--max-size", "0"]).status.code(), Some(1));
    assert_eq!(run_on("elements: 2\n0 < 1\n1 < 0\n", &["phi"]).status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("elements: 2\n0 < 1\n1 < 0\n", "line 3, column 1"),
        ("elements: 3\n0 < 5\n", "line 2, column 5"),
        ("# header missing\n0 < 1\n", "line 2, column 1"),
        ("elements: 2\nlabels: 4 4\n", "line 2, column 11"),
        ("elements: 2\n\n\n0 -> 1\n", "line 4, column 1"),
    ];
    for (text, position) in cases {
        let out = run_on(text, &["order-poly"]);
        assert_eq!(out.status.code(), Some(2), "{text:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(position), "{text:?}: {err}");
    }
}
