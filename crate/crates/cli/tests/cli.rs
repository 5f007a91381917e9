use wobetti_cli::{run_with, Outcome, EXIT_HYPOTHESIS, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("wobetti").chain(args.iter().copied());
    run_with(argv, &mut stdin.as_bytes())
}

const CYCLE4: &str = "x1 -> x2; x2 -> x3; x3 -> x4; x4 -> x1\nw(x1)=2; w(x2)=2; w(x3)=2; w(x4)=2\n";
const BAD_STAR: &str = "x1 -> x2; x1 -> x3\nw(x1)=5; w(x2)=1; w(x3)=2\n";

#[test]
fn invariants_match_on_a_cycle() {
    let out = run(&["invariants"], CYCLE4);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("formula: pd=3 reg=5 depth=1"));
    assert!(out.stdout.ends_with("MATCH\n"));
}

#[test]
fn json_invariants() {
    let out = run(&["invariants", "--output", "json"], CYCLE4);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "match");
    assert_eq!(v["formula"]["reg"], 5);
    assert_eq!(v["oracle"]["depth"], 1);
}

#[test]
fn hypothesis_failure_exits_three() {
    let out = run(&["invariants", "--method", "formula"], BAD_STAR);
    assert_eq!(out.code, EXIT_HYPOTHESIS);
    assert!(out.stderr.contains("at least 2"));

    let both = run(&["invariants"], BAD_STAR);
    assert_eq!(both.code, EXIT_HYPOTHESIS);
    assert!(both.stdout.contains("oracle (closed form not applicable): pd=1 reg=3"));
}

#[test]
fn normalization_modes() {
    let on = run(&["invariants", "--method", "oracle"], BAD_STAR);
    assert!(on.stderr.contains("warning: source vertex x1"));
    let off = run(&["invariants", "--method", "oracle", "--normalize-sources", "off"], BAD_STAR);
    assert!(off.stderr.is_empty());
    let err = run(&["invariants", "--normalize-sources", "error"], BAD_STAR);
    assert_eq!(err.code, EXIT_USAGE);
}

#[test]
fn other_family_has_no_formula() {
    let out = run(&["invariants", "--method", "formula"], "x1 -> x2; x3 -> x2; x3 -> x4; w(x2)=2; w(x4)=2");
    assert_eq!(out.code, EXIT_HYPOTHESIS);
}

#[test]
fn betti_text_and_json() {
    let out = run(&["betti"], "(x1*x2^2, x2*x3^2, x3*x1^2)");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("total: 3 3 1"));
    assert!(out.stdout.contains("pd=2 reg=4 depth=1 char=0"));

    let out = run(&["betti", "--output", "json", "--char", "2"], "(x1*x2^2, x2*x3^2, x3*x1^2)");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[0, 3, 3], [1, 5, 3], [2, 6, 1]]));
    assert_eq!(v["field_char"], 2);
}

#[test]
fn invalid_characteristic_is_a_usage_error() {
    assert_eq!(run(&["betti", "--char", "4"], "(x1)").code, EXIT_USAGE);
}

#[test]
fn generator_cap_is_a_usage_error() {
    let out = run(&["betti", "--cap-generators", "2"], "(x1, x2, x3)");
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("cap"));
}

#[test]
fn polarize_reports_the_variable_map() {
    let out = run(&["polarize", "--output", "json"], "(x1^2*x2, x2^2)");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ideal"], "(x2_1*x2_2, x1_1*x1_2*x2_1)");
    assert_eq!(v["var_map"][1]["original"], "x1");
    assert_eq!(v["var_map"][1]["slot"], 2);
}

#[test]
fn certificate_is_deterministic_and_verifies() {
    let a = run(&["certificate", "--verify"], CYCLE4);
    let b = run(&["certificate", "--verify"], CYCLE4);
    assert_eq!(a, b);
    assert_eq!(a.code, EXIT_OK);
    assert!(a.stdout.contains("spine-splits=3"));
    assert!(a.stdout.contains("all agree"));
}

#[test]
fn certificate_node_budget() {
    let out = run(&["certificate", "--node-budget", "3"], CYCLE4);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("node budget"));
}

#[test]
fn certificate_for_a_plain_ideal() {
    let out = run(&["certificate", "--output", "json"], "(x1*x2, x2*x3, x3*x4)");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pd"], 1);
    assert_eq!(v["reg"], 2);
}

#[test]
fn sweeps() {
    let out = run(&["sweep", "--family", "cycle", "--min", "3", "--max", "5", "--weights", "2,3"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("total: 56 instances, 0 mismatches"));

    let out = run(&["sweep", "--family", "forest", "--min", "1", "--max", "5", "--weights", "2"], "");
    assert_eq!(out.code, EXIT_OK);

    let args = ["sweep", "--family", "star", "--min", "3", "--max", "4", "--weights", "1,2"];
    assert_eq!(run(&args, "").code, EXIT_HYPOTHESIS);
    let mut allowed = args.to_vec();
    allowed.push("--allow-hypothesis-fail");
    let out = run(&allowed, "");
    assert_eq!(out.code, EXIT_OK);
    assert!(!out.stdout.contains("0 outside hypothesis\n"));

    let out = run(&["sweep", "--family", "polarization", "--count", "30", "--seed", "5"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out, run(&["sweep", "--family", "polarization", "--count", "30", "--seed", "5"], ""));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(run(&["invariants"], "x1 -> x1").code, EXIT_USAGE);
    assert_eq!(run(&["betti"], "(x1*").code, EXIT_USAGE);
    assert_eq!(run(&["--help"], "").code, EXIT_OK);
}
