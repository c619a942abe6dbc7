use std::path::PathBuf;

use lie3_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn lie3(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lie3").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_b1() {
    let (code, out, _) = lie3(&["verify", &data("b1.alg")]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("filippov: pass"));
    assert!(out.contains("antisymmetry: pass"));
}

#[test]
fn verify_reports_the_failing_tuple() {
    let (code, out, _) = lie3(&["verify", &data("broken.alg")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("filippov: FAIL"));
    assert!(out.contains("filippov violated at ("));
    let (_, records, _) = lie3(&["verify", &data("broken.alg"), "--format", "records"]);
    assert!(records.lines().any(|l| l.starts_with("kind=violation path=verify/filippov identity=filippov witness=")));
}

#[test]
fn cybe_b1_split() {
    let (code, out, _) = lie3(&["cybe", &data("b1.alg"), "--derivation", &data("split.der")]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("[[r,r,r]] = 0"));
}

#[test]
fn invariants_b1() {
    let (code, out, _) = lie3(&["invariants", &data("b1.alg")]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "algebra b1 (dim 4)\ndim A^1 = 1  span{x1}\ndim Z(A) = 1  span{x1}\ndim Der(A) = 12\n");
}

#[test]
fn involutive_search_and_check() {
    let (code, out, _) = lie3(&["involutive", &data("b1.alg"), "--search", "diag"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("6 diagonal involutive derivation(s)\ndiag(1,1,1,-1)\n"));
    let (code, out, _) = lie3(&["involutive", &data("b1.alg"), "--derivation", &data("scale.der")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("square-is-identity: FAIL"));
}

#[test]
fn prelie_modes() {
    for mode in ["D", "A", "both"] {
        let (code, out, _) = lie3(&["prelie", &data("b1.alg"), "--derivation", &data("split.der"), "--mode", mode]);
        assert_eq!(code, EXIT_PASS, "{mode}\n{out}");
        assert_eq!(out.contains("prelie-D: pass"), mode != "A");
        assert_eq!(out.contains("subadjacent: pass"), mode != "D");
    }
}

#[test]
fn semidirect_output_parses_back() {
    let (code, out, _) = lie3(&["semidirect", &data("b1.alg")]);
    assert_eq!(code, EXIT_PASS);
    let b = lie3_core::io::parse_algebra(&out).unwrap();
    assert_eq!(b.dim(), 8);
    assert_eq!(b.labels()[4], "x1*");
    assert!(b.verify_filippov().passed);
}

#[test]
fn bialgebra_b1_wedge_table() {
    let (code, out, _) = lie3(&["bialgebra", &data("b1.alg"), "--derivation", &data("split.der")]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("Δ(x2) = x1∧x3*∧x4*\n"));
    assert!(out.contains("Δ(x1*) = -x2*∧x3*∧x4*\n"));
    assert!(out.contains("dual-filippov: pass"));
}

#[test]
fn catalog_b2_ledger_names_the_typo() {
    for flag in ["--verify-paper", "--verify-printed"] {
        let (code, out, _) = lie3(&["catalog", "--case", "4-b2", flag]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("ledger 4-b2 (mu2): 1 record(s)"));
        assert!(out.contains("[typo] delta Δ(x2): printed x1^x3*^x1 | computed -x1∧x1*∧x3*"));
    }
}

#[test]
fn catalog_params_and_list() {
    let (code, out, _) = lie3(&["catalog", "--list"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 27);
    let (code, out, _) = lie3(&["catalog", "--case", "5-d7", "--params", "s=2", "t=-1/2", "--format", "records"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("kind=case id=5-d7 dim=5"));
    let (code, _, err) = lie3(&["catalog", "--case", "5-d7", "--params", "s=0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("parameter error"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(lie3(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(lie3(&["verify"]).0, EXIT_USAGE);
    assert_eq!(lie3(&["catalog", "--list", "--all"]).0, EXIT_USAGE);
    assert_eq!(lie3(&["catalog", "--case", "9-z9"]).0, EXIT_USAGE);
    assert_eq!(lie3(&["verify", &data("missing.alg")]).0, EXIT_USAGE);
    let (code, _, err) = lie3(&["verify", &data("unordered.alg")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unordered triple"), "{err}");
    let (code, _, err) = lie3(&["cybe", &data("b1.alg"), "--derivation", &data("b1.alg")]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn output_is_deterministic() {
    let args = ["catalog", "--all", "--verify-paper", "--format", "records"];
    let (a, b) = (lie3(&args), lie3(&args));
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_PASS);
}
