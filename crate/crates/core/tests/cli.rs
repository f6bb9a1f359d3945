use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(file: &str) -> String {
    format!("{}/corpus/{}", env!("CARGO_MANIFEST_DIR"), file)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyfun")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Report text up to the timing section.
fn body(out: &Output) -> String {
    let text = stdout(out);
    text.split("--- timing").next().unwrap().to_string()
}

#[test]
fn smear_of_an_equation_free_subset() {
    let trio = corpus("trio.pf");
    let out = run(&["--input", &trio, "smear", "zero", "--dim", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("status: ok"));
    assert!(text.contains("y.0.0.1") && text.contains("y.0.0.2"));
}

#[test]
fn certify_writes_a_witness_file() {
    let cubics = corpus("cubics.pf");
    let path = scratch("mixed_witness.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&["--input", &cubics, "certify", "waring2", "mixed", "--max-d1", "1", "--witness", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let json = std::fs::read_to_string(&path).unwrap();
    assert!(json.contains("\"coverages\"") && json.contains("\"gamma\""));
    assert!(stdout(&out).contains("witness re-validated"));
}

#[test]
fn infeasible_certify_is_inconclusive() {
    let cubics = corpus("cubics.pf");
    let out = run(&["--input", &cubics, "certify", "waring2", "waring3", "--max-d1", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("status: inconclusive"));
}

#[test]
fn reaching_the_cap_is_inconclusive() {
    let veronese = corpus("veronese.pf");
    let out = run(&["--input", &veronese, "implicitise", "square", "--max-n", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("not an answer"));
}

#[test]
fn input_errors_exit_with_three() {
    let bad = scratch("syntax.pf");
    std::fs::write(&bad, "field Q;\nfunctor P = 2*S[;\n").unwrap();
    let trio = corpus("trio.pf");
    let cases: [Vec<&str>; 4] = [
        vec!["--input", bad.to_str().unwrap(), "smear", "--dim", "1"],
        vec!["smear", "zero", "--dim", "1"],
        vec!["--input", &trio, "smear", "nowhere", "--dim", "1"],
        vec!["--input", &trio, "smear", "zero"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(code(&out), 3, "{:?}", args);
        assert!(!out.stderr.is_empty(), "{:?}", args);
    }
}

#[test]
fn other_fields_are_unsupported() {
    let path = scratch("finite_field.pf");
    std::fs::write(&path, "field F7;\n").unwrap();
    let out = run(&["--input", path.to_str().unwrap(), "smear", "--dim", "1"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn report_bodies_are_deterministic() {
    let veronese = corpus("veronese.pf");
    let args = ["--input", &veronese, "implicitise", "square", "--steps-per-round", "8", "--max-n", "2", "--max-d1", "2"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert_eq!(body(&first), body(&second));
    assert!(body(&first).contains("y.0.0.12^2 - y.0.0.11*y.0.0.22"));
}
