use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn cnormal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnormal")).args(args).output().expect("run cnormal")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Nilpotent Jordan block and two conjugations on C².
struct Files {
    dir: TempDir,
    n2: String,
    flip: String,
    canonical: String,
}

impl Files {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let p = |name: &str, text: &str| write(dir.path(), name, text).display().to_string();
        let n2 = p("n2.json", r#"{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}"#);
        let flip = p("flip.json", r#"{"rows":2,"cols":2,"data":[[0,0],[1,0],[1,0],[0,0]]}"#);
        let canonical = p("id.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
        Self { dir, n2, flip, canonical }
    }

    fn path(&self, name: &str, text: &str) -> String {
        write(self.dir.path(), name, text).display().to_string()
    }
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn factor<'a>(report: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    report["factors"].as_array().unwrap().iter().find(|f| f["name"] == name).expect("factor present")
}

fn entries(m: &serde_json::Value) -> Vec<f64> {
    m["data"].as_array().unwrap().iter().flat_map(|p| p.as_array().unwrap().iter().map(|x| x.as_f64().unwrap())).collect()
}

#[test]
fn check_exit_codes() {
    let f = Files::new();
    let out = cnormal(&["--json", "check", &f.n2, &f.flip]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], true);

    let out = cnormal(&["--json", "check", &f.n2, &f.canonical]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"], false);

    let bad = f.path("bad.json", r#"{"rows":2,"cols":2,"data":[[1,0],[1,0],[0,0],[1,0]]}"#);
    assert_eq!(code(&cnormal(&["check", &f.n2, &bad])), 2);

    let garbage = f.path("garbage.json", "{not json");
    assert_eq!(code(&cnormal(&["check", &garbage, &f.flip])), 2);
    assert_eq!(code(&cnormal(&["check", &f.n2, "/nonexistent/c.json"])), 2);

    let three = f.path("three.json", r#"{"rows":3,"cols":3,"data":[[1,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[1,0]]}"#);
    assert_eq!(code(&cnormal(&["check", &three, &f.flip])), 2);
}

#[test]
fn cartesian_of_jordan_block() {
    let f = Files::new();
    let out = cnormal(&["--json", "decompose", "cartesian", &f.n2, &f.flip]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(entries(factor(&r, "A")), vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    assert!(entries(factor(&r, "B")).iter().all(|x| x.abs() < 1e-15));
}

#[test]
fn cnormal_polar_of_diagonal_writes_factors() {
    let f = Files::new();
    let d = f.path("d.json", r#"{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[2,0]]}"#);
    let out_dir = f.dir.path().join("out");
    let out = cnormal(&["--out", out_dir.to_str().unwrap(), "decompose", "cnormal-polar", &d, &f.canonical]);
    assert_eq!(code(&out), 0);
    let read = |name: &str| -> serde_json::Value {
        serde_json::from_str(&fs::read_to_string(out_dir.join(name)).unwrap()).unwrap()
    };
    assert_eq!(entries(&read("J.json")), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    assert_eq!(read("J.json")["kind"], "antilinear");
    assert_eq!(entries(&read("P.json")), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0]);
    assert_eq!(read("report.json")["passed"], true);
}

#[test]
fn decompose_failures_name_the_error() {
    let f = Files::new();
    let out = cnormal(&["decompose", "skew-structure", &f.n2, &f.flip]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("DomainError"));

    let out = cnormal(&["decompose", "cnormal-polar", &f.n2, &f.canonical]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotCNormal"));
}

#[test]
fn other_decompositions_succeed() {
    let f = Files::new();
    for args in [
        vec!["decompose", "polar", &f.n2],
        vec!["decompose", "cjp", &f.n2, &f.flip],
        vec!["decompose", "douglas", &f.n2, &f.canonical],
    ] {
        let out = cnormal(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let linear = f.path("lin.json", r#"{"kind":"linear","rows":1,"cols":1,"data":[[1,0]]}"#);
    assert_eq!(code(&cnormal(&["decompose", "polar", &linear])), 2);
}

#[test]
fn shift_examples() {
    for (weights, verdict, exit) in [("1,0+1i", true, 0), ("1,2", false, 1), ("3", true, 0)] {
        let out = cnormal(&["--json", "shift", "--weights", weights]);
        assert_eq!(code(&out), exit, "{weights}");
        let r = json(&out);
        assert_eq!(r["criterion"]["verdict"], verdict, "{weights}");
        assert_eq!(r["agree"], true);
    }
    assert_eq!(code(&cnormal(&["shift", "--weights", ""])), 2);
    assert_eq!(code(&cnormal(&["shift", "--weights", "1,x"])), 2);
    assert_eq!(code(&cnormal(&["shift"])), 2);
}

#[test]
fn shift_from_file() {
    let f = Files::new();
    let w = f.path("w.json", "[[1, 0], [0, 1]]");
    let out = cnormal(&["--json", "shift", "--file", &w]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["battery_verdict"], true);
    let empty = f.path("e.json", "[]");
    assert_eq!(code(&cnormal(&["shift", "--file", &empty])), 2);
}

#[test]
fn verify_reports() {
    let out = cnormal(&["--json", "verify", "--suite", "battery", "--trials", "200", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);
    assert_eq!(r["trials"], 200);

    let out = cnormal(&["--json", "verify", "--suite", "inequalities", "--trials", "200"]);
    assert_eq!(code(&out), 0);

    let out = cnormal(&["--json", "verify", "--trials", "0"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["failures"].as_array().unwrap().is_empty());

    assert_eq!(code(&cnormal(&["verify", "--dim-min", "0"])), 2);
    assert_eq!(code(&cnormal(&["verify", "--dim-min", "5", "--dim-max", "4"])), 2);
    assert_eq!(code(&cnormal(&["verify", "--dim-max", "65"])), 2);
    assert_eq!(code(&cnormal(&["verify", "--suite", "nope"])), 2);
}

#[test]
fn verify_is_byte_deterministic() {
    let args = ["--json", "--seed", "11", "verify", "--suite", "all", "--trials", "12"];
    let a = cnormal(&args);
    let b = cnormal(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_instances_validate() {
    let f = Files::new();
    for (kind, dim) in [("conjugation", "4"), ("cnormal", "3"), ("normal-anticommuting", "5"), ("commuting-jp", "4")] {
        let dir = f.dir.path().join(kind);
        let out = cnormal(&["--seed", "5", "--out", dir.to_str().unwrap(), "gen", kind, "--dim", dim]);
        assert_eq!(code(&out), 0, "{kind}");
    }
    let c = f.dir.path().join("conjugation/C.json");
    let t = f.dir.path().join("cnormal/T.json");
    let tc = f.dir.path().join("cnormal/C.json");
    assert_eq!(code(&cnormal(&["check", t.to_str().unwrap(), tc.to_str().unwrap()])), 0);
    let four = f.path("four.json", r#"{"rows":4,"cols":4,"data":[[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0]]}"#);
    let out = cnormal(&["--json", "check", &four, c.to_str().unwrap()]);
    assert_ne!(code(&out), 2, "generated conjugation must validate");

    let t = f.dir.path().join("normal-anticommuting/T.json");
    let tc = f.dir.path().join("normal-anticommuting/C.json");
    assert_eq!(code(&cnormal(&["decompose", "skew-structure", t.to_str().unwrap(), tc.to_str().unwrap()])), 0);

    assert_eq!(code(&cnormal(&["gen", "cnormal", "--dim", "0"])), 2);
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let f = Files::new();
    let args = |dir: &Path| {
        let out = cnormal(&["--seed", "9", "--out", dir.to_str().unwrap(), "--json", "gen", "cnormal", "--dim", "6"]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let (a, b) = (f.dir.path().join("a"), f.dir.path().join("b"));
    assert_eq!(args(&a), args(&b));
    for name in ["T.json", "C.json"] {
        let text = fs::read_to_string(a.join(name)).unwrap();
        assert_eq!(text, fs::read_to_string(b.join(name)).unwrap());
        let m = cnormal::json::parse_matrix(&text).unwrap();
        let again = cnormal::json::MatrixJson::from_matrix(&m.to_matrix().unwrap());
        assert_eq!(again.data, m.data, "{name} re-parses to the same matrix");
    }
    let report: serde_json::Value = serde_json::from_slice(&args(&a)).unwrap();
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("T.json")).unwrap()).unwrap();
    assert_eq!(factor(&report, "T"), &t);
}

#[test]
fn tolerance_flags_are_validated() {
    let f = Files::new();
    assert_eq!(code(&cnormal(&["--tol-rel", "-1", "check", &f.n2, &f.flip])), 2);
    assert_eq!(code(&cnormal(&["--tol-abs", "nan", "check", &f.n2, &f.flip])), 2);
    assert_eq!(code(&cnormal(&["--tol-rel", "1e-6", "check", &f.n2, &f.flip])), 0);
}
