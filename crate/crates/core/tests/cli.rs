use std::process::{Command, Output};

use chebvar::io::SolutionFile;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn chebvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebvar"))
        .args(args)
        .env_remove("CHEBVAR_SEED")
        .output()
        .expect("spawn chebvar")
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn plane_curve_report() {
    let o = chebvar(&["curve", "--A", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("degree: 3"), "{s}");
    assert!(s.contains("hyperbolic: true"));
    assert!(s.contains("singular points: 1"));
}

#[test]
fn space_curve_inversion() {
    let s = stdout(&chebvar(&["curve", "--A", "3,2,7"]));
    assert!(s.contains("P = 2*T4(y)*T1(z) - T5(x)"), "{s}");
    assert_eq!(s.matches("generator:").count(), 3);
}

#[test]
fn curve_json_and_plot_data() {
    let o = chebvar(&["curve", "--A", "2,5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 5);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let o = chebvar(&["curve", "--A", "2,3", "--emit-plot-data", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows = text.lines().filter(|l| l.split(',').all(|x| x.trim().parse::<f64>().is_ok())).count();
    assert!(rows > 10, "{text}");
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["curve", "--A", "0,3"][..],
        &["curve", "--A", "4"],
        &["analyze", "--A", "1,2;3"],
        &["solve", "--system", "/nonexistent/file.json"],
        &["frobnicate"],
    ] {
        let o = chebvar(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = chebvar(&["solve", "--system", &fixture("sextic.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field C is missing"));
}

#[test]
fn analyze_reports() {
    let o = chebvar(&["analyze", "--A", "4,4,6,7,9,2;8,4,1,2,6,7", "--basis", "cosine"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 129);

    let o = chebvar(&["analyze", "--A", "1,1,2;2,1,3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["bound_pc"], "11");
    assert_eq!(v["bounds"]["bound_pb"], "12");

    let o = chebvar(&["analyze", "--system", &fixture("rank_deficient.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expected empty intersection"));
}

#[test]
fn solve_tensor_summary_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sol.json");
    let o = chebvar(&["solve", "--system", &fixture("running_tensor.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 solutions, 7 real, 5 in [-1,1]^2"), "{}", stdout(&o));
    let f: SolutionFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.solutions.len(), 7);
    assert_eq!(f.meta.degree, 7);
    assert!(f.meta.elapsed_ms.is_none());
}

#[test]
fn solve_cosine_summary() {
    let o = chebvar(&["solve", "--system", &fixture("cosine_six_columns.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("129 orbit pairs, 64 real u-pairs, 65 complex u-pairs, 5 real v-pairs"));
    let f: SolutionFile = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(f.solutions.len(), 258);
    assert_eq!(f.meta.counts["variety_degree"], 129);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_chebvar"));
        c.args(["solve", "--system", &fixture("running_tensor.json")]).env_remove("CHEBVAR_SEED");
        if let Some(s) = env {
            c.env("CHEBVAR_SEED", s);
        }
        if let Some(s) = flag {
            c.args(["--seed", s]);
        }
        let f: SolutionFile = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        f.meta.seed
    };
    assert_eq!(run(None, None), 0);
    assert_eq!(run(Some("17"), None), 17);
    assert_eq!(run(Some("17"), Some("4")), 4);
}

#[test]
fn reruns_are_byte_identical() {
    let elliptope = fixture("elliptope.json");
    for args in [
        &["solve", "--system", &elliptope, "--seed", "3"][..],
        &["implicitize", "--system", &elliptope, "--degree", "3"],
        &["scan", "--A", "2,3,7", "--samples", "200", "--seed", "1"],
    ] {
        let (a, b) = (chebvar(args), chebvar(args));
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn implicitize_and_rootsys() {
    let o = chebvar(&["implicitize", "--system", &fixture("elliptope.json"), "--degree", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
    assert!(v["residual"].as_f64().unwrap() < 1e-10);

    let o = chebvar(&["rootsys", "--max-degree", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let t11 = v.as_array().unwrap().iter().find(|e| e["a"] == 1 && e["b"] == 1).unwrap();
    assert_eq!(t11["poly"], "1/4*x*y - 3");
}
