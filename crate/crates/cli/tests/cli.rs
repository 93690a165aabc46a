use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ratdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdec"))
        .args(args)
        .env_remove("RATDEC_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ratdec(&["analyze", "(x^2-1)/x^2", "x^2/(x^2-1)", "--out", out]);
    assert_eq!(code(&o), 0);
    let v = read_json(&dir.path().join("analyze.json"));
    assert_eq!(v["result"]["condition_report"]["k"], 0);
    let trace = v["result"]["condition_report"]["trace"].as_array().unwrap();
    assert!(trace.iter().any(|t| t.as_str().unwrap().contains("no critical points")));
    assert!(dir.path().join("analyze.txt").exists());

    let o = ratdec(&["analyze", "x^2", "(x^3+1)/(x+2)", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["condition_report"]["k"], 1);
    assert_eq!(v["result"]["lemma1_report"]["pairwise_disjoint"], true);
    assert_eq!(v["result"]["lemma1_report"]["entries"][0]["roots"].as_array().unwrap().len(), 3);

    let o = ratdec(&["analyze", "x^2", "(2x^3+1)/(x+2)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("condition 1 fails"));
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ratdec(&["certify", "--model", "entire", "x^2", "(x^3+1)/(x+2)", "--out", out]);
    assert_eq!(code(&o), 0);
    let cert = read_json(&dir.path().join("certificate-T1-entire-as-given.json"));
    assert_eq!(cert["theorem"], "T1-entire");
    assert_eq!(cert["k"], 1);

    assert_eq!(code(&ratdec(&["certify", "--model", "meromorphic", "x^2", "(x^3+1)/(x+2)"])), 1);
    assert_eq!(code(&ratdec(&["certify", "(x^2-1)/x^2", "x^2/(x^2-1)"])), 1);
    assert_eq!(code(&ratdec(&["certify", "x^2", "(x^3+"])), 2);
    assert_eq!(code(&ratdec(&["certify", "x^2", "y + 1"])), 2);
    assert_eq!(code(&ratdec(&["certify", "--model", "bogus", "x", "x"])), 2);
}

#[test]
fn file_inputs_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let fpath = dir.path().join("f.txt");
    fs::write(&fpath, "x^2\n").unwrap();
    let farg = format!("@{}", fpath.display());
    assert_eq!(code(&ratdec(&["certify", "--model", "entire", &farg, "(x^3+1)/(x+2)"])), 0);
    assert_eq!(code(&ratdec(&["certify", "@/nonexistent/ratdec/f.txt", "x"])), 4);

    // --out pointing at a regular file
    let o = ratdec(&["analyze", "x^2", "x^3", "--out", fpath.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
}

#[test]
fn precision_from_environment() {
    let run = |p: &str| {
        Command::new(env!("CARGO_BIN_EXE_ratdec"))
            .args(["analyze", "x^2", "(x^3+1)/(x+2)", "--format", "json"])
            .env("RATDEC_PRECISION", p)
            .output()
            .unwrap()
    };
    let o = run("256");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["precision"], 256);
    assert_eq!(code(&run("32")), 2);
}

#[test]
fn nev_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ratdec(&["nev", "--expr", "exp", "--radii", "1:50:25:linear", "--out", out]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let mut rows = 0;
    for line in csv.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (r, t) = (cols[0], *cols.last().unwrap());
        assert!((t - r / std::f64::consts::PI).abs() < 1e-6, "r = {r}, T = {t}");
        rows += 1;
    }
    assert_eq!(rows, 25);
    assert!(fs::read_to_string(dir.path().join("characteristic.svg")).unwrap().contains("</svg>"));

    let o = ratdec(&["nev", "--check", "theoremN", "--expr", "tan", "--targets", "0,1", "--radii", "2:50:25:linear"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));

    let o = ratdec(&["nev", "--check", "identity3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));

    // a lemma2 tolerance no finite grid can meet
    let o = ratdec(&[
        "nev", "--check", "lemma2", "--expr", "sin", "--map", "x^3/(x+2)", "--radii", "1:40:12:log", "--policy-tol", "1e-6",
    ]);
    assert_eq!(code(&o), 1);

    assert_eq!(code(&ratdec(&["nev", "--expr", "tan", "--radii", "1:0:3:log"])), 2);
    assert_eq!(code(&ratdec(&["nev", "--expr", "tan + sin"])), 2);
    // the circle |z| = pi/2 runs through a pole of tan
    assert_eq!(code(&ratdec(&["nev", "--expr", "tan", "--radii", "1.5707963267948966:3:2:linear"])), 2);
}

#[test]
fn quadrature_failure_exit_code() {
    // No panel budget reaches an absolute tolerance of 1e-300.
    let o = ratdec(&["nev", "--expr", "exp", "--radii", "1:2:2:linear", "--tol", "1e-300"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = d.path().to_str().unwrap();
        assert_eq!(code(&ratdec(&["certify", "--symmetric", "x^2", "(x^3+1)/(x+2)", "--out", out])), 0);
        assert_eq!(
            code(&ratdec(&["nev", "--check", "theoremN", "--expr", "tan", "--radii", "1:20:8:log", "--out", out])),
            0
        );
    }
    for name in ["certify.json", "certificate-T1-entire-as-given.json", "table.csv", "nev.json", "characteristic.svg"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}
