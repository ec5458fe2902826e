use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

/// Runs the binary on a whitespace-separated command line.
fn run(cmd: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville")).args(cmd.split_whitespace()).output().expect("binary runs")
}

fn code(cmd: &str) -> i32 {
    run(cmd).status.code().expect("exit code")
}

fn json(cmd: &str) -> Value {
    let out = run(cmd);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_rows(out: &Output) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(&out.stdout[..]).records().map(|r| r.unwrap()).collect()
}

const GOOD_PROBLEM: &str = r#"{
    "profile": {"variant": "PowerDecay", "C": 0.25, "delta": 2},
    "hamiltonian": {"variant": "H1", "q": 3, "gamma": 1.5},
    "ellipticity": {"lambda": 1, "Lambda": 1},
    "N": 5,
    "sign": "plus"
}"#;

/// `M+(D^2 u) >= u^0.5 + |Du|^2` cannot hold for a huge decaying profile.
const BAD_PROBLEM: &str = r#"{
    "profile": {"variant": "PowerDecay", "C": 1e6, "delta": 1},
    "hamiltonian": {"variant": "H1", "q": 0.5, "gamma": 2},
    "ellipticity": {"lambda": 1, "Lambda": 1},
    "N": 3,
    "sign": "plus"
}"#;

const LAPLACE4: &str = "--N 4 --lambda 1 --Lambda 1 --operator plus";

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", GOOD_PROBLEM);
    let bad = write(dir.path(), "bad.json", BAD_PROBLEM);
    let malformed = write(dir.path(), "malformed.json", "{\"profile\": ");
    let missing = dir.path().join("absent.json").to_str().unwrap().to_string();

    let cases = [
        ("classify --N 5 --lambda 1 --Lambda 1 --operator plus --ham h1 --q 2 --gamma 1.2".to_string(), 0),
        (format!("classify {LAPLACE4} --ham h2 --q 0 --gamma 1.5"), 0),
        ("counterexample --ham h1 --q 3 --gamma 1.5 --N 5 --lambda 1 --Lambda 1".into(), 0),
        ("counterexample --ham h1 --q 1.1 --gamma 1.5 --N 5 --lambda 1 --Lambda 1".into(), 0),
        ("lyapunov --N 2 --lambda 1 --Lambda 1 --drift zero".into(), 0),
        (format!("verify {good}"), 0),
        ("transform lcp --u -1 --v 1 --q 1".into(), 0),
        (format!("verify {bad}"), 1),
        ("lyapunov --N 3 --lambda 1 --Lambda 1 --drift zero".into(), 1),
        (r#"monotonic --profile {"variant":"Constant","value":1} --exponent -1"#.into(), 1),
        ("bogus".into(), 2),
        ("classify --N 4 --operator plus --ham h2 --q 0 --gamma 1.5".into(), 2),
        ("classify --N 4 --lambda 2 --Lambda 1 --operator plus --ham h2 --q 0 --gamma 1.5".into(), 2),
        (format!("sweep {LAPLACE4} --ham h2 --q-range 0:1:0 --gamma-range 1:2:3"), 2),
        (format!("verify {missing}"), 2),
        (format!("verify {malformed}"), 2),
        ("counterexample --ham drift --delta 5 --N 3 --lambda 1 --Lambda 1".into(), 2),
    ];
    for (cmd, want) in &cases {
        assert_eq!(code(cmd), *want, "{cmd}");
    }
}

#[test]
fn classify_examples() {
    let v = json("classify --N 5 --lambda 1 --Lambda 1 --operator plus --ham h1 --q 2 --gamma 1.2");
    assert_eq!(v["outcome"], "holds");
    assert_eq!(v["theorem_ref"], "Theorem 2.1");
    let v = json(&format!("classify {LAPLACE4} --ham h2 --q 0 --gamma 1.5"));
    assert_eq!(v["outcome"], "fails");
    assert!(v["witness"]["residual_min"].as_f64().unwrap() >= -1e-12);
    let v = json("classify --N 3 --lambda 1 --Lambda 2 --operator minus --ham h3 --gamma 2 --A -1 --drift-limsup -0.5");
    assert_eq!(v["outcome"], "holds");
    assert_eq!(v["theorem_ref"], "Theorem 4.4");
}

#[test]
fn counterexample_and_verify_reports() {
    let v = json("counterexample --ham h1 --q 3 --gamma 1.5 --N 5 --lambda 1 --Lambda 1");
    assert_eq!(v["feasible"], true);
    assert!((v["delta"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(v["residual_min"].as_f64().unwrap() >= -1e-12);

    let v = json("counterexample --ham h2-singular --gamma 1 --N 3 --lambda 1 --Lambda 1");
    assert_eq!(v["feasible"], false);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", BAD_PROBLEM);
    let v = json(&format!("verify {bad}"));
    assert_eq!(v["verified"], false);
    assert!(v["min"].as_f64().unwrap() < -1e-12);
    assert!(v["argmin"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let sweep = format!("sweep {LAPLACE4} --ham h2 --q-range 0:2:20 --gamma-range 0.5:2:20 --output");
    assert_eq!(code(&format!("{sweep} {}", a.display())), 0);
    assert_eq!(code(&format!("{sweep} {}", b.display())), 0);
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 401);
    assert_eq!(
        text.lines().next().unwrap(),
        "q,gamma,beta,verdict,theorem_ref,witness_delta,witness_amplitude,residual_min"
    );
}

#[test]
fn sweep_boundary_follows_the_failure_line() {
    let out = run(&format!("sweep {LAPLACE4} --ham h2 --q-range 0:2:20 --gamma-range 0.5:2:20 --verify-witnesses"));
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 400);
    let (step_q, step_g) = (2.0 / 19.0, 1.5 / 19.0);
    for row in &rows {
        let q: f64 = row[0].parse().unwrap();
        let g: f64 = row[1].parse().unwrap();
        let beta: f64 = row[2].parse().unwrap();
        if &row[3] == "fails" {
            assert!((beta - 2.0) * q + (beta - 1.0) * g > beta);
            assert!(row[7].parse::<f64>().unwrap() >= -1e-12);
            assert!(!row[5].is_empty() && !row[6].is_empty());
        }
    }
    // neighbouring cells with and without a fails verdict straddle 2q + 3 gamma = 4
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a[0] != b[0] || (&a[3] == "fails") == (&b[3] == "fails") {
            continue;
        }
        let q: f64 = a[0].parse().unwrap();
        let g: f64 = a[1].parse().unwrap();
        let boundary = (4.0 - 2.0 * q) / 3.0;
        assert!((g - boundary).abs() <= step_g + 2.0 / 3.0 * step_q, "q = {q}, gamma = {g}");
    }
}

#[test]
fn single_point_sweep_matches_classify() {
    let flags = "--N 4 --lambda 1 --Lambda 2 --operator plus --ham h1";
    let out = run(&format!("sweep {flags} --q-range 3:3:1 --gamma-range 1.7:1.7:1"));
    assert_eq!(out.status.code(), Some(0));
    let row = csv_rows(&out).remove(0);
    let v = json(&format!("classify {flags} --q 3 --gamma 1.7"));
    assert_eq!(&row[3], v["outcome"].as_str().unwrap());
    assert_eq!(&row[4], v["theorem_ref"].as_str().unwrap());
    if let Some(w) = v["witness"].as_object() {
        assert_eq!(row[5].parse::<f64>().unwrap(), w["delta"].as_f64().unwrap());
    }
}

#[test]
fn json_output_is_canonical() {
    let cmd = "counterexample --ham h2 --q 1 --gamma 1.5 --N 4 --lambda 1 --Lambda 2";
    let (a, b) = (run(cmd).stdout, run(cmd).stdout);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    // keys appear sorted in the raw text
    let at = |k: &str| text.find(&format!("\"{k}\":")).unwrap();
    assert!(at("amplitude") < at("delta") && at("delta") < at("feasible") && at("feasible") < at("profile"));
    // floats carry 17 significant digits
    let delta = v["delta"].as_f64().unwrap();
    assert!(text.contains(&format!("\"delta\":{delta:.16e}")));
}

#[test]
fn transform_subcommands_answer() {
    let v = json("transform hopf-cole --u 1.5 --lambda 2");
    assert!((v["inverse"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    let v = json("transform power --q 0.5 --gamma 1.2 --b 2");
    assert!((v["s"].as_f64().unwrap() - (1.0 - 1.2 + 2.0 * 0.7)).abs() < 1e-12);
    let v = json("transform mixquad --u 1 --q 0 --lambda 1");
    assert!((v["v"].as_f64().unwrap() - (1.0 - (-1f64).exp())).abs() < 1e-10);
    let v = json("transform transfer --q 0.3 --gamma 1.1 --N 4 --lambda 1 --Lambda 1");
    assert_eq!(v["status"], "transferable");
    let chain = r#"transform chain --profile {"variant":"PowerDecay","C":1,"delta":1} --N 3 --lambda 1 --Lambda 2"#;
    assert_eq!(code(&format!("{chain} --drift-scaled-c -0.5")), 0);
}
