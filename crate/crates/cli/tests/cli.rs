use std::process::{Command, Output};

use serde_json::Value;

fn fmhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmhs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let o = fmhs(&["compute", "zbar-t", "--n", "3", "--q", "zeta", "--index", "1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"t^0":"1/3","t^1":"1/3"}"#);

    let o = fmhs(&["compute", "zbar", "--n", "2", "--q", "1/2", "--index", "1"]);
    assert_eq!(stdout(&o).trim(), r#""2""#);

    let o = fmhs(&["compute", "xi-coeff", "--l", "1"]);
    assert_eq!(stdout(&o).trim(), r#"{"t^0":"1/2"}"#);

    let o = fmhs(&["compute", "eval-const", "--k", "2", "--l", "1", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "t^0\n-2/3\n");

    let o = fmhs(&["compute", "g-sum", "--n", "3", "--k", "2", "--l", "2", "--h", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"t^0":"1/3","t^1":"1/3"}"#);
}

#[test]
fn exit_codes() {
    // q^1 = 1 collides with n = 3
    assert_eq!(fmhs(&["compute", "zbar", "--n", "3", "--q", "1", "--index", "1"]).status.code(), Some(3));
    assert_eq!(fmhs(&["compute", "zbar", "--n", "3", "--q", "x/y", "--index", "1"]).status.code(), Some(2));
    assert_eq!(fmhs(&["compute", "zbar", "--n", "3", "--index", "0,1"]).status.code(), Some(2));
    assert_eq!(fmhs(&["compute", "nonsense"]).status.code(), Some(2));
    assert_eq!(fmhs(&["compute", "zbar", "--q", "zeta", "--index", "1"]).status.code(), Some(2));
    assert_eq!(fmhs(&["verify", "--suite", "no_such_identity"]).status.code(), Some(2));
    assert_eq!(fmhs(&["verify", "--suite", "thm1_1", "--max-cap", "9"]).status.code(), Some(2));
    assert_eq!(fmhs(&["verify", "--suite", "thm1_1", "--n", "5..2"]).status.code(), Some(2));
    assert_eq!(fmhs(&["compute", "eval-const", "--k", "2", "--l", "3", "--n", "1"]).status.code(), Some(3));
}

#[test]
fn verify_examples() {
    let o = fmhs(&["verify", "--suite", "thm1_3", "--n", "2..6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).trim(), "passed 5 / failed 0 / skipped 0");

    let o = fmhs(&["verify", "--suite", "all", "--max-cap", "4", "--n", "2..5", "--r", "1,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("failed 0"));
}

#[test]
fn verify_output_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for jobs in ["1", "4"] {
        let path = dir.path().join(format!("report-{jobs}.json"));
        let o = fmhs(&[
            "verify",
            "--suite",
            "thm1_1,prop2_2,remark_qhs",
            "--n",
            "2..4",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let doc: Value = serde_json::from_slice(&bodies[0]).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), doc["passed"].as_u64().unwrap() as usize);
    for r in reports {
        for key in ["identity", "params", "status", "lhs", "rhs", "mismatch"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn verify_csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o =
        fmhs(&["verify", "--suite", "chu_vandermonde", "--n", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("identity,params,status,mismatch"));
    assert!(text.lines().nth(1).unwrap().starts_with("chu_vandermonde,"));
    assert!(text.contains(",pass,"));
}

#[test]
fn tables() {
    let o = fmhs(&["table", "gsum", "--n", "3", "--k", "1..3", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "3,2,2,1/3,1/3,0,0"), "{text}");

    let o = fmhs(&["table", "eval", "--n", "3", "--k", "2", "--l", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,k,l,t^0,t^1\n3,2,1,-2/3,0\n");

    let o = fmhs(&["table", "eval", "--n", "4..3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,k,l\n");

    let o = fmhs(&["table", "eval", "--n", "4..3"]);
    assert_eq!(stdout(&o).trim(), "[]");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let o = fmhs(&["table", "gsum", "--n", "3", "--k", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let row = rows.as_array().unwrap().iter().find(|r| r["l"] == 2).unwrap();
    assert_eq!(row["t^0"], "1/3");
    assert_eq!(row["t^1"], "1/3");
}

#[test]
fn tables_are_deterministic() {
    let a = stdout(&fmhs(&["table", "gsum", "--n", "2..4", "--k", "1..4"]));
    let b = stdout(&fmhs(&["table", "gsum", "--n", "2..4", "--k", "1..4"]));
    assert_eq!(a, b);
}

#[test]
fn xi_convergence_shrinks() {
    let o = fmhs(&["xi-convergence", "--l", "1,2", "--t", "0,0.5,1", "--n", "50,400"]);
    assert!(o.status.success());
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for pair in rows.chunks(2) {
        assert!(pair[1]["abs_error"].as_f64() < pair[0]["abs_error"].as_f64());
        assert!(pair[1]["rel_error"].as_f64().unwrap() < 0.1);
    }
}
