use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chiralbag"))
        .args(args)
        .env_remove("CHIRALBAG_MU_MAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().to_string()).collect()
}

#[test]
fn untwisted_coefficients() {
    let o = run(&["coeffs", "--m", "2", "--theta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for (name, want) in [("c1", 0.0), ("c2", -1.0 / 6.0), ("c4", 0.0), ("c5", 1.0), ("c6", 0.0), ("c7", 0.0)] {
        let got: f64 = field(&s, name)[0].parse().unwrap();
        assert!((got - want).abs() < 1e-7, "{name} = {got}");
    }
}

#[test]
fn table_schema_is_stable_and_output_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&["table", "--m", "2,4", "--theta", "-1:1:0.5", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(
        text.lines().next().unwrap(),
        "theta,m,c1,c2,c3,c4,c5,c6,c7,d1,d2,d3,d4,a1_ball,a2_ball,a1_eta"
    );
    assert_eq!(text.lines().count(), 1 + 5 * 2);
    // θ-major grid order.
    assert_eq!(field(&text, "theta")[..3], ["-1", "-1", "-0.5"]);
    assert_eq!(field(&text, "m")[..2], ["2", "4"]);
}

#[test]
fn json_mirrors_csv_fields() {
    let o = run(&["table", "--m", "6", "--theta", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let row = v.as_array().unwrap()[0].as_object().unwrap();
    let csv = stdout(&run(&["table", "--m", "6", "--theta", "0.3"]));
    for name in csv.lines().next().unwrap().split(',') {
        let j = &row[name];
        let c: f64 = field(&csv, name)[0].parse().unwrap();
        assert_eq!(j.as_f64().unwrap(), c, "{name}");
    }
}

#[test]
fn identities_pass_on_the_example_grid() {
    let o = run(&["verify-identities", "--m", "2,4,6,8", "--theta", "-2:2:0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 1 + 17 * 4);
    for r in field(&s, "max_residual") {
        assert!(r.parse::<f64>().unwrap() < 1e-11);
    }
    // Quotient relation is undefined at m = 2.
    assert_eq!(field(&s, "c7_relation")[0], "");
}

#[test]
fn tolerance_failure_exits_one_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&[
        "verify-identities", "--m", "4", "--theta", "1.5", "--tol", "1e-30", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(field(&text, "pass"), ["false"]);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["verify-identities", "--m", "3"][..],
        &["table", "--theta", "0:1:0"],
        &["table", "--theta", "1:0:0.1"],
        &["verify-ball", "--t-min", "0.4", "--t-max", "0.3"],
        &["verify-cylinder", "--t", "-0.1"],
        &["verify-cylinder", "--omega", "0"],
        &["verify-cylinder", "--tol", "0"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn cylinder_checks_pass_on_a_small_grid() {
    let o = run(&["verify-cylinder", "--omega", "1.3,-0.5", "--theta", "0.7", "--t", "0.25", "--s", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "check"), ["u1", "u2", "erfc_paths", "u1", "u2", "erfc_paths", "t_integral", "t_integral"]);
}

#[test]
fn ball_fit_example_and_env_override() {
    let o = run(&["verify-ball", "--m", "2", "--theta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let a1: f64 = field(&s, "a1_fit")[0].parse().unwrap();
    assert!((a1 - 0.1131056).abs() / 0.1131056 < 0.01);

    // A cutoff too small for the smallest t is a numerical failure.
    let o = Command::new(env!("CARGO_BIN_EXE_chiralbag"))
        .args(["verify-ball", "--theta", "0.5"])
        .env("CHIRALBAG_MU_MAX", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cutoff"));
}
