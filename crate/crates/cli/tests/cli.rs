use std::process::{Command, Output};

fn ncbinom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncbinom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_examples() {
    for (args, expected) in [
        (vec!["expand", "--n", "1"], "D\n"),
        (vec!["expand", "--n", "0"], "I\n"),
        (vec!["expand", "--n", "2", "--preset", "first-order-plus", "--lambda", "1"], "D D + D\n"),
        (vec!["expand", "--n", "2", "--preset", "first-order-minus", "--lambda", "1"], "D D - 2 * U + D\n"),
    ] {
        let o = ncbinom(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o), expected, "{args:?}");
    }
}

#[test]
fn expand_json() {
    let o = ncbinom(&["expand", "--n", "2", "--preset", "first-order-plus", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["normal"], "D D + D");
    assert_eq!(v["terms"][0]["word"], serde_json::json!(["D"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncbinom(&["expand", "--n", "2", "--lambda", "1/0"]).status.code(), Some(2));
    assert_eq!(ncbinom(&["expand", "--n", "2", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(ncbinom(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(ncbinom(&["verify", "thm-nou", "--jobs", "0", "--n-max", "1"]).status.code(), Some(2));
    assert_eq!(ncbinom(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports() {
    let o = ncbinom(&["verify", "thm-nou", "--n-max", "10", "--lambda", "1,i,1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("33 cases: 33 passed, 0 failed, 0 skipped\n"));
    let o = ncbinom(&["verify", "--suite", "thm-wrongsign", "--n-max", "2", "--lambda", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP thm-wrongsign lambda=0 n=0"));
}

#[test]
fn negative_control_exits_1() {
    let o = ncbinom(&["verify", "cor-kernel", "--n-max", "3", "--j", "3", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cor-kernel j=3 lambda=1 n=3"));
}

#[test]
fn json_stream_schema_and_determinism() {
    let args = ["verify", "vector", "--n-max", "3", "--lambda", "1,-3", "--m", "2", "--seed", "7", "--format", "json"];
    let a = ncbinom(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    let b = ncbinom(&with_jobs);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, cases) = lines.split_last().unwrap();
    assert_eq!(summary["summary"]["total"], cases.len());
    for c in cases {
        for key in ["suite", "params", "status", "lhs", "rhs", "residual"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
        assert!(["pass", "skipped"].contains(&c["status"].as_str().unwrap()));
    }
    let item4 = cases.iter().find(|c| c["params"]["item"] == "4" && c["params"]["n"] == "2").unwrap();
    assert_eq!(item4["params"]["plus_holds"], "true");
    assert_eq!(item4["params"]["minus_holds"], "false");
}

#[test]
fn third_order_and_realizations() {
    let o = ncbinom(&["verify", "third-order", "--n-max", "5", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for suite in ["exp", "sin", "linear", "chvar-gauss", "chvar-log", "eq5-matrix"] {
        let o = ncbinom(&["verify", suite, "--n-max", "4", "--lambda", "1,1/2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn selfcheck_and_broken_fixture() {
    let o = ncbinom(&["selfcheck", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ncbinom(&["selfcheck", "--degree", "3", "--include-broken-fixture"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("D W V -> {D V W | W D V + V W}"));
}
