use std::process::{Command, Output};

fn sucfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sucfix")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn apply_invert_round_trip() {
    let o = sucfix(&["apply", "--perm", "7 2 6 4 1 3 5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 1 2 6 7 5 3\n");

    let back = sucfix(&["invert", "--perm", stdout(&o).trim()]);
    assert_eq!(stdout(&back), "7 2 6 4 1 3 5\n");

    for p in ["1", "2 1", "3 1 2 5 4", "6 5 4 3 2 1", "1 2 3 4 5 6 7 8 9 10"] {
        let tau = stdout(&sucfix(&["apply", "--perm", p]));
        let sigma = stdout(&sucfix(&["invert", "--perm", tau.trim()]));
        assert_eq!(sigma.trim(), p);
    }
}

#[test]
fn usage_errors_exit_2() {
    let o = sucfix(&["apply", "--perm", "1 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate value"));
    assert_eq!(sucfix(&["invert", "--perm", ""]).status.code(), Some(2));
    assert_eq!(sucfix(&["stats", "--perm", "1 2 x"]).status.code(), Some(2));
    assert_eq!(sucfix(&["verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(sucfix(&["verify", "--n", "13", "--check", "relations"]).status.code(), Some(2));
    assert_eq!(sucfix(&["table", "--n", "3", "--stat", "nope"]).status.code(), Some(2));
    assert_eq!(sucfix(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports_json() {
    assert_eq!(sucfix(&["verify", "--n", "1", "--check", "all"]).status.code(), Some(0));
    let o = sucfix(&["verify", "--n", "7", "--check", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verifier"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["relations", "pfee", "counting", "triple"]);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["permutations_examined"], 5040);
        assert!(r["counterexample"].is_null());
    }
}

#[test]
fn json_schema_is_stable_across_runs() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r["elapsed"] = serde_json::Value::Null;
        }
        v
    };
    let a = strip(sucfix(&["verify", "--n", "6", "--format", "json"]));
    let b = strip(sucfix(&["verify", "--n", "6", "--format", "json"]));
    assert_eq!(a, b);
}

#[test]
fn trace_json() {
    let o = sucfix(&["apply", "--perm", "7 2 6 4 1 3 5", "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sigma_hat"], serde_json::json!([5, 7, 4, 2, 6, 1, 3]));
    assert_eq!(v["tau"], serde_json::json!([4, 1, 2, 6, 7, 5, 3]));
}

#[test]
fn tables() {
    let suc = stdout(&sucfix(&["table", "--n", "3", "--stat", "suc", "--format", "csv"]));
    let rows: Vec<&str> = suc.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    let total: u64 = rows.iter().map(|r| r.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 6);
    let fix = stdout(&sucfix(&["table", "--n", "3", "--stat", "fix_bar"]));
    assert_eq!(suc, fix);
    assert_eq!(stdout(&sucfix(&["table", "--n", "1", "--stat", "fix_bar"])), "subset,count\n,1\n");

    let o = sucfix(&["table", "--n", "5", "--stat", "naj_suc", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 120);
    for row in v["rows"].as_array().unwrap() {
        for x in row["subset"].as_array().unwrap() {
            let x = x.as_u64().unwrap();
            assert!((1..=3).contains(&x));
        }
    }
}

#[test]
fn stats_text() {
    let o = sucfix(&["stats", "--perm", "1"]);
    assert_eq!(
        stdout(&o),
        "suc      {}\nfix_bar  {}\nnaj_suc  {}\npred     {}\ndrop_bar {}\nexc_bar  {}\n"
    );
}
