use std::process::{Command, Output};

fn howson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howson"))
        .args(args)
        .env_remove("HOWSON_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn rank_prints_index_rank_and_bound() {
    let o = howson(&["rank", "--q", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains(">= 8"), "{text}");
    let o = howson(&["rank", "--q", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], v["index"].as_u64().unwrap() + 1);
    assert!(v["index"].as_u64().unwrap() >= 7);
}

#[test]
fn member_reports_cocycle_membership() {
    let o = howson(&["member", "--word", "uVuV", "--q", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("true"));
    let o = howson(&["member", "--word", "uVuV"]);
    assert!(stdout(&o).starts_with("false"));
    assert!(stdout(&o).contains("(-4, 4)"));
}

#[test]
fn graph_json_for_q_two() {
    let o = howson(&["graph", "--q", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);
}

#[test]
fn graph_dot_for_a_ball_goes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.dot");
    let o = howson(&["graph", "--depth", "1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(path).unwrap();
    assert_eq!(dot.matches("style=dashed").count(), 4);
}

#[test]
fn relative_out_paths_use_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_howson"))
        .args(["graph", "--q", "3", "--format", "json", "--out", "g3.json"])
        .env("HOWSON_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("g3.json").exists());
}

#[test]
fn core_subcommands() {
    let o = howson(&["core", "--q", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "exact");
    assert_eq!(v["core_size"], v["vertices"]);
    let o = howson(&["core", "--depth", "6", "--witness", "uVuV", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "certified-lower-bound");
    assert!(v["core_size"].as_u64().unwrap() > 0);
    let o = howson(&["core", "--depth", "4", "--witness", "UVu"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn abelianization_and_snf() {
    let o = howson(&["abelianization", "--q", "9"]);
    assert!(stdout(&o).contains("Z^2 + Z/2 + Z/2"));
    let o = howson(&["snf", "--matrix", "0 2 0 0; 0 0 2 0"]);
    assert_eq!(stdout(&o).trim(), "(2, 2)");
    let o = howson(&["snf", "--matrix", "-2 4; 6 8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!(["2", "20"]));
}

#[test]
fn orbit_prints_a_verified_witness() {
    let o = howson(&["orbit", "--n", "-3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["point"], serde_json::json!(["-3", "4"]));
    let o = howson(&["orbit", "--n", "4"]);
    assert!(stdout(&o).contains("u^6 v^4 u"));
}

#[test]
fn errors_exit_nonzero_with_one_line() {
    for args in [
        vec!["member", "--word", "UxV"],
        vec!["rank", "--q", "1"],
        vec!["graph", "--depth", "17"],
        vec!["snf", "--matrix", "1 2; 3"],
        vec!["verify-paper", "--depth", "40"],
    ] {
        let o = howson(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let o = howson(&["rank", "--bogus"]);
    assert!(!o.status.success());
}

#[test]
fn verify_paper_small_run_is_deterministic() {
    let args = [
        "verify-paper", "--n-max", "30", "--q-max", "8", "--depth", "6", "--sweep-len", "6",
        "--format", "json",
    ];
    let a = howson(&args);
    let b = howson(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["failed"], 0);
    for check in v["checks"].as_array().unwrap() {
        assert!(!check["paper_anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_paper_q_max_two() {
    let o = howson(&[
        "verify-paper", "--n-max", "5", "--q-max", "2", "--depth", "5", "--sweep-len", "4",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bounds = v["rank_bounds"].as_array().unwrap();
    assert_eq!(bounds.len(), 1);
    assert_eq!(bounds[0]["q"], 2);
    assert_eq!(bounds[0]["rank_lower_bound"], 5);
}
