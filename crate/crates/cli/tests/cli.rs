use std::process::{Command, Output};

fn permwordle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permwordle"))
        .args(args)
        .env_remove("PERMWORDLE_ENUM_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_cyclic_shift_game() {
    let o = permwordle(&["simulate", "--strategy", "cs:5", "--secret", "[4,1,5,2,3]"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("g2   = [5,1,2,3,4]"), "{out}");
    assert!(out.contains("solved in 3 guesses"), "{out}");
}

#[test]
fn simulate_json_has_schema_fields() {
    let o = permwordle(&[
        "simulate",
        "--strategy",
        "cs:5",
        "--secret",
        "[4,1,5,2,3]",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["secret"], serde_json::json!([4, 1, 5, 2, 3]));
    assert_eq!(v["strategy"]["label"], "cs:5");
    assert_eq!(v["turns"].as_array().unwrap().len(), 3);
    assert_eq!(v["turns"][1]["correct_positions"], serde_json::json!([2]));
    assert_eq!(v["outcome"]["type"], "solved");
    assert_eq!(v["outcome"]["turn"], 3);
    assert_eq!(v["repetitions"], serde_json::json!([]));
}

#[test]
fn simulate_loop_exits_10() {
    let o = permwordle(&[
        "construct",
        "--strategy",
        "[[1],[2,1],[2,3,1],[2,1,4,3]]",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"]["tag"], "involution_alternating");
    let omega = v["omega"].to_string();
    let o = permwordle(&[
        "simulate",
        "--strategy",
        "[[1],[2,1],[2,3,1],[2,1,4,3]]",
        "--secret",
        &omega,
    ]);
    assert_eq!(o.status.code(), Some(10), "{}", stdout(&o));
}

#[test]
fn simulate_abort_exits_11() {
    let o = permwordle(&[
        "simulate",
        "--strategy",
        "cs:4",
        "--secret",
        "[2,1,4,3]",
        "--max-turns",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(11));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["simulate", "--strategy", "cs:4", "--secret", "[1,1,2,3]"][..],
        &["simulate", "--strategy", "cs:4", "--secret", "[1,2,3]"][..],
        &["simulate", "--strategy", "bogus:4", "--secret", "[1,2,3,4]"][..],
        &["construct", "--strategy", "[[1],[1,2]]"][..],
        &["verify", "--n", "6"][..],
        &["offenders", "--strategy", "cs:9"][..],
    ] {
        let o = permwordle(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
}

#[test]
fn construct_worked_example() {
    let o = permwordle(&["construct", "--strategy", "inductive:right:[2,4,1,3]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("omega: [4,1,2,3]\ncase: contains_2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn construct_pure_shift_exits_3() {
    for spec in ["cs:6", "lcs:5"] {
        let o = permwordle(&["construct", "--strategy", spec]);
        assert_eq!(o.status.code(), Some(3));
        assert_eq!(stdout(&o), "no offender: pure cyclic shift\n");
    }
}

#[test]
fn offenders_listing() {
    let o = permwordle(&[
        "offenders",
        "--strategy",
        "csl:4",
        "--list-offenders",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["offender_total"], 4);
    assert_eq!(v["offenders"].as_array().unwrap().len(), 4);
}

#[test]
fn sequence_text() {
    let o = permwordle(&["sequence", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4, 35, 244\n");
}

#[test]
fn verify_n4() {
    let o = permwordle(&["verify", "--n", "4", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["strategies_checked"], 18);
}

#[test]
fn env_limit_is_respected() {
    let o = Command::new(env!("CARGO_BIN_EXE_permwordle"))
        .args(["offenders", "--strategy", "cs:6"])
        .env("PERMWORDLE_ENUM_LIMIT", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_identical_across_thread_counts() {
    let run = |threads: &str| {
        let o = permwordle(&[
            "offenders",
            "--strategy",
            "csl:7",
            "--list-offenders",
            "--output",
            "json",
            "--threads",
            threads,
        ]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
}

#[test]
fn reports_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("census.json");
    let csv = dir.path().join("seq.csv");
    let o = permwordle(&[
        "offenders",
        "--strategy",
        "csl:5",
        "--report",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["offender_total"], 35);

    let o = permwordle(&[
        "sequence",
        "--max-n",
        "5",
        "--report",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let table = std::fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("label,n,clean,repeating,looping"));
    assert_eq!(lines.count(), 2);

    let o = permwordle(&["verify", "--n", "4", "--report", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
