//! The `affder` binary: exit codes, formats, output files, determinism.

use std::process::{Command, Output};

fn affder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affder")).args(args).env("AFFDER_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_examples_exit_zero() {
    let o = affder(&["verify", "--family", "sympl", "--max-m", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("checked 10, passed 10, failed 0\n"));
    let o = affder(&["verify", "--family", "cute-genfun", "--max-n", "40", "--max-parts", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let o = affder(&["verify", "--family", "bijection", "--max-a", "22", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let nine_four = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["family"] == "bijection" && r["parameters"]["a"] == 9 && r["parameters"]["b"] == 4)
        .unwrap();
    assert_eq!(nine_four["lhs"], "6");
    assert_eq!(nine_four["rhs"], "6");
}

#[test]
fn delta_and_oracle_examples() {
    assert_eq!(stdout(&affder(&["delta", "--family", "au", "--m", "2", "--q", "2"])), "11/32 (0.34375)\n");
    assert_eq!(stdout(&affder(&["delta", "--family", "asp", "--m", "1", "--q", "3"])), "7/27 (0.259259) conjectural\n");
    assert!(stdout(&affder(&["delta", "--family", "agl", "--m", "3", "--q", "2"])).starts_with("25/64"));
    let o = affder(&["oracle", "--family", "au", "--m", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle-au-delta m=1 p_power=0 q=2: 1/4 (0.25)"));
    let o = affder(&["oracle", "--family", "asp", "--m", "1", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn operational_errors_exit_one() {
    assert_eq!(affder(&["delta", "--family", "ao-odd", "--m", "1", "--q", "9", "--p-power"]).status.code(), Some(0));
    assert_eq!(affder(&["delta", "--family", "ao-odd", "--m", "1", "--q", "10"]).status.code(), Some(1));
    assert_eq!(affder(&["verify", "--family", "sympl,bogus"]).status.code(), Some(1));
    let o = affder(&["oracle", "--family", "asp", "--m", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));
    let o = Command::new(env!("CARGO_BIN_EXE_affder"))
        .args(["partitions", "--n", "3"])
        .env("AFFDER_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("affder-e2e-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut bodies = Vec::new();
    // the config echo records the output path, so both runs share it
    let path = dir.join("report.json");
    for threads in ["1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_affder"))
            .args(["verify", "--family", "orth-even,signed,chain-o-sum", "--max-m", "8", "--order", "10"])
            .args(["--format", "json", "--output"])
            .arg(&path)
            .env("AFFDER_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_and_partition_listing() {
    let o = affder(&["verify", "--family", "chain-o-diff", "--order", "6", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("family,parameters,lhs,rhs,equal,conjectural,terms,elapsed_ms\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
    assert_eq!(stdout(&affder(&["partitions", "--n", "2", "--constraint", "odd-even-mult"])), "(2)\n(1,1)\ncount 2\n");
    let o = affder(&["partitions", "--n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 7);
}
