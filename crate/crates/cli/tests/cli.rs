use assert_cmd::Command;
use predicates::prelude::*;

fn mlv() -> Command {
    let mut cmd = Command::cargo_bin("mlv").unwrap();
    for var in [
        "MLV_LEVEL",
        "MLV_TRUNC",
        "MLV_TOL",
        "MLV_FORMAT",
        "MLV_JOBS",
        "MLV_SUITE",
        "MLV_KMAX",
    ] {
        cmd.env_remove(var);
    }
    cmd
}

#[test]
fn stuffle_of_two_letters() {
    mlv()
        .args(["product", "--op", "stuffle", "--level", "3", "z(2,1)", "z(3,2)"])
        .assert()
        .success()
        .stdout("z(2,1)z(3,2) + z(3,2)z(2,1) + z(5,0)\n");
}

#[test]
fn shuffle_of_x_and_y1() {
    mlv()
        .args(["product", "--op", "shuffle", "x", "y1"])
        .assert()
        .success()
        .stdout("y1 x + x y1\n");
}

#[test]
fn product_json() {
    mlv()
        .args([
            "--format", "json", "product", "--op", "stuffleN", "--level", "2", "Y(1,1)", "Y(2,0)",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"level\":2").and(predicate::str::contains("\"result\"")));
}

#[test]
fn parse_error_points_at_the_offset() {
    mlv()
        .args(["product", "--op", "stuffle", "z(2,", "z(1,0)"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("position 4").and(predicate::str::contains("    ^")));
}

#[test]
fn twist_map_on_a_word() {
    mlv()
        .args(["map", "--which", "I", "--level", "3", "z(2,1)z(3,2)"])
        .assert()
        .success();
    mlv()
        .args(["map", "--which", "Jinv", "Y(2,1)"])
        .assert()
        .success()
        .stdout("Y(2,1)\n");
}

#[test]
fn regularized_y0_is_the_formal_variable() {
    mlv()
        .args(["map", "--which", "reg-star", "y0"])
        .assert()
        .success()
        .stdout("deg0: 0, deg1: 1\n");
    mlv()
        .args(["map", "--which", "reg-shuffle", "y0"])
        .assert()
        .success()
        .stdout("deg0: 0, deg1: 1\n");
}

#[test]
fn zeta_three() {
    mlv()
        .args(["eval", "z(3,0)"])
        .assert()
        .success()
        .stdout(predicate::str::starts_with("re = 1.20205690315959"));
}

#[test]
fn eval_json_fields() {
    let out = mlv()
        .args(["--format", "json", "--level", "2", "eval", "z(2,1)"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Li_2(-1) = -pi^2/12
    let expected = -std::f64::consts::PI.powi(2) / 12.0;
    assert!((v["value"]["re"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!(v["value"]["im"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["level"], 2);
    assert!(v["err"].as_f64().unwrap() < 1e-8);
    assert!(v["trunc"].as_u64().is_some());
}

#[test]
fn divergent_word_exits_four() {
    mlv()
        .args(["eval", "z(1,0)"])
        .assert()
        .code(4)
        .stderr(predicate::str::contains("divergent"));
}

#[test]
fn level_zero_is_a_domain_error() {
    mlv().args(["--level", "0", "eval", "z(2,0)"]).assert().code(3);
}

#[test]
fn small_verify_run() {
    mlv()
        .args(["verify", "--suite", "corollaries", "--level", "1", "--kmax", "5"])
        .assert()
        .success()
        .stdout(predicate::str::contains("summary:").and(predicate::str::contains(" 0 failed")));
}

#[test]
fn verify_json_lines() {
    let out = mlv()
        .args([
            "--format",
            "json",
            "--level",
            "2",
            "verify",
            "--suite",
            "corollaries",
            "--kmax",
            "4",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["summary"]["failed"], 0);
    assert_eq!(summary["summary"]["passed"].as_u64().unwrap() as usize, lines.len() - 1);
}

#[test]
fn env_overrides_the_level() {
    mlv()
        .env("MLV_LEVEL", "2")
        .args(["product", "--op", "stuffle", "z(1,1)", "z(1,1)"])
        .assert()
        .success()
        .stdout(predicate::str::contains("z(2,0)"));
}
