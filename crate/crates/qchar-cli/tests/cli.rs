use std::fs;
use std::process::{Command, Output};

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_qprime_schur_form() {
    let o = qchar(&["compute", "qprime", "--mu", "(1,1)", "--n", "2", "--method", "charge"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "s[1,1] + q*s[2]");
    let o = qchar(&["compute", "qprime", "--mu", "()", "--n", "3"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn compute_f_rank_one() {
    let o = qchar(&["compute", "F", "--m", "1", "--n", "1", "--order", "6"]);
    assert_eq!(stdout(&o).trim(), "1 + t^2 + t^4 + t^6 + O(t^7)");
}

#[test]
fn compute_eta_side() {
    let o = qchar(&["compute", "eta-side", "--id", "BC-6c-RR", "--n", "1", "--m", "1", "--order", "8", "--side", "hl"]);
    assert_eq!(stdout(&o).trim(), "1 + t^2 + t^4 + t^6 + 2*t^8 + O(t^9)");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qchar(&["verify", "--id", "no-such-check"]).status.code(), Some(2));
    assert_eq!(qchar(&["verify", "--suite", "some"]).status.code(), Some(2));
    assert_eq!(qchar(&["verify", "eta", "--id", "XX"]).status.code(), Some(2));
    assert_eq!(qchar(&["compute", "F", "--m", "0", "--n", "1"]).status.code(), Some(2));
    assert_eq!(qchar(&["verify", "--id", "rr-desk", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn verify_emits_json_lines() {
    let o = qchar(&["verify", "--id", "rr-desk"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["id"], "rr-desk");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["order"], 30);
    for key in ["params", "sample_points", "first_mismatch", "runtime_ms"] {
        assert!(v.get(key).is_some(), "{}", key);
    }
}

#[test]
fn verify_eta_direct() {
    let o = qchar(&["verify", "eta", "--id", "BC-6c-RR", "--n", "1", "--m", "1", "--order", "16", "--format", "text"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains(" pass ")), "{}", text);
}

#[test]
fn config_file_under_flags() {
    let dir = std::env::temp_dir().join(format!("qchar-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    fs::write(&path, "# settings\norder = 12\nseed = 3\npoints=1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = qchar(&["verify", "--id", "poch-negative", "--config", p]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!((v["order"].as_i64(), v["sample_points"].as_i64()), (Some(12), Some(1)));
    let o = qchar(&["verify", "--id", "poch-negative", "--config", p, "--order", "8"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["order"].as_i64(), Some(8));
    fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(qchar(&["verify", "--id", "poch-negative", "--config", p]).status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn list_identities_is_sorted() {
    let o = qchar(&["list-identities"]);
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert!(ids.contains(&"qprime-routes".to_string()));
    assert!(ids.contains(&"eta:D-new".to_string()));
    let checks: Vec<&String> = ids.iter().take_while(|id| id.as_str() != "MD-C").collect();
    assert!(checks.windows(2).all(|w| w[0] < w[1]));
}
