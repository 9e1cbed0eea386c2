use std::process::Command;

fn covera(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_covera")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn roots_report_has_schema_and_passes() {
    let (code, text) = covera(&["roots", "--type", "A2,E8"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][1]["details"]["root_count"], 240);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(covera(&["--ring", "F4", "roots"]).0, Some(2));
    assert_eq!(covera(&["covering", "--ancestor", "A2", "--order", "3"]).0, Some(2));
    assert_eq!(covera(&["lie", "--exceptional", "E8", "--prime", "5"]).0, Some(2));
    assert_eq!(covera(&["no-such-command"]).0, Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("covera-cli-{}.json", std::process::id()));
    let (code, text) = covera(&["lie", "--exceptional", "A2", "--prime", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(text.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["checks"][0]["details"]["dims"]["quotient"], 7);
}

#[test]
fn covering_campaign_passes_at_weight_one() {
    let (code, text) = covera(&["covering", "--ancestor", "A3", "--order", "2", "--weight", "1", "--sequential"]);
    assert_eq!(code, Some(0), "{text}");
}

#[test]
fn e8_graded_dimensions_from_the_command_line() {
    let (code, text) = covera(&["va", "--lattice", "E8", "--dims", "0..2"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["checks"][0]["details"]["dims"], serde_json::json!([1, 248, 4124]));
}

#[test]
fn dims_beyond_truncation_is_a_usage_error() {
    assert_eq!(covera(&["va", "--lattice", "A2", "--wmax", "3", "--dims", "0..4"]).0, Some(2));
    assert_eq!(covera(&["va", "--lattice", "A2", "--dims", "3..1"]).0, Some(2));
}
