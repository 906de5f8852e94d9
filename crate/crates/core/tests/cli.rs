//! Exit-code contract and catalog drift checks for the `esgames` binary.

use std::path::PathBuf;
use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_esgames")
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn parse_error_exits_two() {
    let bad = std::env::temp_dir().join("esgames-bad-bundle.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let status = Command::new(exe())
        .arg("validate")
        .arg(&bad)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unresolved_reference_exits_two() {
    let path = std::env::temp_dir().join("esgames-dangling.json");
    std::fs::write(
        &path,
        r#"{"schema_version":1,"documents":{"g":{"kind":"game","es":"missing","n_action":"missing","p_action":"missing","law":"missing"}}}"#,
    )
    .unwrap();
    let status = Command::new(exe())
        .arg("validate")
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn validation_failure_exits_one() {
    let mut value: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(data_dir().join("negative.json")).unwrap(),
    )
    .unwrap();
    value["documents"]["broken-heredity"]
        .as_object_mut()
        .unwrap()
        .remove("expect_fail");
    let path = std::env::temp_dir().join("esgames-untagged.json");
    std::fs::write(&path, value.to_string()).unwrap();
    let status = Command::new(exe())
        .arg("validate")
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn exhausted_search_budget_exits_three() {
    let status = Command::new(exe())
        .args([
            "search-uniform",
            data_dir().join("token2.json").to_str().unwrap(),
            "--doc",
            "echo",
            "--bound",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&status.stderr).contains("search bound"));
}

#[test]
fn config_guard_override_is_honored() {
    let status = Command::new(exe())
        .env("ESGAMES_MAX_CONFIGS", "2")
        .args([
            "validate",
            data_dir().join("column_swap.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    // With a two-configuration guard the nine-configuration structure
    // cannot be enumerated; the suite reports the failure.
    assert_eq!(status.status.code(), Some(1));
}

#[test]
fn committed_catalog_matches_the_generator() {
    for (name, bundle) in esgames::fixtures::catalog().unwrap() {
        let committed = std::fs::read_to_string(data_dir().join(format!("{name}.json")))
            .unwrap_or_else(|e| panic!("missing committed fixture {name}: {e}"));
        assert_eq!(
            committed.trim_end(),
            bundle.to_json(),
            "data/{name}.json has drifted; regenerate with `esgames fixtures --out-dir data`"
        );
    }
}

#[test]
fn expect_fail_tags_must_fail_their_validator_exactly() {
    // Marking a healthy document expect-fail makes the bundle fail.
    let mut value: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(data_dir().join("column_swap.json")).unwrap(),
    )
    .unwrap();
    value["documents"]["column-swap"]
        .as_object_mut()
        .unwrap()
        .insert("expect_fail".into(), serde_json::json!("game"));
    let path = std::env::temp_dir().join("esgames-expect-pass.json");
    std::fs::write(&path, value.to_string()).unwrap();
    let status = Command::new(exe())
        .arg("validate")
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}
