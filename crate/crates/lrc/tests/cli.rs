use std::path::PathBuf;
use std::process::Command;

use lrc::cli::run;
use lrc::format::SeriesJson;

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lrc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn ramanujan_binary_exits_cleanly() {
    let out = Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(["verify", "ramanujan", "--order", "50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("[PASS]").count(), 3, "{text}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(["lrc", "frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn help_goes_to_stdout() {
    let out = run(["lrc", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn relative_genus_two_by_correspondence() {
    let out = run(["lrc", "compute", "relative", "--genus", "2", "--method", "locrel"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("(29/640)*Q + (-207/64)*Q^2"), "{}", out.stdout);
}

#[test]
fn relative_genus_two_by_anomaly_agrees() {
    let a = run(["lrc", "compute", "relative", "--genus", "2", "--method", "locrel"]);
    let b = run(["lrc", "compute", "relative", "--genus", "2", "--method", "hae"]);
    assert_eq!(a.code, 0);
    assert_eq!(b.code, 0);
    let q_line = |s: &str| s.lines().find(|l| l.starts_with("F2 in Q")).map(str::to_owned);
    assert_eq!(q_line(&a.stdout), q_line(&b.stdout));
}

#[test]
fn mirror_map_json_parses_back() {
    let out = run(["lrc", "--format", "json", "compute", "mirror"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let found = find_series(&v).expect("a series object in the JSON output");
    let s = found.to_series().unwrap();
    assert!(s.order() > 0);
}

fn find_series(v: &serde_json::Value) -> Option<SeriesJson> {
    if let Ok(s) = serde_json::from_value::<SeriesJson>(v.clone()) {
        return Some(s);
    }
    match v {
        serde_json::Value::Array(xs) => xs.iter().find_map(find_series),
        serde_json::Value::Object(m) => m.values().find_map(find_series),
        _ => None,
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = scratch("orders.cfg", "# low orders\nq_order = 6\nQ_order = 6\n");
    let from_file = run(["lrc", "--config", cfg.to_str().unwrap(), "compute", "mirror"]);
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert!(from_file.stdout.contains("mirror data to q^6"), "{}", from_file.stdout);
    assert!(from_file.stdout.contains("O(q^7)"), "{}", from_file.stdout);

    let flagged = run(["lrc", "--config", cfg.to_str().unwrap(), "--order", "9", "--q-order", "9", "compute", "mirror"]);
    assert_eq!(flagged.code, 0, "{}", flagged.stderr);
    assert!(flagged.stdout.contains("mirror data to q^9"), "{}", flagged.stdout);
}

#[test]
fn bad_config_key_fails() {
    let cfg = scratch("bad.cfg", "no_such_key = 3\n");
    let out = run(["lrc", "--config", cfg.to_str().unwrap(), "compute", "mirror"]);
    assert_ne!(out.code, 0);
    assert!(!out.stderr.is_empty());
}

#[test]
fn ns_compare_with_bundled_table() {
    let out = run(["lrc", "ns", "compare", "--gmax", "2", "--dmax", "2"]);
    assert_eq!(out.code, 0, "{}\n{}", out.stdout, out.stderr);
    assert!(!out.stdout.contains("[FAIL]"));
}

#[test]
fn ns_compare_with_wrong_table_fails_verification() {
    let table = r#"[
        {"degree": 1, "coeffs": [{"exp2": -2, "c": "1"}, {"exp2": 0, "c": "1"}, {"exp2": 2, "c": "1"}]},
        {"degree": 2, "coeffs": [{"exp2": -3, "c": "1"}, {"exp2": -1, "c": "1"}, {"exp2": 1, "c": "1"}, {"exp2": 3, "c": "1"}]}
    ]"#;
    let path = scratch("wrong_omega.json", table);
    let out = run(["lrc", "ns", "compare", "--omega", path.to_str().unwrap(), "--gmax", "2", "--dmax", "2"]);
    assert_eq!(out.code, 3, "{}\n{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("[FAIL]"));
}

#[test]
fn malformed_omega_is_a_format_error() {
    let path = scratch("broken_omega.json", "{\"degree\": 1, \"coefs\": []}");
    let out = run(["lrc", "ns", "compare", "--omega", path.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{}", out.stderr);
}

#[test]
fn csv_output_has_header() {
    let out = run(["lrc", "--format", "csv", "compute", "local", "--genus", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("exponent,numerator,denominator"), "{}", out.stdout);
    assert!(out.stdout.contains("log,-1,12"), "{}", out.stdout);
}
