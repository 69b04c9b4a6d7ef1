use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use interaction_cli::report::{read_estimates_csv, Report};

fn interaction(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interaction")).args(args).output().unwrap()
}

fn stdout_of(args: &[&str]) -> Vec<u8> {
    let out = interaction(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn write_spec(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exact_pairs_for_presets() {
    let rows = read_estimates_csv(stdout_of(&["exact", "--measure", "mu2"]).as_slice()).unwrap();
    assert_eq!(rows.len(), 4950);
    assert_eq!((rows[0].i, rows[0].j), (1, 2));
    assert!(rows.iter().all(|r| (r.estimate.unwrap() - 1.0 / 2200.0).abs() < 1e-15));

    let rows = read_estimates_csv(stdout_of(&["exact", "--measure", "mu3", "--pair", "21", "9"]).as_slice()).unwrap();
    assert_eq!((rows[0].i, rows[0].j), (9, 21));
    assert!((rows[0].estimate.unwrap() + 0.1 / 99.0 + 0.1 / 91.0).abs() < 1e-15);
}

#[test]
fn exact_set_index_on_a_table() {
    let dir = tempfile::tempdir().unwrap();
    // μ(S) = (|S|/3)^2 on three elements
    let spec = write_spec(
        dir.path(),
        "t.json",
        r#"{"type":"table","n":3,"values":[0,0.1111111111111111,0.1111111111111111,0.4444444444444444,0.1111111111111111,0.4444444444444444,0.4444444444444444,1]}"#,
    );
    let text = String::from_utf8(stdout_of(&["exact", "--measure", &spec, "--set", "1,2,3"])).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("set,estimate,samples,std_error"));
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[0], "1 2 3");
    // third difference of s ↦ (s/3)^2 is zero
    assert!(fields[1].parse::<f64>().unwrap().abs() < 1e-15);
}

#[test]
fn additive_measures_estimate_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "a.json", r#"{"type":"additive","weights":[0.125,0.25,0.5,0.125]}"#);
    for method in ["simple", "stratified"] {
        let out = stdout_of(&["estimate", "--method", method, "--measure", &spec, "--total-data", "600", "--seed", "4"]);
        let rows = read_estimates_csv(out.as_slice()).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.estimate.is_none_or(|v| v == 0.0)), "{method}");
    }
}

#[test]
fn json_and_csv_carry_the_same_numbers() {
    let base = ["estimate", "--method", "stratified", "--measure", "mu1", "--avg-data", "400", "--seed", "2"];
    let csv = read_estimates_csv(stdout_of(&base).as_slice()).unwrap();
    let json = stdout_of(&[&base[..], &["--format", "json"]].concat());
    let report: Report = serde_json::from_slice(&json).unwrap();
    assert_eq!(report.results, csv);
    assert_eq!(report.meta.seed, Some(2));
    assert_eq!(report.config.method, "stratified");
    assert_eq!(report.strata.as_ref().unwrap().len(), 4950 * 99);
    let value: serde_json::Value = serde_json::from_slice(&json).unwrap();
    for key in ["config", "measure", "results", "strata", "meta"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    for key in ["seed", "workers", "version"] {
        assert!(value["meta"].get(key).is_some(), "missing meta.{key}");
    }
}

#[test]
fn output_file_and_interaction_t() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let args = [
        "interaction-t", "--set", "2,7", "--measure", "mu4", "--total-data", "5000", "--format", "json", "--output",
        path.to_str().unwrap(),
    ];
    assert!(stdout_of(&args).is_empty());
    let report: Report = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let set = report.set_result.unwrap();
    assert_eq!(set.set, vec![2, 7]);
    assert_eq!(set.samples, 5000);
    assert!((set.estimate + 0.00215602304).abs() < 6.0 * set.std_error.unwrap());
}

#[test]
fn reproduce_table_layout() {
    let out = stdout_of(&["reproduce", "--example", "1", "--avg-data", "20,40", "--seeds", "1,2", "--skip-stratified"]);
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "avg_data,e_max,e_av,e_max_st,e_av_st,e_th,seconds_simple,seconds_stratified");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("20,") && lines[4].starts_with("40,"));

    let out = stdout_of(&["reproduce", "--example", "1", "--avg-data", "20", "--seeds", "1,2", "--aggregate", "--skip-stratified"]);
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 2);
}

#[test]
fn oversized_reproduction_needs_force() {
    let out = interaction(&["reproduce", "--example", "3", "--avg-data", "1000000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn check_measure_verdicts() {
    let out = interaction(&["check-measure", "mu3"]);
    assert_eq!(out.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let planted = write_spec(dir.path(), "p.json", r#"{"type":"table","n":2,"values":[0,0.5,0.25,0.4]}"#);
    let out = interaction(&["check-measure", &planted]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("monotonicity (exhaustive") && text.contains("mu({1}) = 0.5 > mu({1,2}) = 0.4"), "{text}");

    let heavy = write_spec(dir.path(), "h.json", r#"{"type":"additive","weights":[0.4,0.4,0.4]}"#);
    let out = interaction(&["check-measure", &heavy]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("full set value 1.2"));
}

#[test]
fn bad_input_fails_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_spec(dir.path(), "b.json", r#"{"type":"table","n":2"#);
    for args in [
        vec!["exact", "--measure", broken.as_str()],
        vec!["check-measure", broken.as_str()],
        vec!["exact", "--measure", "mu1", "--pair", "0", "3"],
        vec!["estimate", "--method", "stratified", "--measure", "mu1", "--avg-data", "5"],
    ] {
        let out = interaction(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
    let out = interaction(&["estimate", "--method", "simple", "--measure", "mu1"]);
    assert!(!out.status.success());
}
