use std::path::{Path, PathBuf};
use std::process::Command;

use f2coh::cli::{list_scenarios, run_cli, run_scenario, Params, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_f2coh"))
}

fn pinned_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["f2coh"];
    full.extend_from_slice(args);
    let code = run_cli(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn listing_tags_tiers() {
    let listing = list_scenarios();
    let lines: Vec<&str> = listing.lines().collect();
    assert!(lines.len() >= 12);
    let tier = |name: &str| {
        lines
            .iter()
            .find(|l| l.split_whitespace().next() == Some(name))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap()
            .to_string()
    };
    assert_eq!(tier("a7-invariants"), "slow");
    assert_eq!(tier("lemma-3-1"), "fast");
    let (code, out, _) = cli(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out, listing);
}

#[test]
fn e3_text_report_matches_golden_chart() {
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/em_e3.txt")).unwrap();
    let (code, out, _) = cli(&["run", "em-e3", "--no-timing"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden);
}

#[test]
fn fast_tier_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.json"));
        let (code, _, err) = cli(&["run", "all", "--no-timing", "--format", "json", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let reports: Vec<Report> = serde_json::from_slice(&files[0]).unwrap();
    assert_eq!(reports.len(), 13);
    assert!(reports.iter().all(|r| r.passed() && r.elapsed_ms.is_none()));
}

#[test]
fn json_report_follows_schema_and_round_trips() {
    let report = run_scenario("psu-expansion", &Params::default()).unwrap();
    let json = report.to_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in ["scenario", "verdict", "anchors", "tables", "mismatches", "elapsed_ms"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let table = &value["tables"][0];
    for key in ["name", "degrees", "dims"] {
        assert!(table.get(key).is_some(), "table missing {key}");
    }
    assert_eq!(value["verdict"], "PASS");
    assert_eq!(Report::from_json(&json).unwrap(), report);
}

#[test]
fn csv_tables_have_degree_dim_header() {
    let (code, out, _) = cli(&["run", "dickson-series", "--format", "csv", "--max-degree", "10"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("degree,dim\n").count(), 2);
    assert!(out.contains("8,1\n"));
}

#[test]
fn unknown_scenario_lists_valid_names() {
    let (code, _, err) = cli(&["run", "no-such-thing"]);
    assert_eq!(code, 2);
    assert!(err.contains("dickson-series") && err.contains("ly-n-series"), "{err}");
}

#[test]
fn missing_fixture_points_to_discovery() {
    let empty = tempfile::tempdir().unwrap();
    let (code, _, err) = cli(&["run", "a6-invariants", "--fixtures", empty.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("f2coh discover"), "{err}");
}

#[test]
fn slow_scenarios_need_the_flag() {
    let (code, _, err) = cli(&["run", "a7-invariants"]);
    assert_eq!(code, 2);
    assert!(err.contains("--slow"), "{err}");
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    std::fs::write(&config, "# settings\nmax_degree = 5\nformat = json\ntiming = false\n").unwrap();
    let conf = config.to_str().unwrap();

    let (code, out, _) = cli(&["run", "psu-expansion", "--config", conf]);
    assert_eq!(code, 0);
    let report = Report::from_json(&out).unwrap();
    assert_eq!(report.tables[0].degrees.len(), 6);
    assert_eq!(report.elapsed_ms, None);

    let (code, out, _) = cli(&["run", "psu-expansion", "--config", conf, "--max-degree", "9"]);
    assert_eq!(code, 0);
    assert_eq!(Report::from_json(&out).unwrap().tables[0].degrees.len(), 10);
}

#[test]
fn discovery_writes_usable_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let (code, out, err) = cli(&["discover", "--seed", "3", "--fixtures", path]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("order 2520") && out.contains("order 360"));
    let (code, _, err) = cli(&["run", "a6-invariants", "--max-degree", "20", "--fixtures", path]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn binary_exit_codes() {
    let pass = bin().args(["run", "lemma-3-1", "--no-timing"]).output().unwrap();
    assert_eq!(pass.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&pass.stdout).contains("verdict:  PASS"));

    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("reference.json");
    std::fs::write(&reference, r#"{"em_e3": [1, 0, 1, 1, 0, 3, 2, 1, 3]}"#).unwrap();
    let fail = bin()
        .args(["run", "em-e3", "--format", "json", "--reference"])
        .arg(&reference)
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let report = Report::from_json(&String::from_utf8_lossy(&fail.stdout)).unwrap();
    assert_eq!(report.mismatches[0].degree, Some(5));

    let env_override = bin()
        .args(["run", "bockstein-a6"])
        .env("F2COH_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(env_override.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&env_override.stderr).contains("f2coh discover"));
    assert!(pinned_fixtures().join("a6.txt").exists());
}
