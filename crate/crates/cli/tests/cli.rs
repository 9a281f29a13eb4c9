use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn popsales(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popsales"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn simulate(dir: &Path, out: &str, extra: &[&str]) -> PathBuf {
    let mut args = vec!["--out", out];
    args.extend_from_slice(extra);
    args.push("simulate");
    let o = popsales(dir, &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    dir.join(out)
}

/// Value in column `col` of the first data row whose leading cells equal `key`.
fn csv_value(path: &Path, key: &[&str], col: usize) -> f64 {
    let text = fs::read_to_string(path).unwrap();
    let line = text
        .lines()
        .skip(1)
        .find(|l| l.split(',').zip(key).all(|(a, b)| a == *b))
        .unwrap_or_else(|| panic!("{key:?} missing in {}", path.display()));
    line.split(',').nth(col).unwrap().parse().unwrap()
}

#[test]
fn simulate_writes_one_file_per_artist_and_an_event_log() {
    let tmp = TempDir::new().unwrap();
    let out = simulate(tmp.path(), "run", &[]);
    let n = fs::read_dir(out.join("trajectories")).unwrap().count();
    assert_eq!(n, 30);
    let events = fs::read_to_string(out.join("events.csv")).unwrap();
    assert!(events.starts_with("artist_id,year,week,event,album_index,peak_k,success"));
    assert!(events.lines().any(|l| l.contains(",album,")));
    assert!(events.lines().any(|l| l.contains(",single,")));
}

#[test]
fn simulate_is_reproducible_for_a_seed() {
    let tmp = TempDir::new().unwrap();
    let a = simulate(tmp.path(), "a", &["--seed", "77"]);
    let b = simulate(tmp.path(), "b", &["--seed", "77"]);
    let c = simulate(tmp.path(), "c", &["--seed", "78"]);
    for f in ["panel.csv", "regimes.csv", "events.csv", "trajectories/artist_000.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    assert_ne!(fs::read(a.join("panel.csv")).unwrap(), fs::read(c.join("panel.csv")).unwrap());
}

#[test]
fn unstable_reversion_rate_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("bad.toml"), "[model]\nb = 267.512\n").unwrap();
    let o = popsales(tmp.path(), &["--config", "bad.toml", "simulate"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("b"), "{}", stderr(&o));
    assert!(!tmp.path().join("popsales-out").exists());
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("bad.toml"), "[model]\nbb = 0.2\n").unwrap();
    let o = popsales(tmp.path(), &["--config", "bad.toml", "simulate"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn missing_data_file_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let o = popsales(tmp.path(), &["analyze", "nope.csv"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nope.csv"));
}

#[test]
fn empty_data_file_is_a_schema_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("empty.csv"), "").unwrap();
    let o = popsales(tmp.path(), &["analyze", "empty.csv"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn week_53_needs_the_merge_flag() {
    let tmp = TempDir::new().unwrap();
    let mut text = String::from("artist_id,year,week,sales_units\n");
    for y in 2003..2006 {
        for w in 1..=52 {
            text.push_str(&format!("x,{y},{w},{}\n", 1000 + 100 * ((w * 7 + y) % 11)));
        }
    }
    text.push_str("x,2004,53,500\n");
    fs::write(tmp.path().join("chart.csv"), text).unwrap();
    let o = popsales(tmp.path(), &["analyze", "chart.csv"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("53"));
    let o = popsales(tmp.path(), &["analyze", "chart.csv", "--merge-week53"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn all_censored_artist_is_skipped_by_estimate() {
    let tmp = TempDir::new().unwrap();
    let out = simulate(tmp.path(), "sim", &[]);
    let mut panel = fs::read_to_string(out.join("panel.csv")).unwrap();
    let mut regimes = fs::read_to_string(out.join("regimes.csv")).unwrap();
    for y in 2000..2010 {
        for w in 1..=52 {
            panel.push_str(&format!("zz_silent,{y},{w},0,1\n"));
            regimes.push_str(&format!("zz_silent,{y},{w},base\n"));
        }
    }
    fs::write(tmp.path().join("panel.csv"), panel).unwrap();
    fs::write(tmp.path().join("regimes.csv"), regimes).unwrap();
    let o = popsales(
        tmp.path(),
        &["--out", "est", "estimate", "panel.csv", "--labels", "regimes.csv"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let skipped = fs::read_to_string(tmp.path().join("est/skipped.csv")).unwrap();
    assert!(skipped.contains("zz_silent"));
}

#[test]
fn estimate_recovers_simulated_rates() {
    let tmp = TempDir::new().unwrap();
    let out = simulate(tmp.path(), "sim", &[]);
    let o = popsales(
        tmp.path(),
        &[
            "--out", "est", "estimate", "sim/panel.csv", "--labels", "sim/regimes.csv", "--events",
            "sim/events.csv",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let truth = 0.030211480362537763;
    let q22 = csv_value(&tmp.path().join("est/transitions.csv"), &["pooled", "", "q22_exit"], 3);
    assert!((q22 / truth - 1.0).abs() < 0.1, "q22 {q22}");
    let singles = csv_value(&tmp.path().join("est/singles.csv"), &[], 1);
    assert!((singles / 3.0 - 1.0).abs() < 0.1, "singles {singles}");
    assert!(out.join("events.csv").exists());
}

#[test]
fn analyze_on_flat_data_reports_no_peak() {
    let tmp = TempDir::new().unwrap();
    let mut text = String::from("artist_id,year,week,sales_k,censored\n");
    for a in ["p", "q"] {
        for y in 2001..2005 {
            for w in 1..=52 {
                text.push_str(&format!("{a},{y},{w},5,0\n"));
            }
        }
    }
    fs::write(tmp.path().join("flat.csv"), text).unwrap();
    let o = popsales(tmp.path(), &["--out", "an", "analyze", "flat.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ratio = csv_value(&tmp.path().join("an/analyze_summary.csv"), &["peak_to_base_percent"], 1);
    assert!((ratio - 100.0).abs() < 1e-9, "{ratio}");
    assert!(tmp.path().join("an/aggregate.csv").exists());
}

#[test]
fn cluster_writes_trees_over_all_artists() {
    let tmp = TempDir::new().unwrap();
    simulate(tmp.path(), "sim", &["--stationary"]);
    let o = popsales(tmp.path(), &["--out", "cl", "cluster", "sim/panel.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mst = fs::read_to_string(tmp.path().join("cl/mst.csv")).unwrap();
    assert_eq!(mst.lines().count(), 30);
    let dendro = fs::read_to_string(tmp.path().join("cl/dendrogram.csv")).unwrap();
    assert!(dendro.contains("cluster_"));
    let corr = fs::read_to_string(tmp.path().join("cl/correlation.csv")).unwrap();
    assert_eq!(corr.lines().count(), 1 + 30 * 29 / 2);
}

#[test]
fn cluster_fails_when_artists_never_overlap() {
    let tmp = TempDir::new().unwrap();
    let mut text = String::from("artist_id,year,week,sales_k,censored\n");
    for (a, years) in [("early", 2001..2003), ("late", 2004..2006), ("mid", 2001..2006)] {
        for y in years {
            for w in 1..=52 {
                text.push_str(&format!("{a},{y},{w},{},0\n", 1 + (w * y) % 7));
            }
        }
    }
    fs::write(tmp.path().join("gap.csv"), text).unwrap();
    let o = popsales(tmp.path(), &["--out", "cl", "cluster", "gap.csv"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("early") && stderr(&o).contains("late"), "{}", stderr(&o));
}

#[test]
fn compare_lines_up_data_and_model() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("small.toml"), "[cohort]\nn_ensembles = 5\n").unwrap();
    simulate(tmp.path(), "sim", &["--seed", "9"]);
    let o = popsales(
        tmp.path(),
        &["--config", "small.toml", "--out", "cmp", "compare", "sim/panel.csv", "--labels", "sim/regimes.csv"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let agg = fs::read_to_string(tmp.path().join("cmp/compare_aggregate.csv")).unwrap();
    assert_eq!(agg.lines().count(), 53);
    let summary = fs::read_to_string(tmp.path().join("cmp/compare_summary.csv")).unwrap();
    assert!(summary.contains("peak_to_base_percent"));
    assert!(tmp.path().join("cmp/model_mst.csv").exists());
}

#[test]
fn config_template_round_trips() {
    let tmp = TempDir::new().unwrap();
    let o = popsales(tmp.path(), &["config-template"]);
    assert_eq!(code(&o), 0);
    fs::write(tmp.path().join("c.toml"), &o.stdout).unwrap();
    let a = simulate(tmp.path(), "a", &["--config", "c.toml"]);
    let b = simulate(tmp.path(), "b", &[]);
    assert_eq!(fs::read(a.join("panel.csv")).unwrap(), fs::read(b.join("panel.csv")).unwrap());
}
