//! Golden-file regression: every scenario config under `tests/golden`
//! must reproduce its stored CSV byte for byte. Set
//! `ONEPHOTON_REGENERATE_GOLDEN=1` to rewrite the stored files.

use std::fs;
use std::path::{Path, PathBuf};

use onephoton_cli::{run_config_text, Scenario};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check(scenario: Scenario) -> String {
    let dir = golden_dir();
    let config = dir.join(format!("{}.conf", scenario.name()));
    let expected = dir.join(format!("{}.csv", scenario.name()));
    let text = fs::read_to_string(&config).unwrap();
    let (_, table) = run_config_text(&text, &[]).unwrap();
    let csv = table.to_csv();
    if std::env::var_os("ONEPHOTON_REGENERATE_GOLDEN").is_some() {
        fs::write(&expected, &csv).unwrap();
    }
    let stored =
        fs::read_to_string(&expected).unwrap_or_else(|_| panic!("missing {}", expected.display()));
    assert!(
        stored == csv,
        "{} differs from its golden file",
        scenario.name()
    );
    csv
}

#[test]
fn jcp_inversion_golden() {
    check(Scenario::JcpInversion);
}

#[test]
fn jcp_vacuum_golden() {
    let csv = check(Scenario::JcpVacuum);
    let table = onephoton_cli::table::parse_table(&csv).unwrap();
    for row in &table.rows {
        assert!((row[1] - (2.0 * row[0]).cos()).abs() < 1e-14);
    }
}

#[test]
fn free_decay_golden() {
    check(Scenario::FreeDecay);
}

#[test]
fn free_wavepacket_golden() {
    check(Scenario::FreeWavepacket);
}

#[test]
fn sphere_revival_golden() {
    let csv = check(Scenario::SphereRevival);
    let table = onephoton_cli::table::parse_table(&csv).unwrap();
    let dev: f64 = table
        .meta_value("max_mode_sum_deviation")
        .unwrap()
        .parse()
        .unwrap();
    assert!(dev < 5e-3);
}

#[test]
fn parabola_eta_golden() {
    let csv = check(Scenario::ParabolaEta);
    let table = onephoton_cli::table::parse_table(&csv).unwrap();
    let gap: f64 = table
        .meta_value("max_closed_form_discrepancy")
        .unwrap()
        .parse()
        .unwrap();
    assert!(gap < 1e-8);
}

#[test]
fn parabola_field_golden() {
    check(Scenario::ParabolaField);
}
