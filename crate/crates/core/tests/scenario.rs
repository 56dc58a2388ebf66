use std::fs;
use std::sync::OnceLock;

use jcmix_core::scenario::{read_csv, CSV_HEADER};
use jcmix_core::{
    compare_figures, emit, emit_to_path, run_scenario, Complex64, ConfigPatch, OutputFormat,
    ScenarioConfig, ScenarioRun,
};

fn default_run() -> &'static ScenarioRun {
    static RUN: OnceLock<ScenarioRun> = OnceLock::new();
    RUN.get_or_init(|| run_scenario(&ScenarioConfig::default()).unwrap())
}

fn quick(config: ScenarioConfig) -> ScenarioConfig {
    ScenarioConfig {
        t_max: 10.0,
        steps: 40,
        ..config
    }
}

#[test]
fn default_run_landmarks() {
    let run = default_run();
    assert_eq!(run.records.len(), 601);
    let cmp = run.report.comparison;
    let out_t = cmp.out_window_argmax_t.unwrap();
    assert!((11.0..=16.0).contains(&out_t), "{out_t}");
    let revival = cmp.revival_center.unwrap();
    assert!((22.0..=28.0).contains(&revival), "{revival}");
    assert!(cmp.max_gap_in_window.unwrap() < 1e-3);
    assert!(cmp.window_end.unwrap() <= 30.0);
}

#[test]
fn validity_window_with_loose_threshold() {
    // max|Pi_jk| first reaches 1e-3 between t = 6.85 and 6.9 for alpha = 4.
    let config = ScenarioConfig {
        pi_tol: 1e-3,
        oracle: false,
        ..ScenarioConfig::default()
    };
    let run = run_scenario(&config).unwrap();
    let end = run.report.comparison.window_end.unwrap();
    assert!((end - 6.85).abs() < 1e-9, "{end}");
}

#[test]
fn in_window_oracle_agreement_and_growth_outside() {
    let records = &default_run().records;
    for r in records.iter().filter(|r| r.max_pi() < 1e-6) {
        assert!(r.entropy_gap().unwrap() < 1e-3, "t={}", r.t);
    }
    let at = |t: f64| {
        records
            .iter()
            .find(|r| (r.t - t).abs() < 1e-9)
            .unwrap()
            .entropy_gap()
            .unwrap()
    };
    assert!(at(5.0) < 1e-3);
    assert!(at(13.0) > at(5.0));
}

#[test]
fn record_invariants() {
    for r in &default_run().records {
        for s in [r.s_a, r.s_f_mix_analytic, r.s_f_oracle.unwrap()] {
            assert!(s >= -1e-12);
        }
        assert!(r.w.abs() <= 1.0 + 1e-12);
        assert!(r.xi_f >= -1e-10 && r.xi_f <= 1.0 - 1.0 / 64.0 + 1e-10);
    }
}

#[test]
fn vacuum_field_gives_cosine_inversion() {
    let config = ScenarioConfig {
        alpha: Complex64::new(0.0, 0.0),
        dim: 16,
        ..ScenarioConfig::default()
    };
    let run = run_scenario(&config).unwrap();
    for r in &run.records {
        assert!((r.w - (2.0 * r.t).cos()).abs() < 1e-10, "t={}", r.t);
    }
}

#[test]
fn pure_field_matches_atom_everywhere() {
    let config = ScenarioConfig {
        p_plus: 1.0,
        ..ScenarioConfig::default()
    };
    let run = run_scenario(&config).unwrap();
    for r in &run.records {
        assert!((r.s_f_mix_analytic - r.s_a).abs() < 1e-8, "t={}", r.t);
        assert!(r.valid);
    }
    let cmp = compare_figures(&run.records);
    assert_eq!(cmp.window_end, Some(30.0));
    assert!(cmp.max_gap_in_window.unwrap() < 1e-7);
    assert_eq!(cmp.max_gap_out_window, None);
}

#[test]
fn emitted_csv_round_trips_exactly() {
    let records = &default_run().records;
    let mut buf = Vec::new();
    emit(records, OutputFormat::Csv, &mut buf).unwrap();
    let text = std::str::from_utf8(&buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), records.len() + 1);
    assert_eq!(&read_csv(buf.as_slice()).unwrap(), records);
}

#[test]
fn identical_configs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let config = quick(ScenarioConfig {
            format,
            ..ScenarioConfig::default()
        });
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        emit_to_path(&run_scenario(&config).unwrap().records, format, &a).unwrap();
        emit_to_path(&run_scenario(&config).unwrap().records, format, &b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn report_echo_reproduces_the_run() {
    let config = quick(ScenarioConfig {
        alpha: Complex64::new(3.0, 0.5),
        p_plus: 0.7,
        ..ScenarioConfig::default()
    });
    let first = run_scenario(&config).unwrap();
    let again = ConfigPatch::parse(&first.report.config_text)
        .unwrap()
        .resolve()
        .unwrap();
    assert_eq!(again, config);
    assert_eq!(run_scenario(&again).unwrap().records, first.records);

    let json = serde_json::to_value(&first.report).unwrap();
    assert_eq!(json["config"]["p_plus"], 0.7);
    assert_eq!(json["points"], 41);
}

#[test]
fn dim_doubling_converges() {
    let base = quick(ScenarioConfig::default());
    let doubled = ScenarioConfig { dim: 128, ..base.clone() };
    let a = run_scenario(&base).unwrap();
    let b = run_scenario(&doubled).unwrap();
    for (x, y) in a.records.iter().zip(&b.records) {
        assert!((x.s_f_mix_analytic - y.s_f_mix_analytic).abs() < 1e-8);
        assert!((x.s_f_oracle.unwrap() - y.s_f_oracle.unwrap()).abs() < 1e-8);
        assert!((x.s_a - y.s_a).abs() < 1e-8);
    }
}
