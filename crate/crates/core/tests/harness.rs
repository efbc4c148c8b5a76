use std::fs;

use sms_core::harness::{
    aggregate_trace, build_problems, run_experiment, run_problems, summary_csv, trace_csv, write_outputs,
    ExperimentConfig, Problem,
};
use sms_core::{Bounds, ObjectiveSpec};

fn config(extra: &str) -> ExperimentConfig {
    let text = format!(
        "runs = 4\npopulation = 8\ngenerations = 15\nbase_seed = 9\n{extra}\n\
         [[benchmarks]]\nid = \"f1\"\nn = 4\n\
         [[benchmarks]]\nid = \"f6\"\nn = 3\n\
         [[optimizers]]\nname = \"sms\"\n\
         [[optimizers]]\nname = \"pso\"\n\
         [[optimizers]]\nname = \"de\"\nparams = {{ cr = 0.5 }}\n"
    );
    ExperimentConfig::from_toml_str(&text).unwrap()
}

#[test]
fn grid_has_every_cell_and_comparison() {
    let report = run_experiment(&config("")).unwrap();
    assert_eq!(report.cells.len(), 6);
    assert_eq!(report.comparisons.len(), 4);
    for cell in &report.cells {
        assert_eq!(cell.finals.len(), 4);
        assert_eq!(cell.runs.iter().map(|r| r.seed).collect::<Vec<_>>(), [9, 10, 11, 12]);
        assert_eq!(cell.runs[0].evaluations, 8 * 16);
    }
    assert_eq!(report.provenance.run_seeds, [9, 10, 11, 12]);
}

#[test]
fn reports_replay_exactly() {
    let cfg = config("");
    assert_eq!(run_experiment(&cfg).unwrap().to_json(), run_experiment(&cfg).unwrap().to_json());
}

#[test]
fn a_single_run_has_zero_spread() {
    let mut cfg = config("");
    cfg.runs = 1;
    let report = run_experiment(&cfg).unwrap();
    for cell in &report.cells {
        let s = cell.summary.unwrap();
        assert_eq!(s.sd, 0.0);
        assert_eq!(s.ab, s.mb);
    }
}

#[test]
fn failing_runs_are_isolated() {
    let cfg = config("");
    let bounds = Bounds::uniform(2, -1.0, 1.0).unwrap();
    let poisoned = ObjectiveSpec::from_fn("poison", bounds.clone(), |x| if x[0] > 0.9 { f64::NAN } else { x[0] * x[0] });
    let clean = ObjectiveSpec::from_fn("clean", bounds, |x| x[0] * x[0] + x[1] * x[1]);
    let problems = vec![
        Problem { label: "poison".into(), n: 2, instance_seed: 0, generations: 30, specs: vec![poisoned] },
        Problem { label: "clean".into(), n: 2, instance_seed: 0, generations: 30, specs: vec![clean] },
    ];
    let report = run_problems(&cfg, &problems).unwrap();
    let poisoned_failures: usize = report.cells.iter().filter(|c| c.benchmark == "poison").map(|c| c.failed_runs()).sum();
    assert!(poisoned_failures > 0);
    for cell in report.cells.iter().filter(|c| c.benchmark == "clean") {
        assert_eq!(cell.failed_runs(), 0);
        assert_eq!(cell.finals.len(), 4);
    }
    for cell in report.cells.iter().filter(|c| c.benchmark == "poison") {
        assert_eq!(cell.finals.len() + cell.failed_runs(), 4);
        assert!(cell.finals.iter().all(|v| v.is_finite()));
        assert!(cell.runs.iter().filter(|r| r.failed()).all(|r| r.final_value.is_none()));
    }
}

#[test]
fn unshared_instances_step_the_seed() {
    let text = "runs = 3\nshare_instance = false\n[[benchmarks]]\nid = \"f18\"\ninstance_seed = 5\n[[optimizers]]\nname = \"sms\"\n";
    let problems = build_problems(&ExperimentConfig::from_toml_str(text).unwrap()).unwrap();
    assert_eq!(problems[0].specs.len(), 3);
    assert_ne!(problems[0].specs[0].x_opt(), problems[0].specs[1].x_opt());
    let shared = build_problems(&ExperimentConfig::from_toml_str(&text.replace("false", "true")).unwrap()).unwrap();
    assert_eq!(shared[0].specs.len(), 1);
    assert_eq!(shared[0].specs[0].x_opt(), problems[0].specs[0].x_opt());
}

#[test]
fn summary_csv_round_trips_values() {
    let report = run_experiment(&config("")).unwrap();
    let csv = summary_csv(&report);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "benchmark,stat,sms,pso,de,best");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        let values: Vec<f64> = row[2..5].iter().map(|v| v.parse().unwrap()).collect();
        let cell = report.cell("sms", row[0]).unwrap().summary.unwrap();
        let expected = match row[1] {
            "AB" => cell.ab,
            "MB" => cell.mb,
            "SD" => cell.sd,
            other => panic!("unexpected stat {other}"),
        };
        assert_eq!(values[0].to_bits(), expected.to_bits());
        let lowest = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let best_idx = values.iter().position(|v| *v == lowest).unwrap();
        assert_eq!(row[5], ["sms", "pso", "de"][best_idx]);
    }
}

#[test]
fn traces_aggregate_per_iteration() {
    let report = run_experiment(&config("traces = true")).unwrap();
    let cell = report.cell("pso", "f6").unwrap();
    assert_eq!(cell.traces.len(), 4);
    let agg = aggregate_trace(cell);
    assert_eq!(agg.len(), 15);
    assert!(agg.windows(2).all(|w| w[1].0 <= w[0].0));
    let csv = trace_csv(cell);
    assert_eq!(csv.lines().next().unwrap(), "k,mean,median");
    assert_eq!(csv.lines().count(), 16);
    assert!(csv.lines().nth(1).unwrap().starts_with("1,"));
}

#[test]
fn outputs_land_in_the_directory() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_experiment(&config("traces = true")).unwrap();
    let written = write_outputs(&report, dir.path()).unwrap();
    for name in ["report.json", "summary.csv", "finals_sms_f1.txt", "trace_de_f6.csv"] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    assert!(written.len() >= 2 + 6 + 6);
    let finals = fs::read_to_string(dir.path().join("finals_sms_f1.txt")).unwrap();
    let parsed = sms_core::stats::parse_column(&finals).unwrap();
    assert_eq!(parsed, report.cell("sms", "f1").unwrap().finals);
}
