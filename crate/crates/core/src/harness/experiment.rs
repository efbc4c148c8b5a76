use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::BenchmarkInstance;
use crate::error::Result;
use crate::harness::config::ExperimentConfig;
use crate::objective::ObjectiveSpec;
use crate::optimizer::Optimizer;
use crate::stats::{summarize, wilcoxon_rank_sum, SummaryStats, WilcoxonResult};

/// One benchmark of a grid, ready to run.
#[derive(Debug, Clone)]
pub struct Problem {
    pub label: String,
    pub n: usize,
    pub instance_seed: u64,
    pub generations: usize,
    /// Run `r` evaluates `specs[r % specs.len()]`.
    pub specs: Vec<ObjectiveSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    /// Best-so-far value at the end of the run; absent when the run failed.
    pub final_value: Option<f64>,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Results of one optimizer on one benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub optimizer: String,
    pub benchmark: String,
    pub n: usize,
    pub instance_seed: u64,
    pub generations: usize,
    /// Finals of the successful runs, in run order.
    pub finals: Vec<f64>,
    /// `None` when every run failed.
    pub summary: Option<SummaryStats>,
    pub runs: Vec<RunRecord>,
    /// Per-run best-so-far traces of the successful runs (only when
    /// traces are enabled).
    #[serde(skip)]
    pub traces: Vec<Vec<f64>>,
}

impl CellReport {
    pub fn failed_runs(&self) -> usize {
        self.runs.iter().filter(|r| r.failed()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub benchmark: String,
    pub baseline: String,
    pub test: WilcoxonResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub config: ExperimentConfig,
    pub run_seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub provenance: Provenance,
    pub cells: Vec<CellReport>,
    /// `sms` against every other optimizer, per benchmark.
    pub comparisons: Vec<Comparison>,
}

impl ExperimentReport {
    pub fn failed_runs(&self) -> usize {
        self.cells.iter().map(CellReport::failed_runs).sum()
    }

    pub fn cell(&self, optimizer: &str, benchmark: &str) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.optimizer == optimizer && c.benchmark == benchmark)
    }

    pub fn comparison(&self, benchmark: &str, baseline: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.benchmark == benchmark && c.baseline == baseline)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Seed of run `run_index`: `base_seed + run_index`, shared by all optimizers.
pub fn run_seed(base_seed: u64, run_index: usize) -> u64 {
    base_seed.wrapping_add(run_index as u64)
}

/// Builds the benchmark instances named by `cfg`.
pub fn build_problems(cfg: &ExperimentConfig) -> Result<Vec<Problem>> {
    cfg.resolved_benchmarks()?
        .into_iter()
        .map(|b| {
            let copies = if cfg.share_instance { 1 } else { cfg.runs };
            let specs = (0..copies)
                .map(|r| BenchmarkInstance::generate(b.id, b.n, b.instance_seed.wrapping_add(r as u64)).map(|i| i.to_spec()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Problem {
                label: b.id.to_string(),
                n: b.n,
                instance_seed: b.instance_seed,
                generations: b.generations,
                specs,
            })
        })
        .collect()
}

/// Validates `cfg`, builds its benchmarks and runs the grid.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let problems = build_problems(cfg)?;
    run_problems(cfg, &problems)
}

/// Runs every configured optimizer on the given problems.
///
/// Runs execute in parallel; each one owns a clone of its objective and its
/// own seeded stream, so results do not depend on scheduling. A run that
/// errors or produces a non-finite objective value is recorded as failed
/// and left out of the statistics.
pub fn run_problems(cfg: &ExperimentConfig, problems: &[Problem]) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut jobs: Vec<(usize, Box<dyn Optimizer>)> = Vec::new();
    for (p, problem) in problems.iter().enumerate() {
        for entry in &cfg.optimizers {
            jobs.push((p, cfg.build_optimizer(entry, problem.generations)?));
        }
    }

    let outcomes: Vec<Vec<(RunRecord, Vec<f64>)>> = jobs
        .par_iter()
        .map(|(p, opt)| {
            let problem = &problems[*p];
            (0..cfg.runs)
                .into_par_iter()
                .map(|r| execute(opt.as_ref(), &problem.specs[r % problem.specs.len()], run_seed(cfg.base_seed, r)))
                .collect()
        })
        .collect();

    let mut cells = Vec::with_capacity(jobs.len());
    for ((p, opt), runs) in jobs.iter().zip(outcomes) {
        let problem = &problems[*p];
        let mut finals = Vec::new();
        let mut traces = Vec::new();
        let mut records = Vec::with_capacity(runs.len());
        for (record, trace) in runs {
            if let Some(v) = record.final_value {
                finals.push(v);
                if cfg.traces {
                    traces.push(trace);
                }
            }
            records.push(record);
        }
        cells.push(CellReport {
            optimizer: opt.name().to_string(),
            benchmark: problem.label.clone(),
            n: problem.n,
            instance_seed: problem.instance_seed,
            generations: problem.generations,
            summary: summarize(&finals).ok(),
            finals,
            runs: records,
            traces,
        });
    }

    let mut comparisons = Vec::new();
    for problem in problems {
        let Some(sms) = cells.iter().find(|c| c.optimizer == "sms" && c.benchmark == problem.label) else {
            continue;
        };
        for other in cells.iter().filter(|c| c.optimizer != "sms" && c.benchmark == problem.label) {
            if let Ok(test) = wilcoxon_rank_sum(&sms.finals, &other.finals) {
                comparisons.push(Comparison {
                    benchmark: problem.label.clone(),
                    baseline: other.optimizer.clone(),
                    test,
                });
            }
        }
    }

    Ok(ExperimentReport {
        provenance: Provenance {
            version: crate::VERSION.to_string(),
            config: cfg.clone(),
            run_seeds: (0..cfg.runs).map(|r| run_seed(cfg.base_seed, r)).collect(),
        },
        cells,
        comparisons,
    })
}

fn execute(opt: &dyn Optimizer, spec: &ObjectiveSpec, seed: u64) -> (RunRecord, Vec<f64>) {
    let mut spec = spec.clone();
    spec.reset_counters();
    match opt.run(&mut spec, seed) {
        Ok(result) if result.nonfinite_evaluations == 0 && result.best.value.is_finite() => (
            RunRecord {
                seed,
                final_value: Some(result.best.value),
                evaluations: result.evaluations,
                error: None,
            },
            result.trace,
        ),
        Ok(result) => (
            RunRecord {
                seed,
                final_value: None,
                evaluations: result.evaluations,
                error: Some(format!("{} non-finite objective values", result.nonfinite_evaluations.max(1))),
            },
            Vec::new(),
        ),
        Err(e) => (
            RunRecord { seed, final_value: None, evaluations: spec.eval_count(), error: Some(e.to_string()) },
            Vec::new(),
        ),
    }
}
