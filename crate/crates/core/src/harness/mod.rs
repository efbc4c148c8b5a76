//! Experiment grids: configuration, parallel execution, aggregation and
//! file export. The `sms` binary is a thin layer over this module.

mod config;
mod experiment;
mod export;

pub use config::{BenchmarkEntry, ExperimentConfig, OptimizerEntry, ResolvedBenchmark};
pub use experiment::{
    build_problems, run_experiment, run_problems, run_seed, CellReport, Comparison, ExperimentReport,
    Problem, Provenance, RunRecord,
};
pub use export::{
    aggregate_trace, export_summary, export_traces, format_value, summary_csv, trace_csv, write_outputs,
};
