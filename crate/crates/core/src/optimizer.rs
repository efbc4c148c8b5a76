use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::objective::ObjectiveSpec;
use crate::population::BestRecord;

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: BestRecord,
    /// Best-so-far value after each iteration; non-increasing.
    pub trace: Vec<f64>,
    pub evaluations: u64,
    pub seed: u64,
    /// Evaluations during the run that produced NaN or an infinity.
    pub nonfinite_evaluations: u64,
}

/// A population-based minimizer driven by a single seed.
pub trait Optimizer: Send + Sync {
    fn name(&self) -> &str;

    /// Number of iterations a run performs (the trace length).
    fn generations(&self) -> usize;

    fn run(&self, spec: &mut ObjectiveSpec, seed: u64) -> Result<RunResult>;
}
