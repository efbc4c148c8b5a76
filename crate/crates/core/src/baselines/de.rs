use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::optimizer::{Optimizer, RunResult};
use crate::population::{improves, random_position, BestRecord};
use crate::rng::{RandomStream, UniformSource};

/// Mutation/crossover scheme. Only `rand/1/bin` is provided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DeScheme {
    #[default]
    #[serde(rename = "rand/1/bin")]
    Rand1Bin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeParams {
    pub population: usize,
    pub generations: usize,
    pub cr: f64,
    pub f: f64,
    pub scheme: DeScheme,
}

impl Default for DeParams {
    fn default() -> Self {
        Self { population: 50, generations: 1000, cr: 0.9, f: 0.8, scheme: DeScheme::Rand1Bin }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 {
            return Err(Error::config(format!(
                "population {} must be at least 4 for rand/1",
                self.population
            )));
        }
        if self.generations < 1 {
            return Err(Error::config("generations must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::config(format!("CR = {} must lie in [0, 1]", self.cr)));
        }
        // F = 0 is accepted: crossover then only recombines existing coordinates.
        if !(self.f >= 0.0 && self.f.is_finite()) {
            return Err(Error::config(format!("F = {} must be non-negative", self.f)));
        }
        Ok(())
    }
}

/// Three mutually distinct indices, all different from `i`.
fn pick_three<R: UniformSource + ?Sized>(i: usize, np: usize, rng: &mut R) -> [usize; 3] {
    let mut out = [usize::MAX; 3];
    for slot in 0..3 {
        loop {
            let c = rng.index(np);
            if c != i && !out[..slot].contains(&c) {
                out[slot] = c;
                break;
            }
        }
    }
    out
}

fn record(x: &[Vec<f64>], fx: &[f64], best: &mut Option<BestRecord>) {
    for (p, &v) in x.iter().zip(fx) {
        if best.as_ref().is_none_or(|b| improves(v, b.value)) {
            *best = Some(BestRecord { position: p.clone(), value: v });
        }
    }
}

/// DE/rand/1/bin with synchronous generations: all trials are built from
/// the current population before any selection happens. A trial replaces
/// its target when it is no worse.
pub fn run_de(spec: &mut ObjectiveSpec, params: &DeParams, seed: u64) -> Result<RunResult> {
    params.validate()?;
    let mut rng = RandomStream::new(seed);
    let start_evals = spec.eval_count();
    let start_nonfinite = spec.nonfinite_count();
    let bounds = spec.bounds().clone();
    let n = bounds.dim();
    let np = params.population;

    let mut x: Vec<Vec<f64>> = (0..np).map(|_| random_position(&bounds, &mut rng)).collect();
    let mut fx = x
        .iter()
        .map(|p| spec.evaluate(p, &mut rng))
        .collect::<Result<Vec<f64>>>()?;
    let mut best: Option<BestRecord> = None;
    record(&x, &fx, &mut best);

    let mut trace = Vec::with_capacity(params.generations);
    let mut trials = vec![vec![0.0; n]; np];
    for _ in 1..=params.generations {
        for (i, trial) in trials.iter_mut().enumerate() {
            let [r1, r2, r3] = pick_three(i, np, &mut rng);
            let j_rand = rng.index(n);
            for j in 0..n {
                let cross = rng.uniform() < params.cr;
                trial[j] = if cross || j == j_rand {
                    x[r1][j] + params.f * (x[r2][j] - x[r3][j])
                } else {
                    x[i][j]
                };
            }
            bounds.clamp_in_place(trial);
        }
        for i in 0..np {
            let value = spec.evaluate(&trials[i], &mut rng)?;
            if value <= fx[i] || improves(value, fx[i]) {
                x[i].clone_from(&trials[i]);
                fx[i] = value;
            }
        }
        record(&x, &fx, &mut best);
        trace.push(best.as_ref().expect("recorded").value);
    }

    Ok(RunResult {
        best: best.expect("recorded"),
        trace,
        evaluations: spec.eval_count() - start_evals,
        seed,
        nonfinite_evaluations: spec.nonfinite_count() - start_nonfinite,
    })
}

#[derive(Debug, Clone, Default)]
pub struct De {
    pub params: DeParams,
}

impl De {
    pub fn new(params: DeParams) -> Self {
        Self { params }
    }
}

impl Optimizer for De {
    fn name(&self) -> &str {
        "de"
    }

    fn generations(&self) -> usize {
        self.params.generations
    }

    fn run(&self, spec: &mut ObjectiveSpec, seed: u64) -> Result<RunResult> {
        run_de(spec, &self.params, seed)
    }
}
