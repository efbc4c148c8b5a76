use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::optimizer::{Optimizer, RunResult};
use crate::population::{best_index, improves, random_position, BestRecord};
use crate::rng::{RandomStream, UniformSource};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PsoParams {
    pub population: usize,
    pub generations: usize,
    pub c1: f64,
    pub c2: f64,
    pub w_start: f64,
    pub w_end: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self { population: 50, generations: 1000, c1: 2.0, c2: 2.0, w_start: 0.9, w_end: 0.2 }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::config(format!("population {} must be at least 2", self.population)));
        }
        if self.generations < 1 {
            return Err(Error::config("generations must be at least 1"));
        }
        if !(self.c1 > 0.0 && self.c2 > 0.0 && self.c1.is_finite() && self.c2.is_finite()) {
            return Err(Error::config(format!("c1 = {}, c2 = {} must be positive", self.c1, self.c2)));
        }
        if !(self.w_start.is_finite() && self.w_end.is_finite() && self.w_start >= self.w_end) {
            return Err(Error::config(format!(
                "inertia must decrease: w_start = {}, w_end = {}",
                self.w_start, self.w_end
            )));
        }
        Ok(())
    }

    /// Inertia at iteration `k` (1-based), linear from `w_start` to `w_end`.
    pub fn inertia(&self, k: usize) -> f64 {
        if self.generations <= 1 {
            return self.w_start;
        }
        let t = (k - 1) as f64 / (self.generations - 1) as f64;
        self.w_start - (self.w_start - self.w_end) * t
    }
}

/// Global-best PSO. Velocities start at zero and are not clamped; updates
/// are synchronous, so the swarm best is refreshed once per iteration.
pub fn run_pso(spec: &mut ObjectiveSpec, params: &PsoParams, seed: u64) -> Result<RunResult> {
    params.validate()?;
    let mut rng = RandomStream::new(seed);
    let start_evals = spec.eval_count();
    let start_nonfinite = spec.nonfinite_count();
    let bounds = spec.bounds().clone();
    let n = bounds.dim();
    let np = params.population;

    let mut x: Vec<Vec<f64>> = (0..np).map(|_| random_position(&bounds, &mut rng)).collect();
    let mut v = vec![vec![0.0; n]; np];
    let mut pbest_val = x
        .iter()
        .map(|p| spec.evaluate(p, &mut rng))
        .collect::<Result<Vec<f64>>>()?;
    let mut pbest = x.clone();
    let g = best_index(&pbest_val).expect("non-empty swarm");
    let mut gbest = BestRecord { position: pbest[g].clone(), value: pbest_val[g] };

    let mut trace = Vec::with_capacity(params.generations);
    for k in 1..=params.generations {
        let w = params.inertia(k);
        for i in 0..np {
            for j in 0..n {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                v[i][j] = w * v[i][j]
                    + params.c1 * r1 * (pbest[i][j] - x[i][j])
                    + params.c2 * r2 * (gbest.position[j] - x[i][j]);
                x[i][j] += v[i][j];
            }
            bounds.clamp_in_place(&mut x[i]);
        }
        for i in 0..np {
            let value = spec.evaluate(&x[i], &mut rng)?;
            if improves(value, pbest_val[i]) {
                pbest_val[i] = value;
                pbest[i].clone_from(&x[i]);
            }
        }
        let g = best_index(&pbest_val).expect("non-empty swarm");
        if improves(pbest_val[g], gbest.value) {
            gbest = BestRecord { position: pbest[g].clone(), value: pbest_val[g] };
        }
        trace.push(gbest.value);
    }

    Ok(RunResult {
        best: gbest,
        trace,
        evaluations: spec.eval_count() - start_evals,
        seed,
        nonfinite_evaluations: spec.nonfinite_count() - start_nonfinite,
    })
}

#[derive(Debug, Clone, Default)]
pub struct Pso {
    pub params: PsoParams,
}

impl Pso {
    pub fn new(params: PsoParams) -> Self {
        Self { params }
    }
}

impl Optimizer for Pso {
    fn name(&self) -> &str {
        "pso"
    }

    fn generations(&self) -> usize {
        self.params.generations
    }

    fn run(&self, spec: &mut ObjectiveSpec, seed: u64) -> Result<RunResult> {
        run_pso(spec, &self.params, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{make_instance, BenchmarkId};

    fn short(generations: usize) -> PsoParams {
        PsoParams { population: 10, generations, ..PsoParams::default() }
    }

    #[test]
    fn inertia_schedule_endpoints() {
        let p = PsoParams::default();
        assert_eq!(p.inertia(1), 0.9);
        assert!((p.inertia(1000) - 0.2).abs() < 1e-15);
        assert!((p.inertia(500) - (0.9 - 0.7 * 499.0 / 999.0)).abs() < 1e-15);
        assert_eq!(short(1).inertia(1), 0.9);
    }

    #[test]
    fn counts_and_single_generation() {
        let mut spec = make_instance(BenchmarkId::F1, 5, 0).unwrap();
        let r = run_pso(&mut spec, &short(1), 3).unwrap();
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.evaluations, 20);

        let r = run_pso(&mut spec, &short(40), 3).unwrap();
        assert_eq!(r.evaluations, 10 * 41);
        assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*r.trace.last().unwrap(), r.best.value);
    }

    #[test]
    fn replay_is_bit_exact() {
        let mut a = make_instance(BenchmarkId::F6, 8, 0).unwrap();
        let mut b = a.clone();
        assert_eq!(run_pso(&mut a, &short(30), 11).unwrap(), run_pso(&mut b, &short(30), 11).unwrap());
    }

    #[test]
    fn rejects_bad_params() {
        let mut spec = make_instance(BenchmarkId::F1, 5, 0).unwrap();
        for p in [
            PsoParams { c1: 0.0, ..short(5) },
            PsoParams { w_start: 0.1, w_end: 0.5, ..short(5) },
            PsoParams { population: 1, ..short(5) },
            short(0),
        ] {
            assert!(matches!(run_pso(&mut spec, &p, 0), Err(Error::Config(_))), "{p:?}");
        }
    }
}
