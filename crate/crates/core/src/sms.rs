//! States of Matter Search.
//!
//! A run of `gen` iterations is split into a gas, a liquid and a solid
//! phase (50/40/10 % by default). Every iteration applies the same
//! procedure with the active phase's [`StateConfig`]:
//!
//! 1. find the best molecule of the current population;
//! 2. derive the velocity scale `v_init = mean_width * beta` and the
//!    collision radius `r = mean_width * alpha`;
//! 3. for each molecule, pull its direction toward the population best and
//!    move it (`p += d * v_init * rand * rho * width`, clamped to the box);
//! 4. swap directions of every pair closer than `r`;
//! 5. re-seed each molecule uniformly in the box with probability `H`;
//! 6. evaluate the population and keep the historical best.
//!
//! Iteration `k` counts from 1 over the whole run, not per phase.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::optimizer::{Optimizer, RunResult};
use crate::population::{best_index, init_population, random_position, update_best, BestRecord, Molecule, Population};
use crate::rng::{RandomStream, UniformSource};
use crate::space::Bounds;

/// Below this distance a molecule is considered to sit on the population best.
pub const ATTRACTION_EPS: f64 = 1e-12;

/// Operator parameters for one state of matter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub beta: f64,
    pub alpha: f64,
    /// Random-position probability.
    #[serde(rename = "H")]
    pub h: f64,
}

impl StateConfig {
    pub const GAS: StateConfig = StateConfig { rho_lo: 0.8, rho_hi: 1.0, beta: 0.8, alpha: 0.8, h: 0.9 };
    pub const LIQUID: StateConfig = StateConfig { rho_lo: 0.3, rho_hi: 0.6, beta: 0.4, alpha: 0.2, h: 0.2 };
    pub const SOLID: StateConfig = StateConfig { rho_lo: 0.0, rho_hi: 0.1, beta: 0.1, alpha: 0.0, h: 0.0 };

    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !(unit(self.rho_lo) && unit(self.rho_hi) && self.rho_lo <= self.rho_hi) {
            return Err(Error::config(format!(
                "rho range [{}, {}] must satisfy 0 <= lo <= hi <= 1",
                self.rho_lo, self.rho_hi
            )));
        }
        for (name, v) in [("beta", self.beta), ("alpha", self.alpha), ("H", self.h)] {
            if !unit(v) {
                return Err(Error::config(format!("{name} = {v} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Gas,
    Liquid,
    Solid,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Gas => "gas",
            Phase::Liquid => "liquid",
            Phase::Solid => "solid",
        })
    }
}

/// Iteration split between the three states and their configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseSchedule {
    pub gas_frac: f64,
    pub liquid_frac: f64,
    pub solid_frac: f64,
    pub gas: StateConfig,
    pub liquid: StateConfig,
    pub solid: StateConfig,
}

impl Default for PhaseSchedule {
    fn default() -> Self {
        Self {
            gas_frac: 0.5,
            liquid_frac: 0.4,
            solid_frac: 0.1,
            gas: StateConfig::GAS,
            liquid: StateConfig::LIQUID,
            solid: StateConfig::SOLID,
        }
    }
}

impl PhaseSchedule {
    pub fn validate(&self) -> Result<()> {
        let fracs = [self.gas_frac, self.liquid_frac, self.solid_frac];
        if fracs.iter().any(|f| f.is_nan() || *f <= 0.0) {
            return Err(Error::config("phase fractions must all be positive"));
        }
        let sum: f64 = fracs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::config(format!("phase fractions sum to {sum}, expected 1")));
        }
        self.gas.validate()?;
        self.liquid.validate()?;
        self.solid.validate()
    }

    /// Last iteration of the gas phase and of the liquid phase:
    /// `floor(gas_frac * gen)` and `floor((gas_frac + liquid_frac) * gen)`.
    pub fn phase_ends(&self, gen: usize) -> (usize, usize) {
        // The small guard keeps e.g. 0.9 * 30 from flooring to 26.
        let cut = |f: f64| ((f * gen as f64) + 1e-9).floor() as usize;
        (cut(self.gas_frac), cut(self.gas_frac + self.liquid_frac).min(gen))
    }

    pub fn phase_for_iteration(&self, k: usize, gen: usize) -> Result<Phase> {
        if k < 1 || k > gen {
            return Err(Error::Logic(format!("iteration {k} outside 1..={gen}")));
        }
        let (gas_end, liquid_end) = self.phase_ends(gen);
        Ok(if k <= gas_end {
            Phase::Gas
        } else if k <= liquid_end {
            Phase::Liquid
        } else {
            Phase::Solid
        })
    }

    pub fn config(&self, phase: Phase) -> &StateConfig {
        match phase {
            Phase::Gas => &self.gas,
            Phase::Liquid => &self.liquid,
            Phase::Solid => &self.solid,
        }
    }
}

/// Configuration active at iteration `k` of a `gen`-iteration run.
pub fn state_for_iteration(k: usize, gen: usize, schedule: &PhaseSchedule) -> Result<&StateConfig> {
    Ok(schedule.config(schedule.phase_for_iteration(k, gen)?))
}

/// How the movement scale `rho` is drawn from the state's range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoSampling {
    /// Fresh `rho` for every molecule, dimension and iteration.
    #[default]
    PerDimension,
    /// One `rho` per molecule per iteration, shared by all dimensions.
    PerMolecule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SmsParams {
    pub population: usize,
    pub generations: usize,
    pub schedule: PhaseSchedule,
    pub rho_sampling: RhoSampling,
}

impl Default for SmsParams {
    fn default() -> Self {
        Self {
            population: 50,
            generations: 1000,
            schedule: PhaseSchedule::default(),
            rho_sampling: RhoSampling::default(),
        }
    }
}

impl SmsParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::config(format!(
                "population {} must be at least 2",
                self.population
            )));
        }
        if self.generations < 1 {
            return Err(Error::config("generations must be at least 1"));
        }
        self.schedule.validate()
    }
}

/// Velocity scale: mean box width times `beta`.
pub fn compute_v_init(bounds: &Bounds, beta: f64) -> f64 {
    bounds.mean_width() * beta
}

/// Collision radius: mean box width times `alpha`.
pub fn compute_collision_radius(bounds: &Bounds, alpha: f64) -> f64 {
    bounds.mean_width() * alpha
}

/// Unit vector from `p` toward `p_best`, or zeros when the two coincide.
pub fn attraction_unit_vector(p: &[f64], p_best: &[f64]) -> Result<Vec<f64>> {
    Error::check_dim(p.len(), p_best.len())?;
    let diff: Vec<f64> = p_best.iter().zip(p).map(|(b, x)| b - x).collect();
    let norm = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < ATTRACTION_EPS {
        return Ok(vec![0.0; p.len()]);
    }
    Ok(diff.into_iter().map(|v| v / norm).collect())
}

/// `d * (1 - k/gen) * 0.5 + a`, element-wise.
pub fn update_direction(d: &[f64], a: &[f64], k: usize, gen: usize) -> Vec<f64> {
    debug_assert_eq!(d.len(), a.len());
    let decay = (1.0 - k as f64 / gen as f64) * 0.5;
    d.iter().zip(a).map(|(d, a)| d * decay + a).collect()
}

/// Moves `m` along its (already updated) direction and clamps it to `bounds`.
///
/// With [`RhoSampling::PerDimension`] each dimension draws `rand` then `rho`;
/// with [`RhoSampling::PerMolecule`] a single `rho` is drawn first.
pub fn move_molecule<R: UniformSource + ?Sized>(
    m: &mut Molecule,
    v_init: f64,
    cfg: &StateConfig,
    bounds: &Bounds,
    sampling: RhoSampling,
    rng: &mut R,
) {
    let shared_rho = match sampling {
        RhoSampling::PerMolecule => Some(rng.uniform_in(cfg.rho_lo, cfg.rho_hi)),
        RhoSampling::PerDimension => None,
    };
    for j in 0..m.position.len() {
        let velocity = m.direction[j] * v_init;
        let r = rng.uniform();
        let rho = match shared_rho {
            Some(rho) => rho,
            None => rng.uniform_in(cfg.rho_lo, cfg.rho_hi),
        };
        m.position[j] += velocity * r * rho * bounds.width(j);
    }
    bounds.clamp_in_place(&mut m.position);
}

/// Swaps the directions of every pair `(i, q)`, `i < q`, closer than `r`.
///
/// Pairs are scanned in lexicographic order and swaps apply immediately.
/// Returns the number of swaps performed.
pub fn apply_collisions(pop: &mut Population, r: f64) -> usize {
    if r.is_nan() || r <= 0.0 {
        return 0;
    }
    let r2 = r * r;
    let np = pop.len();
    let mut swaps = 0;
    for i in 0..np {
        for q in (i + 1)..np {
            let d2: f64 = pop.molecules[i]
                .position
                .iter()
                .zip(&pop.molecules[q].position)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if d2 < r2 {
                let (left, right) = pop.molecules.split_at_mut(q);
                std::mem::swap(&mut left[i].direction, &mut right[0].direction);
                swaps += 1;
            }
        }
    }
    swaps
}

/// With probability `h`, re-draws a molecule's whole position uniformly in
/// `bounds`. One threshold draw is taken per molecule regardless of `h`.
/// Returns the number of regenerated molecules.
pub fn apply_random_positions<R: UniformSource + ?Sized>(
    pop: &mut Population,
    h: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> usize {
    let mut regenerated = 0;
    for m in &mut pop.molecules {
        if rng.uniform() < h {
            m.position = random_position(bounds, rng);
            regenerated += 1;
        }
    }
    regenerated
}

/// Population, its objective values and the historical best.
#[derive(Debug, Clone, PartialEq)]
pub struct SmsState {
    pub population: Population,
    pub values: Vec<f64>,
    pub best: BestRecord,
}

impl SmsState {
    /// Random initial population, evaluated once.
    pub fn initialize<R: UniformSource>(spec: &mut ObjectiveSpec, population: usize, rng: &mut R) -> Result<Self> {
        let population = init_population(spec.bounds(), population, rng)?;
        let values = evaluate_all(spec, &population, rng)?;
        let best = update_best(None, &population, &values);
        Ok(Self { population, values, best })
    }
}

fn evaluate_all<R: UniformSource>(spec: &mut ObjectiveSpec, pop: &Population, rng: &mut R) -> Result<Vec<f64>> {
    pop.positions().map(|x| spec.evaluate(x, rng)).collect()
}

/// What happened inside one iteration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IterationReport {
    pub swaps: usize,
    pub regenerations: usize,
}

/// One pass of the general procedure with configuration `cfg` at iteration `k`.
pub fn sms_iteration<R: UniformSource>(
    state: &mut SmsState,
    cfg: &StateConfig,
    k: usize,
    gen: usize,
    sampling: RhoSampling,
    spec: &mut ObjectiveSpec,
    rng: &mut R,
) -> Result<IterationReport> {
    let bounds = spec.bounds().clone();
    let leader = best_index(&state.values).expect("population is never empty");
    let p_best = state.population.molecules[leader].position.clone();

    let v_init = compute_v_init(&bounds, cfg.beta);
    let radius = compute_collision_radius(&bounds, cfg.alpha);

    for m in &mut state.population.molecules {
        let a = attraction_unit_vector(&m.position, &p_best)?;
        m.direction = update_direction(&m.direction, &a, k, gen);
        move_molecule(m, v_init, cfg, &bounds, sampling, rng);
    }

    let swaps = apply_collisions(&mut state.population, radius);
    let regenerations = apply_random_positions(&mut state.population, cfg.h, &bounds, rng);

    state.values = evaluate_all(spec, &state.population, rng)?;
    state.best = update_best(Some(&state.best), &state.population, &state.values);
    Ok(IterationReport { swaps, regenerations })
}

/// Full SMS run from `seed`. Performs `population * (generations + 1)` evaluations.
pub fn run_sms(spec: &mut ObjectiveSpec, params: &SmsParams, seed: u64) -> Result<RunResult> {
    params.validate()?;
    let mut rng = RandomStream::new(seed);
    let start_evals = spec.eval_count();
    let start_nonfinite = spec.nonfinite_count();

    let mut state = SmsState::initialize(spec, params.population, &mut rng)?;
    let gen = params.generations;
    let mut trace = Vec::with_capacity(gen);
    for k in 1..=gen {
        let cfg = *state_for_iteration(k, gen, &params.schedule)?;
        sms_iteration(&mut state, &cfg, k, gen, params.rho_sampling, spec, &mut rng)?;
        trace.push(state.best.value);
    }

    Ok(RunResult {
        best: state.best,
        trace,
        evaluations: spec.eval_count() - start_evals,
        seed,
        nonfinite_evaluations: spec.nonfinite_count() - start_nonfinite,
    })
}

/// [`Optimizer`] front-end for [`run_sms`].
#[derive(Debug, Clone, Default)]
pub struct Sms {
    pub params: SmsParams,
}

impl Sms {
    pub fn new(params: SmsParams) -> Self {
        Self { params }
    }
}

impl Optimizer for Sms {
    fn name(&self) -> &str {
        "sms"
    }

    fn generations(&self) -> usize {
        self.params.generations
    }

    fn run(&self, spec: &mut ObjectiveSpec, seed: u64) -> Result<RunResult> {
        run_sms(spec, &self.params, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{CountingStream, ScriptedStream};

    fn approx_eq(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    fn pinned(rho: f64) -> StateConfig {
        StateConfig { rho_lo: rho, rho_hi: rho, beta: 0.8, alpha: 0.8, h: 0.9 }
    }

    #[test]
    fn v_init_examples() {
        let b30 = Bounds::uniform(30, -100.0, 100.0).unwrap();
        assert!((compute_v_init(&b30, 0.8) - 160.0).abs() < 1e-9);
        assert_eq!(compute_v_init(&b30, 0.0), 0.0);
        let mixed = Bounds::new(vec![-5.0, 0.0], vec![5.0, 10.0]).unwrap();
        assert_eq!(compute_v_init(&mixed, 0.5), 5.0);
    }

    #[test]
    fn collision_radius_examples() {
        let b30 = Bounds::uniform(30, -100.0, 100.0).unwrap();
        assert!((compute_collision_radius(&b30, 0.8) - 160.0).abs() < 1e-9);
        assert_eq!(compute_collision_radius(&b30, 0.0), 0.0);
        let b5 = Bounds::uniform(30, -5.0, 5.0).unwrap();
        assert!((compute_collision_radius(&b5, 0.2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn attraction_examples() {
        assert!(approx_eq(&attraction_unit_vector(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), &[0.6, 0.8]));
        assert_eq!(attraction_unit_vector(&[2.0, 2.0], &[2.0, 2.0]).unwrap(), vec![0.0, 0.0]);
        assert!(approx_eq(&attraction_unit_vector(&[1.0, 0.0], &[0.0, 0.0]).unwrap(), &[-1.0, 0.0]));
        assert!(matches!(
            attraction_unit_vector(&[1.0], &[0.0, 0.0]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn direction_examples() {
        assert_eq!(update_direction(&[1.0, 0.0], &[0.0, 1.0], 0, 10), vec![0.5, 1.0]);
        assert_eq!(update_direction(&[7.0, -3.0], &[0.2, -0.2], 10, 10), vec![0.2, -0.2]);
        assert_eq!(update_direction(&[1.0, 1.0], &[0.0, 0.0], 5, 10), vec![0.25, 0.25]);
    }

    #[test]
    fn move_examples() {
        let b = Bounds::uniform(1, -100.0, 100.0).unwrap();
        let cfg = pinned(1.0);
        let mut rng = ScriptedStream::constant(1.0);

        let mut m = Molecule { position: vec![0.0], direction: vec![0.001] };
        move_molecule(&mut m, 160.0, &cfg, &b, RhoSampling::PerDimension, &mut rng);
        assert!((m.position[0] - 32.0).abs() < 1e-9);

        let mut m = Molecule { position: vec![90.0], direction: vec![0.01] };
        move_molecule(&mut m, 160.0, &cfg, &b, RhoSampling::PerDimension, &mut rng);
        assert_eq!(m.position, vec![100.0]);
    }

    #[test]
    fn zero_direction_does_not_move() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let mut m = Molecule { position: vec![0.1, -0.2, 0.3], direction: vec![0.0; 3] };
        let before = m.clone();
        move_molecule(&mut m, 5.0, &StateConfig::GAS, &b, RhoSampling::PerDimension, &mut RandomStream::new(1));
        assert_eq!(m, before);
    }

    #[test]
    fn move_draw_counts() {
        let b = Bounds::uniform(4, -1.0, 1.0).unwrap();
        let mut m = Molecule { position: vec![0.0; 4], direction: vec![0.1; 4] };
        let mut rng = CountingStream::new(RandomStream::new(1));
        move_molecule(&mut m, 1.0, &StateConfig::GAS, &b, RhoSampling::PerDimension, &mut rng);
        assert_eq!(rng.uniform_draws(), 8);
        rng.reset();
        move_molecule(&mut m, 1.0, &StateConfig::GAS, &b, RhoSampling::PerMolecule, &mut rng);
        assert_eq!(rng.uniform_draws(), 5);
    }

    #[test]
    fn per_dimension_draw_order_is_rand_then_rho() {
        let b = Bounds::uniform(1, 0.0, 1.0).unwrap();
        let cfg = StateConfig { rho_lo: 0.0, rho_hi: 1.0, beta: 1.0, alpha: 0.0, h: 0.0 };
        // rand = 0.5, rho = 0 + 0.25 * 1
        let mut rng = ScriptedStream::new(vec![0.5, 0.25]);
        let mut m = Molecule { position: vec![0.0], direction: vec![1.0] };
        move_molecule(&mut m, 1.0, &cfg, &b, RhoSampling::PerDimension, &mut rng);
        assert!((m.position[0] - 0.125).abs() < 1e-15);
    }

    fn two(d1: Vec<f64>, d2: Vec<f64>, gap: f64) -> Population {
        Population {
            molecules: vec![
                Molecule { position: vec![0.0, 0.0], direction: d1 },
                Molecule { position: vec![gap, 0.0], direction: d2 },
            ],
        }
    }

    #[test]
    fn collision_examples() {
        let mut p = two(vec![1.0, 0.0], vec![0.0, 1.0], 1.0);
        assert_eq!(apply_collisions(&mut p, 2.0), 1);
        assert_eq!(p.molecules[0].direction, vec![0.0, 1.0]);
        assert_eq!(p.molecules[1].direction, vec![1.0, 0.0]);

        let mut p = two(vec![1.0, 0.0], vec![0.0, 1.0], 3.0);
        let before = p.clone();
        assert_eq!(apply_collisions(&mut p, 2.0), 0);
        assert_eq!(p, before);

        let mut p = two(vec![1.0, 0.0], vec![0.0, 1.0], 0.0);
        let before = p.clone();
        apply_collisions(&mut p, 0.0);
        assert_eq!(p, before);
    }

    #[test]
    fn colocated_triple_rotates() {
        // (1,2): A<->B gives B,A,C; (1,3): B<->C gives C,A,B; (2,3): A<->B gives C,B,A.
        let a = vec![1.0];
        let b = vec![2.0];
        let c = vec![3.0];
        let mut p = Population {
            molecules: [&a, &b, &c]
                .iter()
                .map(|d| Molecule { position: vec![0.0], direction: (*d).clone() })
                .collect(),
        };
        assert_eq!(apply_collisions(&mut p, 0.5), 3);
        let got: Vec<_> = p.molecules.iter().map(|m| m.direction.clone()).collect();
        assert_eq!(got, vec![c, b, a]);
    }

    #[test]
    fn random_positions_h_zero() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let mut p = init_population(&b, 5, &mut RandomStream::new(2)).unwrap();
        let before = p.clone();
        let mut rng = CountingStream::new(RandomStream::new(3));
        assert_eq!(apply_random_positions(&mut p, 0.0, &b, &mut rng), 0);
        assert_eq!(p, before);
        assert_eq!(rng.uniform_draws(), 5);
    }

    #[test]
    fn random_positions_h_one() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        let mut p = init_population(&b, 5, &mut RandomStream::new(2)).unwrap();
        let before = p.clone();
        assert_eq!(apply_random_positions(&mut p, 1.0, &b, &mut RandomStream::new(3)), 5);
        for (m, o) in p.molecules.iter().zip(&before.molecules) {
            assert!(b.contains(&m.position));
            assert_ne!(m.position, o.position);
            assert_eq!(m.direction, o.direction);
        }
    }

    #[test]
    fn random_positions_pinned_threshold() {
        let b = Bounds::uniform(1, 0.0, 1.0).unwrap();
        let mut p = Population {
            molecules: vec![
                Molecule { position: vec![0.2], direction: vec![0.0] },
                Molecule { position: vec![0.5], direction: vec![0.0] },
            ],
        };
        // molecule 1: threshold 0.4 < 0.5, regenerated from 0.7;
        // molecule 2: threshold 0.9, kept.
        let mut rng = ScriptedStream::new(vec![0.4, 0.7, 0.9]);
        assert_eq!(apply_random_positions(&mut p, 0.5, &b, &mut rng), 1);
        assert_eq!(p.molecules[0].position, vec![0.7]);
        assert_eq!(p.molecules[1].position, vec![0.5]);
        assert_eq!(rng.uniform_draws(), 3);
    }

    #[test]
    fn phase_boundaries() {
        let s = PhaseSchedule::default();
        assert_eq!(s.phase_for_iteration(500, 1000).unwrap(), Phase::Gas);
        assert_eq!(s.phase_for_iteration(501, 1000).unwrap(), Phase::Liquid);
        assert_eq!(s.phase_for_iteration(900, 1000).unwrap(), Phase::Liquid);
        assert_eq!(s.phase_for_iteration(901, 1000).unwrap(), Phase::Solid);
        assert_eq!(s.phase_for_iteration(10, 10).unwrap(), Phase::Solid);
        assert_eq!(*state_for_iteration(1, 1000, &s).unwrap(), StateConfig::GAS);
        assert!(matches!(s.phase_for_iteration(0, 10), Err(Error::Logic(_))));
        assert!(matches!(s.phase_for_iteration(11, 10), Err(Error::Logic(_))));
    }

    #[test]
    fn phase_split_is_exact_for_awkward_gens() {
        let s = PhaseSchedule::default();
        for gen in 1..=300usize {
            let (g, l) = s.phase_ends(gen);
            assert_eq!(g, gen / 2, "gen {gen}");
            assert_eq!(l, gen * 9 / 10, "gen {gen}");
        }
    }

    #[test]
    fn schedule_validation() {
        let mut s = PhaseSchedule::default();
        assert!(s.validate().is_ok());
        s.solid_frac = 0.2;
        assert!(s.validate().is_err());
        let mut s = PhaseSchedule::default();
        s.gas.rho_lo = 1.0;
        s.gas.rho_hi = 0.5;
        assert!(s.validate().is_err());
        let mut s = PhaseSchedule::default();
        s.liquid.h = 1.5;
        assert!(s.validate().is_err());
    }

    /// Np = 2, n = 1, one gas-state iteration traced by hand.
    #[test]
    fn hand_traced_iteration() {
        let bounds = Bounds::uniform(1, -10.0, 10.0).unwrap();
        let mut spec = ObjectiveSpec::from_fn("sq", bounds.clone(), |x| x[0] * x[0]);
        let mut state = SmsState {
            population: Population {
                molecules: vec![
                    Molecule { position: vec![1.0], direction: vec![0.5] },
                    Molecule { position: vec![-4.0], direction: vec![-0.2] },
                ],
            },
            values: vec![1.0, 16.0],
            best: BestRecord { position: vec![1.0], value: 1.0 },
        };
        let cfg = StateConfig { rho_lo: 0.0, rho_hi: 1.0, beta: 0.5, alpha: 0.5, h: 0.5 };
        // k = 1, gen = 2: decay = 0.25. v_init = 20 * 0.5 = 10, r = 10.
        // molecule 1 is the leader: a = 0, d = 0.125; rand 0.1, rho 0.2
        //   p = 1 + 0.125*10*0.1*0.2*20 = 1.5
        // molecule 2: a = +1, d = -0.05 + 1 = 0.95; rand 0.5, rho 0.5
        //   p = -4 + 0.95*10*0.5*0.5*20 = 43.5 -> clamped to 10
        // distance |1.5 - 10| = 8.5 < 10: directions swap.
        // thresholds: 0.6 (keep), 0.3 (< 0.5, regenerate with 0.25 -> -5).
        let mut rng = ScriptedStream::new(vec![0.1, 0.2, 0.5, 0.5, 0.6, 0.3, 0.25]);
        let report = sms_iteration(&mut state, &cfg, 1, 2, RhoSampling::PerDimension, &mut spec, &mut rng).unwrap();
        assert_eq!(report, IterationReport { swaps: 1, regenerations: 1 });
        assert!((state.population.molecules[0].position[0] - 1.5).abs() < 1e-12);
        assert_eq!(state.population.molecules[1].position, vec![-5.0]);
        assert!((state.population.molecules[0].direction[0] - 0.95).abs() < 1e-12);
        assert!((state.population.molecules[1].direction[0] - 0.125).abs() < 1e-12);
        assert!((state.values[0] - 2.25).abs() < 1e-12);
        assert_eq!(state.values[1], 25.0);
        // historical best (1.0) is not beaten by 2.25
        assert_eq!(state.best.value, 1.0);
        assert_eq!(rng.uniform_draws(), 7);
        assert_eq!(spec.eval_count(), 2);
    }

    #[test]
    fn solid_state_only_vibrates() {
        let bounds = Bounds::uniform(4, -5.0, 5.0).unwrap();
        let mut spec = ObjectiveSpec::from_fn("s", bounds, |x| x.iter().map(|v| v * v).sum());
        let mut rng = CountingStream::new(RandomStream::new(11));
        let mut state = SmsState::initialize(&mut spec, 6, &mut rng).unwrap();
        rng.reset();
        let report = sms_iteration(&mut state, &StateConfig::SOLID, 95, 100, RhoSampling::PerDimension, &mut spec, &mut rng).unwrap();
        assert_eq!(report, IterationReport::default());
        assert_eq!(rng.uniform_draws(), 6 * 4 * 2 + 6);
    }

    #[test]
    fn run_counts_and_replays() {
        let bounds = Bounds::uniform(5, -3.0, 3.0).unwrap();
        let mut spec = ObjectiveSpec::from_fn("s", bounds, |x| x.iter().map(|v| v * v).sum());
        let params = SmsParams { population: 7, generations: 20, ..SmsParams::default() };
        let a = run_sms(&mut spec, &params, 99).unwrap();
        assert_eq!(a.evaluations, 7 * 21);
        assert_eq!(a.trace.len(), 20);
        assert_eq!(*a.trace.last().unwrap(), a.best.value);
        assert!(a.trace.windows(2).all(|w| w[1] <= w[0]));
        let b = run_sms(&mut spec, &params, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_generation() {
        let bounds = Bounds::uniform(2, -3.0, 3.0).unwrap();
        let mut spec = ObjectiveSpec::from_fn("s", bounds, |x| x.iter().map(|v| v * v).sum());
        let params = SmsParams { population: 5, generations: 1, ..SmsParams::default() };
        let r = run_sms(&mut spec, &params, 1).unwrap();
        assert_eq!(r.trace.len(), 1);
        // replay the initial population to get its best value
        let mut rng = RandomStream::new(1);
        let mut spec2 = spec.clone();
        let init = SmsState::initialize(&mut spec2, 5, &mut rng).unwrap();
        assert!(r.best.value <= init.best.value);
    }

    #[test]
    fn invalid_params_fail_before_running() {
        let bounds = Bounds::uniform(2, -3.0, 3.0).unwrap();
        let mut spec = ObjectiveSpec::from_fn("s", bounds, |x| x[0]);
        let params = SmsParams { population: 1, ..SmsParams::default() };
        assert!(matches!(run_sms(&mut spec, &params, 1), Err(Error::Config(_))));
        assert_eq!(spec.eval_count(), 0);
        let params = SmsParams { generations: 0, ..SmsParams::default() };
        assert!(run_sms(&mut spec, &params, 1).is_err());
    }
}
