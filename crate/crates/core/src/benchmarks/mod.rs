//! The 24-function benchmark suite.
//!
//! f1..f14 are fixed formulas. f15..f24 are shifted functions whose shift
//! vectors and auxiliary data (sign vector, linear system, trigonometric
//! coefficients, composition shifts) are generated from an instance seed, so
//! every optimizer in an experiment can face the identical instance.

pub mod classic;
mod dump;
pub mod gecco;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{Objective, ObjectiveSpec};
use crate::rng::{RandomStream, UniformSource};
use crate::space::Bounds;

pub use dump::{dump_instance, parse_instance};

/// Benchmark identifier `f1` .. `f24`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BenchmarkId(u8);

impl BenchmarkId {
    pub const F1: BenchmarkId = BenchmarkId(1);
    pub const F2: BenchmarkId = BenchmarkId(2);
    pub const F3: BenchmarkId = BenchmarkId(3);
    pub const F4: BenchmarkId = BenchmarkId(4);
    pub const F5: BenchmarkId = BenchmarkId(5);
    pub const F6: BenchmarkId = BenchmarkId(6);
    pub const F7: BenchmarkId = BenchmarkId(7);
    pub const F8: BenchmarkId = BenchmarkId(8);
    pub const F9: BenchmarkId = BenchmarkId(9);
    pub const F10: BenchmarkId = BenchmarkId(10);
    pub const F11: BenchmarkId = BenchmarkId(11);
    pub const F12: BenchmarkId = BenchmarkId(12);
    pub const F13: BenchmarkId = BenchmarkId(13);
    pub const F14: BenchmarkId = BenchmarkId(14);
    pub const F15: BenchmarkId = BenchmarkId(15);
    pub const F16: BenchmarkId = BenchmarkId(16);
    pub const F17: BenchmarkId = BenchmarkId(17);
    pub const F18: BenchmarkId = BenchmarkId(18);
    pub const F19: BenchmarkId = BenchmarkId(19);
    pub const F20: BenchmarkId = BenchmarkId(20);
    pub const F21: BenchmarkId = BenchmarkId(21);
    pub const F22: BenchmarkId = BenchmarkId(22);
    pub const F23: BenchmarkId = BenchmarkId(23);
    pub const F24: BenchmarkId = BenchmarkId(24);

    pub fn new(number: u8) -> Result<Self> {
        if (1..=24).contains(&number) {
            Ok(BenchmarkId(number))
        } else {
            Err(Error::UnknownBenchmark(format!("f{number}")))
        }
    }

    pub fn all() -> impl Iterator<Item = BenchmarkId> {
        (1..=24).map(BenchmarkId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn is_gecco(self) -> bool {
        self.0 >= 15
    }

    /// Dimension used in the published tables.
    pub fn default_dim(self) -> usize {
        match self.0 {
            12 => 4,
            13 => 6,
            14 => 2,
            _ => 30,
        }
    }

    /// Fixed-dimension functions only accept their table dimension.
    pub fn fixed_dim(self) -> Option<usize> {
        matches!(self.0, 12..=14).then(|| self.default_dim())
    }

    /// Default iteration budget: 500 for the fixed-dimension set, else 1000.
    pub fn default_generations(self) -> usize {
        if matches!(self.0, 12..=14) {
            500
        } else {
            1000
        }
    }

    pub fn is_noisy(self) -> bool {
        matches!(self.0, 4 | 20)
    }

    fn box_interval(self) -> (f64, f64) {
        match self.0 {
            1 | 2 | 11 => (-100.0, 100.0),
            3 => (-30.0, 30.0),
            4 => (-1.28, 1.28),
            5 => (-500.0, 500.0),
            6 => (-5.12, 5.12),
            7 => (-600.0, 600.0),
            8 | 9 => (-50.0, 50.0),
            10 => (-10.0, 10.0),
            12 => (-5.0, 5.0),
            13 => (0.0, 1.0),
            14 => (-4.5, 4.5),
            15..=17 | 24 => (-5.0, 5.0),
            18..=22 => (-100.0, 100.0),
            23 => (-PI, PI),
            _ => unreachable!("validated id"),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix('f').or_else(|| t.strip_prefix('F')).unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(|n| BenchmarkId::new(n).ok())
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

impl TryFrom<String> for BenchmarkId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BenchmarkId> for String {
    fn from(id: BenchmarkId) -> String {
        id.to_string()
    }
}

/// Seed-generated auxiliary data of the GECCO-style functions.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceData {
    None,
    /// f17: ±1 per coordinate.
    SignVector(Vec<f64>),
    /// f21: integer matrix `a` and right-hand side `b = a * x_opt`.
    LinearSystem { a: Vec<Vec<f64>>, b: Vec<f64> },
    /// f23: integer coefficient matrices; `targets[i] = B_i(x_opt)`.
    Trigonometric {
        a: Vec<Vec<f64>>,
        b: Vec<Vec<f64>>,
        targets: Vec<f64>,
    },
    /// f24: one shift per component and the component normalizers.
    Composition { shifts: Vec<Vec<f64>>, fmax: [f64; 10] },
}

/// A concrete, immutable benchmark problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkInstance {
    pub id: BenchmarkId,
    pub n: usize,
    pub instance_seed: u64,
    pub bounds: Bounds,
    /// Shift vector for f15..f23 (for f23 this is the angle vector α).
    pub x_opt: Option<Vec<f64>>,
    pub f_opt: Option<f64>,
    pub data: InstanceData,
}

const KOWALIK_F_OPT: f64 = 3.0748598865587275e-4;
const KOWALIK_X_OPT: [f64; 4] = [0.192833, 0.190836, 0.123117, 0.135766];
const HARTMANN_F_OPT: f64 = -3.322368011415515;
const HARTMANN_X_OPT: [f64; 6] = [0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573];

impl BenchmarkInstance {
    /// Builds the instance deterministically from `(id, n, instance_seed)`.
    pub fn generate(id: BenchmarkId, n: usize, instance_seed: u64) -> Result<Self> {
        check_dimension(id, n)?;
        let (lo, hi) = id.box_interval();
        let bounds = Bounds::uniform(n, lo, hi)?;
        let mut rng = RandomStream::with_stream(instance_seed, id.number() as u64);

        let x_opt = id.is_gecco().then(|| central_shift(&bounds, &mut rng));
        let f_opt = match id.number() {
            1..=11 | 14 => Some(0.0),
            12 => Some(KOWALIK_F_OPT),
            13 => Some(HARTMANN_F_OPT),
            15..=17 => Some(random_offset(&mut rng)),
            18..=20 => Some(-450.0),
            21 => Some(-310.0),
            22 => Some(390.0),
            23 => Some(-460.0),
            _ => None,
        };

        let data = match id.number() {
            17 => InstanceData::SignVector((0..n).map(|_| rng.sign()).collect()),
            21 => {
                let a = nonsingular_integer_matrix(n, 500, &mut rng);
                let o = x_opt.as_ref().expect("f21 has a shift");
                let b = a.iter().map(|row| gecco::dot(row, o)).collect();
                InstanceData::LinearSystem { a, b }
            }
            23 => {
                let a = integer_matrix(n, 100, &mut rng);
                let b = integer_matrix(n, 100, &mut rng);
                let targets = gecco::trig_sums(&a, &b, x_opt.as_ref().expect("f23 has a shift"));
                InstanceData::Trigonometric { a, b, targets }
            }
            24 => {
                let shifts = (0..10)
                    .map(|_| (0..n).map(|_| rng.uniform_in(-5.0, 5.0)).collect())
                    .collect();
                InstanceData::Composition { shifts, fmax: gecco::composition_fmax(n) }
            }
            _ => InstanceData::None,
        };

        Ok(Self { id, n, instance_seed, bounds, x_opt, f_opt, data })
    }

    /// Known minimizer of the function, when one exists in closed form.
    pub fn optimizer_location(&self) -> Option<Vec<f64>> {
        let n = self.n;
        match self.id.number() {
            1 | 2 | 4 | 6 | 7 | 10 | 11 => Some(vec![0.0; n]),
            3 | 9 => Some(vec![1.0; n]),
            5 => Some(vec![420.968746; n]),
            8 => Some(vec![-1.0; n]),
            12 => Some(KOWALIK_X_OPT.to_vec()),
            13 => Some(HARTMANN_X_OPT.to_vec()),
            14 => Some(vec![3.0, 0.5]),
            15 | 16 | 18..=21 | 23 => self.x_opt.clone(),
            22 => self.x_opt.as_ref().map(|s| s.iter().map(|v| v + 1.0).collect()),
            _ => None,
        }
    }

    /// Evaluates the benchmark at `x`; noisy functions draw from `rng`.
    pub fn value(&self, x: &[f64], rng: &mut dyn UniformSource) -> Result<f64> {
        Error::check_dim(self.n, x.len())?;
        if self.id.is_gecco() {
            eval_gecco(self, x, rng)
        } else {
            eval_classic(self.id, x, rng)
        }
    }

    pub fn to_spec(&self) -> ObjectiveSpec {
        ObjectiveSpec::new(self.id.to_string(), self.bounds.clone(), Arc::new(self.clone()))
            .with_optimum(self.f_opt, self.optimizer_location())
    }

    pub fn dump(&self) -> String {
        dump_instance(self)
    }
}

impl Objective for BenchmarkInstance {
    fn value(&self, x: &[f64], rng: &mut dyn UniformSource) -> f64 {
        BenchmarkInstance::value(self, x, rng).unwrap_or(f64::NAN)
    }
}

/// Builds the [`ObjectiveSpec`] for benchmark `id` in dimension `n`.
pub fn make_instance(id: BenchmarkId, n: usize, instance_seed: u64) -> Result<ObjectiveSpec> {
    Ok(BenchmarkInstance::generate(id, n, instance_seed)?.to_spec())
}

fn check_dimension(id: BenchmarkId, n: usize) -> Result<()> {
    if let Some(fixed) = id.fixed_dim() {
        if n != fixed {
            return Err(Error::Dimension { expected: fixed, actual: n });
        }
    }
    let min = if id.is_gecco() || matches!(id.number(), 3 | 8 | 9) { 2 } else { 1 };
    if n < min {
        return Err(Error::config(format!("{id} needs at least {min} dimensions")));
    }
    Ok(())
}

/// Evaluates one of f1..f14. f4 consumes one uniform draw per call.
pub fn eval_classic(id: BenchmarkId, x: &[f64], rng: &mut dyn UniformSource) -> Result<f64> {
    if let Some(fixed) = id.fixed_dim() {
        Error::check_dim(fixed, x.len())?;
    }
    if x.is_empty() {
        return Err(Error::Dimension { expected: 1, actual: 0 });
    }
    Ok(match id.number() {
        1 => classic::sphere(x),
        2 => classic::max_abs(x),
        3 => classic::rosenbrock(x),
        4 => classic::quartic_noise(x, rng),
        5 => classic::schwefel(x),
        6 => classic::rastrigin(x),
        7 => classic::griewank(x),
        8 => classic::penalized1(x),
        9 => classic::penalized2(x),
        10 => classic::zakharov(x),
        11 => classic::salomon(x),
        12 => classic::kowalik(x),
        13 => classic::hartmann6(x),
        14 => classic::beale(x),
        _ => return Err(Error::config(format!("{id} is not a classic function"))),
    })
}

/// Evaluates one of f15..f24 on instance `inst`. f20 consumes one normal draw.
pub fn eval_gecco(inst: &BenchmarkInstance, x: &[f64], rng: &mut dyn UniformSource) -> Result<f64> {
    Error::check_dim(inst.n, x.len())?;
    let missing = || Error::config(format!("{} instance data is missing", inst.id));
    let shift = || inst.x_opt.as_deref().ok_or_else(missing);
    let f_opt = inst.f_opt.unwrap_or(0.0);
    let diff = |s: &[f64]| -> Vec<f64> { x.iter().zip(s).map(|(a, b)| a - b).collect() };

    Ok(match inst.id.number() {
        15 => gecco::discus_raw(&gecco::t_osz(&diff(shift()?))) + f_opt,
        16 => gecco::different_powers_raw(&diff(shift()?)) + f_opt,
        17 => match &inst.data {
            InstanceData::SignVector(signs) => gecco::schwefel_sin_raw(x, shift()?, signs) + f_opt,
            _ => return Err(missing()),
        },
        18 => classic::sphere(&diff(shift()?)) + f_opt,
        19 => gecco::cumulative_sum_quadratic(&diff(shift()?)) + f_opt,
        20 => {
            let base = gecco::cumulative_sum_quadratic(&diff(shift()?));
            base * (1.0 + 0.4 * rng.standard_normal().abs()) + f_opt
        }
        21 => match &inst.data {
            InstanceData::LinearSystem { a, b } => gecco::linear_system_max(a, b, x) + f_opt,
            _ => return Err(missing()),
        },
        22 => gecco::rosenbrock_raw(&diff(shift()?)) + f_opt,
        23 => match &inst.data {
            InstanceData::Trigonometric { a, b, targets } => gecco::trig_residual(targets, a, b, x) + f_opt,
            _ => return Err(missing()),
        },
        24 => match &inst.data {
            InstanceData::Composition { shifts, fmax } => gecco::composition(x, shifts, fmax) + f_opt,
            _ => return Err(missing()),
        },
        _ => return Err(Error::config(format!("{} is not a GECCO-style function", inst.id))),
    })
}

/// Uniform draw inside the central 80 % of every interval.
fn central_shift(bounds: &Bounds, rng: &mut RandomStream) -> Vec<f64> {
    (0..bounds.dim())
        .map(|j| {
            let margin = 0.1 * bounds.width(j);
            rng.uniform_in(bounds.low()[j] + margin, bounds.high()[j] - margin)
        })
        .collect()
}

/// Heavy-tailed offset rounded to two decimals and kept within ±1000.
fn random_offset(rng: &mut RandomStream) -> f64 {
    let num = rng.standard_normal();
    let den = rng.standard_normal();
    let raw = (100.0 * 100.0 * num / den).round() / 100.0;
    raw.clamp(-1000.0, 1000.0)
}

fn integer_matrix(n: usize, limit: i64, rng: &mut RandomStream) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.integer_in(-limit, limit) as f64).collect())
        .collect()
}

fn nonsingular_integer_matrix(n: usize, limit: i64, rng: &mut RandomStream) -> Vec<Vec<f64>> {
    loop {
        let m = integer_matrix(n, limit, rng);
        if !is_singular(&m) {
            return m;
        }
    }
}

/// Gaussian elimination with partial pivoting; a vanishing pivot means singular.
pub(crate) fn is_singular(m: &[Vec<f64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col].abs() <= 1e-9 * scale {
            return true;
        }
        a.swap(col, pivot);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = row[col] / pivot_row[col];
            for (r, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *r -= factor * p;
            }
        }
    }
    false
}
