use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::UniformSource;
use crate::space::Bounds;

/// A candidate solution together with its movement heading.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    pub position: Vec<f64>,
    pub direction: Vec<f64>,
}

/// Fixed-size, ordered set of molecules sharing one search box.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub molecules: Vec<Molecule>,
}

impl Population {
    pub fn len(&self) -> usize {
        self.molecules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.molecules.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.molecules.iter().map(|m| m.position.as_slice())
    }
}

/// Best position seen so far and its objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestRecord {
    pub position: Vec<f64>,
    pub value: f64,
}

/// Draws `np` molecules uniformly inside `bounds`.
///
/// All positions are drawn first (molecule-major, dimension-minor), then all
/// directions in `[-1, 1]` in the same order.
pub fn init_population<R: UniformSource + ?Sized>(
    bounds: &Bounds,
    np: usize,
    rng: &mut R,
) -> Result<Population> {
    if np < 2 {
        return Err(Error::config(format!("population size {np} must be at least 2")));
    }
    let n = bounds.dim();
    let positions: Vec<Vec<f64>> = (0..np).map(|_| random_position(bounds, rng)).collect();
    let molecules = positions
        .into_iter()
        .map(|position| Molecule {
            position,
            direction: (0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect(),
        })
        .collect();
    Ok(Population { molecules })
}

/// `low[j] + rand(0,1) * (high[j] - low[j])` for every dimension.
pub(crate) fn random_position<R: UniformSource + ?Sized>(bounds: &Bounds, rng: &mut R) -> Vec<f64> {
    (0..bounds.dim())
        .map(|j| bounds.low()[j] + rng.uniform() * bounds.width(j))
        .collect()
}

/// Index of the smallest value; NaN ranks last and ties keep the lowest index.
pub fn best_index(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            None => best = Some(i),
            Some(b) => {
                let bv = values[b];
                if v < bv || (bv.is_nan() && !v.is_nan()) {
                    best = Some(i);
                }
            }
        }
    }
    best
}

/// `candidate` beats `incumbent`: strictly smaller, and any number beats NaN.
pub fn improves(candidate: f64, incumbent: f64) -> bool {
    candidate < incumbent || (incumbent.is_nan() && !candidate.is_nan())
}

/// Keeps the historical best: the population champion replaces `best` only
/// when strictly better.
pub fn update_best(best: Option<&BestRecord>, population: &Population, values: &[f64]) -> BestRecord {
    debug_assert_eq!(population.len(), values.len());
    let c = best_index(values).expect("population is never empty");
    match best {
        Some(b) if !improves(values[c], b.value) => b.clone(),
        _ => BestRecord {
            position: population.molecules[c].position.clone(),
            value: values[c],
        },
    }
}
