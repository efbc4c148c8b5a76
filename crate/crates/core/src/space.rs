use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box `[low[j], high[j]]` defining the feasible region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    low: Vec<f64>,
    high: Vec<f64>,
}

impl Bounds {
    pub fn new(low: Vec<f64>, high: Vec<f64>) -> Result<Self> {
        if low.is_empty() {
            return Err(Error::config("bounds must have at least one dimension"));
        }
        Error::check_dim(low.len(), high.len())?;
        for (j, (lo, hi)) in low.iter().zip(&high).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::config(format!("bound {j} is not finite")));
            }
            if lo >= hi {
                return Err(Error::config(format!(
                    "bound {j}: low {lo} must be strictly below high {hi}"
                )));
            }
        }
        Ok(Self { low, high })
    }

    /// The same interval `[low, high]` in every one of `n` dimensions.
    pub fn uniform(n: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(vec![low; n], vec![high; n])
    }

    pub fn dim(&self) -> usize {
        self.low.len()
    }

    pub fn low(&self) -> &[f64] {
        &self.low
    }

    pub fn high(&self) -> &[f64] {
        &self.high
    }

    pub fn width(&self, j: usize) -> f64 {
        self.high[j] - self.low[j]
    }

    /// Mean box width, `Σ (high[j] - low[j]) / n`.
    pub fn mean_width(&self) -> f64 {
        let total: f64 = self.low.iter().zip(&self.high).map(|(l, h)| h - l).sum();
        total / self.dim() as f64
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.low.iter().zip(&self.high))
                .all(|(v, (l, h))| *l <= *v && *v <= *h)
    }

    /// Clamps `x` in place. Callers guarantee matching length.
    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        for (v, (l, h)) in x.iter_mut().zip(self.low.iter().zip(&self.high)) {
            *v = v.max(*l).min(*h);
        }
    }
}

/// Projects `x` onto the box: `y[j] = min(high[j], max(low[j], x[j]))`.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    Error::check_dim(bounds.dim(), x.len())?;
    let mut y = x.to_vec();
    bounds.clamp_in_place(&mut y);
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_bounds() {
        assert!(matches!(Bounds::uniform(1, 0.0, 0.0), Err(Error::Config(_))));
        assert!(matches!(Bounds::uniform(2, 1.0, -1.0), Err(Error::Config(_))));
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(matches!(
            Bounds::new(vec![0.0], vec![1.0, 2.0]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn clamp_examples() {
        let b = Bounds::uniform(1, -1.0, 1.0).unwrap();
        assert_eq!(clamp_to_bounds(&[5.0], &b).unwrap(), vec![1.0]);
        assert_eq!(clamp_to_bounds(&[0.5], &b).unwrap(), vec![0.5]);
        let b3 = Bounds::uniform(3, -1.0, 1.0).unwrap();
        assert_eq!(
            clamp_to_bounds(&[-3.0, 0.0, 7.0], &b3).unwrap(),
            vec![-1.0, 0.0, 1.0]
        );
    }

    #[test]
    fn clamp_length_mismatch() {
        let b = Bounds::uniform(2, -1.0, 1.0).unwrap();
        assert!(matches!(
            clamp_to_bounds(&[0.0], &b),
            Err(Error::Dimension { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn mean_width_mixed() {
        let b = Bounds::new(vec![-5.0, 0.0], vec![5.0, 10.0]).unwrap();
        assert_eq!(b.mean_width(), 10.0);
    }
}
