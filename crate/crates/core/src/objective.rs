use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::UniformSource;
use crate::space::Bounds;

/// A function to be minimized.
///
/// Implementations must be deterministic given `x` and the draws they take
/// from `rng`; only noisy objectives should touch `rng` at all.
pub trait Objective: Send + Sync {
    fn value(&self, x: &[f64], rng: &mut dyn UniformSource) -> f64;
}

/// Adapter turning a plain closure into an [`Objective`].
pub struct FnObjective<F>(pub F);

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn value(&self, x: &[f64], _rng: &mut dyn UniformSource) -> f64 {
        (self.0)(x)
    }
}

/// Objective plus its search box, known optimum and evaluation counters.
///
/// Cloning shares the underlying function; counters are copied.
#[derive(Clone)]
pub struct ObjectiveSpec {
    id: String,
    bounds: Bounds,
    f_opt: Option<f64>,
    x_opt: Option<Vec<f64>>,
    func: Arc<dyn Objective>,
    eval_count: u64,
    nonfinite_count: u64,
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("id", &self.id)
            .field("n", &self.dim())
            .field("f_opt", &self.f_opt)
            .field("eval_count", &self.eval_count)
            .finish_non_exhaustive()
    }
}

impl ObjectiveSpec {
    pub fn new(id: impl Into<String>, bounds: Bounds, func: Arc<dyn Objective>) -> Self {
        Self {
            id: id.into(),
            bounds,
            f_opt: None,
            x_opt: None,
            func,
            eval_count: 0,
            nonfinite_count: 0,
        }
    }

    pub fn from_fn<F>(id: impl Into<String>, bounds: Bounds, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(id, bounds, Arc::new(FnObjective(f)))
    }

    pub fn with_optimum(mut self, f_opt: Option<f64>, x_opt: Option<Vec<f64>>) -> Self {
        self.f_opt = f_opt;
        self.x_opt = x_opt;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn f_opt(&self) -> Option<f64> {
        self.f_opt
    }

    pub fn x_opt(&self) -> Option<&[f64]> {
        self.x_opt.as_deref()
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    /// Evaluations that returned NaN or an infinity.
    pub fn nonfinite_count(&self) -> u64 {
        self.nonfinite_count
    }

    pub fn reset_counters(&mut self) {
        self.eval_count = 0;
        self.nonfinite_count = 0;
    }

    /// Evaluates the objective at `x` and bumps the counter.
    ///
    /// Non-finite results are returned as-is and recorded in
    /// [`nonfinite_count`](Self::nonfinite_count).
    pub fn evaluate(&mut self, x: &[f64], rng: &mut dyn UniformSource) -> Result<f64> {
        Error::check_dim(self.dim(), x.len())?;
        let v = self.func.value(x, rng);
        self.eval_count += 1;
        if !v.is_finite() {
            self.nonfinite_count += 1;
        }
        Ok(v)
    }
}

/// Free-function form of [`ObjectiveSpec::evaluate`].
pub fn evaluate(spec: &mut ObjectiveSpec, x: &[f64], rng: &mut dyn UniformSource) -> Result<f64> {
    spec.evaluate(x, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    fn sphere(n: usize) -> ObjectiveSpec {
        ObjectiveSpec::from_fn("sphere", Bounds::uniform(n, -1.0, 1.0).unwrap(), |x| {
            x.iter().map(|v| v * v).sum()
        })
    }

    #[test]
    fn counts_evaluations() {
        let mut s = sphere(2);
        let mut rng = RandomStream::new(0);
        assert_eq!(s.evaluate(&[1.0, 1.0], &mut rng).unwrap(), 2.0);
        s.evaluate(&[0.0, 0.0], &mut rng).unwrap();
        assert_eq!(s.eval_count(), 2);
        s.reset_counters();
        assert_eq!(s.eval_count(), 0);
    }

    #[test]
    fn dimension_mismatch_does_not_count() {
        let mut s = sphere(2);
        let mut rng = RandomStream::new(0);
        assert!(matches!(
            s.evaluate(&[1.0], &mut rng),
            Err(Error::Dimension { expected: 2, actual: 1 })
        ));
        assert_eq!(s.eval_count(), 0);
    }

    #[test]
    fn nonfinite_is_flagged() {
        let mut s = ObjectiveSpec::from_fn("bad", Bounds::uniform(1, -1.0, 1.0).unwrap(), |_| f64::NAN);
        let v = s.evaluate(&[0.0], &mut RandomStream::new(0)).unwrap();
        assert!(v.is_nan());
        assert_eq!(s.nonfinite_count(), 1);
    }
}
