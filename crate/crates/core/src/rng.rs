//! Seeded random streams.
//!
//! Every stochastic operator draws through [`UniformSource`], so a run is a
//! pure function of its seed. [`RandomStream`] is the production generator
//! (ChaCha8, portable across platforms). [`ScriptedStream`] replays fixed
//! values and [`CountingStream`] tallies draws; both exist so operator
//! behaviour can be pinned down in tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Source of `uniform(0,1)` and `N(0,1)` draws.
pub trait UniformSource {
    /// Uniform draw in `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Standard normal draw.
    fn standard_normal(&mut self) -> f64;

    /// Uniform draw in `[lo, hi)`, consuming exactly one uniform.
    fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }

    /// Uniform index in `0..len`, consuming exactly one uniform.
    fn index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        ((self.uniform() * len as f64) as usize).min(len - 1)
    }
}

impl<R: UniformSource + ?Sized> UniformSource for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }

    fn standard_normal(&mut self) -> f64 {
        (**self).standard_normal()
    }
}

/// Seedable, bit-reproducible random stream.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent sub-stream `stream` of the generator seeded by `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform integer in the closed range `[lo, hi]`.
    pub fn integer_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    /// Equal-probability `-1.0` or `1.0`.
    pub fn sign(&mut self) -> f64 {
        if self.rng.random::<bool>() {
            1.0
        } else {
            -1.0
        }
    }
}

impl UniformSource for RandomStream {
    fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

/// Replays a fixed cycle of uniform (and normal) values.
///
/// Values are returned verbatim, so a script may contain `1.0` even though a
/// real stream never produces it.
#[derive(Debug, Clone)]
pub struct ScriptedStream {
    uniforms: Vec<f64>,
    normals: Vec<f64>,
    next_uniform: usize,
    next_normal: usize,
}

impl ScriptedStream {
    pub fn new(uniforms: Vec<f64>) -> Self {
        assert!(!uniforms.is_empty(), "scripted stream needs at least one value");
        Self {
            uniforms,
            normals: vec![0.0],
            next_uniform: 0,
            next_normal: 0,
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![value])
    }

    pub fn with_normals(mut self, normals: Vec<f64>) -> Self {
        assert!(!normals.is_empty());
        self.normals = normals;
        self
    }

    /// Number of uniform values handed out so far.
    pub fn uniform_draws(&self) -> usize {
        self.next_uniform
    }
}

impl UniformSource for ScriptedStream {
    fn uniform(&mut self) -> f64 {
        let v = self.uniforms[self.next_uniform % self.uniforms.len()];
        self.next_uniform += 1;
        v
    }

    fn standard_normal(&mut self) -> f64 {
        let v = self.normals[self.next_normal % self.normals.len()];
        self.next_normal += 1;
        v
    }
}

/// Wraps a source and counts the draws taken from it.
#[derive(Debug, Clone)]
pub struct CountingStream<R> {
    inner: R,
    uniform_draws: u64,
    normal_draws: u64,
}

impl<R: UniformSource> CountingStream<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            uniform_draws: 0,
            normal_draws: 0,
        }
    }

    pub fn uniform_draws(&self) -> u64 {
        self.uniform_draws
    }

    pub fn normal_draws(&self) -> u64 {
        self.normal_draws
    }

    pub fn reset(&mut self) {
        self.uniform_draws = 0;
        self.normal_draws = 0;
    }

    pub fn into_inner(self) -> R {
        self.inner
    }
}

impl<R: UniformSource> UniformSource for CountingStream<R> {
    fn uniform(&mut self) -> f64 {
        self.uniform_draws += 1;
        self.inner.uniform()
    }

    fn standard_normal(&mut self) -> f64 {
        self.normal_draws += 1;
        self.inner.standard_normal()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RandomStream::new(42);
        let mut b = RandomStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
    }

    #[test]
    fn different_streams_differ() {
        let mut a = RandomStream::with_stream(42, 0);
        let mut b = RandomStream::with_stream(42, 1);
        let va: Vec<f64> = (0..8).map(|_| a.uniform()).collect();
        let vb: Vec<f64> = (0..8).map(|_| b.uniform()).collect();
        assert_ne!(va, vb);
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut s = RandomStream::new(1);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn normal_moments_are_plausible() {
        let mut s = RandomStream::new(3);
        let n = 20_000;
        let draws: Vec<f64> = (0..n).map(|_| s.standard_normal()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn scripted_cycles_and_counts() {
        let mut s = ScriptedStream::new(vec![0.25, 0.75]);
        assert_eq!(s.uniform(), 0.25);
        assert_eq!(s.uniform(), 0.75);
        assert_eq!(s.uniform(), 0.25);
        assert_eq!(s.uniform_draws(), 3);
        assert_eq!(s.index(4), 3);
    }

    #[test]
    fn index_never_overflows_on_one() {
        let mut s = ScriptedStream::constant(1.0);
        assert_eq!(s.index(5), 4);
    }

    #[test]
    fn counting_wrapper_tallies() {
        let mut c = CountingStream::new(RandomStream::new(9));
        c.uniform();
        c.uniform_in(2.0, 3.0);
        c.standard_normal();
        assert_eq!(c.uniform_draws(), 2);
        assert_eq!(c.normal_draws(), 1);
    }
}
