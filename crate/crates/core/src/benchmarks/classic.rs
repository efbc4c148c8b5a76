//! Classic unimodal, multimodal and fixed-dimension test functions (f1..f14).

use std::f64::consts::PI;

use crate::rng::UniformSource;

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Schwefel 2.21: `max |x_i|`.
pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

/// `Σ i x_i^4` plus one uniform(0,1) draw.
pub fn quartic_noise(x: &[f64], rng: &mut dyn UniformSource) -> f64 {
    let s: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v.powi(4))
        .sum();
    s + rng.uniform()
}

/// Schwefel 2.26 shifted to a zero minimum near `x_i = 420.9687`.
pub fn schwefel(x: &[f64]) -> f64 {
    418.9829 * x.len() as f64 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

pub fn griewank(x: &[f64]) -> f64 {
    let s: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let p: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    s - p + 1.0
}

/// Boundary penalty `u(x, a, k, m)`.
pub fn penalty_u(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

/// Generalized penalized function 1 (minimum 0 at `x_i = -1`).
pub fn penalized1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let mut s = 10.0 * (PI * y[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
    }
    s += (y[n - 1] - 1.0).powi(2);
    PI / n as f64 * s + x.iter().map(|v| penalty_u(*v, 10.0, 100.0, 4)).sum::<f64>()
}

/// Generalized penalized function 2 (minimum 0 at `x_i = 1`).
pub fn penalized2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    0.1 * s + x.iter().map(|v| penalty_u(*v, 5.0, 100.0, 4)).sum::<f64>()
}

pub fn zakharov(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let lin: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    sq + lin.powi(2) + lin.powi(4)
}

pub fn salomon(x: &[f64]) -> f64 {
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    1.0 - (2.0 * PI * r).cos() + 0.1 * r
}

pub const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];

/// Reciprocals of `b_i`; the model uses `b_i = 1 / KOWALIK_INV_B[i]`.
pub const KOWALIK_INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];

pub fn kowalik(x: &[f64]) -> f64 {
    KOWALIK_A
        .iter()
        .zip(KOWALIK_INV_B)
        .map(|(a, inv)| {
            let b = 1.0 / inv;
            let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
            (a - model).powi(2)
        })
        .sum()
}

const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

const HARTMANN_A: [[f64; 6]; 4] = [
    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
];

const HARTMANN_P: [[f64; 6]; 4] = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
];

/// Six-dimensional Hartmann function (minimum about -3.32237).
pub fn hartmann6(x: &[f64]) -> f64 {
    -(0..4)
        .map(|i| {
            let inner: f64 = (0..6)
                .map(|j| HARTMANN_A[i][j] * (x[j] - HARTMANN_P[i][j]).powi(2))
                .sum();
            HARTMANN_C[i] * (-inner).exp()
        })
        .sum::<f64>()
}

/// Beale function (minimum 0 at `(3, 0.5)`).
pub fn beale(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (1.5 - a + a * b).powi(2) + (2.25 - a + a * b * b).powi(2) + (2.625 - a + a * b.powi(3)).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::ScriptedStream;

    #[test]
    fn sphere_values() {
        assert_eq!(sphere(&[0.0; 30]), 0.0);
        assert_eq!(sphere(&[1.0; 30]), 30.0);
    }

    #[test]
    fn rosenbrock_at_ones() {
        assert_eq!(rosenbrock(&[1.0; 30]), 0.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]), 1.0);
    }

    #[test]
    fn quartic_adds_one_draw() {
        let mut rng = ScriptedStream::constant(0.25);
        assert_eq!(quartic_noise(&[1.0, 1.0], &mut rng), 1.0 + 2.0 + 0.25);
        assert_eq!(rng.uniform_draws(), 1);
    }

    #[test]
    fn multimodal_zeros() {
        assert_eq!(rastrigin(&[0.0; 30]), 0.0);
        assert_eq!(griewank(&[0.0; 30]), 0.0);
        assert_eq!(zakharov(&[0.0; 30]), 0.0);
        assert_eq!(salomon(&[0.0; 30]), 0.0);
        assert!(penalized1(&[-1.0; 30]).abs() < 1e-12);
        assert!(penalized2(&[1.0; 30]).abs() < 1e-12);
    }

    #[test]
    fn schwefel_near_optimum() {
        let v = schwefel(&[420.9687; 30]);
        assert!(v.abs() <= 1e-3, "{v}");
    }

    #[test]
    fn penalty_branches() {
        assert_eq!(penalty_u(12.0, 10.0, 100.0, 4), 100.0 * 16.0);
        assert_eq!(penalty_u(-12.0, 10.0, 100.0, 4), 100.0 * 16.0);
        assert_eq!(penalty_u(3.0, 10.0, 100.0, 4), 0.0);
    }

    #[test]
    fn kowalik_literature_optimum() {
        let v = kowalik(&[0.192833, 0.190836, 0.123117, 0.135766]);
        assert!((v - 3.0748e-4).abs() < 1e-7, "{v}");
    }

    #[test]
    fn hartmann_literature_optimum() {
        let v = hartmann6(&[0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573]);
        assert!((v + 3.32237).abs() < 1e-5, "{v}");
    }

    #[test]
    fn beale_optimum() {
        assert_eq!(beale(&[3.0, 0.5]), 0.0);
    }
}
