//! GECCO/CEC-style shifted functions (f15..f24) and their transforms.
//!
//! Each `*_raw` function takes the already-shifted vector `z` and omits the
//! `f_opt` offset, so shift covariance can be checked against it directly.

use std::f64::consts::{E, PI};

use crate::benchmarks::classic;

/// Element-wise oscillation transform.
pub fn t_osz(h: &[f64]) -> Vec<f64> {
    h.iter().map(|&v| t_osz_scalar(v)).collect()
}

fn t_osz_scalar(h: f64) -> f64 {
    if h == 0.0 {
        return 0.0;
    }
    let k = h.abs().ln();
    let (c1, c2) = if h > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    h.signum() * (k + 0.049 * ((c1 * k).sin() + (c2 * k).sin())).exp()
}

/// Boundary penalty `100 * Σ max(0, |h_i| - 5)^2`.
pub fn f_pen(h: &[f64]) -> f64 {
    100.0 * h.iter().map(|v| (v.abs() - 5.0).max(0.0).powi(2)).sum::<f64>()
}

/// Diagonal of the ill-conditioning matrix: `alpha^((i-1) / (2(n-1)))`.
pub fn lambda_diag(alpha: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n)
        .map(|i| alpha.powf(i as f64 / (2.0 * (n - 1) as f64)))
        .collect()
}

/// Discus on `z = T_osz(x - x_opt)`.
pub fn discus_raw(z: &[f64]) -> f64 {
    1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>()
}

pub fn different_powers_raw(z: &[f64]) -> f64 {
    let n = z.len();
    let denom = (n.max(2) - 1) as f64;
    z.iter()
        .enumerate()
        .map(|(i, v)| v.abs().powf(2.0 + 4.0 * i as f64 / denom))
        .sum::<f64>()
        .sqrt()
}

/// Schwefel-type pipeline with sign flips, 0.25 coupling, `Λ^10` and the
/// boundary penalty.
pub fn schwefel_sin_raw(x: &[f64], x_opt: &[f64], signs: &[f64]) -> f64 {
    let n = x.len();
    let x_hat: Vec<f64> = x.iter().zip(signs).map(|(v, s)| 2.0 * s * v).collect();
    let mut z_hat = x_hat.clone();
    for i in 0..n - 1 {
        z_hat[i + 1] = x_hat[i + 1] + 0.25 * (x_hat[i] - x_opt[i]);
    }
    let lambda = lambda_diag(10.0, n);
    let z: Vec<f64> = (0..n)
        .map(|i| 100.0 * (lambda[i] * (z_hat[i] - x_opt[i]) + x_opt[i]))
        .collect();
    let core = -z.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>() / n as f64;
    let scaled: Vec<f64> = z.iter().map(|v| v / 100.0).collect();
    core + 4.189828872724339 + 100.0 * f_pen(&scaled)
}

/// Schwefel 1.2: `Σ_i (Σ_{j<=i} z_j)^2`.
pub fn cumulative_sum_quadratic(z: &[f64]) -> f64 {
    let mut acc = 0.0;
    let mut total = 0.0;
    for v in z {
        acc += v;
        total += acc * acc;
    }
    total
}

/// `max_i |A_i x - b_i|`.
pub fn linear_system_max(a: &[Vec<f64>], b: &[f64], x: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| (dot(row, x) - bi).abs())
        .fold(0.0, f64::max)
}

pub fn rosenbrock_raw(z: &[f64]) -> f64 {
    z.windows(2)
        .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

/// `B_i(x) = Σ_j (a_ij sin x_j + b_ij cos x_j)`.
pub fn trig_sums(a: &[Vec<f64>], b: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let (s, c): (Vec<f64>, Vec<f64>) = x.iter().map(|v| (v.sin(), v.cos())).unzip();
    a.iter()
        .zip(b)
        .map(|(ar, br)| dot(ar, &s) + dot(br, &c))
        .collect()
}

/// `Σ_i (A_i - B_i(x))^2` with precomputed targets `A_i`.
pub fn trig_residual(targets: &[f64], a: &[Vec<f64>], b: &[Vec<f64>], x: &[f64]) -> f64 {
    targets
        .iter()
        .zip(trig_sums(a, b, x))
        .map(|(t, bx)| (t - bx).powi(2))
        .sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

const WEIERSTRASS_A: f64 = 0.5;
const WEIERSTRASS_B: f64 = 3.0;
const WEIERSTRASS_KMAX: i32 = 20;

pub fn weierstrass(x: &[f64]) -> f64 {
    let term = |v: f64| -> f64 {
        (0..=WEIERSTRASS_KMAX)
            .map(|k| WEIERSTRASS_A.powi(k) * (2.0 * PI * WEIERSTRASS_B.powi(k) * v).cos())
            .sum()
    };
    let offset = term(0.5);
    x.iter().map(|v| term(v + 0.5)).sum::<f64>() - x.len() as f64 * offset
}

/// Argument scales of the ten composition components.
pub const COMPOSITION_LAMBDA: [f64; 10] = [
    10.0 / 32.0,
    5.0 / 32.0,
    2.0,
    1.0,
    10.0 / 100.0,
    5.0 / 100.0,
    20.0,
    10.0,
    10.0 / 60.0,
    5.0 / 60.0,
];

/// Component `i` (0-based): Ackley, Rastrigin, sphere, Weierstrass,
/// Griewank, two of each.
pub fn composition_component(i: usize, z: &[f64]) -> f64 {
    match i / 2 {
        0 => ackley(z),
        1 => classic::rastrigin(z),
        2 => classic::sphere(z),
        3 => weierstrass(z),
        _ => classic::griewank(z),
    }
}

/// Normalizers `|F_i([5/λ_i]^n)|`.
pub fn composition_fmax(n: usize) -> [f64; 10] {
    let mut out = [0.0; 10];
    for (i, slot) in out.iter_mut().enumerate() {
        let corner = vec![5.0 / COMPOSITION_LAMBDA[i]; n];
        let v = composition_component(i, &corner).abs();
        *slot = if v > 0.0 { v } else { 1.0 };
    }
    out
}

/// `Σ_i F_i((x - o_i) / λ_i) / F_i^max`.
pub fn composition(x: &[f64], shifts: &[Vec<f64>], fmax: &[f64; 10]) -> f64 {
    (0..10)
        .map(|i| {
            let z: Vec<f64> = x
                .iter()
                .zip(&shifts[i])
                .map(|(v, o)| (v - o) / COMPOSITION_LAMBDA[i])
                .collect();
            composition_component(i, &z) / fmax[i]
        })
        .sum()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_osz_fixed_points() {
        assert_eq!(t_osz(&[0.0]), vec![0.0]);
        assert_eq!(t_osz(&[1.0]), vec![1.0]);
    }

    #[test]
    fn t_osz_negative_two() {
        // Frozen from an independent scripted evaluation:
        // -exp(ln2 + 0.049*(sin(5.5 ln2) + sin(3.1 ln2)))
        let v = t_osz(&[-2.0])[0];
        assert!((v - (-2.021283508671628)).abs() < 1e-14, "{v}");
    }

    #[test]
    fn f_pen_examples() {
        assert_eq!(f_pen(&[1.0, -5.0, 5.0]), 0.0);
        assert_eq!(f_pen(&[6.0]), 100.0);
        assert_eq!(f_pen(&[-7.0, 5.0]), 400.0);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_diag(10.0, 30);
        assert_eq!(l[0], 1.0);
        assert!((l[29] - 10f64.sqrt()).abs() < 1e-12);
        let l3 = lambda_diag(10.0, 3);
        assert!((l3[1] - 10f64.powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn components_vanish_at_zero() {
        for i in 0..10 {
            assert!(composition_component(i, &[0.0; 30]).abs() < 1e-9, "component {i}");
        }
    }

    #[test]
    fn fmax_positive() {
        assert!(composition_fmax(30).iter().all(|v| *v > 0.0));
    }

    #[test]
    fn cumulative_sum_small() {
        // (1)^2 + (1+2)^2 + (1+2+3)^2
        assert_eq!(cumulative_sum_quadratic(&[1.0, 2.0, 3.0]), 1.0 + 9.0 + 36.0);
    }
}
