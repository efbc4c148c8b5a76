//! Run summaries and the Wilcoxon rank-sum test.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// AB (mean), MB (median) and SD (sample standard deviation) of run finals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    #[serde(rename = "AB")]
    pub ab: f64,
    #[serde(rename = "MB")]
    pub mb: f64,
    #[serde(rename = "SD")]
    pub sd: f64,
    pub count: usize,
}

pub fn summarize(finals: &[f64]) -> Result<SummaryStats> {
    if finals.is_empty() {
        return Err(Error::config("cannot summarize an empty sample"));
    }
    if let Some(v) = finals.iter().find(|v| !v.is_finite()) {
        return Err(Error::config(format!("sample contains non-finite value {v}")));
    }
    let n = finals.len();
    let ab = finals.iter().sum::<f64>() / n as f64;
    let mut sorted = finals.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mb = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    let sd = if n == 1 {
        0.0
    } else {
        (finals.iter().map(|v| (v - ab).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Ok(SummaryStats { ab, mb, sd, count: n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    NormalApproximation,
}

/// Which sample tends to hold the smaller values, judged by the rank sum of
/// the first sample against its null expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    FirstLower,
    FirstHigher,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Sum of the ranks of the first sample; ties receive average ranks.
    pub rank_sum: f64,
    pub p_two_sided: f64,
    pub method: Method,
    pub direction: Direction,
}

impl WilcoxonResult {
    pub fn significant(&self, level: f64) -> bool {
        self.p_two_sided < level
    }
}

/// Largest smaller-sample size for which the exact distribution is used.
pub const EXACT_MAX_MIN_SIZE: usize = 12;
/// Largest pooled size for which the exact distribution is used.
pub const EXACT_MAX_TOTAL: usize = 100;

struct Ranked {
    /// Doubled ranks of the pooled sample, first sample first.
    doubled: Vec<u32>,
    n_a: usize,
    tie_term: f64,
    ties_across: bool,
}

fn rank(a: &[f64], b: &[f64]) -> Result<Ranked> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::config("rank-sum test needs two non-empty samples"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::config("rank-sum test received NaN"));
    }
    let pooled: Vec<(f64, bool)> = a.iter().map(|&v| (v, true)).chain(b.iter().map(|&v| (v, false))).collect();
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].0.total_cmp(&pooled[j].0));

    let mut doubled = vec![0u32; pooled.len()];
    let mut tie_term = 0.0;
    let mut ties_across = false;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]].0 == pooled[order[start]].0 {
            end += 1;
        }
        // Positions start..end hold ranks start+1..=end; doubled average is start+1+end.
        let d = (start + 1 + end) as u32;
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        let first = pooled[order[start]].1;
        ties_across |= order[start..end].iter().any(|&i| pooled[i].1 != first);
        for &i in &order[start..end] {
            doubled[i] = d;
        }
        start = end;
    }
    Ok(Ranked { doubled, n_a: a.len(), tie_term, ties_across })
}

/// Two-sided Wilcoxon rank-sum test.
///
/// The exact permutation distribution is used when the smaller sample has at
/// most [`EXACT_MAX_MIN_SIZE`] values, the pooled size is at most
/// [`EXACT_MAX_TOTAL`] and no value is shared between the samples; otherwise
/// the normal approximation with tie correction and continuity correction.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    let ranked = rank(a, b)?;
    let exact = a.len().min(b.len()) <= EXACT_MAX_MIN_SIZE
        && a.len() + b.len() <= EXACT_MAX_TOTAL
        && !ranked.ties_across;
    finish(&ranked, if exact { Method::Exact } else { Method::NormalApproximation })
}

/// Same test with the p-value method chosen by the caller.
///
/// `Method::Exact` still requires the size limits of [`wilcoxon_rank_sum`];
/// ties are handled by enumerating the observed (averaged) ranks.
pub fn wilcoxon_rank_sum_with(a: &[f64], b: &[f64], method: Method) -> Result<WilcoxonResult> {
    let ranked = rank(a, b)?;
    if method == Method::Exact
        && (a.len().min(b.len()) > EXACT_MAX_MIN_SIZE || a.len() + b.len() > EXACT_MAX_TOTAL)
    {
        return Err(Error::config(format!(
            "exact test limited to min size {EXACT_MAX_MIN_SIZE} and total {EXACT_MAX_TOTAL}, got ({}, {})",
            a.len(),
            b.len()
        )));
    }
    finish(&ranked, method)
}

fn finish(ranked: &Ranked, method: Method) -> Result<WilcoxonResult> {
    let n_a = ranked.n_a;
    let n = ranked.doubled.len();
    let n_b = n - n_a;
    let doubled_sum: u32 = ranked.doubled[..n_a].iter().sum();
    let rank_sum = doubled_sum as f64 / 2.0;
    let expected = n_a as f64 * (n + 1) as f64 / 2.0;
    let direction = if rank_sum < expected {
        Direction::FirstLower
    } else if rank_sum > expected {
        Direction::FirstHigher
    } else {
        Direction::Neither
    };

    let p = match method {
        Method::Exact => exact_p(ranked),
        Method::NormalApproximation => {
            let nf = n as f64;
            let var = n_a as f64 * n_b as f64 / 12.0 * ((nf + 1.0) - ranked.tie_term / (nf * (nf - 1.0)));
            if var <= 0.0 {
                1.0
            } else {
                let z = (((rank_sum - expected).abs() - 0.5) / var.sqrt()).max(0.0);
                erfc(z / SQRT_2).min(1.0)
            }
        }
    };
    Ok(WilcoxonResult { rank_sum, p_two_sided: p, method, direction })
}

/// `min(1, 2 min(P(W <= w), P(W >= w)))` over all equally likely splits,
/// computed on the smaller sample so the subset counts stay small.
fn exact_p(ranked: &Ranked) -> f64 {
    let n_a = ranked.n_a;
    let (sample, m) = if n_a <= ranked.doubled.len() - n_a {
        (&ranked.doubled[..n_a], n_a)
    } else {
        (&ranked.doubled[n_a..], ranked.doubled.len() - n_a)
    };
    let observed: usize = sample.iter().map(|&d| d as usize).sum();
    let max_sum: usize = ranked.doubled.iter().map(|&d| d as usize).sum();

    // counts[j][s]: subsets of size j with doubled rank sum s.
    let mut counts = vec![vec![0u128; max_sum + 1]; m + 1];
    counts[0][0] = 1;
    for &d in &ranked.doubled {
        let d = d as usize;
        for j in (1..=m).rev() {
            let (lo, hi) = counts.split_at_mut(j);
            for s in (d..=max_sum).rev() {
                hi[0][s] += lo[j - 1][s - d];
            }
        }
    }
    let dist = &counts[m];
    let total: u128 = dist.iter().sum();
    let le: u128 = dist[..=observed].iter().sum();
    let ge: u128 = dist[observed..].iter().sum();
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

/// Reads one value per line from a column file. Blank lines and lines
/// starting with `#` are skipped; only the first comma- or
/// whitespace-separated field of a line is used.
pub fn parse_column(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.split([',', ' ', '\t']).next().unwrap_or_default();
        let v = field.parse::<f64>().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("bad number `{field}`"),
        })?;
        out.push(v);
    }
    Ok(out)
}
