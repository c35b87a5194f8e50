//! Paired Wilcoxon signed-rank test, Spearman's rho and significance stars.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Above this many non-zero differences the normal approximation is used.
pub const EXACT_MAX_N: usize = 25;

/// Two equal-length vectors of paired observations.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl PairedSample {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::invalid(format!(
                "paired sample lengths differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::invalid("paired sample is empty"));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("paired sample contains a non-finite value".into()));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    /// `min(W+, W-)`.
    pub statistic: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Two-sided.
    pub p_value: f64,
    /// Number of non-zero differences.
    pub n_effective: usize,
    pub exact: bool,
    pub stars: &'static str,
}

/// Two-sided paired Wilcoxon signed-rank test on `a - b`.
///
/// Zero differences are dropped. Without ties and with at most
/// [`EXACT_MAX_N`] differences the p-value is exact; otherwise the normal
/// approximation with tie and continuity corrections is used.
pub fn wilcoxon_signed_rank(s: &PairedSample) -> TestResult {
    let d: Vec<f64> = s
        .a
        .iter()
        .zip(&s.b)
        .map(|(x, y)| x - y)
        .filter(|&v| v != 0.0)
        .collect();
    let n = d.len();
    if n == 0 {
        return TestResult {
            statistic: 0.0,
            w_plus: 0.0,
            w_minus: 0.0,
            p_value: 1.0,
            n_effective: 0,
            exact: true,
            stars: stars(1.0),
        };
    }
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let (ranks, tie_sizes) = midranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let w = w_plus.min(w_minus);

    let has_ties = tie_sizes.iter().any(|&t| t > 1);
    let exact = !has_ties && n <= EXACT_MAX_N;
    let p = if exact {
        exact_p(n, w as usize)
    } else {
        let nf = n as f64;
        let tie_term: f64 = tie_sizes.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term;
        if var <= 0.0 {
            1.0
        } else {
            let z = ((w_plus - total / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
            let std = Normal::new(0.0, 1.0).expect("unit normal");
            (2.0 * std.cdf(-z)).min(1.0)
        }
    };
    TestResult {
        statistic: w,
        w_plus,
        w_minus,
        p_value: p,
        n_effective: n,
        exact,
        stars: stars(p),
    }
}

/// `2 P(T <= w)` under the null, where `T` is the signed-rank sum of ranks
/// `1..=n`. The distribution is counted by a subset-sum recurrence.
fn exact_p(n: usize, w: usize) -> f64 {
    let max = n * (n + 1) / 2;
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    for r in 1..=n {
        for s in (r..=max).rev() {
            counts[s] += counts[s - r];
        }
    }
    let below: u64 = counts[..=w.min(max)].iter().sum();
    (2.0 * below as f64 / 2f64.powi(n as i32)).min(1.0)
}

/// 1-based midranks of `v` and the sizes of each tie group.
fn midranks(v: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut ranks = vec![0.0; v.len()];
    let mut groups = Vec::new();
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && v[idx[end]] == v[idx[start]] {
            end += 1;
        }
        let r = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = r;
        }
        groups.push(end - start);
        start = end;
    }
    (ranks, groups)
}

/// Spearman's rank correlation with midranks for ties.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!("lengths differ: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::invalid("spearman_rho needs at least two pairs"));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidData("non-finite value in correlation input".into()));
    }
    let (rx, _) = midranks(x);
    let (ry, _) = midranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::InvalidData(
            "correlation undefined for a constant vector".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Significance marker for a p-value.
pub fn stars(p: f64) -> &'static str {
    if p < 0.0001 {
        "****"
    } else if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        "ns"
    }
}
