use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cluster::Clusterer;
use crate::error::{Error, Result};
use crate::init::InitMethod;
use crate::stats::{wilcoxon_signed_rank, PairedSample, TestResult};

use super::{Metric, ReportTable, RunRow};

/// Wins require a two-sided p-value below this.
pub const WIN_P: f64 = 0.05;

/// An initializer/clusterer pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Method {
    pub init: InitMethod,
    pub clusterer: Clusterer,
}

impl Method {
    pub fn new(init: InitMethod, clusterer: Clusterer) -> Self {
        Self { init, clusterer }
    }

    fn matches(&self, r: &RunRow) -> bool {
        r.init == self.init && r.clusterer == self.clusterer
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.init, self.clusterer)
    }
}

/// How the repetitions on one dataset collapse to a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// Mean over repetitions.
    Average,
    /// The run with the best silhouette.
    Best,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub model: String,
    pub init: InitMethod,
    pub clusterer: Clusterer,
    /// Mean over datasets of the per-dataset values.
    pub mean: f64,
    /// Sample standard deviation of the per-dataset values; 0 for one dataset.
    pub std: f64,
    pub datasets: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BestRun {
    pub index: usize,
    pub silhouette: f64,
    pub purity: Option<f64>,
}

/// The run with the highest silhouette (lowest index on ties) and its purity.
pub fn best_of_runs(silhouettes: &[f64], purities: &[Option<f64>]) -> Result<BestRun> {
    if silhouettes.is_empty() {
        return Err(Error::invalid("best_of_runs needs at least one run"));
    }
    if silhouettes.len() != purities.len() {
        return Err(Error::invalid("silhouette and purity columns differ in length"));
    }
    let mut best = 0;
    for (i, &s) in silhouettes.iter().enumerate() {
        if s > silhouettes[best] {
            best = i;
        }
    }
    Ok(BestRun {
        index: best,
        silhouette: silhouettes[best],
        purity: purities[best],
    })
}

/// Per-dataset values of `method` on `model`, keyed by dataset index.
fn per_dataset(
    t: &ReportTable,
    model: &str,
    method: Method,
    value: impl Fn(&[&RunRow]) -> Option<f64>,
) -> BTreeMap<usize, f64> {
    let mut groups: BTreeMap<usize, Vec<&RunRow>> = BTreeMap::new();
    for r in t.rows.iter().filter(|r| r.model == model && method.matches(r)) {
        groups.entry(r.dataset).or_default().push(r);
    }
    groups
        .into_iter()
        .filter_map(|(d, rows)| value(&rows).map(|v| (d, v)))
        .collect()
}

fn mean_of(rows: &[&RunRow], f: impl Fn(&RunRow) -> Option<f64>) -> Option<f64> {
    let vals: Vec<f64> = rows.iter().filter_map(|r| f(r)).collect();
    (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
}

fn best_value(rows: &[&RunRow], metric: Metric) -> Option<f64> {
    let scored: Vec<(f64, Option<f64>)> = rows
        .iter()
        .filter_map(|r| r.metrics())
        .filter_map(|m| m.silhouette.map(|s| (s, metric.of(m))))
        .collect();
    let sil: Vec<f64> = scored.iter().map(|s| s.0).collect();
    let val: Vec<Option<f64>> = scored.iter().map(|s| s.1).collect();
    best_of_runs(&sil, &val).ok().and_then(|b| b.purity)
}

fn dataset_values(
    t: &ReportTable,
    model: &str,
    method: Method,
    metric: Metric,
    agg: Aggregation,
) -> BTreeMap<usize, f64> {
    per_dataset(t, model, method, |rows| match agg {
        Aggregation::Average => mean_of(rows, |r| r.metrics().and_then(|m| metric.of(m))),
        Aggregation::Best => best_value(rows, metric),
    })
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let std = if v.len() < 2 {
        0.0
    } else {
        (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    (mean, std)
}

fn summarize_by(
    t: &ReportTable,
    value: impl Fn(&str, Method) -> BTreeMap<usize, f64>,
) -> Vec<SummaryRow> {
    let mut out = Vec::new();
    for model in t.models() {
        for init in t.inits() {
            for clusterer in t.clusterers() {
                let vals: Vec<f64> = value(&model, Method::new(init, clusterer)).into_values().collect();
                if vals.is_empty() {
                    continue;
                }
                let (mean, std) = mean_std(&vals);
                out.push(SummaryRow {
                    model: model.clone(),
                    init,
                    clusterer,
                    mean,
                    std,
                    datasets: vals.len(),
                });
            }
        }
    }
    out
}

/// Mean over repetitions, then mean and spread over datasets, for every
/// (model, initializer, clusterer) with data.
pub fn summarize_average(t: &ReportTable, metric: Metric) -> Vec<SummaryRow> {
    summarize_by(t, |m, method| dataset_values(t, m, method, metric, Aggregation::Average))
}

/// Like [`summarize_average`] with the best-silhouette run per dataset.
pub fn summarize_best(t: &ReportTable, metric: Metric) -> Vec<SummaryRow> {
    summarize_by(t, |m, method| dataset_values(t, m, method, metric, Aggregation::Best))
}

/// Mean wall time per run.
pub fn summarize_timing(t: &ReportTable) -> Vec<SummaryRow> {
    summarize_by(t, |m, method| {
        per_dataset(t, m, method, |rows| mean_of(rows, |r| r.metrics().map(|x| x.seconds)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    pub model: String,
    pub datasets: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub test: TestResult,
    pub winner: Option<Side>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub a: Method,
    pub b: Method,
    pub metric: Metric,
    pub aggregation: Aggregation,
    pub per_model: Vec<ModelComparison>,
    pub wins_a: usize,
    pub wins_b: usize,
}

/// Paired Wilcoxon test of `a` against `b` on the per-dataset values of
/// every model where both ran. A model counts as a win for the side with the
/// greater mean when `p < 0.05`.
pub fn compare_methods(
    t: &ReportTable,
    a: Method,
    b: Method,
    metric: Metric,
    aggregation: Aggregation,
) -> Result<Comparison> {
    let mut per_model = Vec::new();
    for model in t.models() {
        let va = dataset_values(t, &model, a, metric, aggregation);
        let vb = dataset_values(t, &model, b, metric, aggregation);
        if va.is_empty() && vb.is_empty() {
            continue;
        }
        if !va.keys().eq(vb.keys()) {
            return Err(Error::invalid(format!(
                "{a} and {b} are not paired on model {model}: datasets {:?} vs {:?}",
                va.keys().collect::<Vec<_>>(),
                vb.keys().collect::<Vec<_>>()
            )));
        }
        let xa: Vec<f64> = va.into_values().collect();
        let xb: Vec<f64> = vb.into_values().collect();
        let test = wilcoxon_signed_rank(&PairedSample::new(xa.clone(), xb.clone())?);
        let (mean_a, _) = mean_std(&xa);
        let (mean_b, _) = mean_std(&xb);
        let winner = if test.p_value < WIN_P && mean_a > mean_b {
            Some(Side::A)
        } else if test.p_value < WIN_P && mean_b > mean_a {
            Some(Side::B)
        } else {
            None
        };
        per_model.push(ModelComparison {
            model,
            datasets: xa.len(),
            mean_a,
            mean_b,
            test,
            winner,
        });
    }
    let wins_a = per_model.iter().filter(|m| m.winner == Some(Side::A)).count();
    let wins_b = per_model.iter().filter(|m| m.winner == Some(Side::B)).count();
    Ok(Comparison {
        a,
        b,
        metric,
        aggregation,
        per_model,
        wins_a,
        wins_b,
    })
}

/// Expected stochastic repetitions needed to reach a deterministic score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunsToMatch {
    Runs(f64),
    NotAchieved,
}

impl fmt::Display for RunsToMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunsToMatch::Runs(r) => write!(f, "{r:.2}"),
            RunsToMatch::NotAchieved => f.write_str("N/A"),
        }
    }
}

fn ratio(total: usize, hits: usize) -> RunsToMatch {
    if hits == 0 {
        RunsToMatch::NotAchieved
    } else {
        RunsToMatch::Runs(total as f64 / hits as f64)
    }
}

/// `R / c` where `c` counts the stochastic runs scoring at least the
/// deterministic score.
pub fn runs_to_match(stochastic: &[f64], deterministic: f64) -> RunsToMatch {
    let hits = stochastic.iter().filter(|&&v| v >= deterministic).count();
    ratio(stochastic.len(), hits)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunsToMatchRow {
    pub model: String,
    pub stochastic: Method,
    pub deterministic: Method,
    pub total: usize,
    pub hits: usize,
    pub result: RunsToMatch,
}

/// Runs-to-match per model, pooling repetitions over datasets:
/// total repetitions divided by total matching repetitions.
pub fn runs_to_match_table(
    t: &ReportTable,
    stochastic: Method,
    deterministic: Method,
    metric: Metric,
) -> Vec<RunsToMatchRow> {
    let mut out = Vec::new();
    for model in t.models() {
        let det = dataset_values(t, &model, deterministic, metric, Aggregation::Average);
        let (mut total, mut hits) = (0, 0);
        for (d, target) in &det {
            let vals: Vec<f64> = t
                .rows
                .iter()
                .filter(|r| r.model == model && r.dataset == *d && stochastic.matches(r))
                .filter_map(|r| r.metrics().and_then(|m| metric.of(m)))
                .collect();
            total += vals.len();
            hits += vals.iter().filter(|&&v| v >= *target).count();
        }
        if total > 0 {
            out.push(RunsToMatchRow {
                model,
                stochastic,
                deterministic,
                total,
                hits,
                result: ratio(total, hits),
            });
        }
    }
    out
}

/// Everything [`super::emit_report`] writes besides the run table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summaries {
    pub metric: Metric,
    pub average: Vec<SummaryRow>,
    pub best: Vec<SummaryRow>,
    pub timing: Vec<SummaryRow>,
    /// Initializer pairs under each clusterer, then clusterer pairs under
    /// each initializer; average then best aggregation.
    pub comparisons: Vec<Comparison>,
    /// Pairs left out because failed runs broke the dataset pairing.
    pub skipped: Vec<String>,
    pub runs_to_match: Vec<RunsToMatchRow>,
}

pub fn summarize(t: &ReportTable, metric: Metric) -> Result<Summaries> {
    let inits = t.inits();
    let clusterers = t.clusterers();
    let mut pairs = Vec::new();
    for &c in &clusterers {
        for (i, &a) in inits.iter().enumerate() {
            for &b in &inits[i + 1..] {
                pairs.push((Method::new(a, c), Method::new(b, c)));
            }
        }
    }
    for &init in &inits {
        for (i, &a) in clusterers.iter().enumerate() {
            for &b in &clusterers[i + 1..] {
                pairs.push((Method::new(init, a), Method::new(init, b)));
            }
        }
    }
    let mut comparisons = Vec::new();
    let mut skipped = Vec::new();
    for agg in [Aggregation::Average, Aggregation::Best] {
        for &(a, b) in &pairs {
            match compare_methods(t, a, b, metric, agg) {
                Ok(c) => comparisons.push(c),
                Err(Error::InvalidArgument(msg)) if agg == Aggregation::Average => skipped.push(msg),
                Err(Error::InvalidArgument(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let mut rtm = Vec::new();
    for &c in &clusterers {
        for &s in inits.iter().filter(|m| !m.is_deterministic()) {
            for &d in inits.iter().filter(|m| m.is_deterministic()) {
                rtm.extend(runs_to_match_table(t, Method::new(s, c), Method::new(d, c), metric));
            }
        }
    }
    Ok(Summaries {
        metric,
        average: summarize_average(t, metric),
        best: summarize_best(t, metric),
        timing: summarize_timing(t),
        comparisons,
        skipped,
        runs_to_match: rtm,
    })
}
