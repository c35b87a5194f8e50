//! The clustering loops: Lloyd, Hartigan-Wong and K-Medians.
//!
//! Each loop consumes an initial [`CentroidSet`] and returns a
//! [`ClusteringRun`]. Runs are single-threaded; point order is dataset order.

mod hartigan_wong;
mod kmedians;
mod lloyd;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{Assignment, CentroidSet, Dataset};
use crate::distance::nearest_sq;
use crate::error::{Error, Result};

pub use hartigan_wong::hartigan_wong;
pub use kmedians::{coordinate_median, kmedians, l1_objective};
pub use lloyd::lloyd;

/// Reassignment rule used inside a Hartigan-Wong sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HwRule {
    /// Plain squared distance to each centroid, with the donor centroid
    /// recomputed without the point. Moves can raise the WCSS when the donor
    /// is small.
    Unweighted,
    /// Squared distance scaled by `n/(n+1)`, with `n` the cluster size
    /// without the point. Every move strictly lowers the WCSS.
    #[default]
    SizeWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LoopConfig {
    pub max_iterations: usize,
    /// Early stop when no centroid moves farther than this. Zero disables it.
    pub tolerance: f64,
    pub hw_rule: HwRule,
}

impl Default for LoopConfig {
    fn default() -> Self {
        Self {
            max_iterations: 300,
            tolerance: 0.0,
            hw_rule: HwRule::default(),
        }
    }
}

impl LoopConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::invalid("max_iterations must be >= 1"));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::invalid("tolerance must be non-negative"));
        }
        Ok(())
    }
}

/// Where the randomness behind a run came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Deterministic,
    Seeded { seed: u64, stream: u64 },
}

/// Objective values around one iteration.
///
/// For Lloyd and K-Medians `assigned` is the objective right after the
/// assignment step (old centroids) and `updated` after the centroid update.
/// For Hartigan-Wong they are the WCSS at the start and end of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub assigned: f64,
    pub updated: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringRun {
    pub assignment: Assignment,
    pub centroids: CentroidSet,
    pub wcss: f64,
    /// Sum of absolute deviations to the centroids; K-Medians only.
    pub e_l1: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub seconds: f64,
    pub provenance: Provenance,
    pub trace: Vec<TraceStep>,
}

impl ClusteringRun {
    /// The K-Means objective (WCSS).
    pub fn objective(&self) -> f64 {
        self.wcss
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clusterer {
    Lloyd,
    HartiganWong,
    #[serde(rename = "kmedians")]
    KMedians,
}

impl Clusterer {
    pub const ALL: [Clusterer; 3] = [Clusterer::HartiganWong, Clusterer::Lloyd, Clusterer::KMedians];

    pub fn name(self) -> &'static str {
        match self {
            Clusterer::Lloyd => "lloyd",
            Clusterer::HartiganWong => "hartigan_wong",
            Clusterer::KMedians => "kmedians",
        }
    }

    pub fn run(self, ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> Result<ClusteringRun> {
        match self {
            Clusterer::Lloyd => lloyd(ds, init, cfg),
            Clusterer::HartiganWong => hartigan_wong(ds, init, cfg),
            Clusterer::KMedians => kmedians(ds, init, cfg),
        }
    }
}

impl fmt::Display for Clusterer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Clusterer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "lloyd" | "ll" => Ok(Clusterer::Lloyd),
            "hartigan_wong" | "hartiganwong" | "hw" => Ok(Clusterer::HartiganWong),
            "kmedians" | "k_medians" | "kmed" => Ok(Clusterer::KMedians),
            _ => Err(Error::invalid(format!("unknown clusterer '{s}'"))),
        }
    }
}

pub(crate) fn check_inputs(ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> Result<()> {
    cfg.validate()?;
    if init.p() != ds.p() {
        return Err(Error::invalid(format!(
            "centroids have {} features, dataset has {}",
            init.p(),
            ds.p()
        )));
    }
    if init.k() > ds.n() {
        return Err(Error::invalid(format!("K = {} exceeds n = {}", init.k(), ds.n())));
    }
    Ok(())
}

/// Nearest-centroid labels (lowest index on ties).
pub(crate) fn assign_all(ds: &Dataset, cs: &CentroidSet) -> Vec<usize> {
    ds.rows().map(|x| nearest_sq(x, cs).0).collect()
}

/// Moves the point farthest from its own centroid into each empty cluster.
/// Donors must keep at least one member. Returns whether anything moved.
pub(crate) fn repair_empty(ds: &Dataset, labels: &mut [usize], cs: &CentroidSet) -> bool {
    let k = cs.k();
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    let mut moved = false;
    for empty in 0..k {
        if sizes[empty] != 0 {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, x) in ds.rows().enumerate() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            let d = crate::distance::sq_dist(x, cs.center(labels[i]));
            if best.is_none_or(|(_, b)| d > b) {
                best = Some((i, d));
            }
        }
        if let Some((i, _)) = best {
            sizes[labels[i]] -= 1;
            sizes[empty] += 1;
            labels[i] = empty;
            moved = true;
        }
    }
    moved
}

/// Largest Euclidean displacement between matching centroids.
pub(crate) fn max_shift(a: &CentroidSet, b: &CentroidSet) -> f64 {
    a.centers()
        .zip(b.centers())
        .map(|(x, y)| crate::distance::sq_dist(x, y).sqrt())
        .fold(0.0, f64::max)
}

pub(crate) fn mean_centroids(ds: &Dataset, labels: &[usize], prev: &CentroidSet) -> CentroidSet {
    let (k, p) = (prev.k(), prev.p());
    let mut sums = vec![0.0; k * p];
    let mut counts = vec![0usize; k];
    for (x, &l) in ds.rows().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l * p..(l + 1) * p].iter_mut().zip(x) {
            *s += v;
        }
    }
    let mut out = prev.clone();
    for c in 0..k {
        if counts[c] > 0 {
            let dst = out.center_mut(c);
            for (d, s) in dst.iter_mut().zip(&sums[c * p..(c + 1) * p]) {
                *d = s / counts[c] as f64;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clusterer_names() {
        for c in Clusterer::ALL {
            assert_eq!(c.name().parse::<Clusterer>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("x".parse::<Clusterer>().is_err());
    }

    #[test]
    fn loop_config_validation() {
        let bad = LoopConfig {
            max_iterations: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let cfg: LoopConfig = serde_json::from_str(r#"{"max_iterations": 5}"#).unwrap();
        assert_eq!(cfg.max_iterations, 5);
        assert_eq!(cfg.tolerance, 0.0);
    }

    #[test]
    fn repair_fills_empty_cluster_with_farthest_point() {
        let ds = Dataset::from_1d("r", &[0.0, 1.0, 9.0]).unwrap();
        let cs = CentroidSet::from_flat(2, 1, vec![0.0, 100.0]).unwrap();
        let mut labels = vec![0, 0, 0];
        assert!(repair_empty(&ds, &mut labels, &cs));
        assert_eq!(labels, vec![0, 0, 1]);
    }
}
