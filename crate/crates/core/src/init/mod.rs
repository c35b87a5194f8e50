//! Centroid initialization.
//!
//! Eight procedures are provided. Four of them draw from a [`SeededRng`]
//! (Random, K-Means++, Maximin(S), ROBIN(S)); the other four are fully
//! deterministic and never touch the generator (Maximin(D), Kaufman,
//! ROBIN(D), DK-Means++). Every procedure returns `K` distinct rows of the
//! dataset, and all argmax/argmin ties resolve to the lowest point index.

mod dkmeanspp;
mod kaufman;
mod kmeanspp;
mod lof;
mod maximin;
mod mst;
mod random;
mod robin;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{CentroidSet, Dataset};
use crate::distance::dist;
use crate::error::{Error, Result};
use crate::rng::SeededRng;

pub use dkmeanspp::{init_dkmeanspp, local_density};
pub use kaufman::init_kaufman;
pub use kmeanspp::{init_kmeanspp, kmeanspp_from};
pub use lof::lof_scores;
pub use maximin::init_maximin;
pub use mst::{mst_edge_weights, mst_epsilon, percentile};
pub use random::init_random;
pub use robin::{init_robin, Reference};

/// Whether a procedure with both flavours draws its first pick at random.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Stochastic,
    Deterministic,
}

/// Neighbourhood size and acceptance band for the LOF filter used by ROBIN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LofParams {
    pub mp: usize,
    pub e: f64,
}

impl Default for LofParams {
    fn default() -> Self {
        Self { mp: 10, e: 0.05 }
    }
}

impl LofParams {
    pub fn new(mp: usize, e: f64) -> Result<Self> {
        let p = Self { mp, e };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mp < 1 {
            return Err(Error::invalid("LOF neighbour count mp must be >= 1"));
        }
        if !(self.e > 0.0 && self.e < 1.0) {
            return Err(Error::invalid(format!("LOF band e = {} outside (0, 1)", self.e)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMethod {
    Random,
    #[serde(rename = "kmeanspp")]
    KMeansPP,
    MaximinS,
    MaximinD,
    Kaufman,
    RobinS,
    RobinD,
    #[serde(rename = "dkmeanspp")]
    DKMeansPP,
}

impl InitMethod {
    pub const ALL: [InitMethod; 8] = [
        InitMethod::Random,
        InitMethod::KMeansPP,
        InitMethod::MaximinS,
        InitMethod::MaximinD,
        InitMethod::Kaufman,
        InitMethod::RobinS,
        InitMethod::RobinD,
        InitMethod::DKMeansPP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InitMethod::Random => "random",
            InitMethod::KMeansPP => "kmeanspp",
            InitMethod::MaximinS => "maximin_s",
            InitMethod::MaximinD => "maximin_d",
            InitMethod::Kaufman => "kaufman",
            InitMethod::RobinS => "robin_s",
            InitMethod::RobinD => "robin_d",
            InitMethod::DKMeansPP => "dkmeanspp",
        }
    }

    /// Stable numeric id, used when deriving per-run seeds.
    pub fn id(self) -> u64 {
        Self::ALL.iter().position(|&m| m == self).unwrap() as u64
    }

    pub fn is_deterministic(self) -> bool {
        matches!(
            self,
            InitMethod::MaximinD | InitMethod::Kaufman | InitMethod::RobinD | InitMethod::DKMeansPP
        )
    }

    /// Runs the procedure and checks that the returned centroids are distinct.
    pub fn initialize(
        self,
        ds: &Dataset,
        k: usize,
        lof: &LofParams,
        rng: &mut SeededRng,
    ) -> Result<CentroidSet> {
        let cs = match self {
            InitMethod::Random => init_random(ds, k, rng)?,
            InitMethod::KMeansPP => init_kmeanspp(ds, k, rng)?,
            InitMethod::MaximinS => init_maximin(ds, k, rng, Mode::Stochastic)?,
            InitMethod::MaximinD => init_maximin(ds, k, rng, Mode::Deterministic)?,
            InitMethod::Kaufman => init_kaufman(ds, k)?,
            InitMethod::RobinS => init_robin(ds, k, lof, rng, Mode::Stochastic)?,
            InitMethod::RobinD => init_robin(ds, k, lof, rng, Mode::Deterministic)?,
            InitMethod::DKMeansPP => init_dkmeanspp(ds, k)?,
        };
        cs.ensure_distinct()?;
        Ok(cs)
    }
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .to_ascii_lowercase()
            .replace("++", "pp")
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' ' | '(' | ')'))
            .collect();
        let m = match key.as_str() {
            "random" => InitMethod::Random,
            "kmeanspp" => InitMethod::KMeansPP,
            "maximins" => InitMethod::MaximinS,
            "maximind" => InitMethod::MaximinD,
            "kaufman" => InitMethod::Kaufman,
            "robins" => InitMethod::RobinS,
            "robind" => InitMethod::RobinD,
            "dkmeanspp" => InitMethod::DKMeansPP,
            _ => return Err(Error::invalid(format!("unknown initializer '{s}'"))),
        };
        Ok(m)
    }
}

pub(crate) fn check_k(ds: &Dataset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("K must be >= 1"));
    }
    if k > ds.n() {
        return Err(Error::invalid(format!("K = {k} exceeds n = {}", ds.n())));
    }
    Ok(())
}

/// Running `D(x)`: distance from every point to its nearest selected centroid.
pub(crate) struct NearestTracker {
    pub d: Vec<f64>,
    pub selected: Vec<usize>,
    taken: Vec<bool>,
}

impl NearestTracker {
    pub fn new(n: usize) -> Self {
        Self {
            d: vec![f64::INFINITY; n],
            selected: Vec::new(),
            taken: vec![false; n],
        }
    }

    pub fn is_selected(&self, i: usize) -> bool {
        self.taken[i]
    }

    /// Adds data point `c` as a centroid, computing distances on the fly.
    pub fn select(&mut self, ds: &Dataset, c: usize) {
        let center = ds.row(c);
        for (i, x) in ds.rows().enumerate() {
            let v = dist(x, center);
            if v < self.d[i] {
                self.d[i] = v;
            }
        }
        self.mark(c);
    }

    /// Adds data point `c` using a precomputed distance row.
    pub fn select_with_row(&mut self, row: &[f64], c: usize) {
        for (slot, &v) in self.d.iter_mut().zip(row) {
            if v < *slot {
                *slot = v;
            }
        }
        self.mark(c);
    }

    fn mark(&mut self, c: usize) {
        self.d[c] = 0.0;
        self.taken[c] = true;
        self.selected.push(c);
    }
}

/// Lowest index maximizing `score` among unselected points.
pub(crate) fn argmax_unselected(
    tracker: &NearestTracker,
    mut score: impl FnMut(usize) -> f64,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for i in 0..tracker.d.len() {
        if tracker.is_selected(i) {
            continue;
        }
        let s = score(i);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in InitMethod::ALL {
            assert_eq!(m.name().parse::<InitMethod>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        assert_eq!("K-Means++".parse::<InitMethod>().unwrap(), InitMethod::KMeansPP);
        assert_eq!("DK-Means++".parse::<InitMethod>().unwrap(), InitMethod::DKMeansPP);
        assert_eq!("ROBIN(D)".parse::<InitMethod>().unwrap(), InitMethod::RobinD);
        assert!("nope".parse::<InitMethod>().is_err());
    }

    #[test]
    fn lof_params_validation() {
        assert!(LofParams::new(0, 0.05).is_err());
        assert!(LofParams::new(10, 0.0).is_err());
        assert!(LofParams::new(10, 1.0).is_err());
        assert!(LofParams::new(10, 0.05).is_ok());
    }

    #[test]
    fn every_method_returns_distinct_member_rows() {
        let mut rows = Vec::new();
        for b in 0..3 {
            for i in 0..12 {
                let t = i as f64 * 0.13;
                rows.push(vec![b as f64 * 10.0 + t.sin(), b as f64 * -4.0 + t.cos()]);
            }
        }
        let ds = Dataset::from_rows("blobs", &rows).unwrap();
        let lof = LofParams { mp: 3, e: 0.05 };
        for m in InitMethod::ALL {
            for k in 2..=5 {
                let mut rng = SeededRng::new(9, m.id());
                let cs = m.initialize(&ds, k, &lof, &mut rng).unwrap();
                assert_eq!(cs.k(), k, "{m}");
                for c in cs.centers() {
                    assert!(ds.rows().any(|r| r == c), "{m} returned a non-member");
                }
            }
        }
    }

    #[test]
    fn deterministic_methods_ignore_rng() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i as f64 * 1.7).sin() * 5.0, (i * i % 11) as f64])
            .collect();
        let ds = Dataset::from_rows("d", &rows).unwrap();
        let lof = LofParams { mp: 4, e: 0.05 };
        for m in InitMethod::ALL.into_iter().filter(|m| m.is_deterministic()) {
            let a = m.initialize(&ds, 4, &lof, &mut SeededRng::new(1, 1)).unwrap();
            let b = m.initialize(&ds, 4, &lof, &mut SeededRng::new(2, 99)).unwrap();
            assert_eq!(a, b, "{m}");
        }
    }
}
