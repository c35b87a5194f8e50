use std::time::Instant;

use crate::data::{CentroidSet, Dataset};
use crate::distance::wcss_unchecked;
use crate::error::Result;

use super::lloyd::{finish, LoopOutput};
use super::{assign_all, check_inputs, mean_centroids, repair_empty, ClusteringRun, HwRule, LoopConfig, TraceStep};

/// Hartigan-Wong K-Means.
///
/// After the nearest-centroid assignment every cluster centroid is reset to
/// its mean. Each sweep then visits the points in dataset order, takes the
/// point out of its cluster, and puts it back into whichever cluster scores
/// best under `cfg.hw_rule`. Ties keep the point where it was, and sole
/// members of a cluster are skipped. The loop ends after a sweep with no
/// moves.
pub fn hartigan_wong(ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> Result<ClusteringRun> {
    check_inputs(ds, init, cfg)?;
    let started = Instant::now();
    let out = sweeps(ds, init, cfg);
    finish(ds, out, None, started)
}

struct Clusters {
    p: usize,
    sums: Vec<f64>,
    counts: Vec<usize>,
}

impl Clusters {
    fn new(ds: &Dataset, labels: &[usize], k: usize) -> Self {
        let p = ds.p();
        let mut c = Self {
            p,
            sums: vec![0.0; k * p],
            counts: vec![0; k],
        };
        for (i, &l) in labels.iter().enumerate() {
            c.add(ds.row(i), l);
        }
        c
    }

    fn add(&mut self, x: &[f64], k: usize) {
        self.counts[k] += 1;
        for (s, v) in self.sums[k * self.p..(k + 1) * self.p].iter_mut().zip(x) {
            *s += v;
        }
    }

    fn remove(&mut self, x: &[f64], k: usize) {
        self.counts[k] -= 1;
        for (s, v) in self.sums[k * self.p..(k + 1) * self.p].iter_mut().zip(x) {
            *s -= v;
        }
    }

    /// Squared distance from `x` to the mean of cluster `k`.
    fn sq_to_mean(&self, x: &[f64], k: usize) -> f64 {
        let n = self.counts[k] as f64;
        self.sums[k * self.p..(k + 1) * self.p]
            .iter()
            .zip(x)
            .map(|(s, v)| {
                let d = v - s / n;
                d * d
            })
            .sum()
    }
}

fn sweeps(ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> LoopOutput {
    let k = init.k();
    let mut labels = assign_all(ds, init);
    repair_empty(ds, &mut labels, init);
    let mut centroids = mean_centroids(ds, &labels, init);
    let mut clusters = Clusters::new(ds, &labels, k);

    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        let before = wcss_unchecked(ds, &labels, &centroids);
        let mut moved = false;
        for (i, x) in ds.rows().enumerate() {
            let from = labels[i];
            if clusters.counts[from] < 2 {
                continue;
            }
            clusters.remove(x, from);
            let cost = |c: usize| -> f64 {
                let d = clusters.sq_to_mean(x, c);
                match cfg.hw_rule {
                    HwRule::Unweighted => d,
                    HwRule::SizeWeighted => {
                        let n = clusters.counts[c] as f64;
                        d * n / (n + 1.0)
                    }
                }
            };
            let mut best = (from, cost(from));
            for c in (0..k).filter(|&c| c != from) {
                let v = cost(c);
                if v < best.1 {
                    best = (c, v);
                }
            }
            clusters.add(x, best.0);
            if best.0 != from {
                labels[i] = best.0;
                moved = true;
            }
        }
        centroids = mean_centroids(ds, &labels, &centroids);
        let after = wcss_unchecked(ds, &labels, &centroids);
        trace.push(TraceStep {
            assigned: before,
            updated: after,
        });
        iterations += 1;
        if !moved {
            converged = true;
            break;
        }
    }
    LoopOutput {
        labels,
        centroids,
        iterations,
        converged,
        trace,
    }
}
