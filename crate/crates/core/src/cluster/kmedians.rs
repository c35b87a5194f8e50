use std::time::Instant;

use crate::data::{CentroidSet, Dataset};
use crate::error::Result;

use super::lloyd::{alternate, finish};
use super::{check_inputs, ClusteringRun, LoopConfig};

/// K-Medians: Lloyd's loop with the centroid update replaced by the
/// coordinate-wise median. Points are still assigned by squared Euclidean
/// distance. The run reports the L1 objective next to the WCSS.
pub fn kmedians(ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> Result<ClusteringRun> {
    check_inputs(ds, init, cfg)?;
    let started = Instant::now();
    let out = alternate(ds, init, cfg, median_centroids, l1_unchecked);
    let e = l1_unchecked(ds, &out.labels, &out.centroids);
    finish(ds, out, Some(e), started)
}

/// Median of a slice; the mean of the two middle values for even lengths.
pub fn coordinate_median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

fn median_centroids(ds: &Dataset, labels: &[usize], prev: &CentroidSet) -> CentroidSet {
    let mut out = prev.clone();
    let mut column = Vec::new();
    for c in 0..prev.k() {
        let members: Vec<usize> = (0..ds.n()).filter(|&i| labels[i] == c).collect();
        if members.is_empty() {
            continue;
        }
        let dst = out.center_mut(c);
        for (j, slot) in dst.iter_mut().enumerate() {
            column.clear();
            column.extend(members.iter().map(|&i| ds.row(i)[j]));
            *slot = coordinate_median(&mut column);
        }
    }
    out
}

/// Sum over points of the L1 distance to the assigned centroid.
pub fn l1_objective(ds: &Dataset, labels: &[usize], cs: &CentroidSet) -> f64 {
    l1_unchecked(ds, labels, cs)
}

fn l1_unchecked(ds: &Dataset, labels: &[usize], cs: &CentroidSet) -> f64 {
    ds.rows()
        .zip(labels)
        .map(|(x, &k)| x.iter().zip(cs.center(k)).map(|(a, b)| (a - b).abs()).sum::<f64>())
        .sum()
}
