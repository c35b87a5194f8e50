use crate::data::{CentroidSet, Dataset, DistanceMatrix};
use crate::distance::pairwise_distances;
use crate::error::{Error, Result};

use super::mst::epsilon_from_matrix;
use super::{argmax_unselected, check_k, NearestTracker};

/// DK-Means++ seeding.
///
/// Each point gets a local density `sum exp(-d / eps)` over the other points
/// within radius `eps` (the MST radius heuristic), min-max normalized to
/// `[0, 1]`. The densest point is the first centroid; every next centroid
/// maximizes the prospectiveness `density(x) * D(x)`.
pub fn init_dkmeanspp(ds: &Dataset, k: usize) -> Result<CentroidSet> {
    check_k(ds, k)?;
    let n = ds.n();
    if n == 1 {
        return CentroidSet::from_indices(ds, &[0]);
    }
    let dm = pairwise_distances(ds);
    let eps = epsilon_from_matrix(&dm);
    let density = normalized_density(&dm, eps);

    let mut t = NearestTracker::new(n);
    let mut first = 0;
    for (i, &p) in density.iter().enumerate() {
        if p > density[first] {
            first = i;
        }
    }
    t.select_with_row(dm.row(first), first);
    while t.selected.len() < k {
        let (next, phi) = argmax_unselected(&t, |i| density[i] * t.d[i]).expect("k <= n");
        if phi <= 0.0 {
            return Err(Error::InvalidData(format!(
                "DK-Means++ prospectiveness is zero for every remaining point after {} centroids",
                t.selected.len()
            )));
        }
        t.select_with_row(dm.row(next), next);
    }
    CentroidSet::from_indices(ds, &t.selected)
}

/// Raw local density of every point for radius `eps`.
pub fn local_density(ds: &Dataset, eps: f64) -> Vec<f64> {
    raw_density(&pairwise_distances(ds), eps)
}

fn raw_density(dm: &DistanceMatrix, eps: f64) -> Vec<f64> {
    (0..dm.n())
        .map(|i| {
            dm.row(i)
                .iter()
                .enumerate()
                .filter(|&(j, &d)| j != i && d <= eps)
                .map(|(_, &d)| (-d / eps).exp())
                .sum()
        })
        .collect()
}

/// Min-max normalized density. A constant density maps to all ones so that
/// prospectiveness reduces to `D(x)`.
fn normalized_density(dm: &DistanceMatrix, eps: f64) -> Vec<f64> {
    let raw = if eps > 0.0 {
        raw_density(dm, eps)
    } else {
        // all MST edges zero: only coincident points are neighbours
        (0..dm.n())
            .map(|i| dm.row(i).iter().enumerate().filter(|&(j, &d)| j != i && d == 0.0).count() as f64)
            .collect()
    };
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        raw.iter().map(|v| (v - lo) / (hi - lo)).collect()
    } else {
        vec![1.0; raw.len()]
    }
}
