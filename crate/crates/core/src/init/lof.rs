//! Local outlier factor.
//!
//! `N(x, mp)` holds every other point whose distance to `x` does not exceed the
//! distance of the `mp`-th nearest one, so ties at the boundary are all kept
//! and `|N| >= mp`. The score is
//!
//! ```text
//! density(x) = |N(x)| / sum_{y in N(x)} d(x, y)
//! ard(x)     = density(x) / mean_{y in N(x)} density(y)
//! LOF(x)     = 1 / ard(x)
//! ```
//!
//! Distances are floored at `1e-12` so duplicated points yield a large but
//! finite density.

use crate::data::{Dataset, DistanceMatrix};
use crate::distance::pairwise_distances;
use crate::error::{Error, Result};

const DISTANCE_FLOOR: f64 = 1e-12;

pub fn lof_scores(ds: &Dataset, mp: usize) -> Result<Vec<f64>> {
    check(ds.n(), mp)?;
    Ok(lof_from_matrix(&pairwise_distances(ds), mp))
}

fn check(n: usize, mp: usize) -> Result<()> {
    if mp == 0 {
        return Err(Error::invalid("mp must be >= 1"));
    }
    if n <= mp {
        return Err(Error::invalid(format!("LOF needs n > mp, got n = {n}, mp = {mp}")));
    }
    Ok(())
}

pub(crate) fn lof_from_matrix(dm: &DistanceMatrix, mp: usize) -> Vec<f64> {
    let n = dm.n();
    let mut neighbours: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut density = vec![0.0; n];
    let mut scratch: Vec<f64> = Vec::with_capacity(n);
    for (i, slot) in density.iter_mut().enumerate() {
        let row = dm.row(i);
        scratch.clear();
        scratch.extend((0..n).filter(|&j| j != i).map(|j| row[j]));
        let (_, kth, _) = scratch.select_nth_unstable_by(mp - 1, f64::total_cmp);
        let radius = *kth;
        let nb: Vec<usize> = (0..n).filter(|&j| j != i && row[j] <= radius).collect();
        let sum: f64 = nb.iter().map(|&j| row[j].max(DISTANCE_FLOOR)).sum();
        *slot = nb.len() as f64 / sum;
        neighbours.push(nb);
    }
    neighbours
        .iter()
        .enumerate()
        .map(|(i, nb)| {
            let mean_nb = nb.iter().map(|&j| density[j]).sum::<f64>() / nb.len() as f64;
            mean_nb / density[i]
        })
        .collect()
}
