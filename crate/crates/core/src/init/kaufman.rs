use crate::data::{CentroidSet, Dataset};
use crate::distance::{pairwise_distances, sq_dist};
use crate::error::Result;

use super::{argmax_unselected, check_k, NearestTracker};

/// Kaufman & Rousseeuw seeding.
///
/// The first centroid is the point closest to the global mean. Each next
/// centroid is the unselected candidate `i` maximizing
/// `sum_{i' != i} max(D(x_i') - d(x_i, x_i'), 0)` over unselected `i'`, i.e.
/// the candidate that would pull in the most "distance budget" from its
/// neighbours. Quadratic in `n` per centroid.
pub fn init_kaufman(ds: &Dataset, k: usize) -> Result<CentroidSet> {
    check_k(ds, k)?;
    let n = ds.n();
    let mu = ds.mean();
    let mut first = (0, f64::INFINITY);
    for (i, x) in ds.rows().enumerate() {
        let d = sq_dist(x, &mu);
        if d < first.1 {
            first = (i, d);
        }
    }
    let dm = pairwise_distances(ds);
    let mut t = NearestTracker::new(n);
    t.select_with_row(dm.row(first.0), first.0);
    while t.selected.len() < k {
        let (next, _) = argmax_unselected(&t, |i| {
            let row = dm.row(i);
            let mut gain = 0.0;
            for (j, &dij) in row.iter().enumerate() {
                if j != i && !t.is_selected(j) {
                    let c = t.d[j] - dij;
                    if c > 0.0 {
                        gain += c;
                    }
                }
            }
            gain
        })
        .expect("k <= n");
        t.select_with_row(dm.row(next), next);
    }
    CentroidSet::from_indices(ds, &t.selected)
}
