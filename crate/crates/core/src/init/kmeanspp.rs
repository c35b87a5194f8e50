use crate::data::{CentroidSet, Dataset};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

use super::{check_k, NearestTracker};

/// K-Means++ seeding: uniform first pick, then each next point with
/// probability proportional to `D(x)^2`.
///
/// When every unselected point has `D(x) = 0` (heavily duplicated data) the
/// next pick falls back to a uniform draw among unselected points.
pub fn init_kmeanspp(ds: &Dataset, k: usize, rng: &mut SeededRng) -> Result<CentroidSet> {
    check_k(ds, k)?;
    let first = rng.index(ds.n());
    kmeanspp_from(ds, k, first, rng)
}

/// K-Means++ with a fixed first centroid.
pub fn kmeanspp_from(
    ds: &Dataset,
    k: usize,
    first: usize,
    rng: &mut SeededRng,
) -> Result<CentroidSet> {
    check_k(ds, k)?;
    if first >= ds.n() {
        return Err(Error::invalid(format!("first index {first} out of range")));
    }
    let n = ds.n();
    let mut t = NearestTracker::new(n);
    t.select(ds, first);
    while t.selected.len() < k {
        let total: f64 = (0..n)
            .filter(|&i| !t.is_selected(i))
            .map(|i| t.d[i] * t.d[i])
            .sum();
        let next = if total > 0.0 {
            let u = rng.unit() * total;
            let mut acc = 0.0;
            let mut pick = None;
            let mut last_positive = None;
            for i in (0..n).filter(|&i| !t.is_selected(i)) {
                let w = t.d[i] * t.d[i];
                if w > 0.0 {
                    last_positive = Some(i);
                }
                acc += w;
                if acc > u {
                    pick = Some(i);
                    break;
                }
            }
            pick.or(last_positive).expect("positive total weight")
        } else {
            let free: Vec<usize> = (0..n).filter(|&i| !t.is_selected(i)).collect();
            free[rng.index(free.len())]
        };
        t.select(ds, next);
    }
    CentroidSet::from_indices(ds, &t.selected)
}
