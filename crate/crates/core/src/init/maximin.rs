use crate::data::{CentroidSet, Dataset};
use crate::error::Result;
use crate::rng::SeededRng;

use super::{argmax_unselected, check_k, Mode, NearestTracker};

/// Maximin (farthest-first) seeding.
///
/// The first centroid is a random point in stochastic mode and the point with
/// the largest Euclidean norm in deterministic mode. Every later centroid is
/// the unselected point farthest from the already chosen ones.
pub fn init_maximin(
    ds: &Dataset,
    k: usize,
    rng: &mut SeededRng,
    mode: Mode,
) -> Result<CentroidSet> {
    check_k(ds, k)?;
    let first = match mode {
        Mode::Stochastic => rng.index(ds.n()),
        Mode::Deterministic => {
            let mut best = (0, f64::NEG_INFINITY);
            for (i, x) in ds.rows().enumerate() {
                let norm = x.iter().map(|v| v * v).sum::<f64>();
                if norm > best.1 {
                    best = (i, norm);
                }
            }
            best.0
        }
    };
    let mut t = NearestTracker::new(ds.n());
    t.select(ds, first);
    while t.selected.len() < k {
        let (next, _) = argmax_unselected(&t, |i| t.d[i]).expect("k <= n");
        t.select(ds, next);
    }
    CentroidSet::from_indices(ds, &t.selected)
}
