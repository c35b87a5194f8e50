use crate::data::{CentroidSet, Dataset};
use crate::error::Result;
use crate::rng::SeededRng;

use super::check_k;

/// `K` data points drawn uniformly without replacement (partial Fisher-Yates).
pub fn init_random(ds: &Dataset, k: usize, rng: &mut SeededRng) -> Result<CentroidSet> {
    check_k(ds, k)?;
    let n = ds.n();
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.index(n - i);
        idx.swap(i, j);
    }
    CentroidSet::from_indices(ds, &idx[..k])
}
