use crate::data::{CentroidSet, Dataset};
use crate::distance::{dist, pairwise_distances};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

use super::lof::lof_from_matrix;
use super::{check_k, LofParams, Mode, NearestTracker};

/// Where the first ROBIN scan measures distances from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    /// The zero vector of the feature space.
    Origin,
    /// A data point, by index.
    Point(usize),
}

/// ROBIN seeding.
///
/// Candidates are scanned in decreasing distance from a reference (first
/// centroid) or in decreasing `D(x)` (later centroids); the first candidate
/// whose LOF lies strictly inside `(1 - e, 1 + e)` is taken. If no candidate
/// is inside the band, the one with the smallest `|LOF - 1|` is taken (first
/// in scan order on ties). The deterministic flavour uses the origin as the
/// reference, the stochastic one a random data point.
pub fn init_robin(
    ds: &Dataset,
    k: usize,
    lof: &LofParams,
    rng: &mut SeededRng,
    mode: Mode,
) -> Result<CentroidSet> {
    let reference = match mode {
        Mode::Deterministic => Reference::Origin,
        Mode::Stochastic => Reference::Point(rng.index(ds.n())),
    };
    robin_with_reference(ds, k, lof, reference)
}

pub(crate) fn robin_with_reference(
    ds: &Dataset,
    k: usize,
    lof: &LofParams,
    reference: Reference,
) -> Result<CentroidSet> {
    lof.validate()?;
    check_k(ds, k)?;
    if k < 2 {
        return Err(Error::invalid("ROBIN requires K > 1"));
    }
    if ds.n() <= lof.mp {
        return Err(Error::invalid(format!(
            "ROBIN needs n > mp, got n = {}, mp = {}",
            ds.n(),
            lof.mp
        )));
    }
    let n = ds.n();
    let dm = pairwise_distances(ds);
    let scores = lof_from_matrix(&dm, lof.mp);

    let origin = vec![0.0; ds.p()];
    let ref_dist: Vec<f64> = match reference {
        Reference::Origin => ds.rows().map(|x| dist(x, &origin)).collect(),
        Reference::Point(r) => dm.row(r).to_vec(),
    };
    let order = decreasing(&ref_dist, (0..n).collect());
    let first = pick(&order, &scores, lof.e).expect("n > mp >= 1");

    let mut t = NearestTracker::new(n);
    t.select_with_row(dm.row(first), first);
    while t.selected.len() < k {
        let free: Vec<usize> = (0..n)
            .filter(|&i| !t.is_selected(i) && t.d[i] > 0.0)
            .collect();
        let order = decreasing(&t.d, free);
        let next = pick(&order, &scores, lof.e).ok_or_else(|| {
            Error::InvalidData("ROBIN ran out of points distinct from the chosen centroids".into())
        })?;
        t.select_with_row(dm.row(next), next);
    }
    CentroidSet::from_indices(ds, &t.selected)
}

/// Stable sort by decreasing key, ties keep ascending index order.
fn decreasing(key: &[f64], mut idx: Vec<usize>) -> Vec<usize> {
    idx.sort_by(|&a, &b| key[b].total_cmp(&key[a]));
    idx
}

fn pick(order: &[usize], scores: &[f64], e: f64) -> Option<usize> {
    let inside = order
        .iter()
        .copied()
        .find(|&i| scores[i] > 1.0 - e && scores[i] < 1.0 + e);
    inside.or_else(|| {
        let mut best: Option<(usize, f64)> = None;
        for &i in order {
            let gap = (scores[i] - 1.0).abs();
            if best.is_none_or(|(_, g)| gap < g) {
                best = Some((i, gap));
            }
        }
        best.map(|b| b.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::init::lof_scores;

    fn two_blobs() -> Vec<f64> {
        vec![0.0, 1.0, 2.0, 3.0, 4.0, 20.0, 21.0, 22.0, 23.0, 24.0]
    }

    #[test]
    fn one_centroid_per_blob() {
        let ds = Dataset::from_1d("b", &two_blobs()).unwrap();
        // With mp = 3 the blob scores are 1.444, 0.852, 0.9375, 0.852, 1.444
        // (mirrored in the second blob).
        let scores = lof_scores(&ds, 3).unwrap();
        assert!((scores[2] - 0.9375).abs() < 1e-12);
        assert!((scores[7] - 0.9375).abs() < 1e-12);

        // e = 0.1: scanning 24, 23, 22 from the origin accepts 22; scanning by
        // D(x) = 22, 21, 20, ... then accepts 2.
        let wide = LofParams { mp: 3, e: 0.1 };
        let cs = init_robin(&ds, 2, &wide, &mut SeededRng::new(0, 0), Mode::Deterministic).unwrap();
        assert_eq!(cs.as_flat(), &[22.0, 2.0]);

        // e = 0.05 leaves the band empty; the closest-to-one fallback
        // lands on the same points.
        let narrow = LofParams { mp: 3, e: 0.05 };
        let cs = init_robin(&ds, 2, &narrow, &mut SeededRng::new(0, 0), Mode::Deterministic).unwrap();
        assert_eq!(cs.as_flat(), &[22.0, 2.0]);
    }

    #[test]
    fn stochastic_is_reproducible() {
        let ds = Dataset::from_1d("b", &two_blobs()).unwrap();
        let lof = LofParams { mp: 3, e: 0.05 };
        let a = init_robin(&ds, 2, &lof, &mut SeededRng::new(11, 2), Mode::Stochastic).unwrap();
        let b = init_robin(&ds, 2, &lof, &mut SeededRng::new(11, 2), Mode::Stochastic).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn outlier_never_selected() {
        let mut pts = two_blobs();
        pts.push(500.0);
        let ds = Dataset::from_1d("b", &pts).unwrap();
        let lof = LofParams { mp: 3, e: 0.05 };
        assert!(lof_scores(&ds, 3).unwrap()[10] > 1.05);
        for k in 2..=4 {
            let cs = init_robin(&ds, k, &lof, &mut SeededRng::new(0, 0), Mode::Deterministic).unwrap();
            assert!(cs.as_flat().iter().all(|&v| v != 500.0));
            for s in 0..20 {
                let cs = init_robin(&ds, k, &lof, &mut SeededRng::new(s, 0), Mode::Stochastic).unwrap();
                assert!(cs.as_flat().iter().all(|&v| v != 500.0));
            }
        }
    }

    #[test]
    fn empty_band_falls_back_to_closest_score() {
        let order = [0, 1, 2];
        assert_eq!(pick(&order, &[1.5, 0.8, 1.2], 0.05), Some(1));
        assert_eq!(pick(&order, &[1.25, 0.75, 1.25], 0.05), Some(0));
        assert_eq!(pick(&order, &[1.2, 1.01, 1.0], 0.05), Some(1));
    }

    #[test]
    fn rejects_single_centroid() {
        let ds = Dataset::from_1d("b", &two_blobs()).unwrap();
        let lof = LofParams { mp: 3, e: 0.05 };
        assert!(init_robin(&ds, 1, &lof, &mut SeededRng::new(0, 0), Mode::Deterministic).is_err());
    }
}
