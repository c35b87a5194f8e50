//! Minimum-spanning-tree radius heuristic.
//!
//! `epsilon = 3 * IQR(L) + q75(L)` where `L` are the edge weights of the
//! Euclidean MST. Quantiles use linear interpolation between order statistics
//! (`h = (m - 1) q`, the "type 7" rule).

use crate::data::{Dataset, DistanceMatrix};
use crate::distance::pairwise_distances;
use crate::error::{Error, Result};

pub fn mst_epsilon(ds: &Dataset) -> Result<f64> {
    if ds.n() < 2 {
        return Err(Error::invalid("MST radius needs at least two points"));
    }
    Ok(epsilon_from_matrix(&pairwise_distances(ds)))
}

pub(crate) fn epsilon_from_matrix(dm: &DistanceMatrix) -> f64 {
    let mut w = prim(dm);
    w.sort_by(f64::total_cmp);
    let q25 = percentile(&w, 0.25);
    let q75 = percentile(&w, 0.75);
    3.0 * (q75 - q25) + q75
}

/// Edge weights of the Euclidean MST, in the order Prim's algorithm adds them.
pub fn mst_edge_weights(ds: &Dataset) -> Vec<f64> {
    prim(&pairwise_distances(ds))
}

/// Dense Prim, O(n^2).
fn prim(dm: &DistanceMatrix) -> Vec<f64> {
    let n = dm.n();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let row = dm.row(cur);
        let mut next = usize::MAX;
        let mut next_w = f64::INFINITY;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            if row[v] < best[v] {
                best[v] = row[v];
            }
            if best[v] < next_w || next == usize::MAX {
                next_w = best[v];
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(next_w);
        cur = next;
    }
    edges
}

/// Quantile `q` of an ascending slice with linear interpolation.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty slice");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn evenly_spaced_line() {
        let ds = Dataset::from_1d("g", &(0..10).map(f64::from).collect::<Vec<_>>()).unwrap();
        assert!(mst_edge_weights(&ds).iter().all(|&w| w == 1.0));
        assert_eq!(mst_epsilon(&ds).unwrap(), 1.0);
    }

    #[test]
    fn two_points() {
        let ds = Dataset::from_rows("p", &[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(mst_epsilon(&ds).unwrap(), 5.0);
    }

    #[test]
    fn uneven_edges() {
        // L = {1, 1, 8}: q25 = 1, q75 = 1 + 0.5 * 7 = 4.5, IQR = 3.5
        let ds = Dataset::from_1d("u", &[0.0, 1.0, 2.0, 10.0]).unwrap();
        let mut w = mst_edge_weights(&ds);
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![1.0, 1.0, 8.0]);
        assert_eq!(mst_epsilon(&ds).unwrap(), 3.0 * 3.5 + 4.5);
    }

    #[test]
    fn single_point_rejected() {
        assert!(mst_epsilon(&Dataset::from_1d("s", &[1.0]).unwrap()).is_err());
    }

    #[test]
    fn percentile_rule() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert_eq!(percentile(&v, 0.25), 2.0);
        assert_eq!(percentile(&v, 1.0), 5.0);
        assert_eq!(percentile(&[1.0, 2.0], 0.75), 1.75);
        assert_eq!(percentile(&[7.0], 0.3), 7.0);
    }

    /// Brute-force MST total weight via Kruskal with union-find.
    fn kruskal_total(pts: &[Vec<f64>]) -> f64 {
        let n = pts.len();
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d: f64 = pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                e.push((d, i, j));
            }
        }
        e.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut total = 0.0;
        for (d, i, j) in e {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                total += d;
            }
        }
        total
    }

    proptest! {
        #[test]
        fn prim_matches_kruskal(pts in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 2), 2..25)) {
            let ds = Dataset::from_rows("r", &pts).unwrap();
            let total: f64 = mst_edge_weights(&ds).iter().sum();
            prop_assert!((total - kruskal_total(&pts)).abs() < 1e-9);
        }

        #[test]
        fn epsilon_invariant_under_reorder_and_rotation(
            pts in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 2), 3..25),
            angle in 0.0f64..std::f64::consts::TAU,
            shift in 1usize..24,
        ) {
            let base = mst_epsilon(&Dataset::from_rows("r", &pts).unwrap()).unwrap();
            let mut shuffled = pts.clone();
            shuffled.reverse();
            let s = shift % shuffled.len();
            shuffled.rotate_left(s);
            let reordered = mst_epsilon(&Dataset::from_rows("r", &shuffled).unwrap()).unwrap();
            let (c, sn) = (angle.cos(), angle.sin());
            let rotated: Vec<Vec<f64>> = pts.iter().map(|v| vec![c * v[0] - sn * v[1], sn * v[0] + c * v[1]]).collect();
            let rot = mst_epsilon(&Dataset::from_rows("r", &rotated).unwrap()).unwrap();
            prop_assert!((base - reordered).abs() < 1e-9);
            prop_assert!((base - rot).abs() < 1e-9);
        }
    }
}
