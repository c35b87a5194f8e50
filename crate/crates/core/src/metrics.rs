//! Clustering quality indices: purity, silhouette and distortion.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::data::{Assignment, CentroidSet, Dataset};
use crate::distance::{dist, wcss};
use crate::error::{Error, Result};

/// Fraction of points that belong to the majority class of their cluster.
pub fn purity(asg: &Assignment, classes: &[usize]) -> Result<f64> {
    if classes.len() != asg.len() {
        return Err(Error::invalid(format!(
            "{} class labels for {} assigned points",
            classes.len(),
            asg.len()
        )));
    }
    if asg.is_empty() {
        return Err(Error::invalid("purity of an empty assignment"));
    }
    let mut counts: Vec<HashMap<usize, usize>> = vec![HashMap::new(); asg.k()];
    for (&c, &l) in asg.labels().iter().zip(classes) {
        *counts[c].entry(l).or_default() += 1;
    }
    let dominant: usize = counts
        .iter()
        .map(|m| m.values().copied().max().unwrap_or(0))
        .sum();
    Ok(dominant as f64 / asg.len() as f64)
}

/// Purity against the dataset's own labels.
pub fn dataset_purity(ds: &Dataset, asg: &Assignment) -> Result<f64> {
    let classes = ds
        .labels()
        .ok_or_else(|| Error::Unsupported(format!("dataset '{}' has no class labels", ds.name())))?;
    purity(asg, classes)
}

/// Mean silhouette width. Members of singleton clusters score 0 and empty
/// clusters are ignored.
pub fn silhouette(ds: &Dataset, asg: &Assignment) -> Result<f64> {
    let widths = silhouette_widths(ds, asg)?;
    Ok(widths.iter().sum::<f64>() / ds.n() as f64)
}

/// Per-point silhouette values `(b - a) / max(a, b)`.
pub fn silhouette_widths(ds: &Dataset, asg: &Assignment) -> Result<Vec<f64>> {
    if asg.len() != ds.n() {
        return Err(Error::invalid(format!(
            "assignment covers {} points, dataset has {}",
            asg.len(),
            ds.n()
        )));
    }
    let k = asg.k();
    let sizes = asg.sizes();
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Err(Error::Unsupported(
            "silhouette needs at least two non-empty clusters".into(),
        ));
    }
    let labels = asg.labels();
    let widths: Vec<f64> = (0..ds.n())
        .into_par_iter()
        .map(|i| {
            let own = labels[i];
            if sizes[own] == 1 {
                return 0.0;
            }
            let xi = ds.row(i);
            let mut sums = vec![0.0; k];
            for (j, xj) in ds.rows().enumerate() {
                if j != i {
                    sums[labels[j]] += dist(xi, xj);
                }
            }
            let a = sums[own] / (sizes[own] - 1) as f64;
            let b = (0..k)
                .filter(|&c| c != own && sizes[c] > 0)
                .map(|c| sums[c] / sizes[c] as f64)
                .fold(f64::INFINITY, f64::min);
            let m = a.max(b);
            if m > 0.0 {
                (b - a) / m
            } else {
                0.0
            }
        })
        .collect();
    Ok(widths)
}

/// WCSS divided by the number of points.
pub fn distortion(ds: &Dataset, asg: &Assignment, cs: &CentroidSet) -> Result<f64> {
    Ok(wcss(ds, asg, cs)? / ds.n() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    pub purity: Option<f64>,
    pub silhouette: Option<f64>,
    pub wcss: f64,
    pub distortion: f64,
}

impl MetricReport {
    /// Every index that applies: purity needs labels, silhouette needs two
    /// non-empty clusters.
    pub fn evaluate(ds: &Dataset, asg: &Assignment, cs: &CentroidSet) -> Result<Self> {
        let w = wcss(ds, asg, cs)?;
        let purity = match ds.labels() {
            Some(l) => Some(purity(asg, l)?),
            None => None,
        };
        let silhouette = match silhouette(ds, asg) {
            Ok(s) => Some(s),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            purity,
            silhouette,
            wcss: w,
            distortion: w / ds.n() as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use proptest::prelude::*;

    fn asg(l: &[usize], k: usize) -> Assignment {
        Assignment::new(l.to_vec(), k).unwrap()
    }

    /// Direct evaluation: a, b and s for every point from the raw definition.
    fn silhouette_oracle(pts: &[Vec<f64>], l: &[usize]) -> f64 {
        let n = pts.len();
        let d = |i: usize, j: usize| {
            pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        };
        let k = l.iter().max().unwrap() + 1;
        let mut total = 0.0;
        for i in 0..n {
            let same: Vec<usize> = (0..n).filter(|&j| j != i && l[j] == l[i]).collect();
            if same.is_empty() {
                continue;
            }
            let a = same.iter().map(|&j| d(i, j)).sum::<f64>() / same.len() as f64;
            let mut b = f64::INFINITY;
            for c in (0..k).filter(|&c| c != l[i]) {
                let other: Vec<usize> = (0..n).filter(|&j| l[j] == c).collect();
                if !other.is_empty() {
                    b = b.min(other.iter().map(|&j| d(i, j)).sum::<f64>() / other.len() as f64);
                }
            }
            total += (b - a) / a.max(b);
        }
        total / n as f64
    }

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&asg(&[0, 0, 1, 1], 2), &[5, 5, 9, 9]).unwrap(), 1.0);
        assert_eq!(purity(&asg(&[0, 0, 0, 0], 1), &[0, 0, 1, 1]).unwrap(), 0.5);
        let p = purity(&asg(&[1, 1, 2, 1, 2, 2], 3), &[0, 0, 0, 1, 1, 2]).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert!(purity(&asg(&[0, 0], 1), &[0]).is_err());
    }

    #[test]
    fn purity_without_labels_is_unsupported() {
        let ds = Dataset::from_1d("u", &[0.0, 1.0]).unwrap();
        assert!(matches!(
            dataset_purity(&ds, &asg(&[0, 1], 2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn silhouette_examples() {
        let ds = Dataset::from_1d("s", &[0.0, 1.0, 10.0, 11.0]).unwrap();
        let s = silhouette(&ds, &asg(&[0, 0, 1, 1], 2)).unwrap();
        // outer points: a = 1, b = 10.5; inner points: a = 1, b = 9.5
        let expect = (9.5 / 10.5 + 8.5 / 9.5) / 2.0;
        assert!((s - expect).abs() < 1e-12);
        assert!((s - 0.899749).abs() < 1e-6);

        let ds = Dataset::from_1d("s", &[0.0, 10.0, 11.0]).unwrap();
        let s = silhouette(&ds, &asg(&[0, 1, 1], 2)).unwrap();
        let s10 = (10.0 - 1.0) / 10.0;
        let s11 = (11.0 - 1.0) / 11.0;
        assert!((s - (s10 + s11) / 3.0).abs() < 1e-12);

        // 0 and 2 sit exactly between the members of the other cluster: a = b
        let ds = Dataset::from_1d("s", &[0.0, 2.0, -1.0, 3.0]).unwrap();
        let w = silhouette_widths(&ds, &asg(&[0, 0, 1, 1], 2)).unwrap();
        assert_eq!(w, vec![0.0, 0.0, -0.5, -0.5]);
        assert_eq!(silhouette(&ds, &asg(&[0, 0, 1, 1], 2)).unwrap(), -0.25);

        assert!(matches!(
            silhouette(&ds, &asg(&[0, 0, 0, 0], 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn distortion_examples() {
        let ds = Dataset::from_1d("d", &[0.0, 2.0, 10.0, 12.0]).unwrap();
        let cs = CentroidSet::from_flat(2, 1, vec![1.0, 11.0]).unwrap();
        assert_eq!(distortion(&ds, &asg(&[0, 0, 1, 1], 2), &cs).unwrap(), 1.0);
        let at = CentroidSet::from_flat(4, 1, vec![0.0, 2.0, 10.0, 12.0]).unwrap();
        assert_eq!(distortion(&ds, &asg(&[0, 1, 2, 3], 4), &at).unwrap(), 0.0);
    }

    #[test]
    fn distortion_scales_quadratically() {
        let mut rng = SeededRng::new(11, 0);
        let v: Vec<f64> = (0..40).map(|_| rng.unit()).collect();
        let c: Vec<f64> = (0..6).map(|_| rng.unit()).collect();
        let labels: Vec<usize> = (0..20).map(|_| rng.index(3)).collect();
        let a = asg(&labels, 3);
        let d1 = distortion(
            &Dataset::from_flat("d", 20, 2, v.clone()).unwrap(),
            &a,
            &CentroidSet::from_flat(3, 2, c.clone()).unwrap(),
        )
        .unwrap();
        let scale = |x: &[f64]| x.iter().map(|v| v * 2.0).collect::<Vec<_>>();
        let d2 = distortion(
            &Dataset::from_flat("d", 20, 2, scale(&v)).unwrap(),
            &a,
            &CentroidSet::from_flat(3, 2, scale(&c)).unwrap(),
        )
        .unwrap();
        assert!((d2 - 4.0 * d1).abs() < 1e-12 * d2);
    }

    #[test]
    fn report_skips_what_does_not_apply() {
        let ds = Dataset::from_1d("r", &[0.0, 1.0, 10.0, 11.0]).unwrap();
        let one = CentroidSet::from_flat(1, 1, vec![5.5]).unwrap();
        let r = MetricReport::evaluate(&ds, &asg(&[0; 4], 1), &one).unwrap();
        assert_eq!(r.purity, None);
        assert_eq!(r.silhouette, None);
        let ds = ds.with_labels(vec![0, 0, 1, 1]).unwrap();
        let two = CentroidSet::from_flat(2, 1, vec![0.5, 10.5]).unwrap();
        let r = MetricReport::evaluate(&ds, &asg(&[0, 0, 1, 1], 2), &two).unwrap();
        assert_eq!(r.purity, Some(1.0));
        assert_eq!(r.distortion, 0.25);
    }

    fn instance() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>)> {
        (2usize..5, 1usize..4).prop_flat_map(|(k, p)| {
            prop::collection::vec(
                (prop::collection::vec(-20.0f64..20.0, p), 0..k),
                k..30,
            )
            .prop_map(move |rows| {
                let mut pts = Vec::new();
                let mut l = Vec::new();
                for (i, (x, c)) in rows.into_iter().enumerate() {
                    pts.push(x);
                    // the first k points seed every cluster
                    l.push(if i < k { i } else { c });
                }
                (pts, l)
            })
        })
    }

    proptest! {
        #[test]
        fn silhouette_matches_oracle((pts, l) in instance()) {
            let k = l.iter().max().unwrap() + 1;
            let ds = Dataset::from_rows("p", &pts).unwrap();
            let s = silhouette(&ds, &asg(&l, k)).unwrap();
            prop_assert!((s - silhouette_oracle(&pts, &l)).abs() < 1e-9);
            prop_assert!((-1.0..=1.0).contains(&s));
        }

        #[test]
        fn silhouette_invariant_under_scale_and_shift((pts, l) in instance(), s in 0.1f64..10.0, t in -5.0f64..5.0) {
            let k = l.iter().max().unwrap() + 1;
            let moved: Vec<Vec<f64>> = pts.iter().map(|r| r.iter().map(|v| v * s + t).collect()).collect();
            let a = silhouette(&Dataset::from_rows("p", &pts).unwrap(), &asg(&l, k)).unwrap();
            let b = silhouette(&Dataset::from_rows("p", &moved).unwrap(), &asg(&l, k)).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }

        #[test]
        fn purity_bounds_and_permutation(l in prop::collection::vec(0usize..4, 1..40), c in prop::collection::vec(0usize..5, 40)) {
            let classes = &c[..l.len()];
            let p = purity(&asg(&l, 4), classes).unwrap();
            prop_assert!(p > 0.0 && p <= 1.0);
            let relabeled: Vec<usize> = l.iter().map(|&x| 3 - x).collect();
            let renamed: Vec<usize> = classes.iter().map(|&x| x * 7 + 1).collect();
            prop_assert_eq!(p, purity(&asg(&relabeled, 4), &renamed).unwrap());
        }
    }
}
