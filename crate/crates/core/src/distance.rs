//! Distance kernels and the sum-of-squares objectives.

use rayon::prelude::*;

use crate::data::{Assignment, CentroidSet, Dataset, DistanceMatrix};
use crate::error::{Error, Result};

/// Squared Euclidean distance between two equal-length slices.
pub fn sq_euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(sq_dist(a, b))
}

#[inline]
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

/// Index of the nearest centroid and the (non-squared) distance to it.
/// Ties go to the lowest index.
pub fn nearest_centroid(x: &[f64], centroids: &CentroidSet) -> Result<(usize, f64)> {
    if centroids.k() == 0 {
        return Err(Error::invalid("empty centroid set"));
    }
    if x.len() != centroids.p() {
        return Err(Error::invalid(format!(
            "point has {} features, centroids have {}",
            x.len(),
            centroids.p()
        )));
    }
    let (k, d2) = nearest_sq(x, centroids);
    Ok((k, d2.sqrt()))
}

/// Nearest centroid by squared distance, lowest index on ties.
#[inline]
pub(crate) fn nearest_sq(x: &[f64], centroids: &CentroidSet) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (k, c) in centroids.centers().enumerate() {
        let d = sq_dist(x, c);
        if d < best.1 {
            best = (k, d);
        }
    }
    best
}

/// Full Euclidean distance matrix. Rows are computed in parallel; every entry
/// is an independent fixed-order sum so the result does not depend on the
/// thread count.
pub fn pairwise_distances(ds: &Dataset) -> DistanceMatrix {
    let n = ds.n();
    let mut d = vec![0.0; n * n];
    d.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let xi = ds.row(i);
        for (j, slot) in row.iter_mut().enumerate() {
            if i != j {
                *slot = dist(xi, ds.row(j));
            }
        }
    });
    DistanceMatrix::from_raw(n, d)
}

fn check_shapes(ds: &Dataset, asg: &Assignment, cs: &CentroidSet) -> Result<()> {
    if asg.k() != cs.k() {
        return Err(Error::invalid(format!(
            "assignment has k = {}, centroids have k = {}",
            asg.k(),
            cs.k()
        )));
    }
    if asg.len() != ds.n() {
        return Err(Error::invalid(format!(
            "assignment covers {} points, dataset has {}",
            asg.len(),
            ds.n()
        )));
    }
    if cs.p() != ds.p() {
        return Err(Error::invalid("centroid dimensionality differs from dataset"));
    }
    Ok(())
}

/// Within-cluster sum of squares.
pub fn wcss(ds: &Dataset, asg: &Assignment, cs: &CentroidSet) -> Result<f64> {
    check_shapes(ds, asg, cs)?;
    Ok(wcss_unchecked(ds, asg.labels(), cs))
}

pub(crate) fn wcss_unchecked(ds: &Dataset, labels: &[usize], cs: &CentroidSet) -> f64 {
    ds.rows()
        .zip(labels)
        .map(|(x, &k)| sq_dist(x, cs.center(k)))
        .sum()
}

/// Total sum of squares about the global mean.
pub fn total_ss(ds: &Dataset) -> f64 {
    let mu = ds.mean();
    ds.rows().map(|x| sq_dist(x, &mu)).sum()
}

/// Between-cluster sum of squares, `TSS - WCSS` evaluated with the given
/// centroids. Only equals the classical between-group term when the
/// centroids are the cluster means.
pub fn bcss(ds: &Dataset, asg: &Assignment, cs: &CentroidSet) -> Result<f64> {
    Ok(total_ss(ds) - wcss(ds, asg, cs)?)
}
