//! Dense data containers shared by every module.
//!
//! All matrices are stored row-major in a flat `Vec<f64>`.

use crate::error::{Error, Result};

/// An `n x p` point matrix with optional ground-truth classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    n: usize,
    p: usize,
    points: Vec<f64>,
    labels: Option<Vec<usize>>,
}

impl Dataset {
    pub fn from_flat(name: impl Into<String>, n: usize, p: usize, points: Vec<f64>) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::invalid(format!("dataset must be non-empty, got {n}x{p}")));
        }
        if points.len() != n * p {
            return Err(Error::invalid(format!(
                "expected {} values for a {n}x{p} dataset, got {}",
                n * p,
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite value at row {}, column {}",
                i / p,
                i % p
            )));
        }
        Ok(Self {
            name: name.into(),
            n,
            p,
            points,
            labels: None,
        })
    }

    pub fn from_rows(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != p) {
            return Err(Error::invalid(format!(
                "row {i} has {} values, expected {p}",
                r.len()
            )));
        }
        let flat = rows.iter().flatten().copied().collect();
        Self::from_flat(name, rows.len(), p, flat)
    }

    /// One-dimensional dataset, mostly for tests and examples.
    pub fn from_1d(name: impl Into<String>, values: &[f64]) -> Result<Self> {
        Self::from_flat(name, values.len(), 1, values.to_vec())
    }

    /// Attaches class labels. Arbitrary ids are compacted to `0..C` in
    /// ascending order of the original id, so every class has a member.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid(format!(
                "{} labels for {} points",
                labels.len(),
                self.n
            )));
        }
        let mut ids = labels.clone();
        ids.sort_unstable();
        ids.dedup();
        let dense = labels
            .iter()
            .map(|l| ids.binary_search(l).expect("id present"))
            .collect();
        self.labels = Some(dense);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.p..(i + 1) * self.p]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.p)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn n_classes(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|l| l.iter().max().map_or(0, |m| m + 1))
    }

    /// Feature-wise mean of all points.
    pub fn mean(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.p];
        for r in self.rows() {
            for (acc, v) in m.iter_mut().zip(r) {
                *acc += v;
            }
        }
        m.iter_mut().for_each(|v| *v /= self.n as f64);
        m
    }
}

/// `K` centroid locations in the dataset's feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    k: usize,
    p: usize,
    centers: Vec<f64>,
}

impl CentroidSet {
    pub fn from_flat(k: usize, p: usize, centers: Vec<f64>) -> Result<Self> {
        if k == 0 || p == 0 || centers.len() != k * p {
            return Err(Error::invalid(format!(
                "centroid set {k}x{p} with {} values",
                centers.len()
            )));
        }
        if centers.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite centroid coordinate".into()));
        }
        Ok(Self { k, p, centers })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::invalid("ragged centroid rows"));
        }
        Self::from_flat(rows.len(), p, rows.iter().flatten().copied().collect())
    }

    /// Centroids copied from the given dataset rows, in order.
    pub fn from_indices(ds: &Dataset, indices: &[usize]) -> Result<Self> {
        let mut centers = Vec::with_capacity(indices.len() * ds.p());
        for &i in indices {
            if i >= ds.n() {
                return Err(Error::invalid(format!("row index {i} out of range")));
            }
            centers.extend_from_slice(ds.row(i));
        }
        Self::from_flat(indices.len(), ds.p(), centers)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn center(&self, k: usize) -> &[f64] {
        &self.centers[k * self.p..(k + 1) * self.p]
    }

    pub(crate) fn center_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.centers[k * self.p..(k + 1) * self.p]
    }

    pub fn centers(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.centers.chunks_exact(self.p)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.centers
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.centers().map(<[f64]>::to_vec).collect()
    }

    /// Fails when two centers coincide exactly.
    pub fn ensure_distinct(&self) -> Result<()> {
        for a in 0..self.k {
            for b in a + 1..self.k {
                if self.center(a) == self.center(b) {
                    return Err(Error::InvalidData(format!(
                        "centroids {a} and {b} are identical"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Cluster index per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    k: usize,
    labels: Vec<usize>,
}

impl Assignment {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("assignment needs k >= 1"));
        }
        if let Some(bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::invalid(format!("cluster index {bad} >= k = {k}")));
        }
        Ok(Self { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.k];
        for &l in &self.labels {
            s[l] += 1;
        }
        s
    }
}

/// Symmetric `n x n` Euclidean distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub(crate) fn from_raw(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        Self { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }
}
