//! Synthetic benchmark models and CSV ingestion.
//!
//! A [`ModelSpec`] describes one data-set model: how many points each
//! cluster gets, how the clusters are drawn, and which separation rule a
//! draw must pass. [`generate`] samples one labelled dataset from a spec,
//! redrawing until the rule holds.

mod catalog;
mod csv_io;

use serde::Serialize;

use crate::data::Dataset;
use crate::distance::sq_dist;
use crate::error::{Error, Result};
use crate::rng::{stream_id, SeededRng};

pub use catalog::{lookup, model_catalog};
pub use csv_io::{load_csv, write_csv};

/// Consecutive rejected draws before [`generate`] gives up.
pub const MAX_ATTEMPTS: usize = 1000;

/// Points per cluster.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRule {
    /// Exact size of every cluster, in cluster order.
    Fixed(Vec<usize>),
    /// Each cluster independently takes one of these sizes.
    OneOf(Vec<usize>),
    /// Each cluster independently takes a size in `lo..=hi`.
    Range { lo: usize, hi: usize },
}

impl CountRule {
    fn draw(&self, k: usize, rng: &mut SeededRng) -> Vec<usize> {
        match self {
            CountRule::Fixed(v) => v.clone(),
            CountRule::OneOf(v) => (0..k).map(|_| v[rng.index(v.len())]).collect(),
            CountRule::Range { lo, hi } => (0..k).map(|_| lo + rng.index(hi - lo + 1)).collect(),
        }
    }

    /// Whether `size` is a legal size for cluster `c`.
    pub fn admits(&self, c: usize, size: usize) -> bool {
        match self {
            CountRule::Fixed(v) => v.get(c) == Some(&size),
            CountRule::OneOf(v) => v.contains(&size),
            CountRule::Range { lo, hi } => (*lo..=*hi).contains(&size),
        }
    }

    /// Total number of points when it does not depend on the draw.
    pub fn fixed_total(&self) -> Option<usize> {
        match self {
            CountRule::Fixed(v) => Some(v.iter().sum()),
            _ => None,
        }
    }
}

/// How the points of a single cluster are drawn.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// Axis-aligned Gaussian.
    Gaussian { mean: Vec<f64>, std: Vec<f64> },
    /// Every coordinate from a rate-1 exponential started at `lo` and
    /// truncated at `hi`, then shifted by `offset`.
    TruncatedExp { lo: f64, hi: f64, offset: Vec<f64> },
    /// Points along the diagonal: coordinate `j` is
    /// `sign_j * (t + noise) + shift_j` with `t` equally spaced on
    /// `[lo, hi]` and Gaussian noise of the given standard deviation.
    Line {
        lo: f64,
        hi: f64,
        noise: f64,
        sign: Vec<f64>,
        shift: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// One recipe per cluster.
    Components(Vec<Component>),
    /// Unit-variance Gaussian clusters around centers drawn from
    /// `N(0, center_var * I)`. Draws with two centers closer than
    /// `min_center_distance` are rejected.
    RandomCenters { center_var: f64, min_center_distance: f64 },
    /// High-dimensional clusters in the style of Brodinova et al.
    /// Informative coordinates of cluster `k` follow `N(mu_k, sigma_k^2)`
    /// with `mu_k` uniform on `[0, 10]` per coordinate and `sigma_k` uniform
    /// on `[0.5, 1.5]`; uninformative coordinates follow `N(0, 1)`. Draws
    /// with two points of different clusters closer than
    /// `min_point_distance` are rejected.
    Brodinova {
        informative: usize,
        uninformative: usize,
        min_point_distance: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSpec {
    pub id: String,
    pub p: usize,
    pub k: usize,
    pub counts: CountRule,
    pub layout: Layout,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::invalid(format!("model {}: {m}", self.id)));
        if self.k == 0 || self.p == 0 {
            return bad("K and p must be >= 1".into());
        }
        match &self.counts {
            CountRule::Fixed(v) if v.len() != self.k || v.contains(&0) => {
                return bad("fixed counts need K positive entries".into())
            }
            CountRule::OneOf(v) if v.is_empty() || v.contains(&0) => {
                return bad("count choices must be positive".into())
            }
            CountRule::Range { lo, hi } if *lo == 0 || lo > hi => {
                return bad("count range must satisfy 1 <= lo <= hi".into())
            }
            _ => {}
        }
        match &self.layout {
            Layout::Components(c) => {
                if c.len() != self.k {
                    return bad(format!("{} components for K = {}", c.len(), self.k));
                }
                for comp in c {
                    let dims = match comp {
                        Component::Gaussian { mean, std } => [mean.len(), std.len()],
                        Component::TruncatedExp { offset, .. } => [offset.len(); 2],
                        Component::Line { sign, shift, .. } => [sign.len(), shift.len()],
                    };
                    if dims != [self.p; 2] {
                        return bad("component dimensionality differs from p".into());
                    }
                }
            }
            Layout::RandomCenters { center_var, .. } if *center_var <= 0.0 => {
                return bad("center variance must be positive".into())
            }
            Layout::Brodinova {
                informative,
                uninformative,
                ..
            } if informative + uninformative != self.p => {
                return bad("informative + uninformative must equal p".into())
            }
            _ => {}
        }
        Ok(())
    }
}

/// A labelled dataset drawn from a model.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedSet {
    pub dataset: Dataset,
    pub model: String,
    pub seed: u64,
    pub stream: u64,
    /// Cluster centers drawn for this set; only for random-center layouts.
    pub centers: Option<Vec<Vec<f64>>>,
}

/// Stream id for dataset `index` of `model`, shared by the CLI and the
/// benchmark so both produce the same sets from the same master seed.
pub fn dataset_stream(model: &str, index: usize) -> u64 {
    // FNV-1a over the id keeps the stream independent of catalog order
    let key = model
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    stream_id(&[0x0067_656e, key, index as u64])
}

/// Draws one dataset, retrying rejected draws up to [`MAX_ATTEMPTS`] times.
pub fn generate(spec: &ModelSpec, rng: &mut SeededRng) -> Result<GeneratedSet> {
    spec.validate()?;
    let (seed, stream) = (rng.seed(), rng.stream());
    for _ in 0..MAX_ATTEMPTS {
        if let Some(Draw {
            points,
            labels,
            centers,
        }) = attempt(spec, rng)
        {
            let n = labels.len();
            let name = format!("{}-s{seed}-t{stream:x}", spec.id);
            let dataset = Dataset::from_flat(name, n, spec.p, points)?.with_labels(labels)?;
            return Ok(GeneratedSet {
                dataset,
                model: spec.id.clone(),
                seed,
                stream,
                centers,
            });
        }
    }
    Err(Error::GenerationFailure {
        model: format!("{spec:?}"),
        attempts: MAX_ATTEMPTS,
    })
}

struct Draw {
    points: Vec<f64>,
    labels: Vec<usize>,
    centers: Option<Vec<Vec<f64>>>,
}

fn attempt(spec: &ModelSpec, rng: &mut SeededRng) -> Option<Draw> {
    let sizes = spec.counts.draw(spec.k, rng);
    let n: usize = sizes.iter().sum();
    let p = spec.p;
    let mut points = Vec::with_capacity(n * p);
    let mut labels = Vec::with_capacity(n);
    let mut drawn = None;
    match &spec.layout {
        Layout::Components(comps) => {
            for (c, (comp, &m)) in comps.iter().zip(&sizes).enumerate() {
                draw_component(comp, m, rng, &mut points);
                labels.extend(std::iter::repeat_n(c, m));
            }
        }
        Layout::RandomCenters {
            center_var,
            min_center_distance,
        } => {
            let sd = center_var.sqrt();
            let centers: Vec<Vec<f64>> = (0..spec.k)
                .map(|_| (0..p).map(|_| sd * rng.normal()).collect())
                .collect();
            let min_sq = min_center_distance * min_center_distance;
            for a in 0..spec.k {
                for b in a + 1..spec.k {
                    if sq_dist(&centers[a], &centers[b]) < min_sq {
                        return None;
                    }
                }
            }
            for (c, (mean, &m)) in centers.iter().zip(&sizes).enumerate() {
                for _ in 0..m {
                    points.extend(mean.iter().map(|mu| mu + rng.normal()));
                }
                labels.extend(std::iter::repeat_n(c, m));
            }
            drawn = Some(centers);
        }
        Layout::Brodinova {
            informative,
            min_point_distance,
            ..
        } => {
            for (c, &m) in sizes.iter().enumerate() {
                let mu: Vec<f64> = (0..*informative).map(|_| 10.0 * rng.unit()).collect();
                let sigma = 0.5 + rng.unit();
                for _ in 0..m {
                    points.extend(mu.iter().map(|v| v + sigma * rng.normal()));
                    points.extend((*informative..p).map(|_| rng.normal()));
                }
                labels.extend(std::iter::repeat_n(c, m));
            }
            if !separated(&points, &labels, p, *min_point_distance) {
                return None;
            }
        }
    }
    Some(Draw {
        points,
        labels,
        centers: drawn,
    })
}

fn draw_component(comp: &Component, m: usize, rng: &mut SeededRng, out: &mut Vec<f64>) {
    match comp {
        Component::Gaussian { mean, std } => {
            for _ in 0..m {
                out.extend(mean.iter().zip(std).map(|(mu, s)| mu + s * rng.normal()));
            }
        }
        Component::TruncatedExp { lo, hi, offset } => {
            let mass = 1.0 - (-(hi - lo)).exp();
            for _ in 0..m {
                for o in offset {
                    let u = rng.unit();
                    out.push(lo - (1.0 - u * mass).ln() + o);
                }
            }
        }
        Component::Line {
            lo,
            hi,
            noise,
            sign,
            shift,
        } => {
            for i in 0..m {
                let t = if m == 1 {
                    (lo + hi) / 2.0
                } else {
                    lo + (hi - lo) * i as f64 / (m - 1) as f64
                };
                for (s, sh) in sign.iter().zip(shift) {
                    out.push(s * (t + noise * rng.normal()) + sh);
                }
            }
        }
    }
}

/// True when every pair of points from different clusters is at least `min`
/// apart.
fn separated(points: &[f64], labels: &[usize], p: usize, min: f64) -> bool {
    let min_sq = min * min;
    let n = labels.len();
    (0..n).all(|i| {
        let xi = &points[i * p..(i + 1) * p];
        (i + 1..n)
            .filter(|&j| labels[j] != labels[i])
            .all(|j| sq_dist(xi, &points[j * p..(j + 1) * p]) >= min_sq)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(ds: &Dataset, k: usize) -> Vec<usize> {
        let mut s = vec![0; k];
        for &l in ds.labels().unwrap() {
            s[l] += 1;
        }
        s
    }

    #[test]
    fn gap2_shape() {
        let spec = lookup("gap2").unwrap();
        let g = generate(&spec, &mut SeededRng::new(1, 0)).unwrap();
        assert_eq!(g.dataset.n(), 100);
        assert_eq!(g.dataset.p(), 2);
        assert_eq!(sizes(&g.dataset, 3), vec![25, 25, 50]);
        assert_eq!(g.model, "gap2");
    }

    #[test]
    fn every_model_honours_its_counts() {
        for spec in model_catalog() {
            if spec.p > 100 {
                continue;
            }
            let g = generate(&spec, &mut SeededRng::new(3, dataset_stream(&spec.id, 0))).unwrap();
            let ds = &g.dataset;
            assert_eq!(ds.p(), spec.p, "{}", spec.id);
            assert_eq!(ds.n_classes(), Some(spec.k), "{}", spec.id);
            for (c, s) in sizes(ds, spec.k).into_iter().enumerate() {
                assert!(spec.counts.admits(c, s), "{} cluster {c} has {s}", spec.id);
            }
            if let Some(n) = spec.counts.fixed_total() {
                assert_eq!(ds.n(), n, "{}", spec.id);
            }
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let spec = lookup("mixed2").unwrap();
        let a = generate(&spec, &mut SeededRng::new(9, 4)).unwrap();
        let b = generate(&spec, &mut SeededRng::new(9, 4)).unwrap();
        assert_eq!(a, b);
        let c = generate(&spec, &mut SeededRng::new(9, 5)).unwrap();
        assert_ne!(a.dataset.as_flat(), c.dataset.as_flat());
    }

    #[test]
    fn gap2_cluster_means_near_nominal() {
        let spec = lookup("gap2").unwrap();
        let means = [[0.0, 0.0], [0.0, 5.0], [5.0, -3.0]];
        let sizes = [25.0f64, 25.0, 50.0];
        for seed in 0..100 {
            let g = generate(&spec, &mut SeededRng::new(seed, 0)).unwrap();
            let ds = &g.dataset;
            for (c, mu) in means.iter().enumerate() {
                let rows: Vec<&[f64]> = ds
                    .rows()
                    .zip(ds.labels().unwrap())
                    .filter(|(_, &l)| l == c)
                    .map(|(r, _)| r)
                    .collect();
                for j in 0..2 {
                    let m = rows.iter().map(|r| r[j]).sum::<f64>() / rows.len() as f64;
                    assert!((m - mu[j]).abs() < 4.0 / sizes[c].sqrt(), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn random_centers_respect_separation() {
        for id in ["gap3", "gap4", "wgap5"] {
            let spec = lookup(id).unwrap();
            for seed in 0..50 {
                let g = generate(&spec, &mut SeededRng::new(seed, 1)).unwrap();
                let c = g.centers.unwrap();
                assert_eq!(c.len(), spec.k);
                for a in 0..c.len() {
                    for b in a + 1..c.len() {
                        assert!(sq_dist(&c[a], &c[b]) >= 1.0, "{id} seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn brodinova_separation_holds() {
        for id in ["brod1", "brod4", "brod6"] {
            let spec = lookup(id).unwrap();
            let g = generate(&spec, &mut SeededRng::new(2, 2)).unwrap();
            let ds = &g.dataset;
            let l = ds.labels().unwrap();
            for i in 0..ds.n() {
                for j in i + 1..ds.n() {
                    if l[i] != l[j] {
                        assert!(sq_dist(ds.row(i), ds.row(j)) >= 9.0);
                    }
                }
            }
        }
    }

    #[test]
    fn impossible_separation_fails_after_max_attempts() {
        let spec = ModelSpec {
            id: "tight".into(),
            p: 1,
            k: 2,
            counts: CountRule::Fixed(vec![5, 5]),
            layout: Layout::Brodinova {
                informative: 1,
                uninformative: 0,
                min_point_distance: 1e6,
            },
        };
        let err = generate(&spec, &mut SeededRng::new(0, 0)).unwrap_err();
        assert!(matches!(err, Error::GenerationFailure { attempts: MAX_ATTEMPTS, .. }));
        assert!(err.to_string().contains("tight"));
    }

    #[test]
    fn truncated_exponential_stays_in_interval() {
        let comp = Component::TruncatedExp {
            lo: 2.0,
            hi: 3.0,
            offset: vec![0.0; 3],
        };
        let mut out = Vec::new();
        draw_component(&comp, 500, &mut SeededRng::new(0, 0), &mut out);
        assert!(out.iter().all(|v| (2.0..=3.0).contains(v)));
        // rate 1 on [2, 3]: mean is 2 + 1 - 1/(e - 1)
        let mean = out.iter().sum::<f64>() / out.len() as f64;
        let expect = 3.0 - 1.0 / (std::f64::consts::E - 1.0);
        assert!((mean - expect).abs() < 0.03);
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = lookup("gap2").unwrap();
        spec.counts = CountRule::Fixed(vec![1, 2]);
        assert!(spec.validate().is_err());
        spec.counts = CountRule::Range { lo: 5, hi: 2 };
        assert!(spec.validate().is_err());
    }
}
