use kmbench::cluster::{Clusterer, LoopConfig};
use kmbench::data::{CentroidSet, Dataset};
use kmbench::init::{InitMethod, LofParams};
use kmbench::rng::SeededRng;
use proptest::prelude::*;

fn sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// WCSS of a labelling about its own cluster means.
fn wcss_of(ds: &Dataset, labels: &[usize], k: usize) -> f64 {
    let p = ds.p();
    let mut sums = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (x, &l) in ds.rows().zip(labels) {
        counts[l] += 1;
        sums[l].iter_mut().zip(x).for_each(|(s, v)| *s += v);
    }
    ds.rows()
        .zip(labels)
        .map(|(x, &l)| {
            let mean: Vec<f64> = sums[l].iter().map(|s| s / counts[l] as f64).collect();
            sq(x, &mean)
        })
        .sum()
}

fn nearest(x: &[f64], cs: &CentroidSet) -> usize {
    let mut best = (0, f64::INFINITY);
    for (c, center) in cs.centers().enumerate() {
        let d = sq(x, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best.0
}

fn instance() -> impl Strategy<Value = (Dataset, usize, u64)> {
    (5usize..=50, 1usize..=3, 1usize..=6, any::<u64>()).prop_map(|(n, p, k, seed)| {
        let mut rng = SeededRng::new(seed, 0);
        let blobs = 1 + rng.index(4);
        let centers: Vec<Vec<f64>> = (0..blobs).map(|_| (0..p).map(|_| 8.0 * rng.unit()).collect()).collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| centers[rng.index(blobs)].iter().map(|c| c + rng.normal()).collect())
            .collect();
        (Dataset::from_rows("prop", &rows).unwrap(), k.min(n), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hartigan_wong_has_no_improving_single_move((ds, k, seed) in instance()) {
        let init = InitMethod::KMeansPP.initialize(&ds, k, &LofParams::default(), &mut SeededRng::new(seed, 1)).unwrap();
        let run = Clusterer::HartiganWong.run(&ds, &init, &LoopConfig::default()).unwrap();
        prop_assume!(run.converged);
        let labels = run.assignment.labels().to_vec();
        let current = wcss_of(&ds, &labels, k);
        let sizes = run.assignment.sizes();
        for i in 0..ds.n() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            for target in (0..k).filter(|&c| c != labels[i]) {
                let mut moved = labels.clone();
                moved[i] = target;
                let after = wcss_of(&ds, &moved, k);
                prop_assert!(
                    after >= current - 1e-9 * current.max(1.0),
                    "moving point {i} to {target} lowers WCSS {current} -> {after}"
                );
            }
        }
        let start: Vec<usize> = ds.rows().map(|x| nearest(x, &init)).collect();
        let start_wcss: f64 = ds.rows().zip(&start).map(|(x, &l)| sq(x, init.center(l))).sum();
        prop_assert!(run.wcss <= start_wcss * (1.0 + 1e-12));
    }

    #[test]
    fn lloyd_and_kmedians_end_on_a_nearest_centroid_assignment((ds, k, seed) in instance()) {
        let init = InitMethod::Random.initialize(&ds, k, &LofParams::default(), &mut SeededRng::new(seed, 2)).unwrap();
        for c in [Clusterer::Lloyd, Clusterer::KMedians] {
            let run = c.run(&ds, &init, &LoopConfig::default()).unwrap();
            prop_assert!(run.converged);
            for (i, x) in ds.rows().enumerate() {
                prop_assert_eq!(run.assignment.get(i), nearest(x, &run.centroids), "{} point {}", c, i);
            }
        }
    }

    #[test]
    fn lloyd_wcss_matches_recomputation((ds, k, seed) in instance()) {
        let init = InitMethod::Random.initialize(&ds, k, &LofParams::default(), &mut SeededRng::new(seed, 3)).unwrap();
        let run = Clusterer::Lloyd.run(&ds, &init, &LoopConfig::default()).unwrap();
        let direct: f64 = ds.rows().zip(run.assignment.labels()).map(|(x, &l)| sq(x, run.centroids.center(l))).sum();
        prop_assert!((run.wcss - direct).abs() <= 1e-9 * direct.max(1.0));
    }
}
