//! Purity, silhouette and distortion of a K-Means++ / Hartigan-Wong run on
//! a labelled wgap1 dataset, for a range of K.

use kmbench::cluster::{Clusterer, LoopConfig};
use kmbench::gen::{dataset_stream, generate, lookup};
use kmbench::init::{InitMethod, LofParams};
use kmbench::metrics::MetricReport;
use kmbench::rng::SeededRng;

fn main() -> kmbench::Result<()> {
    let spec = lookup("wgap1").expect("catalog model");
    let ds = generate(&spec, &mut SeededRng::new(3, dataset_stream(&spec.id, 0)))?.dataset;
    println!("{} points, true K = {}", ds.n(), spec.k);
    println!("{:>3} {:>8} {:>10} {:>10}", "K", "purity", "silhouette", "distortion");
    for k in 2..=9 {
        let init = InitMethod::KMeansPP.initialize(&ds, k, &LofParams::default(), &mut SeededRng::new(3, k as u64))?;
        let run = Clusterer::HartiganWong.run(&ds, &init, &LoopConfig::default())?;
        let m = MetricReport::evaluate(&ds, &run.assignment, &run.centroids)?;
        println!(
            "{k:>3} {:>8.4} {:>10.4} {:>10.4}",
            m.purity.unwrap_or(f64::NAN),
            m.silhouette.unwrap_or(f64::NAN),
            m.distortion
        );
    }
    Ok(())
}
