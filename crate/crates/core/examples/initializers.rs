//! Runs every initializer on the same gap2 dataset and reports the WCSS of
//! the raw starting centroids next to the WCSS after Lloyd.

use kmbench::cluster::{Clusterer, LoopConfig};
use kmbench::data::Assignment;
use kmbench::distance::{nearest_centroid, wcss};
use kmbench::gen::{dataset_stream, generate, lookup};
use kmbench::init::{InitMethod, LofParams};
use kmbench::rng::SeededRng;

fn main() -> kmbench::Result<()> {
    let spec = lookup("gap2").expect("catalog model");
    let ds = generate(&spec, &mut SeededRng::new(1, dataset_stream(&spec.id, 0)))?.dataset;
    let lof = LofParams::default();

    println!("{:<10} {:>12} {:>12} {:>6}", "init", "start WCSS", "final WCSS", "iters");
    for m in InitMethod::ALL {
        let init = m.initialize(&ds, spec.k, &lof, &mut SeededRng::new(1, m.id()))?;
        let labels = ds
            .rows()
            .map(|x| nearest_centroid(x, &init).map(|(c, _)| c))
            .collect::<kmbench::Result<Vec<_>>>()?;
        let start = wcss(&ds, &Assignment::new(labels, spec.k)?, &init)?;
        let run = Clusterer::Lloyd.run(&ds, &init, &LoopConfig::default())?;
        println!("{:<10} {:>12.3} {:>12.3} {:>6}", m.name(), start, run.wcss, run.iterations);
    }
    Ok(())
}
