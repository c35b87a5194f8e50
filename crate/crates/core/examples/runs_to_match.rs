//! How many K-Means++ runs does it take, on average, to match one
//! DK-Means++ run on gap2?

use kmbench::bench::{run_experiment, runs_to_match, runs_to_match_table, ExperimentConfig, Method, Metric};
use kmbench::cluster::Clusterer;
use kmbench::init::InitMethod;

fn main() -> kmbench::Result<()> {
    let json = r#"{
        "models": ["gap2", "gap3"],
        "initializers": ["kmeanspp", "dkmeanspp"],
        "clusterers": ["lloyd"],
        "datasets_per_model": 10,
        "repetitions": 20,
        "seed": 9,
        "output_dir": "unused"
    }"#;
    let cfg = ExperimentConfig::from_json(json, "inline".as_ref())?;
    let table = run_experiment(&cfg)?;
    let stoch = Method::new(InitMethod::KMeansPP, Clusterer::Lloyd);
    let det = Method::new(InitMethod::DKMeansPP, Clusterer::Lloyd);
    for row in runs_to_match_table(&table, stoch, det, Metric::Purity) {
        println!("{}: {} of {} runs match -> {}", row.model, row.hits, row.total, row.result);
    }

    // A stream that never reaches the deterministic score.
    println!("always losing: {}", runs_to_match(&[0.5, 0.6, 0.7], 0.9));
    Ok(())
}
