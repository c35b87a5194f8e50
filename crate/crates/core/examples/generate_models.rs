//! Draws one dataset from every catalog model and prints its shape.
//!
//! Pass a directory to also write the sets as CSV:
//! `cargo run --example generate_models -- /tmp/sets`

use std::path::PathBuf;

use kmbench::gen::{dataset_stream, generate, model_catalog, write_csv};
use kmbench::rng::SeededRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    if let Some(dir) = &out {
        std::fs::create_dir_all(dir)?;
    }
    println!("{:<8} {:>6} {:>4} {:>4}  first point", "model", "n", "p", "K");
    for spec in model_catalog() {
        let mut rng = SeededRng::new(42, dataset_stream(&spec.id, 0));
        let g = generate(&spec, &mut rng)?;
        let ds = &g.dataset;
        let head: Vec<String> = ds.row(0).iter().take(3).map(|v| format!("{v:.3}")).collect();
        println!("{:<8} {:>6} {:>4} {:>4}  [{}{}]", spec.id, ds.n(), ds.p(), spec.k, head.join(", "),
            if ds.p() > 3 { ", ..." } else { "" });
        if let Some(dir) = &out {
            write_csv(ds, &dir.join(format!("{}-0.csv", spec.id)))?;
        }
    }
    Ok(())
}
