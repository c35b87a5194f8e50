//! Lloyd, Hartigan-Wong and K-Medians from the same starting centroids,
//! with the per-iteration objective trace of each.

use kmbench::cluster::{Clusterer, LoopConfig};
use kmbench::data::Dataset;
use kmbench::init::{InitMethod, LofParams};
use kmbench::rng::SeededRng;

fn main() -> kmbench::Result<()> {
    let mut rng = SeededRng::new(5, 0);
    let mut rows = Vec::new();
    for (cx, cy) in [(0.0, 0.0), (4.0, 0.5), (1.5, 4.0)] {
        for _ in 0..40 {
            rows.push(vec![cx + rng.normal(), cy + rng.normal()]);
        }
    }
    let ds = Dataset::from_rows("three-blobs", &rows)?;
    let init = InitMethod::Random.initialize(&ds, 3, &LofParams::default(), &mut rng)?;

    for c in Clusterer::ALL {
        let run = c.run(&ds, &init, &LoopConfig::default())?;
        println!("{c}: wcss {:.4}, iterations {}, converged {}", run.wcss, run.iterations, run.converged);
        if let Some(e) = run.e_l1 {
            println!("  L1 objective {e:.4}");
        }
        for (i, s) in run.trace.iter().enumerate() {
            println!("  step {i:>2}: {:.4} -> {:.4}", s.assigned, s.updated);
        }
    }
    Ok(())
}
