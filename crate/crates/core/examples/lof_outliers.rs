//! LOF scores on a blob with planted outliers, and the ROBIN seeds that
//! the scores lead to.

use kmbench::data::Dataset;
use kmbench::init::{init_robin, lof_scores, LofParams, Mode};
use kmbench::rng::SeededRng;

fn main() -> kmbench::Result<()> {
    let mut rng = SeededRng::new(11, 0);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (cx, cy) in [(0.0, 0.0), (8.0, 8.0)] {
        for _ in 0..50 {
            rows.push(vec![cx + 0.7 * rng.normal(), cy + 0.7 * rng.normal()]);
        }
    }
    rows.push(vec![20.0, -5.0]);
    rows.push(vec![-9.0, 12.0]);
    let ds = Dataset::from_rows("blobs+outliers", &rows)?;

    let scores = lof_scores(&ds, 10)?;
    let mut order: Vec<usize> = (0..ds.n()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    println!("highest LOF scores:");
    for &i in order.iter().take(5) {
        println!("  point {i:>3} at {:?}: {:.3}", ds.row(i), scores[i]);
    }

    let robin = init_robin(&ds, 2, &LofParams::default(), &mut rng, Mode::Deterministic)?;
    println!("ROBIN(D) seeds: {:?}", robin.to_rows());
    Ok(())
}
