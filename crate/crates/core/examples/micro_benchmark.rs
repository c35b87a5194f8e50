//! A small end-to-end experiment: two models, four initializers, all three
//! clusterers. Reports land in `target/micro-benchmark` unless a directory
//! is given on the command line.

use std::path::PathBuf;

use kmbench::bench::{emit_report, run_experiment, summarize, ExperimentConfig, Format};

fn main() -> kmbench::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from("target/micro-benchmark"), PathBuf::from);
    let json = format!(
        r#"{{
            "models": ["gap2", "wgap3"],
            "initializers": ["random", "kmeanspp", "kaufman", "dkmeanspp"],
            "datasets_per_model": 8,
            "repetitions": 10,
            "seed": 2024,
            "output_dir": {}
        }}"#,
        serde_json::to_string(&out.display().to_string()).expect("json string")
    );
    let cfg = ExperimentConfig::from_json(&json, "inline".as_ref())?;
    let table = run_experiment(&cfg)?;
    let metric = table.metric.expect("labelled models");
    let s = summarize(&table, metric)?;

    println!("{} runs", table.rows.len());
    for r in &s.average {
        println!("{:<6} {:<10} {:<14} {:.4} ± {:.4}", r.model, r.init, r.clusterer, r.mean, r.std);
    }
    for c in s.comparisons.iter().filter(|c| c.a.clusterer == c.b.clusterer) {
        println!("{} vs {} ({:?}): {} vs {}", c.a, c.b, c.aggregation, c.wins_a, c.wins_b);
    }
    for f in emit_report(&table, &s, Format::Markdown, &out)? {
        println!("wrote {}", f.display());
    }
    Ok(())
}
