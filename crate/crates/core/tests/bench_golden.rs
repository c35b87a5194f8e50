//! Frozen output of a fixed-seed micro experiment. Set `KMBENCH_BLESS=1`
//! to rewrite the fixture after an intended change.

use std::path::Path;

use kmbench::bench::{run_experiment, write_runs_csv, ExperimentConfig};

const CONFIG: &str = r#"{
    "models": ["gap2", "wgap3", "mixed1"],
    "initializers": ["random", "kmeanspp", "maximin_d", "kaufman", "robin_d", "dkmeanspp"],
    "datasets_per_model": 2,
    "repetitions": 2,
    "seed": 20241016,
    "output_dir": "unused"
}"#;

fn strip_seconds(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').expect("seconds column").0)
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn micro_experiment_matches_frozen_runs() {
    let cfg = ExperimentConfig::from_json(CONFIG, Path::new("golden")).unwrap();
    for workers in [1, 4] {
        let cfg = ExperimentConfig {
            workers: Some(workers),
            ..cfg.clone()
        };
        let table = run_experiment(&cfg).unwrap();
        assert_eq!(table.errors().count(), 0);
        let mut buf = Vec::new();
        write_runs_csv(&table, &mut buf).unwrap();
        let got = strip_seconds(&String::from_utf8(buf).unwrap());

        let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/micro_runs.csv");
        if std::env::var_os("KMBENCH_BLESS").is_some() {
            std::fs::write(&fixture, &got).unwrap();
        }
        let want = std::fs::read_to_string(&fixture).expect("fixture present; run with KMBENCH_BLESS=1 to create");
        for (i, (g, w)) in got.lines().zip(want.lines()).enumerate() {
            assert_eq!(g, w, "line {} differs (workers = {workers})", i + 1);
        }
        assert_eq!(got.lines().count(), want.lines().count());
    }
}
