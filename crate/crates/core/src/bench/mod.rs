//! Experiment orchestration.
//!
//! [`run_experiment`] expands an [`ExperimentConfig`] into one task per
//! (model, dataset, initializer, repetition), runs the tasks on a worker
//! pool, and returns a [`ReportTable`] sorted by task coordinates. Every
//! clusterer in a task starts from the same initial centroids.

mod report;
mod summary;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster::{Clusterer, LoopConfig};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::gen::{dataset_stream, generate, load_csv, lookup, model_catalog};
use crate::init::{InitMethod, LofParams};
use crate::metrics::MetricReport;
use crate::rng::{stream_id, SeededRng};

pub use report::{emit_report, write_errors_csv, write_runs_csv, Format, RUNS_HEADER};
pub use summary::{
    best_of_runs, compare_methods, runs_to_match, runs_to_match_table, summarize, summarize_average,
    summarize_best, summarize_timing, Aggregation, BestRun, Comparison, Method, ModelComparison,
    RunsToMatch, RunsToMatchRow, Side, Summaries, SummaryRow, WIN_P,
};

/// Which index drives comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Purity,
    Silhouette,
}

impl Metric {
    pub fn of(self, m: &RunMetrics) -> Option<f64> {
        match self {
            Metric::Purity => m.purity,
            Metric::Silhouette => m.silhouette,
        }
    }
}

fn default_initializers() -> Vec<InitMethod> {
    InitMethod::ALL.to_vec()
}

fn default_clusterers() -> Vec<Clusterer> {
    Clusterer::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Catalog model ids.
    #[serde(default)]
    pub models: Vec<String>,
    /// Standalone CSV datasets; each one is its own model with one dataset.
    #[serde(default)]
    pub files: Vec<PathBuf>,
    /// 0-based label column of the CSV files.
    #[serde(default)]
    pub label_col: Option<usize>,
    /// K for CSV files. Defaults to the number of label classes.
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default = "default_initializers")]
    pub initializers: Vec<InitMethod>,
    #[serde(default = "default_clusterers")]
    pub clusterers: Vec<Clusterer>,
    /// Datasets drawn per model (M).
    pub datasets_per_model: usize,
    /// Repetitions per stochastic initializer (R).
    pub repetitions: usize,
    pub seed: u64,
    #[serde(default)]
    pub lof: LofParams,
    #[serde(default, rename = "loop")]
    pub loop_config: LoopConfig,
    /// Metric for comparisons; purity when every dataset is labelled,
    /// silhouette otherwise.
    #[serde(default)]
    pub metric: Option<Metric>,
    #[serde(default)]
    pub workers: Option<usize>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Reads a JSON config. Errors name the offending field path.
    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
            path: format!("{}: {}", origin.display(), e.path()),
            message: e.inner().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, path)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |path: &str, message: String| {
            Err(Error::Config {
                path: path.into(),
                message,
            })
        };
        if self.models.is_empty() && self.files.is_empty() {
            return cfg_err("models", "no models or files given".into());
        }
        for (i, m) in self.models.iter().enumerate() {
            if lookup(m).is_none() {
                let known: Vec<String> = model_catalog().into_iter().map(|s| s.id).collect();
                return cfg_err(
                    &format!("models[{i}]"),
                    format!("unknown model '{m}'; known: {}", known.join(", ")),
                );
            }
        }
        if self.initializers.is_empty() {
            return cfg_err("initializers", "empty list".into());
        }
        if self.clusterers.is_empty() {
            return cfg_err("clusterers", "empty list".into());
        }
        if self.datasets_per_model < 1 {
            return cfg_err("datasets_per_model", "must be >= 1".into());
        }
        if self.repetitions < 1 {
            return cfg_err("repetitions", "must be >= 1".into());
        }
        if self.workers == Some(0) {
            return cfg_err("workers", "must be >= 1".into());
        }
        if self.k == Some(0) {
            return cfg_err("k", "must be >= 1".into());
        }
        if let Err(e) = self.lof.validate() {
            return cfg_err("lof", e.to_string());
        }
        if let Err(e) = self.loop_config.validate() {
            return cfg_err("loop", e.to_string());
        }
        Ok(())
    }

    /// Repetitions actually run for an initializer.
    pub fn effective_reps(&self, init: InitMethod) -> usize {
        if init.is_deterministic() {
            1
        } else {
            self.repetitions
        }
    }
}

/// Index values of one run; `None` where the index does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunMetrics {
    pub purity: Option<f64>,
    pub silhouette: Option<f64>,
    pub wcss: f64,
    pub e_l1: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Initialization plus clustering wall time.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub model: String,
    pub model_idx: usize,
    pub dataset: usize,
    pub init: InitMethod,
    pub clusterer: Clusterer,
    pub rep: usize,
    pub outcome: std::result::Result<RunMetrics, String>,
}

impl RunRow {
    pub fn metrics(&self) -> Option<&RunMetrics> {
        self.outcome.as_ref().ok()
    }
}

/// Long-format results, one row per executed run, sorted by
/// (model, dataset, initializer, clusterer, repetition) in config order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportTable {
    pub rows: Vec<RunRow>,
    /// Metric chosen for comparisons.
    pub metric: Option<Metric>,
}

impl ReportTable {
    pub fn errors(&self) -> impl Iterator<Item = (&RunRow, &str)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().err().map(|e| (r, e.as_str())))
    }

    /// Models in first-appearance order.
    pub fn models(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if out.last() != Some(&r.model) && !out.contains(&r.model) {
                out.push(r.model.clone());
            }
        }
        out
    }

    pub fn inits(&self) -> Vec<InitMethod> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.init) {
                out.push(r.init);
            }
        }
        out
    }

    pub fn clusterers(&self) -> Vec<Clusterer> {
        let mut out = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.clusterer) {
                out.push(r.clusterer);
            }
        }
        out
    }
}

struct Source {
    name: String,
    k: usize,
    sets: Vec<std::result::Result<Arc<Dataset>, String>>,
}

fn load_sources(cfg: &ExperimentConfig) -> Result<Vec<Source>> {
    let mut out = Vec::new();
    for id in &cfg.models {
        let spec = lookup(id).expect("validated");
        let sets = (0..cfg.datasets_per_model)
            .into_par_iter()
            .map(|d| {
                let mut rng = SeededRng::new(cfg.seed, dataset_stream(&spec.id, d));
                generate(&spec, &mut rng)
                    .map(|g| Arc::new(g.dataset))
                    .map_err(|e| e.to_string())
            })
            .collect();
        out.push(Source {
            name: spec.id.clone(),
            k: spec.k,
            sets,
        });
    }
    for path in &cfg.files {
        let ds = load_csv(path, cfg.label_col)?;
        let k = match (cfg.k, ds.n_classes()) {
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => {
                return Err(Error::Config {
                    path: "k".into(),
                    message: format!("{} has no labels; set k", path.display()),
                })
            }
        };
        out.push(Source {
            name: ds.name().to_string(),
            k,
            sets: vec![Ok(Arc::new(ds))],
        });
    }
    Ok(out)
}

struct Task {
    model_idx: usize,
    dataset: usize,
    init_idx: usize,
    rep: usize,
}

/// Runs every configured task and gathers the rows in index order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ReportTable> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_in_pool(cfg))
}

fn run_in_pool(cfg: &ExperimentConfig) -> Result<ReportTable> {
    let sources = load_sources(cfg)?;
    let mut tasks = Vec::new();
    for (model_idx, src) in sources.iter().enumerate() {
        for dataset in 0..src.sets.len() {
            for (init_idx, &init) in cfg.initializers.iter().enumerate() {
                for rep in 0..cfg.effective_reps(init) {
                    tasks.push(Task {
                        model_idx,
                        dataset,
                        init_idx,
                        rep,
                    });
                }
            }
        }
    }
    let mut rows: Vec<(usize, RunRow)> = tasks
        .par_iter()
        .enumerate()
        .flat_map_iter(|(t, task)| {
            run_task(cfg, &sources, task)
                .into_iter()
                .enumerate()
                .map(move |(c, row)| (t * cfg.clusterers.len() + c, row))
        })
        .collect();
    rows.sort_by_key(|(key, _)| *key);

    let all_labelled = sources
        .iter()
        .flat_map(|s| &s.sets)
        .all(|d| d.as_ref().map_or(true, |ds| ds.labels().is_some()));
    let metric = cfg.metric.unwrap_or(if all_labelled {
        Metric::Purity
    } else {
        Metric::Silhouette
    });
    Ok(ReportTable {
        rows: rows.into_iter().map(|(_, r)| r).collect(),
        metric: Some(metric),
    })
}

fn run_task(cfg: &ExperimentConfig, sources: &[Source], task: &Task) -> Vec<RunRow> {
    let src = &sources[task.model_idx];
    let init = cfg.initializers[task.init_idx];
    let row = |clusterer: Clusterer, outcome| RunRow {
        model: src.name.clone(),
        model_idx: task.model_idx,
        dataset: task.dataset,
        init,
        clusterer,
        rep: task.rep,
        outcome,
    };
    let ds = match &src.sets[task.dataset] {
        Ok(ds) => ds,
        Err(e) => {
            return cfg
                .clusterers
                .iter()
                .map(|&c| row(c, Err(format!("generation: {e}"))))
                .collect()
        }
    };
    let stream = stream_id(&[
        task.model_idx as u64,
        task.dataset as u64,
        init.id(),
        task.rep as u64,
    ]);
    let mut rng = SeededRng::new(cfg.seed, stream);
    let started = Instant::now();
    let centroids = init.initialize(ds, src.k, &cfg.lof, &mut rng);
    let init_secs = started.elapsed().as_secs_f64();
    cfg.clusterers
        .iter()
        .map(|&c| {
            let outcome = match &centroids {
                Err(e) => Err(format!("init: {e}")),
                Ok(cs) => c
                    .run(ds, cs, &cfg.loop_config)
                    .and_then(|run| {
                        let m = MetricReport::evaluate(ds, &run.assignment, &run.centroids)?;
                        Ok(RunMetrics {
                            purity: m.purity,
                            silhouette: m.silhouette,
                            wcss: run.wcss,
                            e_l1: run.e_l1,
                            iterations: run.iterations,
                            converged: run.converged,
                            seconds: init_secs + run.seconds,
                        })
                    })
                    .map_err(|e| format!("cluster: {e}")),
            };
            row(c, outcome)
        })
        .collect()
}
