//! Command-line frontend: `gen`, `cluster`, `bench` and `catalog`.
//!
//! Exit codes: 0 on success, 1 for data and I/O errors, 2 for usage and
//! configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{emit_report, run_experiment, summarize, ExperimentConfig, Format, Metric};
use crate::cluster::{Clusterer, HwRule, LoopConfig, Provenance};
use crate::error::{Error, Result};
use crate::gen::{dataset_stream, generate, load_csv, lookup, model_catalog, write_csv, CountRule};
use crate::init::{InitMethod, LofParams};
use crate::metrics::MetricReport;
use crate::rng::SeededRng;

#[derive(Debug, Parser)]
#[command(name = "kmbench", version, about = "K-Means initialization benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HwRuleArg {
    SizeWeighted,
    Unweighted,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw datasets from a catalog model and write them as CSV.
    Gen {
        model: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Initialize and cluster one CSV file, printing a summary.
    Cluster {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, default_value = "kmeanspp")]
        init: String,
        #[arg(long, default_value = "hartigan_wong")]
        clusterer: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        mp: usize,
        #[arg(long = "robin-e", default_value_t = 0.05)]
        robin_e: f64,
        #[arg(long = "max-iter", default_value_t = 300)]
        max_iter: usize,
        #[arg(long = "hw-rule", value_enum, default_value = "size-weighted")]
        hw_rule: HwRuleArg,
        /// 0-based label column.
        #[arg(long = "label-col")]
        label_col: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Output,
    },
    /// Run an experiment from a JSON config and write reports.
    Bench {
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "report-format", value_enum, default_value = "csv")]
        report_format: ReportFormat,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Output,
    },
    /// List the built-in data-set models.
    Catalog {
        #[arg(long, value_enum, default_value = "markdown")]
        format: Output,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Config { .. } | Error::Unsupported(_) => 2,
        Error::InvalidData(_) | Error::Parse { .. } | Error::GenerationFailure { .. } | Error::Io { .. } => 1,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Gen {
            model,
            count,
            seed,
            out: dir,
        } => cmd_gen(&model, count, seed, &dir, out),
        Command::Cluster {
            input,
            k,
            init,
            clusterer,
            seed,
            mp,
            robin_e,
            max_iter,
            hw_rule,
            label_col,
            format,
        } => {
            let init: InitMethod = init.parse()?;
            let clusterer: Clusterer = clusterer.parse()?;
            let lof = LofParams::new(mp, robin_e)?;
            let cfg = LoopConfig {
                max_iterations: max_iter,
                hw_rule: match hw_rule {
                    HwRuleArg::SizeWeighted => HwRule::SizeWeighted,
                    HwRuleArg::Unweighted => HwRule::Unweighted,
                },
                ..Default::default()
            };
            cfg.validate()?;
            cmd_cluster(&input, k as usize, init, clusterer, seed, &lof, &cfg, label_col, format, out)
        }
        Command::Bench {
            config,
            workers,
            seed,
            out: dir,
            report_format,
            format,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if workers.is_some() {
                cfg.workers = workers;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(d) = dir {
                cfg.output_dir = d;
            }
            cfg.validate()?;
            let fmt = match report_format {
                ReportFormat::Csv => Format::Csv,
                ReportFormat::Markdown => Format::Markdown,
            };
            cmd_bench(&cfg, fmt, format, out, err)
        }
        Command::Catalog { format } => cmd_catalog(format, out),
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn known_models() -> String {
    model_catalog().into_iter().map(|s| s.id).collect::<Vec<_>>().join(", ")
}

fn cmd_gen(model: &str, count: usize, seed: u64, dir: &Path, out: &mut dyn Write) -> Result<()> {
    let spec = lookup(model)
        .ok_or_else(|| Error::invalid(format!("unknown model '{model}'; known models: {}", known_models())))?;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for i in 0..count {
        let mut rng = SeededRng::new(seed, dataset_stream(&spec.id, i));
        let g = generate(&spec, &mut rng)?;
        let path = dir.join(format!("{}-{i}.csv", spec.id));
        write_csv(&g.dataset, &path)?;
        files.push(path.display().to_string());
    }
    let summary = json!({ "model": spec.id, "seed": seed, "files": files });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("json")).map_err(io_out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_cluster(
    input: &Path,
    k: usize,
    init: InitMethod,
    clusterer: Clusterer,
    seed: u64,
    lof: &LofParams,
    cfg: &LoopConfig,
    label_col: Option<usize>,
    format: Output,
    out: &mut dyn Write,
) -> Result<()> {
    let ds = load_csv(input, label_col)?;
    if k > ds.n() {
        return Err(Error::invalid(format!("--k {k} exceeds the {} points in {}", ds.n(), input.display())));
    }
    let mut rng = SeededRng::new(seed, init.id());
    let centroids = init.initialize(&ds, k, lof, &mut rng)?;
    let provenance = if init.is_deterministic() {
        Provenance::Deterministic
    } else {
        Provenance::Seeded {
            seed,
            stream: init.id(),
        }
    };
    let run = clusterer.run(&ds, &centroids, cfg)?.with_provenance(provenance);
    let report = MetricReport::evaluate(&ds, &run.assignment, &run.centroids)?;
    match format {
        Output::Json => {
            let summary = json!({
                "input": input.display().to_string(),
                "n": ds.n(),
                "p": ds.p(),
                "k": k,
                "init": init,
                "clusterer": clusterer,
                "provenance": provenance,
                "objective": run.wcss,
                "e_l1": run.e_l1,
                "iterations": run.iterations,
                "converged": run.converged,
                "silhouette": report.silhouette,
                "purity": report.purity,
                "distortion": report.distortion,
                "sizes": run.assignment.sizes(),
                "centroids": run.centroids.to_rows(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("json")).map_err(io_out)
        }
        Output::Markdown => {
            let cell = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.6}"));
            let mut s = String::new();
            s.push_str(&format!("## {} with {init} + {clusterer}, K = {k}\n\n", input.display()));
            s.push_str("| quantity | value |\n|---|---|\n");
            s.push_str(&format!("| objective (WCSS) | {:.6} |\n", run.wcss));
            s.push_str(&format!("| E (L1) | {} |\n", cell(run.e_l1)));
            s.push_str(&format!("| iterations | {} |\n", run.iterations));
            s.push_str(&format!("| converged | {} |\n", run.converged));
            s.push_str(&format!("| silhouette | {} |\n", cell(report.silhouette)));
            s.push_str(&format!("| purity | {} |\n\n", cell(report.purity)));
            s.push_str("| cluster | size | centroid |\n|---:|---:|---|\n");
            for (c, (size, center)) in run.assignment.sizes().iter().zip(run.centroids.centers()).enumerate() {
                let coords: Vec<String> = center.iter().map(|v| format!("{v:.6}")).collect();
                s.push_str(&format!("| {c} | {size} | {} |\n", coords.join(", ")));
            }
            write!(out, "{s}").map_err(io_out)
        }
    }
}

fn cmd_bench(
    cfg: &ExperimentConfig,
    fmt: Format,
    stdout_fmt: Output,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let table = run_experiment(cfg)?;
    let metric = table.metric.unwrap_or(Metric::Purity);
    let summaries = summarize(&table, metric)?;
    let files = emit_report(&table, &summaries, fmt, &cfg.output_dir)?;
    let errors = table.errors().count();
    for msg in &summaries.skipped {
        let _ = writeln!(err, "warning: comparison skipped: {msg}");
    }
    match stdout_fmt {
        Output::Json => {
            let summary = json!({
                "rows": table.rows.len(),
                "errors": errors,
                "metric": metric,
                "files": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
                "average": summaries.average,
                "skipped_comparisons": summaries.skipped,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("json")).map_err(io_out)
        }
        Output::Markdown => {
            let mut s = format!(
                "# Benchmark: {} runs, {errors} errors\n\nReports in `{}`.\n\n",
                table.rows.len(),
                cfg.output_dir.display()
            );
            s.push_str(&format!("| model | init | clusterer | mean {metric:?} | std |\n|---|---|---|---:|---:|\n"));
            for r in &summaries.average {
                s.push_str(&format!(
                    "| {} | {} | {} | {:.4} | {:.4} |\n",
                    r.model, r.init, r.clusterer, r.mean, r.std
                ));
            }
            write!(out, "{s}").map_err(io_out)
        }
    }
}

fn count_rule(c: &CountRule) -> String {
    match c {
        CountRule::Fixed(v) => v.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
        CountRule::OneOf(v) => v.iter().map(usize::to_string).collect::<Vec<_>>().join(" or "),
        CountRule::Range { lo, hi } => format!("{lo} to {hi}"),
    }
}

fn cmd_catalog(format: Output, out: &mut dyn Write) -> Result<()> {
    let cat = model_catalog();
    match format {
        Output::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&cat).expect("json")).map_err(io_out)
        }
        Output::Markdown => {
            let mut s = String::from("| model | points per cluster | p | K |\n|---|---|---:|---:|\n");
            for m in &cat {
                s.push_str(&format!("| {} | {} | {} | {} |\n", m.id, count_rule(&m.counts), m.p, m.k));
            }
            write!(out, "{s}").map_err(io_out)
        }
    }
}
