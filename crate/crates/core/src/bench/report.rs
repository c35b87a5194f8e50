use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::summary::{Comparison, RunsToMatchRow, Side, Summaries, SummaryRow};
use super::ReportTable;

pub const RUNS_HEADER: &str = "model,dataset,init,clusterer,rep,purity,silhouette,wcss,e_l1,iterations,seconds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Markdown => "md",
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// The long-format run table. Error rows keep their coordinates and leave
/// every metric field empty.
pub fn write_runs_csv(t: &ReportTable, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{RUNS_HEADER}")?;
    for r in &t.rows {
        write!(w, "{},{},{},{},{},", r.model, r.dataset, r.init, r.clusterer, r.rep)?;
        match &r.outcome {
            Ok(m) => writeln!(
                w,
                "{},{},{},{},{},{:.6}",
                opt(m.purity),
                opt(m.silhouette),
                m.wcss,
                opt(m.e_l1),
                m.iterations,
                m.seconds
            )?,
            Err(_) => writeln!(w, ",,,,,")?,
        }
    }
    Ok(())
}

pub fn write_errors_csv(t: &ReportTable, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "model,dataset,init,clusterer,rep,error")?;
    for (r, e) in t.errors() {
        let msg = e.replace('"', "'");
        writeln!(
            w,
            "{},{},{},{},{},\"{msg}\"",
            r.model, r.dataset, r.init, r.clusterer, r.rep
        )?;
    }
    Ok(())
}

fn summary_table(rows: &[SummaryRow], value: &str, fmt: Format, mut w: impl Write) -> std::io::Result<()> {
    match fmt {
        Format::Csv => {
            writeln!(w, "model,init,clusterer,datasets,{value}_mean,{value}_std")?;
            for r in rows {
                writeln!(w, "{},{},{},{},{},{}", r.model, r.init, r.clusterer, r.datasets, r.mean, r.std)?;
            }
        }
        Format::Markdown => {
            writeln!(w, "| model | init | clusterer | datasets | {value} mean | {value} std |")?;
            writeln!(w, "|---|---|---|---:|---:|---:|")?;
            for r in rows {
                writeln!(
                    w,
                    "| {} | {} | {} | {} | {:.4} | {:.4} |",
                    r.model, r.init, r.clusterer, r.datasets, r.mean, r.std
                )?;
            }
        }
    }
    Ok(())
}

fn winner(c: &Comparison, side: Option<Side>) -> String {
    match side {
        Some(Side::A) => c.a.to_string(),
        Some(Side::B) => c.b.to_string(),
        None => String::new(),
    }
}

fn comparisons_table(cs: &[Comparison], fmt: Format, mut w: impl Write) -> std::io::Result<()> {
    match fmt {
        Format::Csv => {
            writeln!(w, "aggregation,a,b,model,datasets,mean_a,mean_b,w,p,stars,winner")?;
            for c in cs {
                let agg = serde_json::to_value(c.aggregation).expect("enum");
                for m in &c.per_model {
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{},{},{},{}",
                        agg.as_str().unwrap_or_default(),
                        c.a,
                        c.b,
                        m.model,
                        m.datasets,
                        m.mean_a,
                        m.mean_b,
                        m.test.statistic,
                        m.test.p_value,
                        m.test.stars,
                        winner(c, m.winner)
                    )?;
                }
            }
        }
        Format::Markdown => {
            writeln!(w, "| aggregation | a | b | wins a vs b |")?;
            writeln!(w, "|---|---|---|---|")?;
            for c in cs {
                writeln!(w, "| {:?} | {} | {} | {} vs {} |", c.aggregation, c.a, c.b, c.wins_a, c.wins_b)?;
            }
            writeln!(w)?;
            writeln!(w, "| aggregation | a | b | model | mean a | mean b | p | stars | winner |")?;
            writeln!(w, "|---|---|---|---|---:|---:|---:|---|---|")?;
            for c in cs {
                for m in &c.per_model {
                    writeln!(
                        w,
                        "| {:?} | {} | {} | {} | {:.4} | {:.4} | {:.3e} | {} | {} |",
                        c.aggregation,
                        c.a,
                        c.b,
                        m.model,
                        m.mean_a,
                        m.mean_b,
                        m.test.p_value,
                        m.test.stars,
                        winner(c, m.winner)
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn runs_to_match_table(rows: &[RunsToMatchRow], fmt: Format, mut w: impl Write) -> std::io::Result<()> {
    match fmt {
        Format::Csv => {
            writeln!(w, "model,stochastic,deterministic,total,hits,runs_to_match")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r.model, r.stochastic, r.deterministic, r.total, r.hits, r.result
                )?;
            }
        }
        Format::Markdown => {
            writeln!(w, "| model | stochastic | deterministic | runs | matched | runs to match |")?;
            writeln!(w, "|---|---|---|---:|---:|---:|")?;
            for r in rows {
                writeln!(
                    w,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.model, r.stochastic, r.deterministic, r.total, r.hits, r.result
                )?;
            }
        }
    }
    Ok(())
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

/// Writes `runs.csv`, `errors.csv` (only when some run failed) and the
/// summary tables into `dir`, creating it if needed. Returns the paths
/// written.
pub fn emit_report(t: &ReportTable, s: &Summaries, format: Format, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut emit = |name: String, f: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>| -> Result<()> {
        let path = dir.join(name);
        write_file(&path, f)?;
        written.push(path);
        Ok(())
    };
    emit("runs.csv".into(), &|w| write_runs_csv(t, w))?;
    if t.errors().next().is_some() {
        emit("errors.csv".into(), &|w| write_errors_csv(t, w))?;
    }
    let metric = serde_json::to_value(s.metric).expect("enum");
    let metric = metric.as_str().unwrap_or("metric");
    let ext = format.ext();
    emit(format!("average.{ext}"), &|w| summary_table(&s.average, metric, format, w))?;
    emit(format!("best.{ext}"), &|w| summary_table(&s.best, metric, format, w))?;
    emit(format!("timing.{ext}"), &|w| summary_table(&s.timing, "seconds", format, w))?;
    emit(format!("comparisons.{ext}"), &|w| comparisons_table(&s.comparisons, format, w))?;
    emit(format!("runs_to_match.{ext}"), &|w| runs_to_match_table(&s.runs_to_match, format, w))?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{summarize, Metric};

    #[test]
    fn empty_table_gives_header_only() {
        let mut buf = Vec::new();
        write_runs_csv(&ReportTable::default(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{RUNS_HEADER}\n"));
    }

    #[test]
    fn emits_every_file() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("nested/out");
        let t = ReportTable::default();
        let s = summarize(&t, Metric::Purity).unwrap();
        let files = emit_report(&t, &s, Format::Markdown, &out).unwrap();
        assert_eq!(files.len(), 6);
        assert!(files.iter().all(|f| f.exists()));
        assert!(!out.join("errors.csv").exists());
    }
}
