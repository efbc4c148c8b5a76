use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::experiment::{CellReport, ExperimentReport};

/// Full-precision number formatting: 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn optimizers(report: &ExperimentReport) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    for c in &report.cells {
        if !out.contains(&c.optimizer.as_str()) {
            out.push(&c.optimizer);
        }
    }
    out
}

fn benchmarks(report: &ExperimentReport) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    for c in &report.cells {
        if !out.contains(&c.benchmark.as_str()) {
            out.push(&c.benchmark);
        }
    }
    out
}

/// Renders the AB/MB/SD table: one column per optimizer, three rows per
/// benchmark, and a `best` column naming the lowest entry of each row.
/// Cells whose runs all failed are left empty.
pub fn summary_csv(report: &ExperimentReport) -> String {
    let opts = optimizers(report);
    let mut out = format!("benchmark,stat,{},best\n", opts.join(","));
    for bench in benchmarks(report) {
        for stat in ["AB", "MB", "SD"] {
            let mut row = vec![bench.to_string(), stat.to_string()];
            let mut best: Option<(f64, &str)> = None;
            for opt in &opts {
                let value = report.cell(opt, bench).and_then(|c| c.summary).map(|s| match stat {
                    "AB" => s.ab,
                    "MB" => s.mb,
                    _ => s.sd,
                });
                match value {
                    Some(v) => {
                        if best.is_none_or(|(b, _)| v < b) {
                            best = Some((v, opt));
                        }
                        row.push(format_value(v));
                    }
                    None => row.push(String::new()),
                }
            }
            row.push(best.map(|(_, o)| o.to_string()).unwrap_or_default());
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn export_summary(report: &ExperimentReport, path: &Path) -> Result<()> {
    write(path, &summary_csv(report))
}

/// Mean and median best-so-far per iteration across the retained traces.
pub fn aggregate_trace(cell: &CellReport) -> Vec<(f64, f64)> {
    let len = cell.traces.iter().map(Vec::len).min().unwrap_or(0);
    (0..len)
        .map(|k| {
            let mut column: Vec<f64> = cell.traces.iter().map(|t| t[k]).collect();
            let mean = column.iter().sum::<f64>() / column.len() as f64;
            column.sort_by(f64::total_cmp);
            let m = column.len();
            let median = if m % 2 == 1 { column[m / 2] } else { 0.5 * (column[m / 2 - 1] + column[m / 2]) };
            (mean, median)
        })
        .collect()
}

pub fn trace_csv(cell: &CellReport) -> String {
    let mut out = String::from("k,mean,median\n");
    for (k, (mean, median)) in aggregate_trace(cell).into_iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", k + 1, format_value(mean), format_value(median)));
    }
    out
}

/// Writes `trace_<optimizer>_<benchmark>.csv` for every cell into `dir`.
pub fn export_traces(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    if !report.provenance.config.traces {
        return Err(Error::config("traces were not retained; enable `traces` in the config"));
    }
    fs::create_dir_all(dir)?;
    report
        .cells
        .iter()
        .map(|cell| {
            let path = dir.join(format!("trace_{}_{}.csv", cell.optimizer, cell.benchmark));
            write(&path, &trace_csv(cell)).map(|_| path)
        })
        .collect()
}

/// Writes `report.json`, `summary.csv`, one `finals_<optimizer>_<benchmark>.txt`
/// column file per cell and, when enabled, the trace files.
pub fn write_outputs(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let json = dir.join("report.json");
    write(&json, &report.to_json())?;
    written.push(json);

    let summary = dir.join("summary.csv");
    export_summary(report, &summary)?;
    written.push(summary);

    for cell in &report.cells {
        let path = dir.join(format!("finals_{}_{}.txt", cell.optimizer, cell.benchmark));
        let body: String = cell.finals.iter().map(|v| format_value(*v) + "\n").collect();
        write(&path, &body)?;
        written.push(path);
    }

    if report.provenance.config.traces {
        written.extend(export_traces(report, dir)?);
    }
    Ok(written)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}
