//! CSV, Markdown and JSON-lines output. All writers are byte-stable.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ccsub_core::algorithms::{AlgorithmKind, RunRecord};
use serde::Serialize;

use crate::error::{BenchError, Result};
use crate::runner::SummaryRow;

pub const CSV_HEADER: [&str; 12] = [
    "problem", "C", "alpha", "delta", "algo", "mean", "min", "max", "std", "stat", "seeds", "budget",
];

fn num(v: f64) -> String {
    format!("{v}")
}

pub fn write_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let (mean, min, max, std, count) = match row.summary {
            Some(s) => (num(s.mean), num(s.min), num(s.max), num(s.std), s.count),
            None => (String::new(), String::new(), String::new(), String::new(), 0),
        };
        w.write_record([
            row.problem.clone(),
            num(row.cell.capacity),
            num(row.cell.alpha),
            num(row.cell.delta),
            row.algorithm.name().to_string(),
            mean,
            min,
            max,
            std,
            row.stat.join(" "),
            count.to_string(),
            row.budget.to_string(),
        ])?;
    }
    w.flush().map_err(|source| BenchError::Write {
        path: PathBuf::from("<csv>"),
        source,
    })?;
    Ok(())
}

/// One line per grid cell with a mean/min/max/std/stat block per algorithm.
pub fn markdown_table(rows: &[SummaryRow]) -> String {
    let mut algos: Vec<AlgorithmKind> = Vec::new();
    for r in rows {
        if !algos.contains(&r.algorithm) {
            algos.push(r.algorithm);
        }
    }
    let mut s = String::from("| C | alpha | delta |");
    for (i, a) in algos.iter().enumerate() {
        s += &format!(" {a} ({}) mean | min | max | std | stat |", i + 1);
    }
    s += "\n|---|---|---|";
    s += &"---|---|---|---|---|".repeat(algos.len());
    s.push('\n');
    for cell_rows in rows.chunks(algos.len().max(1)) {
        let c = cell_rows[0].cell;
        s += &format!("| {} | {} | {} |", c.capacity, c.alpha, c.delta);
        for r in cell_rows {
            match r.summary {
                Some(x) => {
                    s += &format!(
                        " {:.2} | {:.2} | {:.2} | {:.4} | {} |",
                        x.mean,
                        x.min,
                        x.max,
                        x.std,
                        r.stat.join(",")
                    )
                }
                None => s += " n/a | | | | |",
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct RunLine<'a> {
    problem: &'a str,
    #[serde(rename = "C")]
    capacity: f64,
    alpha: f64,
    delta: f64,
    bound: &'a str,
    algo: &'a str,
    seed: u64,
    best_value: Option<f64>,
    search_value: Option<f64>,
    evaluations: u64,
    subset: Option<String>,
}

/// Per-run log; subsets are hex bitmasks. Wall times are left out to keep
/// the file reproducible.
pub fn write_jsonl<W: Write>(records: &[RunRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = RunLine {
            problem: &r.problem,
            capacity: r.capacity,
            alpha: r.alpha,
            delta: r.delta,
            bound: r.bound.name(),
            algo: r.algorithm.name(),
            seed: r.seed,
            best_value: r.best_value,
            search_value: r.search_value,
            evaluations: r.evaluations,
            subset: r.best_subset.as_ref().map(|x| x.to_hex()),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n").map_err(|source| BenchError::Write {
            path: PathBuf::from("<jsonl>"),
            source,
        })?;
    }
    Ok(())
}

/// Writes `results.csv`, `results.md` and optionally `runs.jsonl` into `dir`.
pub fn write_reports(
    rows: &[SummaryRow],
    records: &[RunRecord],
    dir: &Path,
    jsonl: bool,
) -> Result<Vec<PathBuf>> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| BenchError::Write { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();

    let path = dir.join("results.csv");
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    fs::write(&path, buf).map_err(io_err(&path))?;
    written.push(path);

    let path = dir.join("results.md");
    fs::write(&path, markdown_table(rows)).map_err(io_err(&path))?;
    written.push(path);

    if jsonl {
        let path = dir.join("runs.jsonl");
        let mut buf = Vec::new();
        write_jsonl(records, &mut buf)?;
        fs::write(&path, buf).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}
