//! Benchmark harness over a directory of instances.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use super::record::{RunRecord, TOOL_VERSION};
use super::{read_text, run_approx, write_text};
use crate::error::{Error, Result};
use crate::format;

pub const BENCH_ALGORITHMS: [&str; 6] = ["one-neighbor", "greedy", "kyn", "kynn", "dnc", "best"];

const KNOWN: [&str; 8] = [
    "one-neighbor",
    "greedy",
    "kyn",
    "kynn",
    "kynn-uniform",
    "dnc",
    "dnc-uniform",
    "best",
];

/// Aggregate for one algorithm over the corpus. `scaled` is `(satisfied/|E|)·(n_A|Σ_A|)^{1/4}`;
/// the composite guarantee keeps it at least `1/4` for `best`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummaryRow {
    pub algorithm: String,
    pub instances: usize,
    pub failures: usize,
    pub mean_fraction: f64,
    pub worst_ratio: f64,
    pub mean_scaled: f64,
    pub min_scaled: f64,
}

fn corpus_files(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lc"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs `algorithms` on every `.lc` file under `dir` (sorted by name). Returns JSON lines
/// (one per instance and algorithm, then a summary line) or a text table.
pub fn bench_corpus(
    dir: &Path,
    algorithms: &[&str],
    out: Option<&Path>,
    json: bool,
    timing: bool,
) -> Result<String> {
    if let Some(bad) = algorithms.iter().find(|a| !KNOWN.contains(a)) {
        return Err(Error::InvalidArgument(format!("unknown algorithm `{bad}`")));
    }
    let mut rows: Vec<(String, Vec<(f64, f64)>, usize)> = algorithms
        .iter()
        .map(|a| (a.to_string(), Vec::new(), 0))
        .collect();
    let mut lines = String::new();
    for path in corpus_files(dir)? {
        let (text, digest) = read_text(&path)?;
        let game = format::parse_game(&text)?;
        let m = game.edge_count();
        let scale = ((game.a_count() * game.sigma_a()) as f64).powf(0.25);
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let mut records = Vec::new();
        for (alg, row) in algorithms.iter().zip(rows.iter_mut()) {
            let start = Instant::now();
            let report = match run_approx(&game, alg) {
                Ok(r) => r,
                Err(e) => {
                    row.2 += 1;
                    let _ = writeln!(lines, "{name}: {alg} failed: {e}");
                    continue;
                }
            };
            let mut record = RunRecord::new(
                format!("bench {alg}"),
                Some(name.clone()),
                digest.clone(),
                &game,
                &report,
            );
            if timing {
                record.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if m > 0 {
                let fraction = report.satisfied as f64 / m as f64;
                row.1.push((fraction, fraction * scale));
            }
            records.push(record);
        }
        if let Some(out) = out {
            let body: String = records.iter().map(|r| r.to_json() + "\n").collect();
            let target = out.join(format!("{name}.json"));
            let tmp = out.join(format!(".{name}.json.tmp"));
            write_text(&tmp, &body)?;
            std::fs::rename(&tmp, &target)
                .map_err(|e| Error::Io(format!("{}: {e}", target.display())))?;
        }
        for r in &records {
            if json {
                lines.push_str(&r.to_json());
                lines.push('\n');
            } else {
                let _ = writeln!(
                    lines,
                    "{name:<24} {:<13} {:>6} / {:<6} {}",
                    r.algorithm, r.satisfied, r.edges, r.guarantee.statement
                );
            }
        }
    }
    let summary: Vec<BenchSummaryRow> = rows
        .into_iter()
        .map(|(algorithm, samples, failures)| {
            let n = samples.len();
            let mean = |f: fn(&(f64, f64)) -> f64| {
                if n == 0 {
                    0.0
                } else {
                    samples.iter().map(f).sum::<f64>() / n as f64
                }
            };
            BenchSummaryRow {
                algorithm,
                instances: n,
                failures,
                mean_fraction: mean(|s| s.0),
                worst_ratio: samples.iter().map(|s| 1.0 / s.0).fold(0.0, f64::max),
                mean_scaled: mean(|s| s.1),
                min_scaled: if n == 0 {
                    0.0
                } else {
                    samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min)
                },
            }
        })
        .collect();
    if json {
        let value = serde_json::json!({ "version": TOOL_VERSION, "summary": summary });
        let _ = writeln!(lines, "{value}");
    } else {
        let _ = writeln!(
            lines,
            "\n{:<13} {:>9} {:>8} {:>10} {:>10} {:>12} {:>11}",
            "algorithm",
            "instances",
            "failures",
            "mean frac",
            "worst |E|/v",
            "mean scaled",
            "min scaled"
        );
        for r in &summary {
            let _ = writeln!(
                lines,
                "{:<13} {:>9} {:>8} {:>10.4} {:>10.4} {:>12.4} {:>11.4}",
                r.algorithm,
                r.instances,
                r.failures,
                r.mean_fraction,
                r.worst_ratio,
                r.mean_scaled,
                r.min_scaled
            );
        }
        let _ = writeln!(lines, "scaled = (satisfied/|E|)·(n_A·|Σ_A|)^(1/4)");
    }
    Ok(lines)
}
