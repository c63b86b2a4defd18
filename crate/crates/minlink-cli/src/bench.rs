//! Benchmark sweeps: deterministic instances, solved and timed, one CSV row
//! per (n, direction count, seed).

use std::fmt::Write as _;

use crate::gen::{generate_instance, GenError, GenParams};

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub ns: Vec<usize>,
    pub c_size: usize,
    pub seeds: Vec<u64>,
    pub bound: i64,
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub c_size: usize,
    pub seed: u64,
    pub links: u32,
    /// Largest per-direction interval family observed in the ledger.
    pub max_family: usize,
    pub wall_ms: f64,
}

pub const CSV_HEADER: &str = "n,c_size,seed,links,max_family,wall_ms";

/// Solve every instance of the sweep and collect the rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<BenchRow>, String> {
    let mut rows = Vec::new();
    for &n in &spec.ns {
        for &seed in &spec.seeds {
            let params = GenParams {
                n,
                c_size: spec.c_size,
                bound: spec.bound,
                seed,
            };
            let (inst, _) = generate_instance(&params).map_err(|e: GenError| e.to_string())?;
            let solved = crate::solve(&inst).map_err(|e| e.to_string())?;
            rows.push(BenchRow {
                n,
                c_size: spec.c_size,
                seed,
                links: solved.ledger.link_count(),
                max_family: solved.ledger.max_family_len(),
                wall_ms: solved.wall_ms,
            });
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.3}",
            r.n, r.c_size, r.seed, r.links, r.max_family, r.wall_ms
        );
    }
    out
}

/// Least-squares slope of `ln(median wall time)` against `ln(n)`.
pub fn log_log_slope(rows: &[BenchRow]) -> Option<f64> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 2 {
        return None;
    }
    let points: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let mut times: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.wall_ms.max(1e-6))
                .collect();
            times.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            let median = times[times.len() / 2];
            ((n as f64).ln(), median.ln())
        })
        .collect();
    let k = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    Some((k * sxy - sx * sy) / (k * sxx - sx * sx))
}
