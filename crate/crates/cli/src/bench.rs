//! Timing runs over doubling sizes, written as CSV.

use std::io::Write;
use std::time::Instant;

use mft_core::polygon::generate_random;
use mft_core::solver::{solve, Algorithm, SolveOptions};
use mft_core::{Polygon, SolverError};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub algo: String,
    pub seed: u64,
    pub wall_ns: u64,
    pub iterations: usize,
    pub pointer_advances: usize,
}

pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub algos: Vec<Algorithm>,
    /// Timed runs per instance; the fastest is kept.
    pub repeats: usize,
}

fn cap(algo: Algorithm, opts: &SolveOptions) -> usize {
    match algo {
        Algorithm::Brute => opts.brute_cap,
        Algorithm::Quadratic => opts.quadratic_cap,
        Algorithm::Linear | Algorithm::Logn => usize::MAX,
    }
}

/// Runs every (size, seed, algorithm) in that order; sizes above an algorithm's cap are skipped.
pub fn run(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> Result<(Vec<BenchRow>, Vec<String>), CliError> {
    if cfg.sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Input("sizes must be strictly ascending".into()));
    }
    let opts = SolveOptions {
        keep_candidates: false,
        ..SolveOptions::default()
    };
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &size in &cfg.sizes {
        for &seed in &cfg.seeds {
            let p: Polygon = generate_random(size, seed)?;
            for &algo in &cfg.algos {
                if size > cap(algo, &opts) {
                    let note = format!("{algo} skipped at size {size} (cap {})", cap(algo, &opts));
                    if !skipped.contains(&note) {
                        skipped.push(note);
                    }
                    continue;
                }
                let mut best = u64::MAX;
                let mut last = None;
                for _ in 0..cfg.repeats.max(1) {
                    let start = Instant::now();
                    let r = solve(&p, algo, &opts)?;
                    best = best.min(start.elapsed().as_nanos() as u64);
                    last = Some(r);
                }
                let st = last.expect("at least one run").stats;
                if matches!(algo, Algorithm::Linear | Algorithm::Logn) && st.iterations > 2 * size {
                    return Err(SolverError::WorkBoundExceeded {
                        what: "iterations",
                        count: st.iterations,
                        bound: 2 * size,
                    }
                    .into());
                }
                let row = BenchRow {
                    size,
                    algo: algo.name().to_string(),
                    seed,
                    wall_ns: best,
                    iterations: st.iterations,
                    pointer_advances: st.apex_advances + st.support_advances,
                };
                progress(&row);
                rows.push(row);
            }
        }
    }
    Ok((rows, skipped))
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<BenchRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Median over seeds of `wall(2n) / wall(n)` for each doubling step of one algorithm.
pub fn doubling_ratios(rows: &[BenchRow], algo: &str) -> Vec<(usize, f64)> {
    let mut sizes: Vec<usize> = rows.iter().filter(|r| r.algo == algo).map(|r| r.size).collect();
    sizes.dedup();
    let wall = |size: usize, seed: u64| {
        rows.iter()
            .find(|r| r.algo == algo && r.size == size && r.seed == seed)
            .map(|r| r.wall_ns as f64)
    };
    let mut out = Vec::new();
    for w in sizes.windows(2) {
        if w[1] != 2 * w[0] {
            continue;
        }
        let ratios: Vec<f64> = rows
            .iter()
            .filter(|r| r.algo == algo && r.size == w[0])
            .filter_map(|r| Some(wall(w[1], r.seed)? / wall(w[0], r.seed)?.max(1.0)))
            .collect();
        if !ratios.is_empty() {
            out.push((w[1], median(ratios)));
        }
    }
    out
}
