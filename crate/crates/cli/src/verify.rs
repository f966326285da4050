//! Cross-checks every algorithm against the exhaustive oracle on one instance.

use mft_core::flush::{canonical, is_interleaving};
use mft_core::polygon::{generate_random, validate};
use mft_core::solver::{brute_force, solve, Algorithm, SolveOptions};
use mft_core::{Point, Polygon};

use crate::format::{corner_area, input_edges, ReportFile};
use crate::CliError;

pub const REL: f64 = 1e-9;

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// All findings on one polygon; empty when every check passes.
pub fn check_polygon(p: &Polygon) -> Result<Vec<String>, CliError> {
    let n = p.n();
    let opts = SolveOptions {
        trace: true,
        ..SolveOptions::default()
    };
    let bf = brute_force(p, opts.brute_cap)?;
    let want = bf.mft.area.finite().unwrap_or(f64::INFINITY);
    let mut bad = Vec::new();

    if bf.stable.len() > n {
        bad.push(format!("{} locally optimal triangles for {n} edges", bf.stable.len()));
    }
    for (i, t1) in bf.stable.iter().enumerate() {
        for t2 in &bf.stable[i + 1..] {
            if !is_interleaving(*t1, *t2, n) {
                bad.push(format!("{t1:?} and {t2:?} do not interleave"));
            }
        }
    }

    for algo in [Algorithm::Linear, Algorithm::Logn, Algorithm::Quadratic] {
        let r = match solve(p, algo, &opts) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{algo}: {e}"));
                continue;
            }
        };
        let got = r.mft.area.finite().unwrap_or(f64::INFINITY);
        if !(rel_diff(got, want) <= REL) {
            bad.push(format!("{algo}: area {got} vs oracle {want}"));
        }
        let found: Vec<[usize; 3]> = r.candidates.iter().filter(|c| c.stable).map(|c| canonical(c.edges)).collect();
        for t in &bf.stable {
            if !found.contains(t) {
                bad.push(format!("{algo}: missing candidate {:?}", input_edges(p, *t)));
            }
        }
        if r.directions.windows(2).any(|w| w[1] < w[0]) {
            bad.push(format!("{algo}: sweep direction decreased"));
        }
    }
    Ok(bad)
}

/// Checks a stored report against the oracle on its polygon.
pub fn check_report(p: &Polygon, report: &ReportFile) -> Result<Vec<String>, CliError> {
    let bf = brute_force(p, SolveOptions::default().brute_cap)?;
    let want = ReportFile::new(
        p,
        &solve(p, Algorithm::Brute, &SolveOptions::default())?,
        0,
    );
    let mut bad = Vec::new();
    let oracle = bf.mft.area.finite().unwrap_or(f64::INFINITY);
    if report.n != p.n() {
        bad.push(format!("report has {} edges, polygon has {}", report.n, p.n()));
    }
    if !(rel_diff(report.mft.area, oracle) <= REL) {
        bad.push(format!("area {} vs oracle {oracle}", report.mft.area));
    }
    if report.mft.edges != want.mft.edges {
        bad.push(format!("edges {:?} vs oracle {:?}", report.mft.edges, want.mft.edges));
    }
    let from_corners = corner_area(&report.mft.corners);
    if report.mft.corners.len() != 3 || !(rel_diff(from_corners, report.mft.area) <= REL) {
        bad.push(format!("corners give area {from_corners}, report says {}", report.mft.area));
    }
    Ok(bad)
}

/// Greedily drops vertices while the instance stays valid and keeps failing.
pub fn minimize(points: &[Point<f64>]) -> Vec<Point<f64>> {
    let fails = |pts: &[Point<f64>]| match validate(pts.to_vec()) {
        Ok(p) => check_polygon(&p).map(|b| !b.is_empty()).unwrap_or(true),
        Err(_) => false,
    };
    let mut cur = points.to_vec();
    let mut shrunk = true;
    while shrunk && cur.len() > 3 {
        shrunk = false;
        for i in 0..cur.len() {
            let mut next = cur.clone();
            next.remove(i);
            if fails(&next) {
                cur = next;
                shrunk = true;
                break;
            }
        }
    }
    cur
}

/// Polygons of `--random n seed count`: consecutive seeds from `seed`.
pub fn random_instances(n: usize, seed: u64, count: usize) -> impl Iterator<Item = (u64, Result<Polygon, CliError>)> {
    (0..count as u64).map(move |i| {
        let s = seed.wrapping_add(i);
        (s, generate_random(n, s).map_err(CliError::from))
    })
}
