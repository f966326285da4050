//! Minimum all-flush triangle solvers.
//!
//! The sweep starts from one locally optimal triangle `(r, s, t)` and walks
//! edge pairs `(b, c)` from `(s, t)` to `(t, r)`, advancing one of the two
//! per step. Every locally optimal triangle shows up as `(a, b, c)` for some
//! visited pair, with `a` the best apex for that pair.

mod brute;
mod criterion;
mod initial;

pub use brute::{brute_force, BruteForce};
pub use criterion::{kill_logn, stable_bounds, trivial_kill, LinearCriterion, StableBounds};
pub use initial::initial_3stable;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::flush::{self, canonical, triangle_of, FlushError, FlushTriangle};
use crate::polygon::{ConvexPolygon, PolygonError};
use crate::scalar::Scalar;

/// Default size limit for the cubic oracle.
pub const BRUTE_CAP: usize = 256;
/// Default size limit for the quadratic sweep.
pub const QUADRATIC_CAP: usize = 1 << 13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Flush(#[from] FlushError),
    #[error("instance has {n} edges, above the limit {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("sweep direction decreased at ({b}, {c}): {current} after {previous}")]
    DMonotonicityViolated {
        b: usize,
        c: usize,
        previous: f64,
        current: f64,
    },
    #[error("tangent directions at ({b}, {c}) leave the admissible range: [{lo}, {hi}] vs [0, {bound}]")]
    DRangeViolated {
        b: usize,
        c: usize,
        lo: f64,
        hi: f64,
        bound: f64,
    },
    #[error("common tangent at ({b}, {c}) is invalid: {detail}")]
    CommonTangentInvalid { b: usize, c: usize, detail: String },
    #[error("{what} took {count} steps, above the bound {bound}")]
    WorkBoundExceeded {
        what: &'static str,
        count: usize,
        bound: usize,
    },
    #[error("triangle {0:?} is not locally optimal")]
    NotThreeStable([usize; 3]),
    #[error("no locally optimal candidate was produced")]
    NoStableCandidate,
}

impl SolverError {
    /// Whether the error signals a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(
            self,
            SolverError::Polygon(_) | SolverError::InstanceTooLarge { .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Constant amortized work per step.
    Linear,
    /// Binary searches per step.
    Logn,
    /// All pairs of the sweep ranges.
    Quadratic,
    /// All triples.
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Linear,
        Algorithm::Logn,
        Algorithm::Quadratic,
        Algorithm::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Linear => "linear",
            Algorithm::Logn => "logn",
            Algorithm::Quadratic => "quadratic",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Which endpoint of the current pair to advance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kill {
    B,
    C,
}

/// Why a kill decision was taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KillReason {
    /// `b` reached the end of its range.
    EndOfB,
    /// `c` reached the end of its range.
    EndOfC,
    /// `b + 1 == c`.
    Adjacent,
    /// `b` does not chase `c + 1`.
    NotChasing,
    /// Decided by the criterion.
    Criterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KillRecord {
    pub b: usize,
    pub c: usize,
    pub kill: Kill,
    pub reason: KillReason,
}

/// Work counters of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Stats {
    pub iterations: usize,
    pub apex_advances: usize,
    pub support_advances: usize,
    pub trivial_kills: usize,
    pub criterion_kill_b: usize,
    pub criterion_kill_c: usize,
    /// Steps where the previous direction was kept.
    pub direction_kept: usize,
    /// Largest tolerated backwards move of the sweep direction.
    pub max_direction_slack: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate<T> {
    pub edges: [usize; 3],
    pub area: T,
    pub stable: bool,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Keep every emitted triangle in the report.
    pub keep_candidates: bool,
    /// Record every kill decision and sweep direction.
    pub trace: bool,
    /// Check each common tangent against both branches.
    pub check_tangents: bool,
    pub brute_cap: usize,
    pub quadratic_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            keep_candidates: true,
            trace: false,
            check_tangents: true,
            brute_cap: BRUTE_CAP,
            quadratic_cap: QUADRATIC_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverReport<T> {
    pub algorithm: Algorithm,
    /// The starting locally optimal triangle `(r, s, t)` of the sweep.
    pub anchor: Option<[usize; 3]>,
    pub candidates: Vec<Candidate<T>>,
    pub mft: FlushTriangle<T>,
    pub stats: Stats,
    pub kills: Vec<KillRecord>,
    /// Sweep direction after each criterion step (linear criterion, traced runs).
    pub directions: Vec<f64>,
}

/// Running minimum over candidates, ties broken by canonical triple.
#[derive(Default)]
struct Best<T> {
    best: Option<([usize; 3], T)>,
}

impl<T: Scalar> Best<T> {
    fn offer(&mut self, edges: [usize; 3], area: T) {
        let key = canonical(edges);
        let better = match self.best {
            None => true,
            Some((k, a)) => area < a || (area == a && key < k),
        };
        if better {
            self.best = Some((key, area));
        }
    }
}

fn check_bound(what: &'static str, count: usize, bound: usize) -> Result<(), SolverError> {
    if count > bound {
        return Err(SolverError::WorkBoundExceeded { what, count, bound });
    }
    Ok(())
}

/// Runs the sweep with the chosen criterion (`Linear` or `Logn`).
pub fn rotate_and_kill<T: Scalar>(
    p: &ConvexPolygon<T>,
    algorithm: Algorithm,
    opts: &SolveOptions,
) -> Result<SolverReport<T>, SolverError> {
    let n = p.n();
    let (r, s, t) = initial_3stable(p)?;
    let mut linear = match algorithm {
        Algorithm::Linear => Some(LinearCriterion::new(p, r, s, t, opts.check_tangents)),
        Algorithm::Logn => None,
        other => panic!("rotate_and_kill does not run {other}"),
    };
    let mut stats = Stats::default();
    let mut candidates = Vec::new();
    let mut kills = Vec::new();
    let mut directions = Vec::new();
    let mut best = Best::default();
    let (mut b, mut c) = (s, t);
    let mut hint = r;
    loop {
        if p.chases(b, c) {
            let (a, _) = flush::next_opt_apex(p, b, c, hint)?;
            stats.apex_advances += p.steps(hint, a);
            hint = a;
            if let Some(area) = flush::area(p, a, b, c).finite() {
                let stable = flush::is_3stable(p, a, b, c);
                if stable {
                    best.offer([a, b, c], area);
                }
                if opts.keep_candidates {
                    candidates.push(Candidate {
                        edges: [a, b, c],
                        area,
                        stable,
                    });
                }
            }
        }
        if (b, c) == (t, r) {
            break;
        }
        let (kill, reason) = match trivial_kill(p, b, c, r, t) {
            Some(k) => {
                stats.trivial_kills += 1;
                k
            }
            None => {
                let k = match linear.as_mut() {
                    Some(lc) => {
                        let k = lc.decide(b, c)?;
                        if opts.trace {
                            directions.push(lc.direction().map_or(f64::NAN, |d| d.as_f64()));
                        }
                        k
                    }
                    None => kill_logn(p, b, c),
                };
                match k {
                    Kill::B => stats.criterion_kill_b += 1,
                    Kill::C => stats.criterion_kill_c += 1,
                }
                (k, KillReason::Criterion)
            }
        };
        if opts.trace {
            kills.push(KillRecord { b, c, kill, reason });
        }
        match kill {
            Kill::B => b = p.next(b),
            Kill::C => c = p.next(c),
        }
        stats.iterations += 1;
        check_bound("kill iterations", stats.iterations, 2 * n)?;
    }
    check_bound("apex pointer", stats.apex_advances, 2 * n)?;
    if let Some(lc) = &linear {
        stats.support_advances = lc.support_advances();
        stats.direction_kept = lc.direction_kept();
        stats.max_direction_slack = lc.max_slack();
        check_bound("support pointer", stats.support_advances, 2 * n)?;
    }
    let (edges, _) = best.best.ok_or(SolverError::NoStableCandidate)?;
    let mft = triangle_of(p, edges[0], edges[1], edges[2])?;
    Ok(SolverReport {
        algorithm,
        anchor: Some([r, s, t]),
        candidates,
        mft,
        stats,
        kills,
        directions,
    })
}

/// Every pair of the two sweep ranges, with an incremental apex per row.
pub fn quadratic<T: Scalar>(p: &ConvexPolygon<T>, opts: &SolveOptions) -> Result<SolverReport<T>, SolverError> {
    let n = p.n();
    if n > opts.quadratic_cap {
        return Err(SolverError::InstanceTooLarge {
            n,
            cap: opts.quadratic_cap,
        });
    }
    let (r, s, t) = initial_3stable(p)?;
    let mut stats = Stats::default();
    let mut candidates = Vec::new();
    let mut best = Best::default();
    let mut b = s;
    loop {
        let mut c = t;
        let mut hint = p.next(t);
        loop {
            if b != c && p.chases(b, c) {
                let (a, adv) = flush::next_opt_apex(p, b, c, hint)?;
                stats.apex_advances += adv;
                hint = a;
                if let Some(area) = flush::area(p, a, b, c).finite() {
                    let stable = flush::is_3stable(p, a, b, c);
                    if stable {
                        best.offer([a, b, c], area);
                    }
                    if opts.keep_candidates {
                        candidates.push(Candidate {
                            edges: [a, b, c],
                            area,
                            stable,
                        });
                    }
                }
            }
            stats.iterations += 1;
            if c == r {
                break;
            }
            c = p.next(c);
        }
        if b == t {
            break;
        }
        b = p.next(b);
    }
    let (edges, _) = best.best.ok_or(SolverError::NoStableCandidate)?;
    let mft = triangle_of(p, edges[0], edges[1], edges[2])?;
    Ok(SolverReport {
        algorithm: Algorithm::Quadratic,
        anchor: Some([r, s, t]),
        candidates,
        mft,
        stats,
        kills: Vec::new(),
        directions: Vec::new(),
    })
}

/// Runs one algorithm and returns the full report.
pub fn solve<T: Scalar>(
    p: &ConvexPolygon<T>,
    algorithm: Algorithm,
    opts: &SolveOptions,
) -> Result<SolverReport<T>, SolverError> {
    match algorithm {
        Algorithm::Linear | Algorithm::Logn => rotate_and_kill(p, algorithm, opts),
        Algorithm::Quadratic => quadratic(p, opts),
        Algorithm::Brute => {
            let bf = brute_force(p, opts.brute_cap)?;
            let candidates = if opts.keep_candidates {
                bf.stable
                    .iter()
                    .map(|&e| Candidate {
                        edges: e,
                        area: flush::area(p, e[0], e[1], e[2]).finite().unwrap_or(T::infinity()),
                        stable: true,
                    })
                    .collect()
            } else {
                Vec::new()
            };
            Ok(SolverReport {
                algorithm,
                anchor: None,
                candidates,
                mft: bf.mft,
                stats: Stats {
                    iterations: bf.triples_examined,
                    ..Stats::default()
                },
                kills: Vec::new(),
                directions: Vec::new(),
            })
        }
    }
}

/// The minimum-area all-flush triangle.
pub fn solve_mft<T: Scalar>(p: &ConvexPolygon<T>, algorithm: Algorithm) -> Result<FlushTriangle<T>, SolverError> {
    let opts = SolveOptions {
        keep_candidates: false,
        ..SolveOptions::default()
    };
    Ok(solve(p, algorithm, &opts)?.mft)
}
