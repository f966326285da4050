//! Deciding which endpoint of the current pair can be discarded.

use crate::flush::{back_stable_general, forw_stable_general, CornerSide};
use crate::geom::{intersect_lines, DirectedLine, Point};
use crate::hyperbola::{classify, common_tangent_between, corner_branch, tangent_offset, HyperbolaBranch};
use crate::polygon::{ConvexPolygon, SupportPointer};
use crate::scalar::Scalar;

use super::{Kill, KillReason, SolverError};

/// Decisions that need no geometry: range ends, adjacency, and `b` not chasing `c + 1`.
pub fn trivial_kill<T: Scalar>(
    p: &ConvexPolygon<T>,
    b: usize,
    c: usize,
    r: usize,
    t: usize,
) -> Option<(Kill, KillReason)> {
    if b == t {
        Some((Kill::C, KillReason::EndOfB))
    } else if c == r {
        Some((Kill::B, KillReason::EndOfC))
    } else if p.next(b) == c {
        Some((Kill::C, KillReason::Adjacent))
    } else if !p.chases(b, p.next(c)) {
        Some((Kill::B, KillReason::NotChasing))
    } else {
        None
    }
}

/// Constant amortized-time criterion.
///
/// Four corner hyperbolas are built at the vertices after `b` and after `c`.
/// Their two mixed common tangents bound a range of directions; a line `L`
/// with a direction in that range through the tangents' crossing decides
/// the step: if the polygon lies right of `L`, `b` is discarded, otherwise
/// `c`. The chosen direction never decreases over the sweep, so one
/// support pointer serves all steps.
///
/// Directions are clockwise offsets from the reverse of edge `s + 1`.
#[derive(Clone, Debug)]
pub struct LinearCriterion<'a, T> {
    p: &'a ConvexPolygon<T>,
    first: usize,
    /// Offset of the reverse of edge `r`, the end of the admissible range.
    end: T,
    d: Option<T>,
    range: Option<(T, T)>,
    pointer: SupportPointer<T>,
    check_tangents: bool,
    kept: usize,
    slack: f64,
}

impl<'a, T: Scalar> LinearCriterion<'a, T> {
    pub fn new(p: &'a ConvexPolygon<T>, r: usize, s: usize, _t: usize, check_tangents: bool) -> Self {
        let first = p.next(s);
        LinearCriterion {
            p,
            first,
            end: p.turn(first, r),
            d: None,
            range: None,
            pointer: SupportPointer::new(p, first),
            check_tangents,
            kept: 0,
            slack: 0.0,
        }
    }

    /// Direction used at the latest criterion step.
    pub fn direction(&self) -> Option<T> {
        self.d
    }

    /// Tangent directions bounding the admissible range at the latest step.
    pub fn range(&self) -> Option<(T, T)> {
        self.range
    }

    pub fn support_advances(&self) -> usize {
        self.pointer.advances()
    }

    pub fn direction_kept(&self) -> usize {
        self.kept
    }

    pub fn max_slack(&self) -> f64 {
        self.slack
    }

    fn branch(&self, k: usize, j: usize, side: CornerSide, b: usize, c: usize) -> Result<HyperbolaBranch<T>, SolverError> {
        corner_branch(self.p, k, j, side).map_err(|e| SolverError::CommonTangentInvalid {
            b,
            c,
            detail: e.to_string(),
        })
    }

    fn tangent(
        &self,
        h1: &HyperbolaBranch<T>,
        h2: &HyperbolaBranch<T>,
        w1: Point<T>,
        w2: Point<T>,
        b: usize,
        c: usize,
    ) -> Result<(DirectedLine<T>, T), SolverError> {
        let (line, w) = common_tangent_between(h1, h2, w1, w2, false).map_err(|e| {
            SolverError::CommonTangentInvalid {
                b,
                c,
                detail: e.to_string(),
            }
        })?;
        if self.check_tangents {
            let (rel, tol) = (self.p.tolerance().rel, self.p.abs_tol());
            for h in [h1, h2] {
                let off = tangent_offset(h, &line);
                if !off.is_some_and(|d| d <= tol) {
                    return Err(SolverError::CommonTangentInvalid {
                        b,
                        c,
                        detail: format!("line classified {:?}, offset {off:?}", classify(h, &line, rel)),
                    });
                }
            }
        }
        // Clockwise angle from `w1`, below a half turn.
        let phi = (-w1.cross(w)).atan2(w1.dot(w)).max(T::zero());
        Ok((line, phi))
    }

    /// Decides a pair not settled by [`trivial_kill`].
    pub fn decide(&mut self, b: usize, c: usize) -> Result<Kill, SolverError> {
        let p = self.p;
        let (b1, c1) = (p.next(b), p.next(c));
        let g_plus = self.branch(c1, b, CornerSide::Plus, b, c)?;
        let g_minus = self.branch(b1, c1, CornerSide::Minus, b, c)?;
        let h_plus = self.branch(c1, b1, CornerSide::Plus, b, c)?;
        let h_minus = self.branch(b1, c, CornerSide::Minus, b, c)?;

        // Candidate directions run from the reverse of edge b+1 to the reverse of edge c.
        let (w1, w2) = (-p.edge_dir(b1), -p.edge_dir(c));
        let base = p.turn(self.first, b1);
        let (l_hg, phi_hg) = self.tangent(&h_plus, &g_minus, w1, w2, b, c)?;
        let (l_gh, phi_gh) = self.tangent(&g_plus, &h_minus, w1, w2, b, c)?;
        let (d_hg, d_gh) = (base + phi_hg, base + phi_gh);
        let tol = p.tolerance().turn;
        if d_hg < -tol || d_gh > self.end + tol || d_hg > d_gh + tol {
            return Err(SolverError::DRangeViolated {
                b,
                c,
                lo: d_hg.as_f64(),
                hi: d_gh.as_f64(),
                bound: self.end.as_f64(),
            });
        }
        let d_gh = d_gh.max(d_hg);
        self.range = Some((d_hg, d_gh));

        let d = match self.d {
            Some(prev) if prev >= d_hg && prev <= d_gh => {
                self.kept += 1;
                prev
            }
            Some(prev) if prev > d_gh => {
                let back = (prev - d_gh).as_f64();
                if prev - d_gh > tol {
                    return Err(SolverError::DMonotonicityViolated {
                        b,
                        c,
                        previous: prev.as_f64(),
                        current: d_hg.as_f64(),
                    });
                }
                self.slack = self.slack.max(back);
                self.kept += 1;
                prev
            }
            _ => d_hg,
        };
        self.d = Some(d);

        let pivot = if d_gh - d_hg <= p.tolerance().parallel || d == d_hg {
            l_hg.anchor
        } else {
            intersect_lines(&l_hg, &l_gh, p.tolerance().parallel).unwrap_or(l_hg.anchor)
        };
        let (m, _) = self.pointer.support_line(p, d)?;
        let dir = self.pointer.direction(p, d);
        // The polygon is right of L iff its extreme vertex in L's left normal is.
        if dir.cross(p.vertex(m) - pivot) <= T::zero() {
            Ok(Kill::B)
        } else {
            Ok(Kill::C)
        }
    }
}

/// First/last apex positions that keep one edge of the triangle stable.
///
/// For a pair `(j, k)`, apexes range over `k + 1 ..= j - 1`:
/// `x` is the first apex making `j` back-stable, `x_prime` the last making
/// `j` forw-stable (else `k`), `y` the first making `k` back-stable (else
/// `j`), `y_prime` the last making `k` forw-stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableBounds {
    pub x: usize,
    pub x_prime: usize,
    pub y: usize,
    pub y_prime: usize,
}

/// Last position in `lo..=hi` where `pred` holds, given it holds on a prefix.
fn last_true(lo: usize, hi: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    if lo > hi || !pred(lo) {
        return None;
    }
    let (mut good, mut bad) = (lo, hi + 1);
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good)
}

/// First position in `lo..=hi` where `pred` holds, given it holds on a suffix.
fn first_true(lo: usize, hi: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    if lo > hi || !pred(hi) {
        return None;
    }
    let (mut bad, mut good) = (lo as isize - 1, hi as isize);
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if pred(mid as usize) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good as usize)
}

/// [`StableBounds`] by binary search over apex positions.
pub fn stable_bounds<T: Scalar>(p: &ConvexPolygon<T>, j: usize, k: usize) -> StableBounds {
    let at = |pos: usize| (k + pos) % p.n();
    let last = p.steps(k, j) - 1;
    let x = first_true(1, last, |q| back_stable_general(p, at(q), j, k)).map_or(p.prev(j), at);
    let x_prime = last_true(1, last, |q| forw_stable_general(p, at(q), j, k)).map_or(k, at);
    let y = first_true(1, last, |q| back_stable_general(p, j, k, at(q))).map_or(j, at);
    let y_prime = last_true(1, last, |q| forw_stable_general(p, j, k, at(q))).map_or(p.next(k), at);
    StableBounds {
        x,
        x_prime,
        y,
        y_prime,
    }
}

/// Logarithmic-time criterion: discard `b` iff the last apex keeping `b`
/// forw-stable comes before the first apex keeping `c + 1` back-stable,
/// both for the pair `(b, c + 1)` and ordered clockwise from `c`.
pub fn kill_logn<T: Scalar>(p: &ConvexPolygon<T>, b: usize, c: usize) -> Kill {
    let k = p.next(c);
    let at = |pos: usize| (c + pos) % p.n();
    let last = p.steps(c, b) - 1;
    let x_prime = last_true(2, last, |q| forw_stable_general(p, at(q), b, k)).unwrap_or(1);
    let y = first_true(2, last, |q| back_stable_general(p, b, k, at(q))).unwrap_or(last + 1);
    if x_prime < y {
        Kill::B
    } else {
        Kill::C
    }
}
