//! All-flush triangles, their areas, and the stability predicates.
//!
//! A flush triangle is given by three edge indices in clockwise order; its
//! sides are the lines through those edges. It is bounded exactly when each
//! edge chases the next one.

use std::cmp::Ordering;

use thiserror::Error;

use crate::geom::{intersect_lines, Point};
use crate::polygon::ConvexPolygon;
use crate::scalar::{definitely_less, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlushError {
    #[error("edges {0:?} are not distinct and clockwise")]
    NotClockwiseTriple([usize; 3]),
    #[error("corner area undefined for edge {edge} at vertex {vertex}")]
    InvalidEdgePair { edge: usize, vertex: usize },
    #[error("triangle {0:?} is unbounded")]
    InfiniteTriangle([usize; 3]),
    #[error("edge {b} does not chase edge {c}")]
    NotChasing { b: usize, c: usize },
}

/// Area that may be unbounded.
///
/// Two unbounded areas are never compared; doing so is a logic error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtArea<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtArea<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtArea::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            ExtArea::Finite(x) => Some(x),
            ExtArea::Infinite => None,
        }
    }

    /// `self < other` by more than the relative tolerance.
    pub fn definitely_less(&self, other: &Self, rel: T) -> bool {
        match (*self, *other) {
            (ExtArea::Finite(x), ExtArea::Finite(y)) => definitely_less(x, y, rel),
            (ExtArea::Finite(_), ExtArea::Infinite) => true,
            (ExtArea::Infinite, ExtArea::Finite(_)) => false,
            (ExtArea::Infinite, ExtArea::Infinite) => {
                debug_assert!(false, "compared two unbounded areas");
                false
            }
        }
    }

    /// `self <= other` up to the relative tolerance.
    pub fn not_greater(&self, other: &Self, rel: T) -> bool {
        !other.definitely_less(self, rel)
    }
}

/// Which side of a vertex a corner region lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerSide {
    /// Beyond the vertex, between the forward extensions of its two edges.
    Plus,
    /// Behind the vertex, between the backward extensions of its two edges.
    Minus,
}

/// The three edges of a triangle, by position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct StabilityFlags {
    pub back: bool,
    pub forw: bool,
    pub stable: bool,
}

/// A flush triangle with cached corners and area.
#[derive(Clone, Debug, PartialEq)]
pub struct FlushTriangle<T> {
    pub edges: [usize; 3],
    /// Corners `l_a ∩ l_b`, `l_b ∩ l_c`, `l_c ∩ l_a` when bounded.
    pub corners: Option<[Point<T>; 3]>,
    pub area: ExtArea<T>,
}

impl<T: Scalar> FlushTriangle<T> {
    /// Cyclic rotation with the smallest index first.
    pub fn canonical(&self) -> [usize; 3] {
        canonical(self.edges)
    }
}

/// Rotates a triple so its smallest entry comes first.
pub fn canonical(t: [usize; 3]) -> [usize; 3] {
    let m = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[m], t[(m + 1) % 3], t[(m + 2) % 3]]
}

/// Whether `i, j, k` are distinct and appear in this clockwise cyclic order.
pub fn is_clockwise_triple<T: Scalar>(p: &ConvexPolygon<T>, i: usize, j: usize, k: usize) -> bool {
    let n = p.n();
    i != j && j != k && k != i && i < n && j < n && k < n && p.steps(i, j) + p.steps(j, k) + p.steps(k, i) == n
}

/// Bounded iff each edge chases the next.
pub fn is_finite<T: Scalar>(p: &ConvexPolygon<T>, i: usize, j: usize, k: usize) -> bool {
    p.chases(i, j) && p.chases(j, k) && p.chases(k, i)
}

/// Area of the flush triangle on clockwise edges `i, j, k`.
///
/// Uses the three line equations directly: with unit normals `n_i` and
/// offsets `h_i`, the area is `det^2 / (2 |C_1 C_2 C_3|)` where `C_i` are the
/// cofactors of the offsets.
pub fn area<T: Scalar>(p: &ConvexPolygon<T>, i: usize, j: usize, k: usize) -> ExtArea<T> {
    if !is_finite(p, i, j, k) {
        return ExtArea::Infinite;
    }
    let o = p.vertex(j);
    let (n1, n2, n3) = (
        p.edge_dir(i).perp_left(),
        p.edge_dir(j).perp_left(),
        p.edge_dir(k).perp_left(),
    );
    let (h1, h2, h3) = (
        n1.dot(p.vertex(i) - o),
        T::zero(),
        n3.dot(p.vertex(k) - o),
    );
    let c1 = n2.cross(n3);
    let c2 = n3.cross(n1);
    let c3 = n1.cross(n2);
    let det = h1 * c1 + h2 * c2 + h3 * c3;
    ExtArea::Finite(det * det / (T::lit(2.0) * (c1 * c2 * c3).abs()))
}

/// Builds the flush triangle on clockwise edges `i, j, k`.
pub fn triangle_of<T: Scalar>(
    p: &ConvexPolygon<T>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<FlushTriangle<T>, FlushError> {
    if !is_clockwise_triple(p, i, j, k) {
        return Err(FlushError::NotClockwiseTriple([i, j, k]));
    }
    let a = area(p, i, j, k);
    let corners = if a.is_finite() {
        let tol = p.tolerance().parallel;
        let (li, lj, lk) = (p.edge_line(i), p.edge_line(j), p.edge_line(k));
        match (
            intersect_lines(&li, &lj, tol),
            intersect_lines(&lj, &lk, tol),
            intersect_lines(&lk, &li, tol),
        ) {
            (Ok(x), Ok(y), Ok(z)) => Some([x, y, z]),
            _ => None,
        }
    } else {
        None
    };
    Ok(FlushTriangle {
        edges: [i, j, k],
        corners,
        area: a,
    })
}

/// Parameter along the ray `origin + t * dir` where it meets the line of edge `e`.
fn ray_hit<T: Scalar>(p: &ConvexPolygon<T>, origin: Point<T>, dir: Point<T>, e: usize) -> T {
    let d = p.edge_dir(e);
    d.cross(p.vertex(e) - origin) / d.cross(dir)
}

/// Area cut from the corner region of `side` at vertex `k` by the half-plane of edge `a`.
///
/// The `Minus` region is bounded iff edge `a` chases edge `k` (zero when `a = k - 1`);
/// the `Plus` region is bounded iff edge `k - 1` chases edge `a` (zero when `a = k`).
pub fn corner_area<T: Scalar>(
    p: &ConvexPolygon<T>,
    a: usize,
    k: usize,
    side: CornerSide,
) -> Result<ExtArea<T>, FlushError> {
    let n = p.n();
    let (a, k) = (a % n, k % n);
    let km1 = p.prev(k);
    let invalid = FlushError::InvalidEdgePair { edge: a, vertex: k };
    match side {
        CornerSide::Minus => {
            if a == k {
                return Err(invalid);
            }
            if a == km1 {
                return Ok(ExtArea::Finite(T::zero()));
            }
            if !p.chases(a, k) {
                return Ok(ExtArea::Infinite);
            }
        }
        CornerSide::Plus => {
            if a == km1 {
                return Err(invalid);
            }
            if a == k {
                return Ok(ExtArea::Finite(T::zero()));
            }
            if !p.chases(km1, a) {
                return Ok(ExtArea::Infinite);
            }
        }
    }
    let (r1, r2) = match side {
        CornerSide::Minus => (-p.edge_dir(k), -p.edge_dir(km1)),
        CornerSide::Plus => (p.edge_dir(km1), p.edge_dir(k)),
    };
    let v = p.vertex(k);
    let t1 = ray_hit(p, v, r1, a).max(T::zero());
    let t2 = ray_hit(p, v, r2, a).max(T::zero());
    Ok(ExtArea::Finite(t1 * t2 * r1.cross(r2).abs() / T::lit(2.0)))
}

fn corner<T: Scalar>(p: &ConvexPolygon<T>, a: usize, k: usize, side: CornerSide) -> ExtArea<T> {
    corner_area(p, a, k, side).expect("corner pair is valid by construction")
}

/// Edge `x` is back-stable in the triangle with previous edge `prev` and next edge `next`,
/// by the corner-region comparison (valid for unbounded triangles too).
pub fn back_stable_general<T: Scalar>(p: &ConvexPolygon<T>, prev: usize, x: usize, next: usize) -> bool {
    if !p.chases(prev, x) {
        return false;
    }
    let lost = corner(p, prev, x, CornerSide::Minus);
    let gained = corner(p, next, x, CornerSide::Plus);
    trade_not_worse(p, lost, gained)
}

/// Edge `x` is forw-stable in the triangle with previous edge `prev` and next edge `next`,
/// by the corner-region comparison (valid for unbounded triangles too).
pub fn forw_stable_general<T: Scalar>(p: &ConvexPolygon<T>, prev: usize, x: usize, next: usize) -> bool {
    if !p.chases(x, next) {
        return false;
    }
    let x1 = p.next(x);
    let lost = corner(p, next, x1, CornerSide::Plus);
    let gained = corner(p, prev, x1, CornerSide::Minus);
    trade_not_worse(p, lost, gained)
}

/// `lost <= gained` up to the tolerance, relative to the corner regions.
/// This resolves ties far below the full-area slack of the bounded
/// predicates, and stays monotone in `lost`.
fn trade_not_worse<T: Scalar>(p: &ConvexPolygon<T>, lost: ExtArea<T>, gained: ExtArea<T>) -> bool {
    lost.not_greater(&gained, p.tolerance().rel)
}

/// Back-stability of `x` in a bounded triangle by comparing full areas.
pub fn back_stable_finite<T: Scalar>(p: &ConvexPolygon<T>, prev: usize, x: usize, next: usize) -> bool {
    let xm = p.prev(x);
    if xm == prev {
        return true;
    }
    let here = area(p, prev, x, next);
    let there = area(p, prev, xm, next);
    !there.definitely_less(&here, p.tolerance().rel)
}

/// Forw-stability of `x` in a bounded triangle by comparing full areas.
pub fn forw_stable_finite<T: Scalar>(p: &ConvexPolygon<T>, prev: usize, x: usize, next: usize) -> bool {
    let xp = p.next(x);
    if xp == next {
        return true;
    }
    let here = area(p, prev, x, next);
    let there = area(p, prev, xp, next);
    !there.definitely_less(&here, p.tolerance().rel)
}

/// Back/forw stability of one edge of `tri`.
///
/// Bounded triangles compare full areas; unbounded ones use the corner
/// regions and carry no `stable` flag.
pub fn edge_stability<T: Scalar>(
    p: &ConvexPolygon<T>,
    tri: [usize; 3],
    which: Which,
) -> Result<StabilityFlags, FlushError> {
    let [a, b, c] = tri;
    if !is_clockwise_triple(p, a, b, c) {
        return Err(FlushError::NotClockwiseTriple(tri));
    }
    let (prev, x, next) = match which {
        Which::A => (c, a, b),
        Which::B => (a, b, c),
        Which::C => (b, c, a),
    };
    if is_finite(p, a, b, c) {
        let back = back_stable_finite(p, prev, x, next);
        let forw = forw_stable_finite(p, prev, x, next);
        Ok(StabilityFlags {
            back,
            forw,
            stable: back && forw,
        })
    } else {
        Err(FlushError::InfiniteTriangle(tri))
    }
}

/// Generalized back/forw flags, defined for unbounded triangles as well.
pub fn edge_stability_general<T: Scalar>(
    p: &ConvexPolygon<T>,
    tri: [usize; 3],
    which: Which,
) -> StabilityFlags {
    let [a, b, c] = tri;
    let (prev, x, next) = match which {
        Which::A => (c, a, b),
        Which::B => (a, b, c),
        Which::C => (b, c, a),
    };
    let back = back_stable_general(p, prev, x, next);
    let forw = forw_stable_general(p, prev, x, next);
    StabilityFlags {
        back,
        forw,
        stable: back && forw && is_finite(p, a, b, c),
    }
}

/// Bounded, and no single edge can be moved to shrink the triangle.
pub fn is_3stable<T: Scalar>(p: &ConvexPolygon<T>, a: usize, b: usize, c: usize) -> bool {
    if !is_clockwise_triple(p, a, b, c) || !is_finite(p, a, b, c) {
        return false;
    }
    [(c, a, b), (a, b, c), (b, c, a)].iter().all(|&(u, x, w)| {
        back_stable_finite(p, u, x, w) && forw_stable_finite(p, u, x, w)
    })
}

/// Clockwise-first apex minimizing the triangle on edges `b`, `c`.
///
/// Candidates are `c + 1 ..= b - 1`; bounded ones run from the farthest vertex
/// of `b` up to the edge before the farthest vertex of `c`. The walk starts at
/// `hint` (or the first bounded candidate, whichever is later) and moves
/// clockwise while the area strictly drops. Returns the apex and the number of
/// steps taken.
pub fn next_opt_apex<T: Scalar>(
    p: &ConvexPolygon<T>,
    b: usize,
    c: usize,
    hint: usize,
) -> Result<(usize, usize), FlushError> {
    if !p.chases(b, c) {
        return Err(FlushError::NotChasing { b, c });
    }
    let first = p.next(c);
    let pos = |x: usize| p.steps(first, x);
    let last = pos(p.prev(b));
    let (db, dc) = (p.farthest(b), p.farthest(c));
    if db == dc {
        return Ok((p.prev(db), 0));
    }
    let hint = if pos(hint) <= last { hint } else { first };
    let mut a = if pos(hint) >= pos(db) { hint } else { db };
    let end = p.prev(dc);
    if pos(a) > pos(end) {
        a = end;
    }
    let mut cur = area(p, a, b, c);
    let mut steps = 0;
    // Exact comparison: a nearly flat turn can lower the area by less than
    // the tolerance just before a real drop.
    while a != end {
        let nxt = p.next(a);
        let cand = area(p, nxt, b, c);
        if !cand.definitely_less(&cur, T::zero()) {
            break;
        }
        a = nxt;
        cur = cand;
        steps += 1;
    }
    Ok((a, steps))
}

/// Whether two clockwise triples admit an alternating, non-strictly clockwise merge.
pub fn is_interleaving(t1: [usize; 3], t2: [usize; 3], n: usize) -> bool {
    let steps = |a: usize, b: usize| (b + n - a) % n;
    for r1 in 0..3 {
        for r2 in 0..3 {
            let x = [t1[r1], t1[(r1 + 1) % 3], t1[(r1 + 2) % 3]];
            let y = [t2[r2], t2[(r2 + 1) % 3], t2[(r2 + 2) % 3]];
            let seq = [x[0], y[0], x[1], y[1], x[2], y[2]];
            let total: usize = (0..6).map(|i| steps(seq[i], seq[(i + 1) % 6])).sum();
            if total == n {
                return true;
            }
        }
    }
    false
}

/// Orders triangles by area, then by canonical triple.
pub fn compare_by_area<T: Scalar>(x: &FlushTriangle<T>, y: &FlushTriangle<T>) -> Ordering {
    let key = |t: &FlushTriangle<T>| t.area.finite().unwrap_or(T::infinity());
    key(x)
        .partial_cmp(&key(y))
        .unwrap_or(Ordering::Equal)
        .then_with(|| x.canonical().cmp(&y.canonical()))
}
