//! Hyperbola branches inscribed in a corner, and their tangents.
//!
//! A branch lives in the open quadrant `apex + alpha*u + beta*v` (`alpha, beta > 0`)
//! and is the curve `alpha * beta = c`. Every tangent line cuts a triangle of
//! the same area `S = 2 c |u x v|` off the quadrant, which turns "does this
//! line cut more than `S`" into a tangency question.

use thiserror::Error;

use crate::flush::{corner_area, CornerSide, ExtArea};
use crate::geom::{CwAngle, DirectedLine, Point};
use crate::polygon::ConvexPolygon;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolaError {
    #[error("branch precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no tangent has the requested direction")]
    NoTangentWithDirection,
    #[error("no common tangent with both branches on its left")]
    NoCommonTangent,
}

/// Position of a line relative to a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineClass {
    Disjoint,
    Tangent,
    Secant,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolaBranch<T> {
    pub apex: Point<T>,
    pub u: Point<T>,
    pub v: Point<T>,
    /// Area cut off by every tangent.
    pub area: T,
    /// `alpha * beta` along the branch.
    pub coef: T,
}

impl<T: Scalar> HyperbolaBranch<T> {
    pub fn new(apex: Point<T>, u: Point<T>, v: Point<T>, area: T) -> Result<Self, HyperbolaError> {
        let (u, v) = match (u.normalized(), v.normalized()) {
            (Some(u), Some(v)) => (u, v),
            _ => return Err(HyperbolaError::PreconditionViolated("zero asymptote".into())),
        };
        let sin = u.cross(v).abs();
        if !(sin > T::zero()) {
            return Err(HyperbolaError::PreconditionViolated("parallel asymptotes".into()));
        }
        if !(area > T::zero() && area.is_finite()) {
            return Err(HyperbolaError::PreconditionViolated(format!(
                "triangle area must be positive and finite, got {area}"
            )));
        }
        Ok(HyperbolaBranch {
            apex,
            u,
            v,
            area,
            coef: area / (T::lit(2.0) * sin),
        })
    }

    fn sin(&self) -> T {
        self.u.cross(self.v).abs()
    }

    /// Point with canonical coordinates `(alpha, beta)`.
    pub fn point(&self, alpha: T, beta: T) -> Point<T> {
        self.apex + self.u * alpha + self.v * beta
    }

    /// Tangent touching at `alpha` (so `beta = c / alpha`), directed from the `v` side to the `u` side.
    pub fn tangent_at(&self, alpha: T) -> DirectedLine<T> {
        let beta = self.coef / alpha;
        let dir = (self.u * alpha - self.v * beta)
            .normalized()
            .expect("non-degenerate tangent");
        DirectedLine {
            anchor: self.point(alpha, beta),
            dir,
        }
    }

    /// Minimum of `n . X` over the branch, or `None` when unbounded below.
    pub fn support(&self, n: Point<T>) -> Option<T> {
        let (a, b) = (n.dot(self.u), n.dot(self.v));
        if a < T::zero() || b < T::zero() {
            return None;
        }
        Some(n.dot(self.apex) + T::lit(2.0) * (self.coef * a * b).sqrt())
    }

    /// Same as [`support`](Self::support) with tiny negative projections clamped to zero.
    fn support_clamped(&self, n: Point<T>) -> T {
        let a = n.dot(self.u).max(T::zero());
        let b = n.dot(self.v).max(T::zero());
        n.dot(self.apex) + T::lit(2.0) * (self.coef * a * b).sqrt()
    }

    /// Area of the triangle `line` cuts off the quadrant, when bounded and nonempty.
    pub fn cut_area(&self, line: &DirectedLine<T>) -> Option<ExtArea<T>> {
        let w = line.dir.normalized()?;
        let eps = T::tolerance().parallel;
        let (cu, cv) = (w.cross(self.u), w.cross(self.v));
        let off = w.cross(line.anchor - self.apex);
        let par_u = cu.abs() <= eps;
        let par_v = cv.abs() <= eps;
        if par_u && par_v {
            return None;
        }
        if par_u {
            let tb = off / cv;
            return (tb > T::zero()).then_some(ExtArea::Infinite);
        }
        if par_v {
            let ta = off / cu;
            return (ta > T::zero()).then_some(ExtArea::Infinite);
        }
        let (ta, tb) = (off / cu, off / cv);
        match (ta > T::zero(), tb > T::zero()) {
            (true, true) => Some(ExtArea::Finite(ta * tb * self.sin() / T::lit(2.0))),
            (false, false) => None,
            _ => Some(ExtArea::Infinite),
        }
    }
}

/// Branch inscribed at vertex `k` whose triangle area equals a corner region cut by edge `j`.
///
/// `Plus`: lies beyond vertex `k`, area of the `Minus` corner at `k` cut by `j`;
/// needs `j` chasing `k` and `j != k - 1`.
/// `Minus`: lies behind vertex `k`, area of the `Plus` corner at `k` cut by `j`;
/// needs `k - 1` chasing `j` and `j != k`.
pub fn corner_branch<T: Scalar>(
    p: &ConvexPolygon<T>,
    k: usize,
    j: usize,
    side: CornerSide,
) -> Result<HyperbolaBranch<T>, HyperbolaError> {
    let n = p.n();
    let (k, j) = (k % n, j % n);
    let km1 = p.prev(k);
    let (u, v, opposite) = match side {
        CornerSide::Plus => {
            if j == km1 || !p.chases(j, k) {
                return Err(HyperbolaError::PreconditionViolated(format!(
                    "edge {j} must chase edge {k} and differ from {km1}"
                )));
            }
            (p.edge_dir(km1), p.edge_dir(k), CornerSide::Minus)
        }
        CornerSide::Minus => {
            if j == k || !p.chases(km1, j) {
                return Err(HyperbolaError::PreconditionViolated(format!(
                    "edge {km1} must chase edge {j} and {j} differ from {k}"
                )));
            }
            (-p.edge_dir(k), -p.edge_dir(km1), CornerSide::Plus)
        }
    };
    let s = corner_area(p, j, k, opposite)
        .map_err(|e| HyperbolaError::PreconditionViolated(e.to_string()))?;
    match s {
        ExtArea::Finite(s) => HyperbolaBranch::new(p.vertex(k), u, v, s),
        ExtArea::Infinite => Err(HyperbolaError::PreconditionViolated(
            "corner region is unbounded".into(),
        )),
    }
}

/// Classifies a line by the area it cuts off the branch's quadrant.
pub fn classify<T: Scalar>(h: &HyperbolaBranch<T>, line: &DirectedLine<T>, rel: T) -> LineClass {
    match h.cut_area(line) {
        None => LineClass::Disjoint,
        Some(ExtArea::Infinite) => LineClass::Secant,
        Some(ExtArea::Finite(a)) => {
            if (a - h.area).abs() <= rel * h.area {
                LineClass::Tangent
            } else if a < h.area {
                LineClass::Disjoint
            } else {
                LineClass::Secant
            }
        }
    }
}

/// The tangent with direction `w` (either orientation of the line is accepted, and `w` is kept).
pub fn tangent_with_direction<T: Scalar>(
    h: &HyperbolaBranch<T>,
    w: Point<T>,
) -> Result<DirectedLine<T>, HyperbolaError> {
    let w = w.normalized().ok_or(HyperbolaError::NoTangentWithDirection)?;
    let den = h.u.cross(h.v);
    let p = w.cross(h.v) / den;
    let q = h.u.cross(w) / den;
    if !(p * q < T::zero()) {
        return Err(HyperbolaError::NoTangentWithDirection);
    }
    let ratio = -p / q;
    let alpha = (h.coef * ratio).sqrt();
    let beta = (h.coef / ratio).sqrt();
    Ok(DirectedLine {
        anchor: h.point(alpha, beta),
        dir: w,
    })
}

/// Distance from `line` to the tangent of `h` with the same direction, or
/// `None` when no tangent has it. Unlike [`classify`] this does not blow up
/// for a branch hugging its asymptotes, where the cut area is tiny.
pub fn tangent_offset<T: Scalar>(h: &HyperbolaBranch<T>, line: &DirectedLine<T>) -> Option<T> {
    let t = tangent_with_direction(h, line.dir).ok()?;
    Some(line.signed_distance(t.anchor).abs())
}

/// [`tangent_with_direction`] for a clockwise angle.
pub fn tangent_with_angle<T: Scalar>(
    h: &HyperbolaBranch<T>,
    d: CwAngle<T>,
) -> Result<DirectedLine<T>, HyperbolaError> {
    tangent_with_direction(h, d.direction())
}

/// Directions `w` keeping every ray's quadrant on the left of a line with
/// direction `w`: the arc from `start`, clockwise by `width`.
fn left_arc<T: Scalar>(rays: &[Point<T>]) -> Option<(T, T)> {
    let pi = T::PI();
    let slack = T::lit(1e-12);
    let starts: Vec<T> = rays.iter().map(|r| CwAngle::of(*r).radians()).collect();
    // Clockwise offset of `x` past `base`, in (-pi, pi].
    let rel = |x: T, base: T| {
        let o = crate::geom::wrap_two_pi(x - base);
        if o > pi {
            o - T::TAU()
        } else {
            o
        }
    };
    let start = starts.iter().copied().find(|&s| {
        starts.iter().all(|&a| {
            let o = rel(s, a);
            o >= -slack && o <= pi + slack
        })
    })?;
    let width = starts
        .iter()
        .map(|&a| rel(a + pi, start).max(T::zero()))
        .fold(pi, |x, y| x.min(y));
    Some((start, width))
}

/// Finds a sign change of `f` on `[lo, hi]` given `f(lo) <= 0 <= f(hi)` or the reverse.
///
/// Regula falsi with the Illinois modification, falling back to bisection
/// when the interpolation stalls; runs to full precision.
pub fn bracketed_root<T: Scalar, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, mut flo: T, mut fhi: T) -> T {
    if flo == T::zero() {
        return lo;
    }
    if fhi == T::zero() {
        return hi;
    }
    let two = T::lit(2.0);
    let mut side = 0i8;
    for iter in 0..200 {
        let width = hi - lo;
        if width.abs() <= T::epsilon() * T::lit(4.0) * (lo.abs() + hi.abs()).max(T::min_positive_value()) {
            break;
        }
        let mut x = (lo * fhi - hi * flo) / (fhi - flo);
        if !(x > lo && x < hi) || iter % 8 == 7 {
            x = (lo + hi) / two;
        }
        let fx = f(x);
        if fx == T::zero() {
            return x;
        }
        if (fx < T::zero()) == (flo < T::zero()) {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi = fhi / two;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo = flo / two;
            }
            side = 1;
        }
    }
    if flo.abs() < fhi.abs() {
        lo
    } else {
        hi
    }
}

/// A common tangent with both branches on its left.
///
/// Searches the arc of directions admissible for both branches; the
/// difference of the two support offsets must change sign across it,
/// otherwise `NoCommonTangent` is returned.
pub fn common_tangent<T: Scalar>(
    h1: &HyperbolaBranch<T>,
    h2: &HyperbolaBranch<T>,
) -> Result<DirectedLine<T>, HyperbolaError> {
    let (start, width) =
        left_arc(&[h1.u, h1.v, h2.u, h2.v]).ok_or(HyperbolaError::NoCommonTangent)?;
    let w1 = CwAngle(start).direction();
    let w2 = CwAngle(start + width).direction();
    if width <= T::zero() {
        return Ok(line_with_direction(h1, w1));
    }
    if width >= T::PI() {
        // Split a half-turn arc so interpolated directions never vanish.
        let mid = CwAngle(start + width / T::lit(2.0)).direction();
        let g = |w: Point<T>| gap(h1, h2, w);
        let (f1, fm) = (g(w1), g(mid));
        if (f1 > T::zero()) != (fm > T::zero()) {
            return Ok(common_tangent_between(h1, h2, w1, mid, true)?.0);
        }
        return Ok(common_tangent_between(h1, h2, mid, w2, true)?.0);
    }
    Ok(common_tangent_between(h1, h2, w1, w2, true)?.0)
}

/// Offset of `h2`'s supporting line minus `h1`'s, for lines with direction `w`.
fn gap<T: Scalar>(h1: &HyperbolaBranch<T>, h2: &HyperbolaBranch<T>, w: Point<T>) -> T {
    let n = w.perp_left();
    h2.support_clamped(n) - h1.support_clamped(n)
}

/// Common tangent with direction between `w1` and `w2` (less than a half
/// turn apart, clockwise), both branches on its left. Directions are
/// interpolated linearly between the two vectors.
///
/// Unless `either_sign`, the support gap must go from non-positive at `w1` to
/// non-negative at `w2`. Returns the line and its direction.
pub fn common_tangent_between<T: Scalar>(
    h1: &HyperbolaBranch<T>,
    h2: &HyperbolaBranch<T>,
    w1: Point<T>,
    w2: Point<T>,
    either_sign: bool,
) -> Result<(DirectedLine<T>, Point<T>), HyperbolaError> {
    let at = |lam: T| w1 * (T::one() - lam) + w2 * lam;
    let f = |lam: T| gap(h1, h2, at(lam));
    let (f0, f1) = (f(T::zero()), f(T::one()));
    let ordered = f0 <= T::zero() && f1 >= T::zero();
    let reversed = f0 >= T::zero() && f1 <= T::zero();
    if !(ordered || (either_sign && reversed)) {
        return Err(HyperbolaError::NoCommonTangent);
    }
    let lam = bracketed_root(f, T::zero(), T::one(), f0, f1);
    let w = at(lam).normalized().ok_or(HyperbolaError::NoCommonTangent)?;
    Ok((line_with_direction(h1, w), w))
}

fn line_with_direction<T: Scalar>(h: &HyperbolaBranch<T>, w: Point<T>) -> DirectedLine<T> {
    let n = w.perp_left();
    let lift = h.support_clamped(n) - n.dot(h.apex);
    DirectedLine {
        anchor: h.apex + n * lift,
        dir: w,
    }
}

/// Real roots of a quartic given highest coefficient first.
///
/// Candidates come from the polynomial and from its reversal in `1 / t`,
/// so a nearly vanishing leading or constant coefficient (a tangent along
/// an asymptote) cannot spoil both. Each candidate is polished by Newton
/// steps and kept only if its relative residual is small.
fn quartic_roots(c: [f64; 5]) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let c = c.map(|x| x / scale);
    let solve = |c: [f64; 5]| -> Vec<f64> {
        let lead = c.iter().position(|x| x.abs() > 1e-15).unwrap_or(5);
        match lead {
            0 => roots::find_roots_quartic(c[0], c[1], c[2], c[3], c[4]).as_ref().to_vec(),
            1 => roots::find_roots_cubic(c[1], c[2], c[3], c[4]).as_ref().to_vec(),
            2 => roots::find_roots_quadratic(c[2], c[3], c[4]).as_ref().to_vec(),
            3 => roots::find_roots_linear(c[3], c[4]).as_ref().to_vec(),
            _ => Vec::new(),
        }
    };
    let poly = |t: f64| (((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4];
    let dpoly = |t: f64| ((4.0 * c[0] * t + 3.0 * c[1]) * t + 2.0 * c[2]) * t + c[3];
    let size = |t: f64| {
        let a = t.abs();
        (((c[0].abs() * a + c[1].abs()) * a + c[2].abs()) * a + c[3].abs()) * a + c[4].abs()
    };
    let mut cands = solve(c);
    cands.extend(solve([c[4], c[3], c[2], c[1], c[0]]).into_iter().filter(|s| *s != 0.0).map(|s| 1.0 / s));
    let mut out = Vec::new();
    for t0 in cands {
        let mut t = t0;
        for _ in 0..8 {
            let d = dpoly(t);
            if d == 0.0 || !t.is_finite() {
                break;
            }
            let step = poly(t) / d;
            t -= step;
            if step.abs() <= 1e-16 * t.abs() {
                break;
            }
        }
        if t.is_finite() && poly(t).abs() <= 1e-9 * size(t) {
            out.push(t);
        }
    }
    out
}

/// Every common tangent of two branches, in any relative position.
///
/// Tangents of one branch are parametrized by `tau > 0` (touch point
/// `(sqrt(c) tau, sqrt(c) / tau)`); tangency to the other is a quartic in
/// `tau`, solved in closed form and polished by Newton steps. The branch
/// with the wider asymptote angle is parametrized, since a nearly flat one
/// makes its own frame ill-conditioned. Lines are directed along `h1`'s
/// tangent orientation.
pub fn common_tangents<T: Scalar>(h1: &HyperbolaBranch<T>, h2: &HyperbolaBranch<T>) -> Vec<DirectedLine<T>> {
    if h1.u.cross(h1.v).abs() >= h2.u.cross(h2.v).abs() {
        return tangents_in_frame(h1, h2);
    }
    let det = h1.u.cross(h1.v);
    tangents_in_frame(h2, h1)
        .into_iter()
        .map(|l| {
            // `tangent_at` directions have a positive `u` coordinate.
            if l.dir.cross(h1.v) / det < T::zero() {
                l.reversed()
            } else {
                l
            }
        })
        .collect()
}

fn tangents_in_frame<T: Scalar>(h1: &HyperbolaBranch<T>, h2: &HyperbolaBranch<T>) -> Vec<DirectedLine<T>> {
    let f = |x: T| x.as_f64();
    let (u1, v1) = (h1.u.cast::<f64>(), h1.v.cast::<f64>());
    let (u2, v2) = (h2.u.cast::<f64>(), h2.v.cast::<f64>());
    let det = u1.cross(v1);
    // Coordinates of a world vector in h1's (u1, v1) frame.
    let local = |w: Point<f64>| Point::new(w.cross(v1) / det, u1.cross(w) / det);
    let delta = local(h2.apex.cast::<f64>() - h1.apex.cast::<f64>());
    let (ru, rv) = (local(u2), local(v2));
    let (r11, r21, r12, r22) = (ru.x, ru.y, rv.x, rv.y);
    let (c1, c2) = (f(h1.coef), f(h2.coef));
    let s1 = c1.sqrt();
    let (p2, p1, p0) = (-delta.y, 2.0 * s1, -delta.x);
    let coeffs = [
        p2 * p2 - 4.0 * c2 * r21 * r22,
        2.0 * p2 * p1,
        p1 * p1 + 2.0 * p2 * p0 - 4.0 * c2 * (r21 * r12 + r11 * r22),
        2.0 * p1 * p0,
        p0 * p0 - 4.0 * c2 * r11 * r12,
    ];
    let mut out: Vec<DirectedLine<T>> = Vec::new();
    for t in quartic_roots(coeffs) {
        if !(t > 0.0) {
            continue;
        }
        let m1 = r11 + r21 * t * t;
        let m2 = r12 + r22 * t * t;
        let k = 2.0 * s1 * t - delta.x - delta.y * t * t;
        if !(k / m1 > 0.0 && k / m2 > 0.0) {
            continue;
        }
        let line = h1.tangent_at(T::lit(s1 * t));
        let dup = out
            .iter()
            .any(|l| l.dir.cross(line.dir).abs().as_f64() < 1e-12 && (l.anchor - line.anchor).norm().as_f64() < 1e-9);
        if !dup {
            out.push(line);
        }
    }
    out
}
