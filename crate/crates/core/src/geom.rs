//! Planar primitives: points, directed lines, clockwise angles.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

/// Failures of the elementary constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// The two lines are parallel (or coincident) within tolerance.
    #[error("lines are parallel within tolerance")]
    ParallelLines,
    /// A direction vector of zero length was supplied.
    #[error("zero-length direction")]
    ZeroDirection,
}

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; negative when `o` is clockwise of `self`.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero() && n.is_finite()).then(|| Point::new(self.x / n, self.y / n))
    }

    /// Rotation by +90 degrees (counterclockwise).
    pub fn perp_left(self) -> Self {
        Point::new(-self.y, self.x)
    }

    /// Rotation clockwise by `phi` radians.
    pub fn rotate_cw(self, phi: T) -> Self {
        let (s, c) = phi.sin_cos();
        Point::new(self.x * c + self.y * s, -self.x * s + self.y * c)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

/// Which side of a directed line a point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    On,
}

/// A line with an anchor point and a nonzero direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectedLine<T> {
    pub anchor: Point<T>,
    pub dir: Point<T>,
}

impl<T: Scalar> DirectedLine<T> {
    pub fn new(anchor: Point<T>, dir: Point<T>) -> Result<Self, GeomError> {
        if !(dir.norm() > T::zero()) {
            return Err(GeomError::ZeroDirection);
        }
        Ok(DirectedLine { anchor, dir })
    }

    /// Line from `p` towards `q`.
    pub fn through(p: Point<T>, q: Point<T>) -> Result<Self, GeomError> {
        Self::new(p, q - p)
    }

    pub fn point_at(&self, t: T) -> Point<T> {
        self.anchor + self.dir * t
    }

    /// Parameter of the orthogonal projection of `p`, in units of `dir`.
    pub fn param_of(&self, p: Point<T>) -> T {
        (p - self.anchor).dot(self.dir) / self.dir.dot(self.dir)
    }

    /// Signed distance, positive on the left.
    pub fn signed_distance(&self, p: Point<T>) -> T {
        self.dir.cross(p - self.anchor) / self.dir.norm()
    }

    /// Same line, opposite direction.
    pub fn reversed(&self) -> Self {
        DirectedLine {
            anchor: self.anchor,
            dir: -self.dir,
        }
    }

    /// Clockwise angle of the direction.
    pub fn angle(&self) -> CwAngle<T> {
        CwAngle::of(self.dir)
    }
}

/// Clockwise angle of a direction measured from the positive x-axis, in `[0, 2*pi)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CwAngle<T>(pub T);

impl<T: Scalar> CwAngle<T> {
    pub fn of(v: Point<T>) -> Self {
        CwAngle(wrap_two_pi((-v.y).atan2(v.x)))
    }

    /// Unit vector pointing in this direction.
    pub fn direction(self) -> Point<T> {
        let (s, c) = self.0.sin_cos();
        Point::new(c, -s)
    }

    pub fn radians(self) -> T {
        self.0
    }
}

/// Reduces an angle into `[0, 2*pi)`.
pub fn wrap_two_pi<T: Scalar>(a: T) -> T {
    let tau = T::TAU();
    let r = a % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// Intersection point of two lines.
pub fn intersect_lines<T: Scalar>(
    l1: &DirectedLine<T>,
    l2: &DirectedLine<T>,
    parallel_tol: T,
) -> Result<Point<T>, GeomError> {
    let den = l1.dir.cross(l2.dir);
    if den.abs() <= parallel_tol * l1.dir.norm() * l2.dir.norm() {
        return Err(GeomError::ParallelLines);
    }
    let t = (l2.anchor - l1.anchor).cross(l2.dir) / den;
    Ok(l1.point_at(t))
}

/// Shoelace area; positive for counterclockwise vertex order.
pub fn signed_area<T: Scalar>(pts: &[Point<T>]) -> T {
    let n = pts.len();
    if n < 3 {
        return T::zero();
    }
    let base = pts[0];
    let mut acc = T::zero();
    for i in 1..n - 1 {
        acc = acc + (pts[i] - base).cross(pts[i + 1] - base);
    }
    acc / T::lit(2.0)
}

/// Classifies `p` against `line`; distances up to `abs_tol` count as on the line.
pub fn side_of<T: Scalar>(line: &DirectedLine<T>, p: Point<T>, abs_tol: T) -> Side {
    let d = line.signed_distance(p);
    if d > abs_tol {
        Side::Left
    } else if d < -abs_tol {
        Side::Right
    } else {
        Side::On
    }
}

/// Clockwise angle that rotates `from` onto `to`, in `[0, 2*pi)`.
pub fn cw_angle<T: Scalar>(from: Point<T>, to: Point<T>) -> Result<CwAngle<T>, GeomError> {
    if !(from.norm() > T::zero()) || !(to.norm() > T::zero()) {
        return Err(GeomError::ZeroDirection);
    }
    let a = (-from.cross(to)).atan2(from.dot(to));
    Ok(CwAngle(wrap_two_pi(a)))
}
