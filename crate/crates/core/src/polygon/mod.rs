//! Validated convex polygons with precomputed edge data.
//!
//! Vertices are stored clockwise; edge `i` runs from vertex `i` to vertex
//! `i + 1` (indices are cyclic). The interior lies to the right of each
//! directed edge. Vertex `k` joins edges `k - 1` and `k`.

mod generate;

pub use generate::{generate_random, perturb, stratified_directions, valtr_points};

use thiserror::Error;

use crate::geom::{signed_area, CwAngle, DirectedLine, Point};
use crate::scalar::{Scalar, Tolerance};

/// Rejection reasons; indices refer to positions in the input vertex list.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("vertices {first} and {second} coincide")]
    DuplicateVertices { first: usize, second: usize },
    #[error("polygon is not convex at vertex {index}")]
    NotConvex { index: usize },
    #[error("vertices {0:?} are collinear")]
    CollinearVertices([usize; 3]),
    #[error("edges {first} and {second} are parallel")]
    ParallelEdges { first: usize, second: usize },
    #[error("edge indices must differ (both {index})")]
    SameEdge { index: usize },
    #[error("support direction went backwards: {requested} after {previous}")]
    NonMonotoneDirection { previous: f64, requested: f64 },
    #[error("no valid polygon with {n} vertices after {attempts} attempts")]
    GenerationFailed { n: usize, attempts: usize },
}

/// A strictly convex polygon in general position, oriented clockwise.
#[derive(Clone, Debug)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
    dirs: Vec<Point<T>>,
    /// `cum[i]`: clockwise turn from edge 0 to edge `i`; `cum[n] == 2*pi`.
    cum: Vec<T>,
    far: Vec<usize>,
    diameter: T,
    reversed: bool,
    tol: Tolerance<T>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates with the default tolerances of `T`.
    pub fn new(points: Vec<Point<T>>) -> Result<Self, PolygonError> {
        validate(points)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.n()]
    }

    /// Unit direction of edge `i`.
    pub fn edge_dir(&self, i: usize) -> Point<T> {
        self.dirs[i % self.n()]
    }

    /// Supporting line of edge `i`, directed along the edge.
    pub fn edge_line(&self, i: usize) -> DirectedLine<T> {
        let i = i % self.n();
        DirectedLine {
            anchor: self.vertices[i],
            dir: self.dirs[i],
        }
    }

    pub fn edge_angle(&self, i: usize) -> CwAngle<T> {
        CwAngle::of(self.edge_dir(i))
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 == self.n() {
            0
        } else {
            i + 1
        }
    }

    pub fn prev(&self, i: usize) -> usize {
        if i == 0 {
            self.n() - 1
        } else {
            i - 1
        }
    }

    /// `(j - i) mod n`.
    pub fn steps(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        (j % n + n - i % n) % n
    }

    /// Exterior turn at vertex `k`, from edge `k - 1` to edge `k`.
    pub fn ext_turn(&self, k: usize) -> T {
        let k = k % self.n();
        if k == 0 {
            self.cum[self.n()] - self.cum[self.n() - 1]
        } else {
            self.cum[k] - self.cum[k - 1]
        }
    }

    /// Clockwise turn from edge `i` to edge `j`, in `[0, 2*pi)`.
    pub fn turn(&self, i: usize, j: usize) -> T {
        let (i, j) = (i % self.n(), j % self.n());
        if j >= i {
            self.cum[j] - self.cum[i]
        } else {
            T::TAU() - (self.cum[i] - self.cum[j])
        }
    }

    /// Edge `i` chases edge `j`: the turn from `i` to `j` is less than a half turn.
    pub fn chases(&self, i: usize, j: usize) -> bool {
        i % self.n() != j % self.n() && self.turn(i, j) < T::PI()
    }

    /// Checked variant of [`chases`](Self::chases).
    pub fn try_chases(&self, i: usize, j: usize) -> Result<bool, PolygonError> {
        if i % self.n() == j % self.n() {
            return Err(PolygonError::SameEdge { index: i });
        }
        Ok(self.chases(i, j))
    }

    /// Vertex farthest from the line of edge `i`.
    pub fn farthest(&self, i: usize) -> usize {
        self.far[i % self.n()]
    }

    pub fn farthest_vertices(&self) -> &[usize] {
        &self.far
    }

    pub fn diameter(&self) -> T {
        self.diameter
    }

    /// Absolute distance tolerance for this instance.
    pub fn abs_tol(&self) -> T {
        self.tol.abs_rel * self.diameter
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tol
    }

    /// Whether the input was counterclockwise and got reversed.
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    /// Input position of stored vertex `k`.
    pub fn input_index(&self, k: usize) -> usize {
        let n = self.n();
        if self.reversed {
            (n - k % n) % n
        } else {
            k % n
        }
    }

    pub fn area(&self) -> T {
        signed_area(&self.vertices).abs()
    }

    /// Support line with direction `angle` and the polygon on its right, and the touching vertex.
    ///
    /// Linear scan; [`SupportPointer`] answers monotone sequences of queries in amortized O(1).
    pub fn support_line_at(&self, angle: CwAngle<T>) -> (usize, DirectedLine<T>) {
        let base = self.edge_angle(0).radians();
        // The touching vertex starts the first edge whose direction is not before the query.
        let off = crate::geom::wrap_two_pi(angle.radians() - base);
        let n = self.n();
        let mut m = n - 1;
        for i in 0..n {
            if self.cum[i] < off {
                m = i;
            }
        }
        let k = self.next(m);
        let v = self.vertices[k];
        (
            k,
            DirectedLine {
                anchor: v,
                dir: angle.direction(),
            },
        )
    }
}

/// Validates a vertex list and precomputes edge data using the default tolerances.
pub fn validate<T: Scalar>(points: Vec<Point<T>>) -> Result<ConvexPolygon<T>, PolygonError> {
    validate_with(points, T::tolerance())
}

/// Validates a vertex list with explicit tolerances.
pub fn validate_with<T: Scalar>(
    points: Vec<Point<T>>,
    tol: Tolerance<T>,
) -> Result<ConvexPolygon<T>, PolygonError> {
    let n = points.len();
    if n < 3 {
        return Err(PolygonError::TooFewVertices { n });
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(PolygonError::NonFinite { index });
    }
    let reversed = signed_area(&points) > T::zero();
    let vertices: Vec<Point<T>> = if reversed {
        (0..n).map(|k| points[(n - k) % n]).collect()
    } else {
        points
    };
    let input = |k: usize| if reversed { (n - k % n) % n } else { k % n };

    let mut dirs = Vec::with_capacity(n);
    for i in 0..n {
        let e = vertices[(i + 1) % n] - vertices[i];
        match e.normalized() {
            Some(d) => dirs.push(d),
            None => {
                return Err(PolygonError::DuplicateVertices {
                    first: input(i).min(input(i + 1)),
                    second: input(i).max(input(i + 1)),
                })
            }
        }
    }

    let pi = T::PI();
    let mut turns = Vec::with_capacity(n);
    for k in 0..n {
        let a = dirs[(k + n - 1) % n];
        let b = dirs[k];
        let t = (-a.cross(b)).atan2(a.dot(b));
        if t.abs() <= tol.turn {
            let mut idx = [input(k + n - 1), input(k), input(k + 1)];
            idx.sort_unstable();
            return Err(PolygonError::CollinearVertices(idx));
        }
        if t < T::zero() {
            return Err(PolygonError::NotConvex { index: input(k) });
        }
        if t >= pi - tol.turn {
            let (x, y) = (input(k + n - 1), input(k));
            return Err(PolygonError::ParallelEdges {
                first: x.min(y),
                second: x.max(y),
            });
        }
        turns.push(t);
    }
    // turns[k] is the turn entering edge k; cumulative sums start at edge 0.
    let total = turns.iter().fold(T::zero(), |acc, &t| acc + t);
    if (total - T::TAU()).abs() > T::lit(0.5) {
        return Err(PolygonError::NotConvex { index: input(0) });
    }
    let scale = T::TAU() / total;
    let mut cum = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    cum.push(acc);
    for k in 1..n {
        acc = acc + turns[k];
        cum.push(acc * scale);
    }
    cum.push(T::TAU());

    let mut poly = ConvexPolygon {
        vertices,
        dirs,
        cum,
        far: Vec::new(),
        diameter: T::zero(),
        reversed,
        tol,
    };

    // Farthest vertex of edge i: the start of the first edge turned by more than pi.
    // It moves clockwise with i, so one pointer serves all edges.
    let mut far = Vec::with_capacity(n);
    let mut m = 1usize;
    for i in 0..n {
        if m <= i {
            m = i + 1;
        }
        while m < i + n && poly.turn(i, m % n) < pi {
            m += 1;
        }
        if m == i + n {
            return Err(PolygonError::NotConvex { index: input(i) });
        }
        let before = poly.turn(i, (m - 1) % n);
        let after = poly.turn(i, m % n);
        if pi - before <= tol.turn || after - pi <= tol.turn {
            let j = if pi - before <= tol.turn { m - 1 } else { m };
            let (x, y) = (input(i), input(j % n));
            return Err(PolygonError::ParallelEdges {
                first: x.min(y),
                second: x.max(y),
            });
        }
        far.push(m % n);
    }
    poly.far = far;
    poly.diameter = width_diameter(&poly);
    Ok(poly)
}

/// Diameter via antipodal vertex pairs.
fn width_diameter<T: Scalar>(poly: &ConvexPolygon<T>) -> T {
    let n = poly.n();
    let mut best = T::zero();
    for i in 0..n {
        let f = poly.far[i];
        for k in [f, poly.prev(f), poly.next(f)] {
            for v in [i, poly.next(i)] {
                best = best.max((poly.vertices[k] - poly.vertices[v]).norm());
            }
        }
    }
    best
}

/// Rotating support-line query for non-decreasing directions.
///
/// Directions are unwrapped clockwise offsets from a reference direction,
/// the reverse of a chosen reference edge.
#[derive(Clone, Debug)]
pub struct SupportPointer<T> {
    reference: usize,
    vertex: usize,
    /// Offset of the edge leaving `vertex`.
    next_edge: T,
    last: Option<T>,
    advances: usize,
}

impl<T: Scalar> SupportPointer<T> {
    /// Starts at offset zero, i.e. the direction opposite to edge `reference`.
    pub fn new(poly: &ConvexPolygon<T>, reference: usize) -> Self {
        let reference = reference % poly.n();
        let vertex = poly.farthest(reference);
        let next_edge = poly.turn(reference, vertex) - T::PI();
        SupportPointer {
            reference,
            vertex,
            next_edge,
            last: None,
            advances: 0,
        }
    }

    pub fn reference(&self) -> usize {
        self.reference
    }

    /// Vertices stepped over so far.
    pub fn advances(&self) -> usize {
        self.advances
    }

    pub fn vertex(&self) -> usize {
        self.vertex
    }

    /// Absolute direction for an offset.
    pub fn direction(&self, poly: &ConvexPolygon<T>, offset: T) -> Point<T> {
        (-poly.edge_dir(self.reference)).rotate_cw(offset)
    }

    /// Returns the touching vertex and the support line with direction `offset`.
    pub fn support_line(
        &mut self,
        poly: &ConvexPolygon<T>,
        offset: T,
    ) -> Result<(usize, DirectedLine<T>), PolygonError> {
        if let Some(prev) = self.last {
            if offset < prev {
                return Err(PolygonError::NonMonotoneDirection {
                    previous: prev.as_f64(),
                    requested: offset.as_f64(),
                });
            }
        }
        self.last = Some(offset);
        while self.next_edge < offset {
            self.vertex = poly.next(self.vertex);
            self.next_edge = self.next_edge + poly.ext_turn(self.vertex);
            self.advances += 1;
        }
        Ok((
            self.vertex,
            DirectedLine {
                anchor: poly.vertex(self.vertex),
                dir: self.direction(poly, offset),
            },
        ))
    }
}
