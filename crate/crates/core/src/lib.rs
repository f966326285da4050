//! Minimum-area all-flush triangle of a convex polygon.
//!
//! An all-flush triangle has each side containing an edge of the polygon.
//! [`solver::solve`] finds the smallest one in linear time by sweeping pairs
//! of edges and discarding one of them per step; slower reference
//! algorithms are provided for cross-checking.
//!
//! The geometry is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod flush;
pub mod geom;
pub mod hyperbola;
pub mod polygon;
pub mod scalar;
pub mod solver;

pub use flush::{ExtArea, FlushTriangle};
pub use geom::{CwAngle, DirectedLine, Point};
pub use polygon::ConvexPolygon;
pub use scalar::{Scalar, Tolerance};
pub use solver::{solve, solve_mft, Algorithm, SolveOptions, SolverError, SolverReport};

pub type Point64 = Point<f64>;
pub type Polygon = ConvexPolygon<f64>;
pub type Triangle = FlushTriangle<f64>;
