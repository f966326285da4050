//! Seeded random convex polygons.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate, ConvexPolygon, PolygonError};
use crate::geom::Point;
use crate::scalar::Scalar;

/// Largest size drawn with the uniform convex-position construction.
/// Beyond it the smallest gap between edge directions shrinks like `1/n^2`
/// and collides with the general-position tolerance, so directions are
/// stratified instead.
pub const VALTR_MAX: usize = 4096;

const MAX_ATTEMPTS: usize = 64;

/// Random valid polygon with `n` vertices; deterministic per `(n, seed)`.
pub fn generate_random<T: Scalar>(n: usize, seed: u64) -> Result<ConvexPolygon<T>, PolygonError> {
    if n < 3 {
        return Err(PolygonError::TooFewVertices { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let pts = if n <= VALTR_MAX {
            valtr_points(n, &mut rng)
        } else {
            stratified_directions(n, &mut rng)
        };
        let pts: Vec<Point<T>> = pts.into_iter().map(|p| p.cast()).collect();
        if let Ok(poly) = validate(pts) {
            if !poly.was_reversed() {
                return Ok(poly);
            }
        }
    }
    Err(PolygonError::GenerationFailed {
        n,
        attempts: MAX_ATTEMPTS,
    })
}

/// Uniformly random convex position (Valtr's construction), clockwise.
pub fn valtr_points<R: Rng>(n: usize, rng: &mut R) -> Vec<Point<f64>> {
    let xs = chain_components(n, rng);
    let mut ys = chain_components(n, rng);
    ys.shuffle(rng);
    let mut vecs: Vec<Point<f64>> = xs.iter().zip(&ys).map(|(&x, &y)| Point::new(x, y)).collect();
    // Sorting by decreasing counterclockwise angle lays the vectors out clockwise.
    vecs.sort_by(|a, b| b.y.atan2(b.x).total_cmp(&a.y.atan2(a.x)));
    let mut out = Vec::with_capacity(n);
    let mut p = Point::new(0.0, 0.0);
    for v in vecs {
        out.push(p);
        p = p + v;
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for q in &out {
        cx += q.x;
        cy += q.y;
    }
    let c = Point::new(cx / n as f64, cy / n as f64);
    out.into_iter().map(|q| q - c).collect()
}

/// One coordinate of Valtr's construction: differences along two random monotone chains.
fn chain_components<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    v.sort_by(f64::total_cmp);
    let (min, max) = (v[0], v[n - 1]);
    let mut out = Vec::with_capacity(n);
    let (mut last_a, mut last_b) = (min, min);
    for &x in &v[1..n - 1] {
        if rng.random::<bool>() {
            out.push(x - last_a);
            last_a = x;
        } else {
            out.push(last_b - x);
            last_b = x;
        }
    }
    out.push(max - last_a);
    out.push(last_b - max);
    out
}

/// Large polygons: one edge per angular slot with jitter, lengths corrected to close.
///
/// Slot offsets differ by half a slot between the two halves of the circle,
/// which keeps every pair of edges well away from antiparallel.
pub fn stratified_directions<R: Rng>(n: usize, rng: &mut R) -> Vec<Point<f64>> {
    let step = TAU / n as f64;
    let half = n / 2;
    let dirs: Vec<Point<f64>> = (0..n)
        .map(|i| {
            let base = if n % 2 == 1 {
                0.5
            } else if i < half {
                0.25
            } else {
                0.75
            };
            let u: f64 = rng.random();
            let th = step * (i as f64 + base + 0.2 * (u - 0.5));
            Point::new(th.cos(), -th.sin())
        })
        .collect();
    let mut len: Vec<f64> = (0..n).map(|_| rng.random_range(1.0..2.0)).collect();
    // Least-change correction making the edge vectors sum to zero.
    let (mut sx, mut sy) = (0.0, 0.0);
    let (mut mxx, mut mxy, mut myy) = (0.0, 0.0, 0.0);
    for (d, &l) in dirs.iter().zip(&len) {
        sx += l * d.x;
        sy += l * d.y;
        mxx += d.x * d.x;
        mxy += d.x * d.y;
        myy += d.y * d.y;
    }
    let det = mxx * myy - mxy * mxy;
    let ax = (myy * sx - mxy * sy) / det;
    let ay = (mxx * sy - mxy * sx) / det;
    for (d, l) in dirs.iter().zip(len.iter_mut()) {
        *l -= ax * d.x + ay * d.y;
    }
    let mut out = Vec::with_capacity(n);
    let mut p = Point::new(0.0, 0.0);
    for (d, &l) in dirs.iter().zip(&len) {
        out.push(p);
        p = p + *d * l;
    }
    out
}

/// Jitters every coordinate by at most `1e-9` times the bounding-box diagonal.
pub fn perturb<T: Scalar>(points: &[Point<T>], seed: u64) -> Vec<Point<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let scale = (hi - lo).norm().as_f64() * 1e-9;
    points
        .iter()
        .map(|p| {
            let dx = scale * rng.random_range(-1.0..1.0);
            let dy = scale * rng.random_range(-1.0..1.0);
            Point::new(p.x + T::lit(dx), p.y + T::lit(dy))
        })
        .collect()
}
