use crate::flush::{area, canonical, triangle_of, ExtArea, FlushTriangle};
use crate::polygon::ConvexPolygon;
use crate::scalar::Scalar;

use super::SolverError;

/// Exhaustive reference results.
#[derive(Clone, Debug)]
pub struct BruteForce<T> {
    pub mft: FlushTriangle<T>,
    /// Every locally optimal triple, canonical rotation, sorted.
    pub stable: Vec<[usize; 3]>,
    /// `dead[b * n + c]`: no apex makes `(a, b, c)` locally optimal.
    pub dead: Vec<bool>,
    pub finite_count: usize,
    pub triples_examined: usize,
}

impl<T> BruteForce<T> {
    pub fn is_dead(&self, n: usize, b: usize, c: usize) -> bool {
        self.dead[b * n + c]
    }
}

/// Scans all clockwise triples.
///
/// Local optimality is checked against every alternative position of each
/// edge (not just its neighbors), so the result does not rely on the
/// unimodality of the area.
pub fn brute_force<T: Scalar>(p: &ConvexPolygon<T>, cap: usize) -> Result<BruteForce<T>, SolverError> {
    let n = p.n();
    if n > cap {
        return Err(SolverError::InstanceTooLarge { n, cap });
    }
    let rel = p.tolerance().rel;
    let mut best: Option<([usize; 3], T)> = None;
    let mut stable = Vec::new();
    let mut dead = vec![true; n * n];
    let mut finite_count = 0;
    let mut examined = 0;
    let smaller = |x: ExtArea<T>, y: T| x.definitely_less(&ExtArea::Finite(y), rel);
    // Can edge `x` (between `prev` and `next`) be replaced by a smaller one?
    let improvable = |prev: usize, x: usize, next: usize, cur: T| {
        if p.prev(x) != prev && smaller(area(p, prev, p.prev(x), next), cur) {
            return true;
        }
        if p.next(x) != next && smaller(area(p, prev, p.next(x), next), cur) {
            return true;
        }
        let mut y = p.next(prev);
        while y != next {
            if y != x && smaller(area(p, prev, y, next), cur) {
                return true;
            }
            y = p.next(y);
        }
        false
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                examined += 1;
                let ExtArea::Finite(a) = area(p, i, j, k) else {
                    continue;
                };
                finite_count += 1;
                let key = [i, j, k];
                if best.is_none_or(|(bk, ba)| a < ba || (a == ba && key < bk)) {
                    best = Some((key, a));
                }
                if !improvable(k, i, j, a) && !improvable(i, j, k, a) && !improvable(j, k, i, a) {
                    stable.push(key);
                    for (x, y) in [(i, j), (j, k), (k, i)] {
                        dead[x * n + y] = false;
                    }
                }
            }
        }
    }
    let (key, _) = best.ok_or(SolverError::NoStableCandidate)?;
    let mft = triangle_of(p, key[0], key[1], key[2])?;
    stable.sort_unstable();
    debug_assert!(stable.iter().all(|t| canonical(*t) == *t));
    Ok(BruteForce {
        mft,
        stable,
        dead,
        finite_count,
        triples_examined: examined,
    })
}
