use crate::flush::{area, is_3stable, next_opt_apex, ExtArea};
use crate::polygon::ConvexPolygon;
use crate::scalar::Scalar;

use super::SolverError;

/// A locally optimal triangle `(r, s, t)` in linear time.
///
/// First the smallest triangle through edge 0 (its other two edges are then
/// stable), then local descent moving `r` forwards, or backwards if forwards
/// does not help, re-settling `s` and `t` after every move.
pub fn initial_3stable<T: Scalar>(p: &ConvexPolygon<T>) -> Result<(usize, usize, usize), SolverError> {
    let rel = p.tolerance().rel;
    let r0 = 0;
    let mut best: Option<(usize, usize, T)> = None;
    let mut hint = 2 % p.n();
    for b in 1..p.n() {
        if !p.chases(r0, b) {
            continue;
        }
        let (c, _) = next_opt_apex(p, r0, b, hint)?;
        hint = c;
        if let ExtArea::Finite(a) = area(p, r0, b, c) {
            let better = match best {
                None => true,
                Some((_, _, cur)) => crate::scalar::definitely_less(a, cur, rel),
            };
            if better {
                best = Some((b, c, a));
            }
        }
    }
    let (mut s, mut t, _) = best.ok_or(SolverError::NoStableCandidate)?;
    let mut r = r0;
    // Exact comparison, as in the apex walk; every move strictly lowers the area.
    let less = |x: ExtArea<T>, y: ExtArea<T>| x.definitely_less(&y, T::zero());
    let a = |r: usize, s: usize, t: usize| area(p, r, s, t);

    while p.next(r) != s && less(a(p.next(r), s, t), a(r, s, t)) {
        r = p.next(r);
        loop {
            let mut moved = false;
            while p.next(s) != t && less(a(r, p.next(s), t), a(r, s, t)) {
                s = p.next(s);
                moved = true;
            }
            while p.next(t) != r && less(a(r, s, p.next(t)), a(r, s, t)) {
                t = p.next(t);
                moved = true;
            }
            if !moved {
                break;
            }
        }
    }
    while p.prev(r) != t && less(a(p.prev(r), s, t), a(r, s, t)) {
        r = p.prev(r);
        loop {
            let mut moved = false;
            while p.prev(s) != r && less(a(r, p.prev(s), t), a(r, s, t)) {
                s = p.prev(s);
                moved = true;
            }
            while p.prev(t) != s && less(a(r, s, p.prev(t)), a(r, s, t)) {
                t = p.prev(t);
                moved = true;
            }
            if !moved {
                break;
            }
        }
    }
    if !is_3stable(p, r, s, t) {
        return Err(SolverError::NotThreeStable([r, s, t]));
    }
    Ok((r, s, t))
}
