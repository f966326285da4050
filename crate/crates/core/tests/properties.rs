//! Invariants checked on seeded random polygons.

use mft_core::flush::{
    area, back_stable_finite, back_stable_general, canonical, corner_area, forw_stable_finite, forw_stable_general,
    is_3stable, is_finite, next_opt_apex, triangle_of, CornerSide, ExtArea,
};
use mft_core::geom::{cw_angle, intersect_lines, signed_area, wrap_two_pi};
use mft_core::hyperbola::{classify, common_tangent_between, common_tangents, corner_branch, tangent_offset, HyperbolaBranch, LineClass};
use mft_core::polygon::{generate_random, SupportPointer};
use mft_core::solver::{
    brute_force, initial_3stable, kill_logn, solve, stable_bounds, Algorithm, Kill, KillReason, SolveOptions, BRUTE_CAP,
};
use mft_core::{CwAngle, Point, Polygon};
use proptest::prelude::*;

const TAU: f64 = std::f64::consts::TAU;

fn polygon(max_n: usize) -> impl Strategy<Value = Polygon> {
    (4usize..=max_n, any::<u64>()).prop_map(|(n, seed)| generate_random(n, seed).unwrap())
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (-100.0f64..100.0, -100.0f64..100.0).prop_map(|(x, y)| Point::new(x, y))
}

fn unit() -> impl Strategy<Value = Point<f64>> {
    (0.0f64..TAU).prop_map(|a| Point::new(a.cos(), a.sin()))
}

fn traced() -> SolveOptions {
    SolveOptions {
        trace: true,
        ..SolveOptions::default()
    }
}

/// Clockwise-first apex of smallest area over `c + 1 ..= b - 1`.
fn scan_apex(p: &Polygon, b: usize, c: usize) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    let mut a = p.next(c);
    while a != b {
        if let ExtArea::Finite(x) = area(p, a, b, c) {
            if best.is_none_or(|(_, m)| x < m && m - x > 1e-9 * m) {
                best = Some((a, x));
            }
        }
        a = p.next(a);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cross_and_rotation(a in point(), b in point(), phi in 0.0f64..TAU) {
        prop_assert!((a.cross(b) + b.cross(a)).abs() <= 1e-9);
        let r = a.rotate_cw(phi);
        prop_assert!((r.norm() - a.norm()).abs() <= 1e-9 * a.norm().max(1.0));
        if a.norm() > 1e-6 {
            let turned = CwAngle::of(r).radians();
            let want = wrap_two_pi(CwAngle::of(a).radians() + phi);
            let diff = wrap_two_pi(turned - want);
            prop_assert!(diff.min(TAU - diff) <= 1e-9);
        }
    }

    #[test]
    fn clockwise_angles_sum_to_a_turn(u in unit(), v in unit()) {
        let there = cw_angle(u, v).unwrap().radians();
        let back = cw_angle(v, u).unwrap().radians();
        prop_assert!((0.0..TAU).contains(&there));
        let sum = there + back;
        prop_assert!(sum.abs() <= 1e-9 || (sum - TAU).abs() <= 1e-9, "{sum}");
    }

    #[test]
    fn intersection_lies_on_both_lines(a in point(), u in unit(), b in point(), v in unit()) {
        prop_assume!(u.cross(v).abs() > 1e-3);
        let l1 = mft_core::DirectedLine::new(a, u).unwrap();
        let l2 = mft_core::DirectedLine::new(b, v).unwrap();
        let x = intersect_lines(&l1, &l2, 1e-12).unwrap();
        let scale = 1.0 + (x - a).norm() + (x - b).norm();
        prop_assert!(l1.signed_distance(x).abs() <= 1e-9 * scale);
        prop_assert!(l2.signed_distance(x).abs() <= 1e-9 * scale);
    }

    #[test]
    fn reversing_negates_area(p in polygon(40)) {
        let mut rev = p.vertices().to_vec();
        let fwd = signed_area(&rev);
        rev.reverse();
        prop_assert!(fwd < 0.0);
        prop_assert!((fwd + signed_area(&rev)).abs() <= 1e-12 * fwd.abs());
        prop_assert!((p.area() + fwd).abs() <= 1e-12 * fwd.abs());
    }

    #[test]
    fn turns_and_chasing(p in polygon(48)) {
        let n = p.n();
        for i in 0..n {
            prop_assert!(p.ext_turn(i) > 0.0);
            for j in 0..n {
                if i == j {
                    prop_assert!(!p.chases(i, j));
                    continue;
                }
                prop_assert!((p.turn(i, j) + p.turn(j, i) - TAU).abs() <= 1e-9);
                prop_assert!(!(p.chases(i, j) && p.chases(j, i)));
                // Chasing: the edge lines cross clockwise between the two edges.
                let x = intersect_lines(&p.edge_line(i), &p.edge_line(j), 1e-12);
                if p.chases(i, j) {
                    let x = x.unwrap();
                    let tol = 1e-7 * p.diameter();
                    // Beyond the end of edge i and before the start of edge j.
                    prop_assert!(p.edge_dir(i).dot(x - p.vertex(p.next(i))) >= -tol);
                    prop_assert!(p.edge_dir(j).dot(p.vertex(j) - x) >= -tol);
                }
            }
        }
    }

    #[test]
    fn farthest_vertex_matches_scan(p in polygon(64)) {
        for i in 0..p.n() {
            let line = p.edge_line(i);
            let depth = |k: usize| -line.signed_distance(p.vertex(k));
            let best = (0..p.n()).map(depth).fold(f64::MIN, f64::max);
            let got = depth(p.farthest(i));
            prop_assert!(best - got <= 1e-12 * p.diameter(), "edge {i}: {got} < {best}");
        }
    }

    #[test]
    fn support_lines_keep_polygon_right(p in polygon(48), angles in prop::collection::vec(0.0f64..TAU, 1..16)) {
        let tol = 1e-9 * p.diameter();
        for &a in &angles {
            let (k, line) = p.support_line_at(CwAngle(a));
            prop_assert!(line.signed_distance(p.vertex(k)).abs() <= tol);
            for v in p.vertices() {
                prop_assert!(line.signed_distance(*v) <= tol);
            }
            prop_assert_eq!(p.support_line_at(CwAngle(a)), (k, line));
        }
    }

    #[test]
    fn pointer_agrees_with_direct_query(p in polygon(48), reference in 0usize..48, mut offsets in prop::collection::vec(0.0f64..std::f64::consts::PI, 1..24)) {
        let reference = reference % p.n();
        offsets.sort_by(f64::total_cmp);
        let mut ptr = SupportPointer::new(&p, reference);
        let base = CwAngle::of(-p.edge_dir(reference)).radians();
        for &d in &offsets {
            let (k, _) = ptr.support_line(&p, d).unwrap();
            let (want, _) = p.support_line_at(CwAngle(base + d));
            let dir = ptr.direction(&p, d);
            let gap = dir.cross(p.vertex(want) - p.vertex(k));
            prop_assert!(gap.abs() <= 1e-9 * p.diameter(), "offset {d}: {k} vs {want}");
        }
        prop_assert!(ptr.advances() <= p.n());
    }

    #[test]
    fn finiteness_and_containment(p in polygon(32)) {
        let n = p.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !mft_core::flush::is_clockwise_triple(&p, i, j, k) {
                        continue;
                    }
                    let fin = p.chases(i, j) && p.chases(j, k) && p.chases(k, i);
                    prop_assert_eq!(is_finite(&p, i, j, k), fin);
                    prop_assert_eq!(area(&p, i, j, k).is_finite(), fin);
                    if !fin {
                        continue;
                    }
                    let t = triangle_of(&p, i, j, k).unwrap();
                    let c = t.corners.unwrap();
                    let tri_area = -signed_area(&c);
                    prop_assert!((tri_area - t.area.finite().unwrap()).abs() <= 1e-9 * tri_area);
                    prop_assert!(tri_area >= p.area() * (1.0 - 1e-9));
                    let tol = 1e-9 * p.diameter();
                    for s in 0..3 {
                        let side = mft_core::DirectedLine::through(c[s], c[(s + 1) % 3]).unwrap();
                        for v in p.vertices() {
                            prop_assert!(side.signed_distance(*v) <= tol);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn apex_walk_matches_scan(p in polygon(64)) {
        let n = p.n();
        for b in 0..n {
            for c in 0..n {
                if b == c || !p.chases(b, c) {
                    continue;
                }
                let (walked, _) = next_opt_apex(&p, b, c, p.next(c)).unwrap();
                match scan_apex(&p, b, c) {
                    Some((a, best)) => {
                        let got = area(&p, walked, b, c).finite();
                        prop_assert!(got.is_some_and(|g| (g - best).abs() <= 1e-9 * best), "({b},{c}): walk {walked} scan {a}");
                    }
                    None => prop_assert!(!area(&p, walked, b, c).is_finite()),
                }
            }
        }
    }

    #[test]
    fn back_stability_persists_clockwise(p in polygon(40)) {
        let n = p.n();
        for b in 0..n {
            for c in 0..n {
                if b == c || !p.chases(b, c) {
                    continue;
                }
                let mut a = p.next(c);
                let mut seen = false;
                while a != b {
                    let now = back_stable_general(&p, a, b, c);
                    prop_assert!(!seen || now, "({b},{c}): lost at apex {a}");
                    seen |= now;
                    a = p.next(a);
                }
            }
        }
    }

    #[test]
    fn corner_predicates_agree_with_full_areas(p in polygon(40)) {
        let n = p.n();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !is_finite(&p, i, j, k) {
                        continue;
                    }
                    // Full areas call a tie within `rel` of the triangle; corner regions resolve it further.
                    // So the corner answer implies the full-area one, and they match outside the tie band.
                    let rel = p.tolerance().rel;
                    let tie = |there: ExtArea<f64>, here: ExtArea<f64>| match (there, here) {
                        (ExtArea::Finite(t), ExtArea::Finite(h)) => t < h && t >= h - rel * h,
                        _ => false,
                    };
                    for (u, x, w) in [(k, i, j), (i, j, k), (j, k, i)] {
                        let here = area(&p, u, x, w);
                        let (gen, fin) = (back_stable_general(&p, u, x, w), back_stable_finite(&p, u, x, w));
                        prop_assert!(!gen || fin, "back ({},{},{})", u, x, w);
                        if !tie(area(&p, u, p.prev(x), w), here) {
                            prop_assert_eq!(gen, fin, "back ({},{},{})", u, x, w);
                        }
                        let (gen, fin) = (forw_stable_general(&p, u, x, w), forw_stable_finite(&p, u, x, w));
                        prop_assert!(!gen || fin, "forw ({},{},{})", u, x, w);
                        if !tie(area(&p, u, p.next(x), w), here) {
                            prop_assert_eq!(gen, fin, "forw ({},{},{})", u, x, w);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corner_areas_are_nonnegative(p in polygon(40)) {
        let n = p.n();
        for k in 0..n {
            for a in 0..n {
                for side in [CornerSide::Plus, CornerSide::Minus] {
                    if let Ok(ExtArea::Finite(x)) = corner_area(&p, a, k, side) {
                        prop_assert!(x >= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn three_stable_matches_exhaustive_definition(p in polygon(32)) {
        let bf = brute_force(&p, BRUTE_CAP).unwrap();
        let n = p.n();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let listed = bf.stable.binary_search(&[i, j, k]).is_ok();
                    prop_assert_eq!(is_3stable(&p, i, j, k), listed, "({},{},{})", i, j, k);
                }
            }
        }
        prop_assert!(bf.stable.len() <= n);
        let (r, s, t) = initial_3stable(&p).unwrap();
        prop_assert!(bf.stable.binary_search(&canonical([r, s, t])).is_ok());
    }

    #[test]
    fn unique_optimum_gives_same_triple(p in polygon(64)) {
        let bf = brute_force(&p, BRUTE_CAP).unwrap();
        let best = bf.mft.area.finite().unwrap();
        let mut areas: Vec<f64> = bf.stable.iter().map(|t| area(&p, t[0], t[1], t[2]).finite().unwrap()).collect();
        areas.sort_by(f64::total_cmp);
        let unique = areas.len() < 2 || areas[1] - best > 1e-6 * best;
        for algo in [Algorithm::Linear, Algorithm::Logn, Algorithm::Quadratic] {
            let t = solve(&p, algo, &SolveOptions::default()).unwrap().mft;
            prop_assert!((t.area.finite().unwrap() - best).abs() <= 1e-9 * best);
            prop_assert!(is_3stable(&p, t.edges[0], t.edges[1], t.edges[2]));
            if unique {
                prop_assert_eq!(t.canonical(), bf.mft.canonical());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stable_bounds_match_scans(p in polygon(40)) {
        let n = p.n();
        for j in 0..n {
            for k in 0..n {
                if j == k || !p.chases(j, k) || p.steps(k, j) < 2 {
                    continue;
                }
                let apexes: Vec<usize> = (1..p.steps(k, j)).map(|q| (k + q) % n).collect();
                let first = |f: &dyn Fn(usize) -> bool| apexes.iter().copied().find(|&a| f(a));
                let last = |f: &dyn Fn(usize) -> bool| apexes.iter().rev().copied().find(|&a| f(a));
                let got = stable_bounds(&p, j, k);
                prop_assert_eq!(got.x, first(&|a| back_stable_general(&p, a, j, k)).unwrap_or(p.prev(j)));
                prop_assert_eq!(got.x_prime, last(&|a| forw_stable_general(&p, a, j, k)).unwrap_or(k));
                prop_assert_eq!(got.y, first(&|a| back_stable_general(&p, j, k, a)).unwrap_or(j));
                prop_assert_eq!(got.y_prime, last(&|a| forw_stable_general(&p, j, k, a)).unwrap_or(p.next(k)));
                // Apexes where both j and k are stable lie inside all four bounds.
                let pos = |e: usize| p.steps(k, e);
                for &a in &apexes {
                    let both = back_stable_general(&p, a, j, k) && forw_stable_general(&p, a, j, k)
                        && back_stable_general(&p, j, k, a) && forw_stable_general(&p, j, k, a);
                    if both {
                        prop_assert!(pos(got.x) <= pos(a) && pos(a) <= pos(got.x_prime));
                        prop_assert!(pos(got.y) <= pos(a) && pos(a) <= pos(got.y_prime));
                    }
                }
            }
        }
    }

    #[test]
    fn one_of_the_two_logarithmic_conditions_holds(p in polygon(48)) {
        let rep = solve(&p, Algorithm::Logn, &traced()).unwrap();
        let pos = |c: usize, e: usize| p.steps(c, e);
        for k in rep.kills.iter().filter(|k| k.reason == KillReason::Criterion) {
            let (b, c) = (k.b, k.c);
            let near = stable_bounds(&p, b, p.next(c));
            let far = stable_bounds(&p, p.next(b), c);
            // Positions in clockwise order starting at c; x' defaults to c + 1 and y to b.
            let a_holds = pos(c, near.x_prime) < pos(c, near.y);
            let b_holds = pos(c, far.y_prime) < pos(c, far.x);
            prop_assert!(a_holds || b_holds, "({b},{c})");
            prop_assert_eq!(kill_logn(&p, b, c), if a_holds { Kill::B } else { Kill::C });
        }
    }

    #[test]
    fn solver_tangents_agree_across_routes(p in polygon(48)) {
        let rep = solve(&p, Algorithm::Linear, &traced()).unwrap();
        let tol = p.abs_tol();
        for k in rep.kills.iter().filter(|k| k.reason == KillReason::Criterion) {
            let (b, c) = (k.b, k.c);
            let (b1, c1) = (p.next(b), p.next(c));
            let branch = |v: usize, e: usize, s: CornerSide| corner_branch(&p, v, e, s).unwrap();
            let g_plus = branch(c1, b, CornerSide::Plus);
            let g_minus = branch(b1, c1, CornerSide::Minus);
            let h_plus = branch(c1, b1, CornerSide::Plus);
            let h_minus = branch(b1, c, CornerSide::Minus);
            let (w1, w2) = (-p.edge_dir(b1), -p.edge_dir(c));
            for (h1, h2) in [(&h_plus, &g_minus), (&g_plus, &h_minus)] {
                let (line, _) = common_tangent_between(h1, h2, w1, w2, false).unwrap();
                // Measured as a distance: cut areas of a branch hugging its asymptotes are too small to compare.
                for h in [h1, h2] {
                    let off = tangent_offset(h, &line);
                    prop_assert!(off.is_some_and(|d| d <= tol), "({b},{c}): offset {off:?}");
                }
                // The closed-form route must contain the same line.
                let others = common_tangents(h1, h2);
                let scale = p.diameter();
                let found = others.iter().any(|l| {
                    l.dir.cross(line.dir).abs() <= 1e-6 && l.signed_distance(line.anchor).abs() <= 1e-6 * scale
                });
                prop_assert!(found, "({b},{c}): {line:?} not among {others:?}");
            }
        }
    }

    #[test]
    fn tangents_cut_the_branch_area(a in point(), u in unit(), gap in 0.1f64..3.0, s in 0.01f64..100.0, t in -2.0f64..2.0) {
        let v = u.rotate_cw(-gap);
        let h = HyperbolaBranch::new(a, u, v, s).unwrap();
        let line = h.tangent_at(h.coef.sqrt() * 10f64.powf(t));
        let cut = h.cut_area(&line).unwrap().finite().unwrap();
        prop_assert!((cut - s).abs() <= 1e-9 * s);
        prop_assert_eq!(classify(&h, &line, 1e-9), LineClass::Tangent);
        let out = mft_core::DirectedLine::new(line.anchor + line.dir.perp_left() * 0.1, line.dir).unwrap();
        let inn = mft_core::DirectedLine::new(line.anchor - line.dir.perp_left() * 0.1, line.dir).unwrap();
        let classes = [classify(&h, &out, 1e-9), classify(&h, &inn, 1e-9)];
        prop_assert!(classes.contains(&LineClass::Secant) && classes.contains(&LineClass::Disjoint), "{classes:?}");
    }
}

#[test]
fn identical_branches_touch_one_line() {
    let h: HyperbolaBranch<f64> = HyperbolaBranch::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), 2.0).unwrap();
    let w1 = Point::new(1.0, -0.2).normalized().unwrap();
    let w2 = Point::new(0.2, -1.0).normalized().unwrap();
    let (line, w) = common_tangent_between(&h, &h, w1, w2, false).unwrap();
    assert_eq!(classify(&h, &line, 1e-9), LineClass::Tangent);
    assert!(w1.cross(w).abs() < 1e-12 || w2.cross(w).abs() < 1e-12);
}

#[test]
fn single_precision_pipeline() {
    for seed in 0..20 {
        let p: mft_core::ConvexPolygon<f32> = generate_random(24, seed).unwrap();
        let brute: f32 = solve(&p, Algorithm::Brute, &SolveOptions::default()).unwrap().mft.area.finite().unwrap();
        for algo in [Algorithm::Linear, Algorithm::Logn] {
            let got: f32 = solve(&p, algo, &SolveOptions::default()).unwrap().mft.area.finite().unwrap();
            assert!((got - brute).abs() <= 1e-4 * brute, "seed {seed} {algo}: {got} vs {brute}");
        }
    }
}

/// Following the lower tangent alone would move the direction backwards;
/// keeping the previous direction while it stays admissible is what makes
/// the sweep monotone.
#[test]
fn kept_direction_is_needed_for_monotonicity() {
    use mft_core::solver::{trivial_kill, LinearCriterion};
    let mut backwards = 0;
    for seed in 0..200u64 {
        let p: Polygon = generate_random(8 + (seed as usize) % 40, seed).unwrap();
        let (r, s, t) = initial_3stable(&p).unwrap();
        let mut lc = LinearCriterion::new(&p, r, s, t, true);
        let (mut b, mut c) = (s, t);
        let mut prev: Option<f64> = None;
        while (b, c) != (t, r) {
            let kill = match trivial_kill(&p, b, c, r, t) {
                Some((k, _)) => k,
                None => {
                    let k = lc.decide(b, c).unwrap();
                    let (lo, hi) = lc.range().unwrap();
                    let d = lc.direction().unwrap();
                    assert!(lo - 1e-9 <= d && d <= hi + 1e-9 || prev.is_some_and(|q| q == d));
                    if let Some(q) = prev {
                        assert!(d >= q, "seed {seed}: direction decreased");
                        if lo < q {
                            backwards += 1;
                        }
                    }
                    prev = Some(d);
                    k
                }
            };
            match kill {
                Kill::B => b = p.next(b),
                Kill::C => c = p.next(c),
            }
        }
    }
    assert!(backwards > 0, "the lower tangent never moved backwards on this corpus");
}
