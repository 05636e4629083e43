//! LP formulations over convex hulls of finitely many points.
//!
//! The first `k` LP variables are the barycentric weights of the `k` hull
//! vertices (nonnegative, summing to one); callers may append more.

use crate::lp::{lp_solve, LpOutcome, LpProblem, Relation};
use crate::numerics::{Point, Scalar};

pub(crate) fn hull_problem(vertices: &[Point], extra_vars: usize) -> LpProblem {
    let k = vertices.len();
    let mut p = LpProblem::new(k + extra_vars);
    let terms: Vec<(usize, Scalar)> = (0..k).map(|i| (i, Scalar::one())).collect();
    p.add_sparse(&terms, Relation::Eq, Scalar::one());
    p
}

/// Terms of `z_j = sum_k lambda_k v_kj`, with weights starting at `offset`.
pub(crate) fn coord_terms(vertices: &[Point], j: usize, offset: usize) -> Vec<(usize, Scalar)> {
    vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| !v[j].is_zero())
        .map(|(i, v)| (offset + i, v[j].clone()))
        .collect()
}

/// The point `sum_k lambda_k v_k` for the weights at the start of `solution`.
pub(crate) fn combine(vertices: &[Point], solution: &[Scalar]) -> Point {
    let dim = vertices[0].dim();
    let coords = (0..dim)
        .map(|j| vertices.iter().zip(solution).map(|(v, l)| &v[j] * l).sum())
        .collect();
    Point::new(coords).expect("hull vertices have a valid dimension")
}

fn solve(p: &LpProblem) -> LpOutcome {
    lp_solve(p).expect("hull LPs are well formed")
}

pub(crate) fn hull_contains(vertices: &[Point], x: &Point) -> bool {
    let mut p = hull_problem(vertices, 0);
    for j in 0..x.dim() {
        p.add_sparse(&coord_terms(vertices, j, 0), Relation::Eq, x[j].clone());
    }
    matches!(solve(&p), LpOutcome::Optimal { .. })
}

/// A point of `conv(vertices) ∩ [lo, hi]` minimizing `sign * z_axis` when an
/// objective is given, or any feasible point otherwise.
pub(crate) fn hull_box_point(
    vertices: &[Point],
    lo: &Point,
    hi: &Point,
    objective: Option<(usize, i32)>,
) -> Option<Point> {
    let mut p = hull_problem(vertices, 0);
    for j in 0..lo.dim() {
        let terms = coord_terms(vertices, j, 0);
        p.add_sparse(&terms, Relation::Ge, lo[j].clone());
        p.add_sparse(&terms, Relation::Le, hi[j].clone());
    }
    if let Some((axis, sign)) = objective {
        for (i, v) in vertices.iter().enumerate() {
            p.objective[i] = &v[axis] * &Scalar::from_int(sign as i64);
        }
    }
    solve(&p).optimal_point().map(|s| combine(vertices, s))
}

/// `{t in [0,1] : p + t d in conv(vertices)}` as a closed interval.
pub(crate) fn hull_line_interval(vertices: &[Point], p: &Point, d: &Point) -> Option<(Scalar, Scalar)> {
    let k = vertices.len();
    let mut lp = hull_problem(vertices, 1);
    lp.bounds[k] = crate::lp::Bound::between(Scalar::zero(), Scalar::one());
    for j in 0..p.dim() {
        let mut terms = coord_terms(vertices, j, 0);
        terms.push((k, -&d[j]));
        lp.add_sparse(&terms, Relation::Eq, p[j].clone());
    }
    lp.objective[k] = Scalar::one();
    let t_min = solve(&lp).optimal_point()?[k].clone();
    lp.objective[k] = -Scalar::one();
    let t_max = solve(&lp).optimal_point()?[k].clone();
    Some((t_min, t_max))
}

/// A common point of two hulls, if any.
pub(crate) fn hulls_intersection(u: &[Point], v: &[Point]) -> Option<Point> {
    let ku = u.len();
    let kv = v.len();
    let mut p = LpProblem::new(ku + kv);
    let ones_u: Vec<(usize, Scalar)> = (0..ku).map(|i| (i, Scalar::one())).collect();
    let ones_v: Vec<(usize, Scalar)> = (0..kv).map(|i| (ku + i, Scalar::one())).collect();
    p.add_sparse(&ones_u, Relation::Eq, Scalar::one());
    p.add_sparse(&ones_v, Relation::Eq, Scalar::one());
    for j in 0..u[0].dim() {
        let mut terms = coord_terms(u, j, 0);
        terms.extend(coord_terms(v, j, ku).into_iter().map(|(i, c)| (i, -c)));
        p.add_sparse(&terms, Relation::Eq, Scalar::zero());
    }
    solve(&p).optimal_point().map(|s| combine(u, &s[..ku]))
}

/// Closest pair of two hulls in the l1 norm: `(distance, p in u, q in v)`.
pub(crate) fn hulls_l1_closest(u: &[Point], v: &[Point]) -> (Scalar, Point, Point) {
    let ku = u.len();
    let kv = v.len();
    let dim = u[0].dim();
    let mut p = LpProblem::new(ku + kv + dim);
    let ones_u: Vec<(usize, Scalar)> = (0..ku).map(|i| (i, Scalar::one())).collect();
    let ones_v: Vec<(usize, Scalar)> = (0..kv).map(|i| (ku + i, Scalar::one())).collect();
    p.add_sparse(&ones_u, Relation::Eq, Scalar::one());
    p.add_sparse(&ones_v, Relation::Eq, Scalar::one());
    for j in 0..dim {
        let t = ku + kv + j;
        let mut diff = coord_terms(u, j, 0);
        diff.extend(coord_terms(v, j, ku).into_iter().map(|(i, c)| (i, -c)));
        // t_j >= |u_j - v_j|
        let mut above: Vec<(usize, Scalar)> = diff.iter().map(|(i, c)| (*i, -c)).collect();
        above.push((t, Scalar::one()));
        p.add_sparse(&above, Relation::Ge, Scalar::zero());
        let mut below = diff;
        below.push((t, Scalar::one()));
        p.add_sparse(&below, Relation::Ge, Scalar::zero());
        p.objective[t] = Scalar::one();
    }
    match solve(&p) {
        LpOutcome::Optimal { value, point } => (value, combine(u, &point[..ku]), combine(v, &point[ku..ku + kv])),
        other => panic!("closest-pair LP over bounded hulls must be optimal, got {other:?}"),
    }
}
