//! Exact metric projection onto primitives and sets, in the l-infinity norm
//! (and the l1 norm, used by cross-check oracles).

use serde::Serialize;

pub use crate::lp::{lp_solve, Bound, LpOutcome, LpProblem, Relation};
use crate::error::{check_dim, Result};
use crate::numerics::{dist, Norm, Point, Scalar};
use crate::piecewise::segment_distance;
use crate::set_model::{box_corners, hull, Primitive, SetModel};

/// The set of minimizers of `|x - .|` over one primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinimizerFace {
    Point { at: Point },
    Segment { from: Point, to: Point },
    Box { lo: Point, hi: Point },
    /// Extreme minimizers found by coordinate-wise LP probes of a polytope.
    Probes { points: Vec<Point> },
}

impl MinimizerFace {
    /// Vertices of the face plus its midpoint (for probes: the probe points
    /// plus their centroid).
    pub fn samples(&self) -> Vec<Point> {
        let mut out = match self {
            MinimizerFace::Point { at } => return vec![at.clone()],
            MinimizerFace::Segment { from, to } => vec![from.clone(), to.clone(), from.midpoint(to)],
            MinimizerFace::Box { lo, hi } => {
                let mut v = box_corners(lo, hi);
                v.push(lo.midpoint(hi));
                v
            }
            MinimizerFace::Probes { points } => {
                let mut v = points.clone();
                let n = Scalar::from_int(points.len() as i64);
                let sum = points[1..].iter().fold(points[0].clone(), |acc, p| acc.add(p));
                v.push(sum.scale(&n.recip()));
                v
            }
        };
        let mut seen = std::collections::HashSet::new();
        out.retain(|p| seen.insert(p.clone()));
        out
    }

    /// A finer sample: the face's lattice with `divisions` parts per side
    /// (for probes: points dividing each pair of probes likewise).
    pub fn lattice_samples(&self, divisions: i64) -> Vec<Point> {
        let fractions: Vec<Scalar> = (0..=divisions).map(|k| Scalar::new(k, divisions)).collect();
        let mut out: Vec<Point> = match self {
            MinimizerFace::Point { at } => vec![at.clone()],
            MinimizerFace::Segment { from, to } => fractions.iter().map(|t| from.lerp(to, t)).collect(),
            MinimizerFace::Box { lo, hi } => {
                let mut pts = vec![lo.clone()];
                for j in 0..lo.dim() {
                    if lo[j] == hi[j] {
                        continue;
                    }
                    pts = pts
                        .iter()
                        .flat_map(|p| {
                            fractions
                                .iter()
                                .map(move |t| p.with_coord(j, &lo[j] + (&hi[j] - &lo[j]) * t))
                        })
                        .collect();
                }
                pts
            }
            MinimizerFace::Probes { points } => {
                let mut pts = Vec::new();
                for (i, a) in points.iter().enumerate() {
                    for b in &points[i + 1..] {
                        pts.extend(fractions.iter().map(|t| a.lerp(b, t)));
                    }
                }
                pts
            }
        };
        let mut seen = std::collections::HashSet::new();
        out.retain(|p| seen.insert(p.clone()));
        out
    }
}

/// Projection of a point onto one primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveProjection {
    pub distance: Scalar,
    pub minimizer: Point,
    pub is_unique: bool,
    pub face: MinimizerFace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub primitive: usize,
    pub minimizer: Point,
    pub is_unique: bool,
    pub face: MinimizerFace,
}

/// `rho(x, M)` with one witness per primitive attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionResult {
    pub rho: Scalar,
    pub witnesses: Vec<Witness>,
    pub norm_used: Norm,
}

impl ProjectionResult {
    /// Witness points followed by face samples, without repeats.
    pub fn nearest_points(&self) -> Vec<Point> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for w in &self.witnesses {
            if seen.insert(w.minimizer.clone()) {
                out.push(w.minimizer.clone());
            }
        }
        for w in &self.witnesses {
            for p in w.face.samples() {
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn is_unique(&self) -> bool {
        self.nearest_points().len() == 1
    }
}

pub fn project_primitive(prim: &Primitive, x: &Point, which: Norm) -> Result<PrimitiveProjection> {
    check_dim(prim.dim(), x.dim())?;
    Ok(match prim {
        Primitive::Point { coords } => PrimitiveProjection {
            distance: dist(x, coords, which),
            minimizer: coords.clone(),
            is_unique: true,
            face: MinimizerFace::Point { at: coords.clone() },
        },
        Primitive::Segment { a, b } => {
            let m = segment_distance(x, a, b, which);
            let mid = Scalar::midpoint(&m.t_lo, &m.t_hi);
            let minimizer = a.lerp(b, &mid);
            if m.t_lo == m.t_hi {
                PrimitiveProjection {
                    distance: m.value,
                    face: MinimizerFace::Point { at: minimizer.clone() },
                    minimizer,
                    is_unique: true,
                }
            } else {
                PrimitiveProjection {
                    distance: m.value,
                    minimizer,
                    is_unique: false,
                    face: MinimizerFace::Segment {
                        from: a.lerp(b, &m.t_lo),
                        to: a.lerp(b, &m.t_hi),
                    },
                }
            }
        }
        Primitive::AxisBox { lo, hi } => {
            let clamp = clamp(x, lo, hi);
            let distance = dist(x, &clamp, which);
            match which {
                // l1 is separable, so the clamp is the only minimizer
                Norm::L1 => PrimitiveProjection {
                    distance,
                    face: MinimizerFace::Point { at: clamp.clone() },
                    minimizer: clamp,
                    is_unique: true,
                },
                Norm::Linf => {
                    let (flo, fhi) = box_face(x, lo, hi, &distance);
                    let is_unique = flo == fhi;
                    let face = if is_unique {
                        MinimizerFace::Point { at: flo }
                    } else {
                        MinimizerFace::Box { lo: flo, hi: fhi }
                    };
                    PrimitiveProjection {
                        distance,
                        minimizer: clamp,
                        is_unique,
                        face,
                    }
                }
            }
        }
        Primitive::Polytope { vertices } => polytope_projection(vertices, x, which),
    })
}

/// `rho(x, M)` over all primitives, with every attaining primitive listed.
pub fn project(m: &SetModel, x: &Point, which: Norm) -> Result<ProjectionResult> {
    check_dim(m.dim(), x.dim())?;
    let per: Vec<PrimitiveProjection> = m
        .primitives()
        .iter()
        .map(|p| project_primitive(p, x, which))
        .collect::<Result<_>>()?;
    let rho = per.iter().map(|p| &p.distance).min().expect("nonempty set").clone();
    let witnesses = per
        .into_iter()
        .enumerate()
        .filter(|(_, p)| p.distance == rho)
        .map(|(i, p)| Witness {
            primitive: i,
            minimizer: p.minimizer,
            is_unique: p.is_unique,
            face: p.face,
        })
        .collect();
    Ok(ProjectionResult {
        rho,
        witnesses,
        norm_used: which,
    })
}

/// `rho(x, M)` alone; skips the face analysis of [`project`].
pub fn distance(m: &SetModel, x: &Point, which: Norm) -> Result<Scalar> {
    check_dim(m.dim(), x.dim())?;
    Ok(m.primitives()
        .iter()
        .map(|p| primitive_distance(p, x, which))
        .min()
        .expect("nonempty set"))
}

/// A point of M strictly closer to `x` than `bound`, if one exists.
pub(crate) fn closer_point(m: &SetModel, x: &Point, bound: &Scalar) -> Option<Point> {
    m.primitives().iter().find_map(|p| {
        if primitive_distance(p, x, Norm::Linf) < *bound {
            Some(project_primitive(p, x, Norm::Linf).expect("dims checked").minimizer)
        } else {
            None
        }
    })
}

pub(crate) fn primitive_distance(prim: &Primitive, x: &Point, which: Norm) -> Scalar {
    match prim {
        Primitive::Point { coords } => dist(x, coords, which),
        Primitive::Segment { a, b } => segment_distance(x, a, b, which).value,
        Primitive::AxisBox { lo, hi } => dist(x, &clamp(x, lo, hi), which),
        Primitive::Polytope { vertices } => {
            let lp = ball_problem(vertices, x, which);
            let outcome = lp_solve(&lp).expect("well-formed projection LP");
            optimal(&outcome).0
        }
    }
}

pub(crate) fn clamp(x: &Point, lo: &Point, hi: &Point) -> Point {
    let coords = (0..x.dim())
        .map(|j| Scalar::min_of(Scalar::max_of(&x[j], &lo[j]), &hi[j]).clone())
        .collect();
    Point::new(coords).expect("same dimension")
}

/// `[lo, hi] ∩ [x - r, x + r]`.
fn box_face(x: &Point, lo: &Point, hi: &Point, r: &Scalar) -> (Point, Point) {
    let flo = (0..x.dim())
        .map(|j| Scalar::max_of(&lo[j], &(&x[j] - r)).clone())
        .collect();
    let fhi = (0..x.dim())
        .map(|j| Scalar::min_of(&hi[j], &(&x[j] + r)).clone())
        .collect();
    (Point::new(flo).unwrap(), Point::new(fhi).unwrap())
}

/// Variables: barycentric weights (k), the radius `t`, and for l1 one slack
/// per coordinate. Constraints say `|x - sum lambda v| <= t`; objective `t`.
fn ball_problem(vertices: &[Point], x: &Point, which: Norm) -> LpProblem {
    let k = vertices.len();
    let n = x.dim();
    let extra = match which {
        Norm::Linf => 1,
        Norm::L1 => 1 + n,
    };
    let mut lp = hull::hull_problem(vertices, extra);
    let t = k;
    for j in 0..n {
        let z = hull::coord_terms(vertices, j, 0);
        let slack = match which {
            Norm::Linf => t,
            Norm::L1 => k + 1 + j,
        };
        let mut ge = z.clone();
        ge.push((slack, Scalar::one()));
        lp.add_sparse(&ge, Relation::Ge, x[j].clone());
        let mut le = z;
        le.push((slack, -Scalar::one()));
        lp.add_sparse(&le, Relation::Le, x[j].clone());
    }
    if which == Norm::L1 {
        let mut terms: Vec<(usize, Scalar)> = (0..n).map(|j| (k + 1 + j, Scalar::one())).collect();
        terms.push((t, -Scalar::one()));
        lp.add_sparse(&terms, Relation::Le, Scalar::zero());
    }
    lp.objective[t] = Scalar::one();
    lp
}

fn optimal(outcome: &LpOutcome) -> (Scalar, Vec<Scalar>) {
    match outcome {
        LpOutcome::Optimal { value, point } => (value.clone(), point.clone()),
        other => panic!("projection LP must be feasible and bounded, got {other:?}"),
    }
}

fn polytope_projection(vertices: &[Point], x: &Point, which: Norm) -> PrimitiveProjection {
    let k = vertices.len();
    let mut lp = ball_problem(vertices, x, which);
    let (distance, solution) = optimal(&lp_solve(&lp).expect("well-formed projection LP"));
    let minimizer = hull::combine(vertices, &solution);
    // Probe the optimal face: fix the radius, then push each coordinate of
    // the minimizer to its extremes.
    lp.bounds[k] = Bound::between(distance.clone(), distance.clone());
    let mut probes: Vec<Point> = Vec::new();
    let mut is_unique = true;
    for j in 0..x.dim() {
        let mut extremes = Vec::with_capacity(2);
        for sign in [1i64, -1] {
            lp.objective = vec![Scalar::zero(); lp.num_vars()];
            for (i, v) in vertices.iter().enumerate() {
                lp.objective[i] = &v[j] * &Scalar::from_int(sign);
            }
            let (_, s) = optimal(&lp_solve(&lp).expect("well-formed probe LP"));
            extremes.push(hull::combine(vertices, &s));
        }
        if extremes[0][j] != extremes[1][j] {
            is_unique = false;
        }
        for p in extremes {
            if !probes.contains(&p) {
                probes.push(p);
            }
        }
    }
    let face = if is_unique {
        MinimizerFace::Point { at: minimizer.clone() }
    } else {
        MinimizerFace::Probes { points: probes }
    };
    PrimitiveProjection {
        distance,
        minimizer,
        is_unique,
        face,
    }
}
