//! Solar ray tests, sun and strict-sun sweeps, and the supporting-cone
//! criterion in its sign form and its definitional form.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::lp::{lp_solve, Bound, LpOutcome, Relation};
use crate::numerics::{dist, norm, q, ray_point, IndexSet, Norm, Point, Scalar};
use crate::piecewise::{maximize_min_affine, segment_distance, Affine};
use crate::projection::{closer_point, distance, project, ProjectionResult};
use crate::set_model::{hull, Primitive, SampleSpec, SetModel};
use crate::verdict::{Coverage, Evidence, NonSolarStep, Verdict};

/// The open supporting cone at `y` of the ball around `x` through `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeSpec {
    pub y: Point,
    pub x: Point,
    pub r: Scalar,
    pub active: IndexSet,
}

impl ConeSpec {
    pub fn new(x: &Point, y: &Point) -> Result<ConeSpec> {
        check_dim(x.dim(), y.dim())?;
        let r = dist(x, y, Norm::Linf);
        if !r.is_positive() {
            return Err(Error::Precondition("cone apex must differ from the center".into()));
        }
        let active = IndexSet::from_indices((0..x.dim()).filter(|&j| (&x[j] - &y[j]).abs() == r));
        Ok(ConeSpec {
            y: y.clone(),
            x: x.clone(),
            r,
            active,
        })
    }

    fn sign(&self, j: usize) -> i32 {
        (&self.x[j] - &self.y[j]).signum()
    }

    /// `sign(x_j - y_j) (z_j - y_j)` for active `j`.
    fn slack(&self, j: usize, z: &Point) -> Scalar {
        let s = &z[j] - &self.y[j];
        if self.sign(j) > 0 {
            s
        } else {
            -s
        }
    }
}

/// Sign form: every active coordinate of `z - y` points strictly toward `x`.
pub fn cone_contains(spec: &ConeSpec, z: &Point) -> Result<bool> {
    check_dim(spec.x.dim(), z.dim())?;
    Ok(spec.active.iter().all(|j| spec.slack(j, z).is_positive()))
}

/// Definitional form: the segment `[y, z]` enters the open ball `B(x, r)`.
pub fn cone_contains_by_definition(spec: &ConeSpec, z: &Point) -> Result<bool> {
    check_dim(spec.x.dim(), z.dim())?;
    Ok(segment_distance(&spec.x, &spec.y, z, Norm::Linf).value < spec.r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ObOutcome {
    Holds,
    /// A point of the set inside the open cone.
    Violated { witness: Point },
}

impl ObOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ObOutcome::Holds)
    }
}

/// Decides whether the open cone of `spec` misses `m`: per primitive, the
/// largest value of the smallest active slack is positive exactly when the
/// primitive enters the cone.
pub fn ob_condition(m: &SetModel, spec: &ConeSpec) -> Result<ObOutcome> {
    check_dim(m.dim(), spec.x.dim())?;
    for prim in m.primitives() {
        let (best, z) = max_min_slack(prim, spec);
        if best.is_positive() {
            debug_assert!(cone_contains(spec, &z).unwrap());
            return Ok(ObOutcome::Violated { witness: z });
        }
    }
    Ok(ObOutcome::Holds)
}

fn max_min_slack(prim: &Primitive, spec: &ConeSpec) -> (Scalar, Point) {
    let active: Vec<usize> = spec.active.iter().collect();
    let min_slack = |z: &Point| active.iter().map(|&j| spec.slack(j, z)).min().expect("active set is nonempty");
    match prim {
        Primitive::Point { coords } => (min_slack(coords), coords.clone()),
        Primitive::Segment { a, b } => {
            let d = b.sub(a);
            let pieces: Vec<Affine> = active
                .iter()
                .map(|&j| {
                    let s = Scalar::from_int(spec.sign(j) as i64);
                    Affine {
                        offset: (&a[j] - &spec.y[j]) * &s,
                        slope: &d[j] * &s,
                    }
                })
                .collect();
            let (value, t) = maximize_min_affine(&pieces);
            (value, a.lerp(b, &t))
        }
        Primitive::AxisBox { lo, hi } => {
            let z = Point::new(
                (0..lo.dim())
                    .map(|j| {
                        if spec.active.contains(j) {
                            if spec.sign(j) > 0 {
                                hi[j].clone()
                            } else {
                                lo[j].clone()
                            }
                        } else {
                            Scalar::min_of(Scalar::max_of(&spec.y[j], &lo[j]), &hi[j]).clone()
                        }
                    })
                    .collect(),
            )
            .unwrap();
            (min_slack(&z), z)
        }
        Primitive::Polytope { vertices } => polytope_max_min_slack(vertices, spec, &active),
    }
}

/// `max s` subject to `s <= slack_j(z)` for active `j`, `z` in the hull.
fn polytope_max_min_slack(vertices: &[Point], spec: &ConeSpec, active: &[usize]) -> (Scalar, Point) {
    let k = vertices.len();
    let mut lp = hull::hull_problem(vertices, 1);
    lp.bounds[k] = Bound::free();
    for &j in active {
        // sign * (sum lambda v_j - y_j) - s >= 0
        let s = Scalar::from_int(spec.sign(j) as i64);
        let mut terms: Vec<(usize, Scalar)> = hull::coord_terms(vertices, j, 0)
            .into_iter()
            .map(|(i, c)| (i, c * &s))
            .collect();
        terms.push((k, -Scalar::one()));
        lp.add_sparse(&terms, Relation::Ge, &spec.y[j] * &s);
    }
    lp.objective[k] = -Scalar::one();
    match lp_solve(&lp).expect("well-formed cone LP") {
        LpOutcome::Optimal { value, point } => (-value, hull::combine(vertices, &point)),
        other => panic!("cone LP over a bounded hull must be optimal, got {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SolarVerdict {
    Solar {
        lambda_max_checked: Scalar,
    },
    NotSolar {
        lambda: Scalar,
        z: Point,
        rho_z: Scalar,
        distance_z: Scalar,
        competing: Point,
    },
}

impl SolarVerdict {
    pub fn is_solar(&self) -> bool {
        matches!(self, SolarVerdict::Solar { .. })
    }
}

/// Ray test for a nearest point `y` of `x`: is `y` still nearest to
/// `y + lambda (x - y)` for every `lambda` in the schedule?
pub fn is_solar_point(m: &SetModel, x: &Point, y: &Point, schedule: &[Scalar]) -> Result<SolarVerdict> {
    check_dim(m.dim(), x.dim())?;
    check_dim(m.dim(), y.dim())?;
    let rho = distance(m, x, Norm::Linf)?;
    if rho.is_zero() {
        return Err(Error::Precondition("x lies in the set".into()));
    }
    if dist(x, y, Norm::Linf) != rho || !m.has(y) {
        return Err(Error::Precondition("y is not a nearest point of x".into()));
    }
    Ok(ray_test(m, x, y, schedule))
}

fn ray_test(m: &SetModel, x: &Point, y: &Point, schedule: &[Scalar]) -> SolarVerdict {
    // The balls B(z_lambda, lambda r) are nested in lambda, so passing at the
    // largest lambda settles the whole schedule.
    if let Some(last) = schedule.iter().max() {
        let z = ray_point(y, x, last).expect("schedule is positive");
        if closer_point(m, &z, &dist(&z, y, Norm::Linf)).is_none() {
            return SolarVerdict::Solar {
                lambda_max_checked: last.clone(),
            };
        }
    }
    for lambda in schedule {
        let z = ray_point(y, x, lambda).expect("schedule is positive");
        let distance_z = dist(&z, y, Norm::Linf);
        if let Some(competing) = closer_point(m, &z, &distance_z) {
            return SolarVerdict::NotSolar {
                lambda: lambda.clone(),
                rho_z: distance(m, &z, Norm::Linf).unwrap(),
                z,
                distance_z,
                competing,
            };
        }
    }
    SolarVerdict::Solar {
        lambda_max_checked: schedule.last().cloned().unwrap_or_else(Scalar::zero),
    }
}

/// Lattice refinement tried by [`check_sun_at`] when the coarse face
/// samples hold no solar point.
const FINE_FACE_DIVISIONS: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SunOutcome {
    SunWitness { y: Point },
    /// Every examined nearest point failed; `exhaustive` when these were
    /// all the nearest points.
    NoSolarFound { failures: Vec<NonSolarStep>, exhaustive: bool },
}

/// Searches the nearest points of `x` (witnesses, then face samples, then a
/// finer face lattice) for a solar one.
pub fn check_sun_at(m: &SetModel, x: &Point, schedule: &[Scalar]) -> Result<SunOutcome> {
    let proj = project(m, x, Norm::Linf)?;
    if proj.rho.is_zero() {
        return Err(Error::Precondition("x lies in the set".into()));
    }
    let mut failures = Vec::new();
    let mut tried = HashSet::new();
    let fine = proj
        .witnesses
        .iter()
        .flat_map(|w| w.face.lattice_samples(FINE_FACE_DIVISIONS))
        .collect::<Vec<_>>();
    for y in proj.nearest_points().into_iter().chain(fine) {
        if !tried.insert(y.clone()) {
            continue;
        }
        match ray_test(m, x, &y, schedule) {
            SolarVerdict::Solar { .. } => return Ok(SunOutcome::SunWitness { y }),
            SolarVerdict::NotSolar {
                lambda,
                rho_z,
                distance_z,
                ..
            } => failures.push(NonSolarStep {
                y,
                lambda,
                rho_z,
                distance_z,
            }),
        }
    }
    let exhaustive = proj.witnesses.iter().all(|w| w.is_unique);
    Ok(SunOutcome::NoSolarFound { failures, exhaustive })
}

/// With `y_hat` solar and `y` nearest for `x`, checks that the segment
/// between them stays on the sphere of radius `rho(x, M)` about `x`.
pub fn verify_lemma2(m: &SetModel, x: &Point, y_hat: &Point, y: &Point, t_samples: &[Scalar]) -> Result<bool> {
    let rho = distance(m, x, Norm::Linf)?;
    check_dim(m.dim(), y.dim())?;
    check_dim(m.dim(), y_hat.dim())?;
    if dist(x, y, Norm::Linf) != rho || dist(x, y_hat, Norm::Linf) != rho {
        return Err(Error::Precondition("both points must be nearest to x".into()));
    }
    Ok(t_samples
        .iter()
        .all(|t| dist(x, &y.lerp(y_hat, t), Norm::Linf) == rho))
}

pub fn lemma2_samples() -> Vec<Scalar> {
    vec![q(0), q((1, 4)), q((1, 2)), q((3, 4)), q(1)]
}

pub fn default_schedule() -> Vec<Scalar> {
    vec![q(2), q(4), q(8), q(16)]
}

/// Which external points a sweep examines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    /// Lattice subdivisions of the bounding box per side; one more layer is
    /// added outside each face.
    pub lattice_steps: u32,
    /// Seeded random points added after the lattice.
    pub random_points: usize,
    pub seed: u64,
    /// Keep going after the first refutation (for statistics).
    pub exhaustive: bool,
}

impl SweepSpec {
    pub fn for_dim(dim: usize) -> SweepSpec {
        SweepSpec {
            lattice_steps: if dim <= 3 { 8 } else { 4 },
            random_points: 64,
            seed: 0,
            exhaustive: false,
        }
    }
}

/// External points in sweep order: the lattice from the center outwards
/// (l-infinity distance, then l1, ties by descending coordinates), then
/// seeded random points. Points of `m` are dropped.
pub fn sweep_points(m: &SetModel, spec: &SweepSpec) -> Vec<Point> {
    let dim = m.dim();
    let (lo, hi) = m.bounding_box();
    let steps = spec.lattice_steps.max(1) as i64;
    // degenerate sides get the widest side's spacing
    let widest = (0..dim).map(|j| &hi[j] - &lo[j]).max().unwrap();
    let widest = if widest.is_zero() { Scalar::one() } else { widest };
    let spacing: Vec<Scalar> = (0..dim)
        .map(|j| {
            let w = &hi[j] - &lo[j];
            if w.is_zero() {
                &widest / Scalar::from_int(steps)
            } else {
                w / Scalar::from_int(steps)
            }
        })
        .collect();
    let center = lo.midpoint(&hi);
    let axis_values: Vec<Vec<Scalar>> = (0..dim)
        .map(|j| {
            if lo[j] == hi[j] {
                (-2..=2).map(|k| &lo[j] + &spacing[j] * Scalar::from_int(k)).collect()
            } else {
                (-1..=steps + 1).map(|k| &lo[j] + &spacing[j] * Scalar::from_int(k)).collect()
            }
        })
        .collect();
    let mut lattice: Vec<Point> = vec![Point::new(vec![Scalar::zero(); dim]).unwrap()];
    for (j, values) in axis_values.iter().enumerate() {
        lattice = lattice
            .iter()
            .flat_map(|p| values.iter().map(move |v| p.with_coord(j, v.clone())))
            .collect();
    }
    let mut keyed: Vec<(Scalar, Scalar, Point)> = lattice
        .into_iter()
        .map(|p| {
            let d = p.sub(&center);
            (norm(&d, Norm::Linf), norm(&d, Norm::L1), p)
        })
        .collect();
    keyed.sort_by(|a, b| match (a.0.cmp(&b.0), a.1.cmp(&b.1)) {
        (Ordering::Equal, Ordering::Equal) => b.2.cmp(&a.2),
        (Ordering::Equal, o) => o,
        (o, _) => o,
    });
    let mut seen = HashSet::new();
    let mut out: Vec<Point> = Vec::new();
    for (_, _, p) in keyed {
        if !m.has(&p) && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x0005_u64.rotate_left(40));
    let anchors = m.sample_points(&SampleSpec::new(32, spec.seed));
    let denom = 16 * steps;
    let mut added = 0;
    let mut attempts = 0;
    while added < spec.random_points && attempts < 50 * spec.random_points.max(1) {
        attempts += 1;
        let p = if attempts % 2 == 0 {
            // uniform in the lattice's range
            let coords = (0..dim)
                .map(|j| {
                    let first = axis_values[j].first().unwrap();
                    let span = axis_values[j].last().unwrap() - first;
                    first + span * Scalar::new(rng.random_range(0..=denom), denom)
                })
                .collect();
            Point::new(coords).unwrap()
        } else {
            // a perturbed sample point of the set
            let base = &anchors[rng.random_range(0..anchors.len())];
            let coords = (0..dim)
                .map(|j| &base[j] + &spacing[j] * Scalar::new(rng.random_range(-denom..=denom), denom))
                .collect();
            Point::new(coords).unwrap()
        };
        if !m.has(&p) && seen.insert(p.clone()) {
            out.push(p);
            added += 1;
        }
    }
    out
}

/// Agreement statistics gathered by [`check_strict_sun`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub points_examined: usize,
    pub pairs_tested: usize,
    pub ob_holds: usize,
    pub ob_violated: usize,
    /// Must stay zero: the cone condition is sufficient for solarity.
    pub ob_holds_but_not_solar: usize,
    pub lemma2_checks: usize,
    pub lemma2_failures: usize,
    pub face_sampling: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictSunReport {
    pub verdict: Verdict,
    pub stats: SweepStats,
}

struct PointOutcome {
    refutation: Option<Evidence>,
    pairs: usize,
    ob_holds: usize,
    ob_violated: usize,
    ob_holds_but_not_solar: usize,
    lemma2_checks: usize,
    lemma2_failures: usize,
}

fn examine_strict(m: &SetModel, x: &Point, schedule: &[Scalar]) -> PointOutcome {
    let proj: ProjectionResult = project(m, x, Norm::Linf).expect("dims checked");
    let candidates = proj.nearest_points();
    let mut out = PointOutcome {
        refutation: None,
        pairs: candidates.len(),
        ob_holds: 0,
        ob_violated: 0,
        ob_holds_but_not_solar: 0,
        lemma2_checks: 0,
        lemma2_failures: 0,
    };
    let mut solar: Option<Point> = None;
    for y in &candidates {
        let verdict = ray_test(m, x, y, schedule);
        let spec = ConeSpec::new(x, y).expect("x lies outside the set");
        let ob = ob_condition(m, &spec).expect("dims checked");
        if ob.holds() {
            out.ob_holds += 1;
            if !verdict.is_solar() {
                out.ob_holds_but_not_solar += 1;
            }
        } else {
            out.ob_violated += 1;
        }
        match verdict {
            SolarVerdict::Solar { .. } => {
                if solar.is_none() {
                    solar = Some(y.clone());
                }
            }
            SolarVerdict::NotSolar {
                lambda,
                z,
                rho_z,
                distance_z,
                competing,
            } => {
                if out.refutation.is_none() {
                    out.refutation = Some(Evidence::NonSolar {
                        x: x.clone(),
                        y: y.clone(),
                        lambda,
                        z,
                        rho_z,
                        distance_z,
                        competing,
                    });
                }
            }
        }
    }
    if let Some(y_hat) = solar {
        for y in candidates.iter().filter(|y| **y != y_hat) {
            out.lemma2_checks += 1;
            if !verify_lemma2(m, x, &y_hat, y, &lemma2_samples()).expect("both are nearest") {
                out.lemma2_failures += 1;
            }
        }
    }
    out
}

/// Points processed between early-exit checks.
const CHUNK: usize = 32;

/// Strict-sun sweep: every sampled nearest point of every sampled external
/// point must pass the ray test. Refutations are exact.
pub fn check_strict_sun(m: &SetModel, sweep: &SweepSpec, schedule: &[Scalar]) -> StrictSunReport {
    let points = sweep_points(m, sweep);
    let mut stats = SweepStats {
        face_sampling: "face vertices and midpoint".into(),
        ..SweepStats::default()
    };
    let mut refutation: Option<Evidence> = None;
    'chunks: for chunk in points.chunks(CHUNK) {
        let outcomes: Vec<PointOutcome> = chunk.par_iter().map(|x| examine_strict(m, x, schedule)).collect();
        for o in outcomes {
            stats.points_examined += 1;
            stats.pairs_tested += o.pairs;
            stats.ob_holds += o.ob_holds;
            stats.ob_violated += o.ob_violated;
            stats.ob_holds_but_not_solar += o.ob_holds_but_not_solar;
            stats.lemma2_checks += o.lemma2_checks;
            stats.lemma2_failures += o.lemma2_failures;
            if refutation.is_none() {
                refutation = o.refutation;
            }
            if refutation.is_some() && !sweep.exhaustive {
                break 'chunks;
            }
        }
    }
    let verdict = match refutation {
        Some(evidence) => Verdict::Refuted { evidence },
        None => Verdict::SampledPass {
            coverage: Coverage {
                checked: stats.points_examined,
                conditional: stats.pairs_tested,
                resolution: schedule.last().cloned().unwrap_or_else(Scalar::zero),
            },
        },
    };
    StrictSunReport { verdict, stats }
}

/// Sun sweep: every sampled external point must have a solar nearest point.
/// A refutation is exact when the failing point's nearest points are finite
/// (recorded in the evidence through `exhaustive`).
pub fn check_sun(m: &SetModel, sweep: &SweepSpec, schedule: &[Scalar]) -> Verdict {
    let points = sweep_points(m, sweep);
    let mut checked = 0;
    for chunk in points.chunks(CHUNK) {
        let outcomes: Vec<SunOutcome> = chunk
            .par_iter()
            .map(|x| check_sun_at(m, x, schedule).expect("external point"))
            .collect();
        for (x, o) in chunk.iter().zip(outcomes) {
            checked += 1;
            if let SunOutcome::NoSolarFound { failures, .. } = o {
                return Verdict::Refuted {
                    evidence: Evidence::NoSolarPoint {
                        x: x.clone(),
                        candidates: failures,
                    },
                };
            }
        }
    }
    Verdict::SampledPass {
        coverage: Coverage {
            checked,
            conditional: checked,
            resolution: schedule.last().cloned().unwrap_or_else(Scalar::zero),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn main_cross() -> SetModel {
        let prims = (0..3)
            .map(|j| {
                let o = Point::origin(3).unwrap();
                Primitive::segment(o.with_coord(j, q(-4)), o.with_coord(j, q(4))).unwrap()
            })
            .collect();
        SetModel::new(3, "cross", prims).unwrap()
    }

    fn unit_box() -> SetModel {
        let b = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 1])).unwrap();
        SetModel::new(3, "box", vec![b]).unwrap()
    }

    #[test]
    fn cone_forms() {
        let spec = ConeSpec::new(&Point::origin(3).unwrap(), &Point::of([1, 1, 0])).unwrap();
        assert_eq!(spec.active, IndexSet::from_indices([0, 1]));
        assert!(cone_contains(&spec, &Point::of([0, 0, 5])).unwrap());
        assert!(!cone_contains(&spec, &Point::of([1, 0, 0])).unwrap());
        let spec = ConeSpec::new(&Point::of([1, 1, 0]), &Point::of([1, 0, 0])).unwrap();
        assert_eq!(spec.active, IndexSet::from_indices([1]));
        let z = Point::of(["0", "1/2", "0"]);
        assert!(cone_contains(&spec, &z).unwrap());
        assert!(cone_contains_by_definition(&spec, &z).unwrap());
        assert!(cone_contains_by_definition(&spec, &spec.x.clone()).unwrap());
        assert!(!cone_contains_by_definition(&spec, &spec.y.clone()).unwrap());
    }

    #[test]
    fn cone_condition_on_the_cross() {
        let m = main_cross();
        let spec = ConeSpec::new(&Point::of([1, 1, 0]), &Point::of([1, 0, 0])).unwrap();
        match ob_condition(&m, &spec).unwrap() {
            ObOutcome::Violated { witness } => {
                assert!(m.has(&witness));
                assert!(cone_contains(&spec, &witness).unwrap());
                assert_eq!(witness[1], q(4), "slack maximized at the arm's end");
            }
            ObOutcome::Holds => panic!("the second axis enters the cone"),
        }
        let spec = ConeSpec::new(&Point::of([1, 1, 0]), &Point::origin(3).unwrap()).unwrap();
        assert_eq!(ob_condition(&m, &spec).unwrap(), ObOutcome::Holds);
    }

    #[test]
    fn box_and_polytope_slacks_agree() {
        let b = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([2, 1, 3])).unwrap();
        let poly = Primitive::polytope(b.vertices()).unwrap();
        let specs = [
            ConeSpec::new(&Point::of([3, 3, 0]), &Point::of([2, 1, 0])).unwrap(),
            ConeSpec::new(&Point::of(["-1", "1/2", "4"]), &Point::of(["0", "1/2", "3"])).unwrap(),
        ];
        for spec in &specs {
            assert_eq!(max_min_slack(&b, spec).0, max_min_slack(&poly, spec).0);
        }
    }

    #[test]
    fn solar_examples() {
        let m = main_cross();
        let x = Point::of([1, 1, 0]);
        let sched = default_schedule();
        assert_eq!(
            is_solar_point(&m, &x, &Point::of([1, 0, 0]), &sched).unwrap(),
            SolarVerdict::NotSolar {
                lambda: q(2),
                z: Point::of([1, 2, 0]),
                rho_z: q(1),
                distance_z: q(2),
                competing: Point::of([0, 2, 0]),
            }
        );
        assert!(is_solar_point(&m, &x, &Point::origin(3).unwrap(), &sched).unwrap().is_solar());
        let b = unit_box();
        assert!(is_solar_point(&b, &Point::of(["2", "1/2", "1/2"]), &Point::of(["1", "1/2", "1/2"]), &sched)
            .unwrap()
            .is_solar());
        assert!(is_solar_point(&m, &x, &Point::of([0, 0, 2]), &sched).is_err());
    }

    #[test]
    fn sun_points() {
        let sched = default_schedule();
        assert_eq!(
            check_sun_at(&main_cross(), &Point::of([1, 1, 0]), &sched).unwrap(),
            SunOutcome::SunWitness { y: Point::origin(3).unwrap() }
        );
        assert_eq!(
            check_sun_at(&unit_box(), &Point::of([2, 2, 2]), &sched).unwrap(),
            SunOutcome::SunWitness { y: Point::of([1, 1, 1]) }
        );
        let two = SetModel::new(
            3,
            "two",
            vec![Primitive::point(Point::origin(3).unwrap()), Primitive::point(Point::of([4, 0, 0]))],
        )
        .unwrap();
        match check_sun_at(&two, &Point::of([2, 1, 0]), &sched).unwrap() {
            SunOutcome::NoSolarFound { failures, exhaustive } => {
                assert_eq!(failures.len(), 2);
                assert!(exhaustive);
            }
            other => panic!("expected no solar point, got {other:?}"),
        }
    }

    #[test]
    fn lemma2_examples() {
        let m = main_cross();
        let x = Point::of([1, 1, 0]);
        let t = lemma2_samples();
        assert!(verify_lemma2(&m, &x, &Point::origin(3).unwrap(), &Point::of([0, 0, 1]), &t).unwrap());
        assert!(verify_lemma2(&m, &x, &Point::origin(3).unwrap(), &Point::origin(3).unwrap(), &t).unwrap());
        assert!(verify_lemma2(&m, &x, &Point::origin(3).unwrap(), &Point::of([0, 0, 2]), &t).is_err());
    }

    #[test]
    fn cross_sweep_finds_the_canonical_witness() {
        let r = check_strict_sun(&main_cross(), &SweepSpec::for_dim(3), &default_schedule());
        match r.verdict {
            Verdict::Refuted {
                evidence: Evidence::NonSolar { x, y, lambda, .. },
            } => {
                assert_eq!((x, y, lambda), (Point::of([1, 1, 0]), Point::of([1, 0, 0]), q(2)));
            }
            other => panic!("expected a refutation, got {other:?}"),
        }
        assert_eq!(r.stats.ob_holds_but_not_solar, 0);
    }

    #[test]
    fn sweep_points_avoid_the_set() {
        let b = unit_box();
        let pts = sweep_points(&b, &SweepSpec::for_dim(3));
        assert!(pts.len() >= 500);
        assert!(pts.iter().all(|p| !b.has(p)));
        assert_eq!(pts, sweep_points(&b, &SweepSpec::for_dim(3)));
    }
}
