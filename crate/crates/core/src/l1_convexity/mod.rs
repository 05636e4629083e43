//! Menger l1-convexity, monotone geodesic search and strict l1-convexity.

mod geodesic;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use geodesic::{monotone_geodesic, GeodesicPath};

use crate::classification::is_cocross;
use crate::error::{check_dim, Error, Result};
use crate::numerics::{ff, ff_mod, q, IndexSet, Point, Scalar};
use crate::set_model::{hull, Primitive, SampleSpec, SetModel};
use crate::verdict::{Certificate, Coverage, Evidence, Verdict};

/// Sampling effort for the pair-quantified predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub samples: SampleSpec,
    /// Seeded random pairs drawn on top of all structural pairs.
    pub random_pairs: usize,
    /// Geodesic lattice densities, coarse to fine.
    pub densities: Vec<Scalar>,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            samples: SampleSpec::new(48, 0),
            random_pairs: 200,
            densities: vec![q((1, 2)), q((1, 4)), q((1, 8))],
        }
    }
}

impl Budget {
    pub fn with_seed(mut self, seed: u64) -> Budget {
        self.samples.seed = seed;
        self
    }
}

/// A point of `m`, other than `x` and `y`, l1-between them.
pub fn menger_witness(m: &SetModel, x: &Point, y: &Point) -> Result<Option<Point>> {
    check_dim(m.dim(), x.dim())?;
    check_dim(m.dim(), y.dim())?;
    if x == y || !m.has(x) || !m.has(y) {
        return Err(Error::Precondition("need two distinct points of the set".into()));
    }
    Ok(menger_point(m, x, y))
}

fn menger_point(m: &SetModel, x: &Point, y: &Point) -> Option<Point> {
    let dim = x.dim();
    let lo = Point::new((0..dim).map(|j| Scalar::min_of(&x[j], &y[j]).clone()).collect()).unwrap();
    let hi = Point::new((0..dim).map(|j| Scalar::max_of(&x[j], &y[j]).clone()).collect()).unwrap();
    m.primitives().iter().find_map(|p| {
        let clip = p.clip_to_box(&lo, &hi)?;
        clip.representatives().into_iter().find(|z| z != x && z != y)
    })
}

/// The pairs examined by the convexity checks: all pairs of structural
/// points, each structural point with its l1-nearest point on every other
/// primitive, then `random_pairs` distinct seeded pairs of sample points.
/// The flag is set when the set is finite and every pair was listed.
pub fn sample_pairs(m: &SetModel, budget: &Budget) -> (Vec<(Point, Point)>, bool) {
    let structural = m.structural_points();
    let mut seen: HashSet<(Point, Point)> = HashSet::new();
    let mut pairs = Vec::new();
    for (i, a) in structural.iter().enumerate() {
        for b in &structural[i + 1..] {
            seen.insert((a.clone(), b.clone()));
            pairs.push((a.clone(), b.clone()));
        }
    }
    let finite = m.primitives().iter().all(|p| matches!(p, Primitive::Point { .. }));
    if finite {
        return (pairs, true);
    }
    for (a, b) in projection_pairs(m, &structural) {
        if seen.insert((a.clone(), b.clone())) {
            pairs.push((a, b));
        }
    }
    let pool = m.sample_points(&budget.samples);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.samples.seed ^ 0x5eed_9a1e);
    let mut added = 0;
    let mut attempts = 0;
    while added < budget.random_pairs && attempts < 20 * budget.random_pairs && pool.len() > 1 {
        attempts += 1;
        let i = rng.random_range(0..pool.len());
        let j = rng.random_range(0..pool.len());
        if i == j {
            continue;
        }
        let (a, b) = if pool[i] < pool[j] { (i, j) } else { (j, i) };
        let key = (pool[a].clone(), pool[b].clone());
        if seen.contains(&key) || seen.contains(&(key.1.clone(), key.0.clone())) {
            continue;
        }
        seen.insert(key.clone());
        pairs.push(key);
        added += 1;
    }
    (pairs, false)
}

/// Each structural point paired with its l1-nearest point on every
/// primitive that misses it.
fn projection_pairs(m: &SetModel, structural: &[Point]) -> Vec<(Point, Point)> {
    let vertices: Vec<Vec<Point>> = m.primitives().iter().map(Primitive::vertices).collect();
    structural
        .par_iter()
        .flat_map_iter(|p| {
            m.primitives()
                .iter()
                .zip(&vertices)
                .filter(|(prim, _)| !prim.contains(p))
                .map(|(_, vs)| {
                    let (_, a, b) = hull::hulls_l1_closest(std::slice::from_ref(p), vs);
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Menger l1-convexity over the sampled pairs. Refutations are exact.
pub fn is_l1_convex(m: &SetModel, budget: &Budget) -> Verdict {
    let (pairs, exhaustive) = sample_pairs(m, budget);
    l1_verdict(m, &pairs, exhaustive, budget)
}

/// For a disconnected set: the closest pair (in l1) between two different
/// components. No point of the set lies between them, otherwise some
/// component would be closer.
pub fn component_gap(m: &SetModel) -> Option<(Point, Point)> {
    let components = m.connected_components();
    if components.len() < 2 {
        return None;
    }
    let mut owner = vec![0; m.primitives().len()];
    for (c, members) in components.iter().enumerate() {
        for &i in members {
            owner[i] = c;
        }
    }
    let vertices: Vec<Vec<Point>> = m.primitives().iter().map(Primitive::vertices).collect();
    let mut best: Option<(Scalar, Point, Point)> = None;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if owner[i] == owner[j] {
                continue;
            }
            let (d, p, q) = hull::hulls_l1_closest(&vertices[i], &vertices[j]);
            if best.as_ref().is_none_or(|(b, _, _)| d < *b) {
                best = Some((d, p, q));
            }
        }
    }
    best.map(|(_, p, q)| (p, q))
}

fn l1_verdict(m: &SetModel, pairs: &[(Point, Point)], exhaustive: bool, budget: &Budget) -> Verdict {
    let gap = component_gap(m).or_else(|| {
        pairs
            .par_iter()
            .find_map_first(|(x, y)| menger_point(m, x, y).is_none().then(|| (x.clone(), y.clone())))
    });
    match gap {
        Some((x, y)) => Verdict::Refuted {
            evidence: Evidence::MengerGap { x, y },
        },
        None if exhaustive => Verdict::Proven {
            evidence: Evidence::FinitePairs { pairs: pairs.len() },
        },
        None => Verdict::SampledPass {
            coverage: Coverage {
                checked: pairs.len(),
                conditional: 0,
                resolution: finest(budget),
            },
        },
    }
}

fn finest(budget: &Budget) -> Scalar {
    budget.densities.iter().min().cloned().unwrap_or_else(Scalar::one)
}

/// Strict l1-convexity: Menger convexity, plus a strictly monotone geodesic
/// (outside eqc(M)) for every sampled pair differing in all free coordinates.
pub fn is_strictly_l1_convex(m: &SetModel, budget: &Budget) -> Verdict {
    let (pairs, exhaustive) = sample_pairs(m, budget);
    let menger = l1_verdict(m, &pairs, exhaustive, budget);
    if menger.is_refuted() {
        return menger;
    }
    let eqc = m.eqc();
    let strict = eqc.complement(m.dim());
    let conditional: Vec<&(Point, Point)> = pairs.iter().filter(|(x, y)| ff_mod(x, y, &eqc).unwrap()).collect();
    let stuck = conditional.par_iter().find_map_first(|(x, y)| {
        let found = budget
            .densities
            .iter()
            .any(|d| monotone_geodesic(m, x, y, strict, d).expect("pair is valid").is_some());
        (!found).then(|| (x.clone(), y.clone()))
    });
    if let Some((x, y)) = stuck {
        let certificate = is_cocross(m).map(|witness| Certificate::CocrossContainment { witness });
        return Verdict::Refuted {
            evidence: Evidence::GeodesicExhausted {
                x,
                y,
                densities: budget.densities.clone(),
                certificate,
            },
        };
    }
    if exhaustive {
        return Verdict::Proven {
            evidence: Evidence::FinitePairs { pairs: pairs.len() },
        };
    }
    Verdict::SampledPass {
        coverage: Coverage {
            checked: pairs.len(),
            conditional: conditional.len(),
            resolution: finest(budget),
        },
    }
}

/// Points examined by the pair searches: structural points, then samples.
fn search_pool(m: &SetModel, budget: &Budget) -> Vec<Point> {
    let mut pool = m.structural_points();
    let mut seen: HashSet<Point> = pool.iter().cloned().collect();
    for p in m.sample_points(&budget.samples) {
        if seen.insert(p.clone()) {
            pool.push(p);
        }
    }
    pool
}

/// A sampled pair differing in every coordinate.
pub fn find_ff_pair(m: &SetModel, budget: &Budget) -> Option<(Point, Point)> {
    find_pair(m, budget, IndexSet::empty())
}

/// A sampled pair differing in every coordinate outside eqc(M).
pub fn find_ff_mod_pair(m: &SetModel, budget: &Budget) -> Option<(Point, Point)> {
    find_pair(m, budget, m.eqc())
}

fn find_pair(m: &SetModel, budget: &Budget, eqc: IndexSet) -> Option<(Point, Point)> {
    if eqc.len() == m.dim() {
        return None;
    }
    let pool = search_pool(m, budget);
    pool.iter().enumerate().find_map(|(i, a)| {
        pool[i + 1..]
            .iter()
            .find(|b| ff_mod(a, b, &eqc).unwrap())
            .map(|b| (a.clone(), b.clone()))
    })
}

/// A sampled point of `m` differing from `target` in every coordinate.
pub fn find_ff_partner(m: &SetModel, target: &Point, budget: &Budget) -> Option<Point> {
    search_pool(m, budget).into_iter().find(|w| ff(w, target).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis_segment(axis: usize, from: i64, to: i64) -> Primitive {
        let o = Point::origin(3).unwrap();
        Primitive::segment(o.with_coord(axis, q(from)), o.with_coord(axis, q(to))).unwrap()
    }

    fn main_cross() -> SetModel {
        SetModel::new(3, "cross", (0..3).map(|j| axis_segment(j, -4, 4)).collect()).unwrap()
    }

    fn main_cocross(e: i64) -> SetModel {
        let prims = (0..3)
            .map(|j| {
                let lo = Point::of([-e, -e, -e]).with_coord(j, q(0));
                let hi = Point::of([e, e, e]).with_coord(j, q(0));
                Primitive::axis_box(lo, hi).unwrap()
            })
            .collect();
        SetModel::new(3, "cocross", prims).unwrap()
    }

    fn unit_box() -> SetModel {
        let b = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 1])).unwrap();
        SetModel::new(3, "box", vec![b]).unwrap()
    }

    #[test]
    fn gap_between_a_vertex_and_a_parallel_piece() {
        let piece = |lo: [i64; 4], hi: [i64; 4]| Primitive::axis_box(Point::of(lo), Point::of(hi)).unwrap();
        let m = SetModel::new(
            4,
            "pieces",
            vec![
                piece([-2, -6, 0, -4], [-2, 2, 4, 0]),
                piece([-6, -2, -4, -4], [2, -2, 4, 4]),
                piece([-6, -6, 0, 0], [2, -4, 0, 4]),
                piece([-6, -6, -4, 0], [2, 2, 0, 0]),
            ],
        )
        .unwrap();
        assert_eq!(m.component_count(), 1);
        assert_eq!(
            menger_witness(&m, &Point::of([2, -4, 0, 4]), &Point::of([2, -2, 0, 4])).unwrap(),
            None
        );
        assert!(is_l1_convex(&m, &Budget::default()).is_refuted());
    }

    #[test]
    fn disconnected_segments_have_an_exact_gap() {
        let m = SetModel::new(
            3,
            "two lines",
            vec![
                Primitive::segment(Point::of([2, 0, 0]), Point::of([2, 0, 2])).unwrap(),
                Primitive::segment(Point::of([2, -4, -2]), Point::of([2, 4, -2])).unwrap(),
            ],
        )
        .unwrap();
        let (p, q) = component_gap(&m).unwrap();
        assert_eq!((p.clone(), q.clone()), (Point::of([2, 0, 0]), Point::of([2, 0, -2])));
        assert_eq!(menger_witness(&m, &p, &q).unwrap(), None);
        assert!(is_l1_convex(&m, &Budget::default()).is_refuted());
        assert_eq!(component_gap(&main_cross()), None);
    }

    #[test]
    fn menger_examples() {
        let cross = main_cross();
        assert_eq!(
            menger_witness(&cross, &Point::of([2, 0, 0]), &Point::of([0, 2, 0])).unwrap(),
            Some(Point::origin(3).unwrap())
        );
        let two = SetModel::new(
            3,
            "two",
            vec![Primitive::point(Point::of([0, 0, 0])), Primitive::point(Point::of([1, 1, 1]))],
        )
        .unwrap();
        assert_eq!(menger_witness(&two, &Point::of([0, 0, 0]), &Point::of([1, 1, 1])).unwrap(), None);
        let z = menger_witness(&main_cocross(2), &Point::of([1, 1, 0]), &Point::of([1, 0, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(z, Point::of([1, 0, 0]));
        assert!(menger_witness(&cross, &Point::of([1, 1, 0]), &Point::of([0, 2, 0])).is_err());
    }

    #[test]
    fn convexity_verdicts() {
        let cross = main_cross();
        assert!(matches!(is_l1_convex(&cross, &Budget::default()), Verdict::SampledPass { .. }));
        let two = SetModel::new(
            3,
            "two",
            vec![Primitive::point(Point::of([0, 0, 0])), Primitive::point(Point::of([1, 1, 1]))],
        )
        .unwrap();
        assert_eq!(
            is_l1_convex(&two, &Budget::default()),
            Verdict::Refuted {
                evidence: Evidence::MengerGap {
                    x: Point::of([0, 0, 0]),
                    y: Point::of([1, 1, 1])
                }
            }
        );
        let detached = SetModel::new(
            3,
            "detached",
            vec![axis_segment(0, -4, 4), axis_segment(1, -4, 4), axis_segment(2, 1, 4)],
        )
        .unwrap();
        match is_l1_convex(&detached, &Budget::default()) {
            Verdict::Refuted {
                evidence: Evidence::MengerGap { x, y },
            } => {
                // the gap (0, 1) on the third axis lies between them
                assert!(x[2].is_zero() != y[2].is_zero());
            }
            other => panic!("expected a Menger gap, got {other:?}"),
        }
    }

    #[test]
    fn strict_convexity_verdicts() {
        let b = is_strictly_l1_convex(&unit_box(), &Budget::default());
        let cov = b.coverage().expect("sampled pass");
        assert!(cov.checked >= 200 && cov.conditional > 0);
        let c = is_strictly_l1_convex(&main_cross(), &Budget::default());
        assert_eq!(c.coverage().unwrap().conditional, 0);
        match is_strictly_l1_convex(&main_cocross(2), &Budget::default()) {
            Verdict::Refuted {
                evidence: Evidence::GeodesicExhausted { x, y, certificate, .. },
            } => {
                assert!(ff(&x, &y).unwrap());
                assert!(matches!(certificate, Some(Certificate::CocrossContainment { .. })));
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn ff_pairs() {
        let (a, b) = find_ff_pair(&unit_box(), &Budget::default()).unwrap();
        assert!(ff(&a, &b).unwrap());
        assert_eq!(find_ff_pair(&main_cross(), &Budget::default()), None);
        let w = find_ff_partner(&unit_box(), &Point::origin(3).unwrap(), &Budget::default()).unwrap();
        assert!(ff(&w, &Point::origin(3).unwrap()).unwrap());
    }
}
