use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{IndexSet, Point, Scalar, MAX_DIM, MIN_DIM};
use crate::set_model::{Primitive, SetModel};

/// Scene families. The first six ignore the seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Axis segments `[-e, e] e_i` through the origin.
    MainCross,
    /// Coordinate hyperplanes through the origin, truncated to `[-e, e]^n`.
    MainCocross,
    /// `[0, 1]^n`.
    Box,
    /// The cocross of the first three coordinates at `x_4 = 0`, plus the
    /// fourth axis (dimension 4 only).
    RemarkR4,
    /// `{0, 4 e_1}`.
    TwoPoints,
    /// `conv{0, e e_1, ..., e e_n}`.
    Simplex,
    /// Random sub-segments of the axis lines through a random center, all
    /// containing the center.
    CrossSubset,
    /// As `CrossSubset`, with one arm moved off the center.
    DisconnectedCross,
    /// Pieces of `c_J(x)` for random `J`, `x`: truncated hyperplanes or
    /// random boxes inside them, in at least two distinct hyperplanes.
    CocrossCj,
    RandomBox,
    /// A random box containing `[0, 1]^n`.
    FramedBox,
    /// A polyline whose steps all lie in one open orthant.
    MonotoneTube,
    /// A box with strictly monotone chains leaving one or two opposite
    /// corners outward.
    RandomL1Convex,
    RandomTwoPoints,
}

pub const ALL_FAMILIES: [Family; 14] = [
    Family::MainCross,
    Family::MainCocross,
    Family::Box,
    Family::RemarkR4,
    Family::TwoPoints,
    Family::Simplex,
    Family::CrossSubset,
    Family::DisconnectedCross,
    Family::CocrossCj,
    Family::RandomBox,
    Family::FramedBox,
    Family::MonotoneTube,
    Family::RandomL1Convex,
    Family::RandomTwoPoints,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::MainCross => "main-cross",
            Family::MainCocross => "main-cocross",
            Family::Box => "box",
            Family::RemarkR4 => "remark-r4",
            Family::TwoPoints => "two-points",
            Family::Simplex => "simplex",
            Family::CrossSubset => "cross-subset",
            Family::DisconnectedCross => "disconnected-cross",
            Family::CocrossCj => "cocross-cj",
            Family::RandomBox => "random-box",
            Family::FramedBox => "framed-box",
            Family::MonotoneTube => "monotone-tube",
            Family::RandomL1Convex => "random-l1-convex",
            Family::RandomTwoPoints => "random-two-points",
        }
    }

    pub fn is_seeded(self) -> bool {
        !matches!(
            self,
            Family::MainCross
                | Family::MainCocross
                | Family::Box
                | Family::RemarkR4
                | Family::TwoPoints
                | Family::Simplex
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let wanted = s.replace('_', "-").to_ascii_lowercase();
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.name() == wanted)
            .ok_or_else(|| {
                let names: Vec<&str> = ALL_FAMILIES.iter().map(|f| f.name()).collect();
                Error::InvalidParameter(format!("unknown family {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub dim: usize,
    pub extent: Scalar,
}

impl FamilySpec {
    pub fn new(family: Family, dim: usize, extent: Scalar) -> FamilySpec {
        FamilySpec { family, dim, extent }
    }
}

/// Builds the scene of `spec`; seeded families are deterministic in `seed`.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<SetModel> {
    let dim = spec.dim;
    if !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if !spec.extent.is_positive() {
        return Err(Error::InvalidParameter("extent must be positive".into()));
    }
    let e = spec.extent.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ spec.family as u64);
    let rng = &mut rng;
    let prims = match spec.family {
        Family::MainCross => cross_arms(&Point::origin(dim)?, &vec![(-e.clone(), e.clone()); dim]),
        Family::MainCocross => (0..dim)
            .map(|i| hyperplane_piece(&Point::origin(dim).unwrap(), i, IndexSet::empty(), &e))
            .collect(),
        Family::Box => vec![Primitive::axis_box(Point::origin(dim)?, Point::new(vec![Scalar::one(); dim])?)?],
        Family::RemarkR4 => {
            if dim != 4 {
                return Err(Error::InvalidParameter("remark-r4 lives in dimension 4".into()));
            }
            let origin = Point::origin(4)?;
            let frozen = IndexSet::from_indices([3]);
            let mut prims: Vec<Primitive> = (0..3).map(|i| hyperplane_piece(&origin, i, frozen, &e)).collect();
            prims.push(Primitive::segment(origin.with_coord(3, -e.clone()), origin.with_coord(3, e.clone()))?);
            prims
        }
        Family::TwoPoints => vec![
            Primitive::point(Point::origin(dim)?),
            Primitive::point(Point::origin(dim)?.with_coord(0, Scalar::from_int(4))),
        ],
        Family::Simplex => {
            let mut vertices = vec![Point::origin(dim)?];
            vertices.extend((0..dim).map(|i| Point::origin(dim).unwrap().with_coord(i, e.clone())));
            vec![Primitive::polytope(vertices)?]
        }
        Family::CrossSubset | Family::DisconnectedCross => {
            let center = random_point(rng, dim, -2, 2);
            let mut arms: Vec<(Scalar, Scalar)> = (0..dim).map(|_| random_arm(rng, &e)).collect();
            if spec.family == Family::DisconnectedCross {
                let k = rng.random_range(0..dim);
                let (gap, far) = random_offset_arm(rng, &e);
                arms[k] = if rng.random_bool(0.5) { (gap, far) } else { (-far, -gap) };
            }
            cross_arms(&center, &arms)
        }
        Family::CocrossCj => {
            let max_frozen = dim - 2;
            let frozen_count = rng.random_range(0..=max_frozen);
            let mut coords: Vec<usize> = (0..dim).collect();
            coords.shuffle(rng);
            let frozen = IndexSet::from_indices(coords[..frozen_count].iter().copied());
            let mut free: Vec<usize> = coords[frozen_count..].to_vec();
            free.sort();
            let center = random_point(rng, dim, -2, 2);
            let planes = rng.random_range(2..=free.len());
            free.shuffle(rng);
            let mut used = free[..planes].to_vec();
            used.sort();
            used.iter()
                .map(|&i| {
                    let piece = hyperplane_piece(&center, i, frozen, &e);
                    if rng.random_bool(0.5) {
                        piece
                    } else {
                        random_sub_box(rng, &piece)
                    }
                })
                .collect()
        }
        Family::RandomBox => {
            let lo = random_half_point(rng, dim, -4, 2);
            let hi = Point::new((0..dim).map(|j| &lo[j] + half(rng, 1, 6)).collect())?;
            vec![Primitive::axis_box(lo, hi)?]
        }
        Family::FramedBox => {
            let lo = random_half_point(rng, dim, -4, 0);
            let hi = random_half_point(rng, dim, 2, 6);
            vec![Primitive::axis_box(lo, hi)?]
        }
        Family::MonotoneTube => {
            let start = random_half_point(rng, dim, -4, 0);
            let signs: Vec<i64> = (0..dim).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
            let start = Point::new((0..dim).map(|j| &start[j] * Scalar::from_int(-signs[j])).collect())?;
            let steps = rng.random_range(2..=4);
            chain(rng, &start, &signs, steps)
        }
        Family::RandomL1Convex => {
            let lo = random_half_point(rng, dim, -4, 0);
            let hi = Point::new((0..dim).map(|j| &lo[j] + half(rng, 2, 6)).collect())?;
            let mut prims = vec![Primitive::axis_box(lo.clone(), hi.clone())?];
            let up = rng.random_range(1..=3);
            prims.extend(chain(rng, &hi, &vec![1; dim], up));
            if rng.random_bool(0.5) {
                let down = rng.random_range(1..=2);
                prims.extend(chain(rng, &lo, &vec![-1; dim], down));
            }
            prims
        }
        Family::RandomTwoPoints => {
            let a = random_point(rng, dim, -3, 3);
            let mut b = random_point(rng, dim, -3, 3);
            while b == a {
                b = random_point(rng, dim, -3, 3);
            }
            vec![Primitive::point(a), Primitive::point(b)]
        }
    };
    let name = if spec.family.is_seeded() {
        format!("{}-d{}-s{}", spec.family, dim, seed)
    } else {
        format!("{}-d{}", spec.family, dim)
    };
    SetModel::new(dim, name, prims)
}

fn half(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Scalar {
    Scalar::new(rng.random_range(lo..=hi), 2)
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Point {
    Point::new((0..dim).map(|_| Scalar::from_int(rng.random_range(lo..=hi))).collect()).unwrap()
}

fn random_half_point(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Point {
    Point::new((0..dim).map(|_| half(rng, lo, hi)).collect()).unwrap()
}

/// Offsets `(a, b)` with `a <= 0 <= b`, `a < b`, within the extent.
fn random_arm(rng: &mut ChaCha8Rng, e: &Scalar) -> (Scalar, Scalar) {
    loop {
        let a = -(e * Scalar::new(rng.random_range(0..=4), 4));
        let b = e * Scalar::new(rng.random_range(0..=4), 4);
        if a < b {
            return (a, b);
        }
    }
}

/// Offsets `(g, b)` with `0 < g < b <= e`.
fn random_offset_arm(rng: &mut ChaCha8Rng, e: &Scalar) -> (Scalar, Scalar) {
    let g = e * Scalar::new(rng.random_range(1..=2), 4);
    let b = e * Scalar::new(rng.random_range(3..=4), 4);
    (g, b)
}

fn cross_arms(center: &Point, arms: &[(Scalar, Scalar)]) -> Vec<Primitive> {
    arms.iter()
        .enumerate()
        .map(|(i, (a, b))| {
            Primitive::segment(
                center.with_coord(i, &center[i] + a),
                center.with_coord(i, &center[i] + b),
            )
            .unwrap()
        })
        .collect()
}

/// `{z : z_i = c_i, z_J = c_J, |z_k - c_k| <= e otherwise}`.
fn hyperplane_piece(center: &Point, i: usize, frozen: IndexSet, e: &Scalar) -> Primitive {
    let dim = center.dim();
    let lo = (0..dim)
        .map(|j| if j == i || frozen.contains(j) { center[j].clone() } else { &center[j] - e })
        .collect();
    let hi = (0..dim)
        .map(|j| if j == i || frozen.contains(j) { center[j].clone() } else { &center[j] + e })
        .collect();
    Primitive::axis_box(Point::new(lo).unwrap(), Point::new(hi).unwrap()).unwrap()
}

/// A sub-box keeping every side's width positive (degenerate sides stay).
fn random_sub_box(rng: &mut ChaCha8Rng, piece: &Primitive) -> Primitive {
    let Primitive::AxisBox { lo, hi } = piece else {
        unreachable!("pieces are boxes")
    };
    let dim = lo.dim();
    let mut nlo = Vec::with_capacity(dim);
    let mut nhi = Vec::with_capacity(dim);
    for j in 0..dim {
        if lo[j] == hi[j] {
            nlo.push(lo[j].clone());
            nhi.push(hi[j].clone());
            continue;
        }
        let a = rng.random_range(0..4);
        let b = rng.random_range(a + 1..=4);
        let w = &hi[j] - &lo[j];
        nlo.push(&lo[j] + &w * Scalar::new(a, 4));
        nhi.push(&lo[j] + &w * Scalar::new(b, 4));
    }
    Primitive::axis_box(Point::new(nlo).unwrap(), Point::new(nhi).unwrap()).unwrap()
}

/// A polyline from `start` whose steps have coordinate signs `signs`.
fn chain(rng: &mut ChaCha8Rng, start: &Point, signs: &[i64], steps: usize) -> Vec<Primitive> {
    let mut prims = Vec::with_capacity(steps);
    let mut cur = start.clone();
    for _ in 0..steps {
        let next = Point::new(
            (0..cur.dim())
                .map(|j| &cur[j] + half(rng, 1, 4) * Scalar::from_int(signs[j]))
                .collect(),
        )
        .unwrap();
        prims.push(Primitive::segment(cur, next.clone()).unwrap());
        cur = next;
    }
    prims
}
