//! Closed bounded sets as finite unions of convex primitives.

pub(crate) mod hull;
mod io;
mod primitive;

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use io::{load_scene, save_scene, scene_from_json, scene_to_json};
pub use primitive::{Clipped, Primitive};
pub(crate) use primitive::{box_corners, box_overlap, in_box};

use crate::error::{check_dim, Error, Result};
use crate::numerics::{IndexSet, Point, Scalar, MAX_DIM, MIN_DIM};

/// How many points to draw from a set, and with which seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(count: usize, seed: u64) -> SampleSpec {
        SampleSpec { count, seed }
    }
}

/// Deepest dyadic refinement used when filling samples.
const MAX_LEVEL: u32 = 6;

/// A nonempty finite union of convex primitives of one dimension.
#[derive(Debug, Clone)]
pub struct SetModel {
    dim: usize,
    name: String,
    primitives: Vec<Primitive>,
    eqc: IndexSet,
    structural: OnceLock<Vec<Point>>,
}

impl PartialEq for SetModel {
    fn eq(&self, other: &SetModel) -> bool {
        self.dim == other.dim && self.name == other.name && self.primitives == other.primitives
    }
}

impl Eq for SetModel {}

impl SetModel {
    pub fn new(dim: usize, name: impl Into<String>, primitives: Vec<Primitive>) -> Result<SetModel> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if primitives.is_empty() {
            return Err(Error::InvalidParameter("a set needs at least one primitive".into()));
        }
        let primitives = primitives
            .into_iter()
            .map(|p| {
                check_dim(dim, p.dim())?;
                p.normalized()
            })
            .collect::<Result<Vec<_>>>()?;
        let eqc = eqc_of_primitives(dim, &primitives);
        Ok(SetModel {
            dim,
            name: name.into(),
            primitives,
            eqc,
            structural: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    /// eqc(M): coordinates constant over the whole set.
    pub fn eqc(&self) -> IndexSet {
        self.eqc
    }

    /// A copy with more primitives appended.
    pub fn with_primitives(&self, extra: impl IntoIterator<Item = Primitive>) -> Result<SetModel> {
        let mut all = self.primitives.clone();
        all.extend(extra);
        SetModel::new(self.dim, self.name.clone(), all)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> SetModel {
        self.name = name.into();
        self
    }

    /// The same primitives in another order.
    pub fn permuted(&self, order: &[usize]) -> Result<SetModel> {
        let prims = order.iter().map(|&i| self.primitives[i].clone()).collect();
        SetModel::new(self.dim, self.name.clone(), prims)
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        check_dim(self.dim, p.dim())?;
        Ok(self.has(p))
    }

    /// Membership without the dimension check.
    pub(crate) fn has(&self, p: &Point) -> bool {
        self.primitives.iter().any(|prim| prim.contains(p))
    }

    /// Whether the closed segment `[a, b]` lies in the set.
    pub fn segment_inside(&self, a: &Point, b: &Point) -> Result<bool> {
        check_dim(self.dim, a.dim())?;
        check_dim(self.dim, b.dim())?;
        Ok(self.covers_segment(a, b))
    }

    pub(crate) fn covers_segment(&self, a: &Point, b: &Point) -> bool {
        if a == b {
            return self.has(a);
        }
        let mut pieces: Vec<(Scalar, Scalar)> = Vec::new();
        for prim in &self.primitives {
            if let Some(iv) = prim.line_interval(a, b) {
                if iv.0.is_zero() && iv.1 == Scalar::one() {
                    return true;
                }
                pieces.push(iv);
            }
        }
        pieces.sort();
        let mut reach = Scalar::zero();
        let mut started = false;
        for (lo, hi) in pieces {
            if lo > reach || (!started && !lo.is_zero()) {
                return false;
            }
            started = true;
            if hi > reach {
                reach = hi;
            }
        }
        started && reach == Scalar::one()
    }

    /// Groups of primitive indices joined by chains of intersecting primitives.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.primitives.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj && self.primitives[i].intersects(&self.primitives[j]) {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        groups
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut boxes = self.primitives.iter().map(Primitive::bounding_box);
        let (mut lo, mut hi) = boxes.next().expect("nonempty");
        for (l, h) in boxes {
            for j in 0..self.dim {
                if l[j] < lo[j] {
                    lo = lo.with_coord(j, l[j].clone());
                }
                if h[j] > hi[j] {
                    hi = hi.with_coord(j, h[j].clone());
                }
            }
        }
        (lo, hi)
    }

    /// Primitive vertices followed by points where primitives meet, without
    /// repeats.
    pub fn structural_points(&self) -> Vec<Point> {
        self.structural.get_or_init(|| self.compute_structural()).clone()
    }

    fn compute_structural(&self) -> Vec<Point> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for prim in &self.primitives {
            for v in prim.vertices() {
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
        for (i, a) in self.primitives.iter().enumerate() {
            for b in &self.primitives[i + 1..] {
                for p in a.intersection_points(b) {
                    if seen.insert(p.clone()) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Deterministic points of the set: every structural point, then dyadic
    /// lattice points of the primitives, coarse levels first, until `count`
    /// is reached. The level that overflows is subsampled with the seed.
    pub fn sample_points(&self, spec: &SampleSpec) -> Vec<Point> {
        let mut out = self.structural_points();
        let mut seen: HashSet<Point> = out.iter().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for level in 1..=MAX_LEVEL {
            if out.len() >= spec.count {
                break;
            }
            let mut fresh: Vec<Point> = Vec::new();
            for prim in &self.primitives {
                for p in prim.dyadic_points(level) {
                    if seen.insert(p.clone()) {
                        fresh.push(p);
                    }
                }
            }
            let room = spec.count - out.len();
            if fresh.len() > room {
                fresh.shuffle(&mut rng);
                fresh.truncate(room);
            }
            out.extend(fresh);
        }
        out
    }
}

/// eqc(M) computed from the primitives.
pub fn eqc_of_set(m: &SetModel) -> IndexSet {
    eqc_of_primitives(m.dim, &m.primitives)
}

fn eqc_of_primitives(dim: usize, primitives: &[Primitive]) -> IndexSet {
    let mut shared: Vec<Option<Scalar>> = vec![None; dim];
    let mut alive = IndexSet::full(dim);
    for prim in primitives {
        let consts = prim.constant_coords();
        for (j, slot) in shared.iter_mut().enumerate() {
            if !alive.contains(j) {
                continue;
            }
            match consts.iter().find(|(i, _)| *i == j) {
                None => alive.remove(j),
                Some((_, v)) => match slot {
                    Some(w) if w != v => alive.remove(j),
                    Some(_) => {}
                    None => *slot = Some(v.clone()),
                },
            }
        }
    }
    alive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn cube(lo: i64, hi: i64) -> Primitive {
        Primitive::axis_box(Point::of([lo, lo, lo]), Point::of([hi, hi, hi])).unwrap()
    }

    fn main_cross(e: i64) -> SetModel {
        let prims = (0..3)
            .map(|j| {
                let a = Point::origin(3).unwrap().with_coord(j, q(-e));
                let b = Point::origin(3).unwrap().with_coord(j, q(e));
                Primitive::segment(a, b).unwrap()
            })
            .collect();
        SetModel::new(3, "cross", prims).unwrap()
    }

    #[test]
    fn membership_examples() {
        let b = SetModel::new(3, "box", vec![cube(0, 1)]).unwrap();
        assert!(b.contains(&Point::of([(1, 2), (1, 2), (1, 2)])).unwrap());
        assert!(!main_cross(4).contains(&Point::of([1, 1, 0])).unwrap());
        assert!(b.contains(&Point::of([1, 1])).is_err());
    }

    #[test]
    fn segment_cover_examples() {
        let b = SetModel::new(3, "box", vec![cube(0, 1)]).unwrap();
        assert!(b.segment_inside(&Point::of([0, 0, 0]), &Point::of([1, 1, 1])).unwrap());
        let cross = main_cross(4);
        assert!(!cross.segment_inside(&Point::of([1, 0, 0]), &Point::of([0, 1, 0])).unwrap());
        let abutting = SetModel::new(
            3,
            "abutting",
            vec![
                cube(0, 1),
                Primitive::axis_box(Point::of([1, 0, 0]), Point::of([2, 1, 1])).unwrap(),
            ],
        )
        .unwrap();
        let a = Point::of([(1, 2), (1, 2), (1, 2)]);
        let b2 = Point::of([(3, 2), (1, 2), (1, 2)]);
        assert!(abutting.segment_inside(&a, &b2).unwrap());
        // oracle: dense parameter grid
        for k in 0..=64 {
            assert!(abutting.has(&a.lerp(&b2, &q((k, 64)))));
        }
        let gapped = SetModel::new(
            3,
            "gapped",
            vec![
                cube(0, 1),
                Primitive::axis_box(Point::of([(11, 10), (0, 1), (0, 1)]), Point::of([2, 1, 1])).unwrap(),
            ],
        )
        .unwrap();
        assert!(!gapped.segment_inside(&a, &b2).unwrap());
    }

    #[test]
    fn components() {
        assert_eq!(main_cross(4).component_count(), 1);
        let two = SetModel::new(3, "two", vec![cube(0, 1), cube(2, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![vec![0], vec![1]]);
        let shifted = Primitive::segment(Point::of([1, 0, -4]), Point::of([1, 0, 4])).unwrap();
        let mut prims = main_cross(4).primitives().to_vec();
        prims[2] = shifted;
        let detached = SetModel::new(3, "detached", prims.clone()).unwrap();
        assert_eq!(detached.component_count(), 1, "(1,0,0) lies on the first axis");
        prims[2] = Primitive::segment(Point::of([1, 1, -4]), Point::of([1, 1, 4])).unwrap();
        assert_eq!(SetModel::new(3, "detached", prims).unwrap().component_count(), 2);
    }

    #[test]
    fn eqc_examples() {
        let p = SetModel::new(3, "p", vec![Primitive::point(Point::of([1, 2, 3]))]).unwrap();
        assert_eq!(p.eqc(), IndexSet::full(3));
        assert_eq!(main_cross(4).eqc(), IndexSet::empty());
        let square = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 0])).unwrap();
        let sq = SetModel::new(3, "square", vec![square]).unwrap();
        assert_eq!(sq.eqc(), IndexSet::from_one_based([3]));
        assert_eq!(eqc_of_set(&sq), sq.eqc());
    }

    #[test]
    fn sampling_is_deterministic_and_inside() {
        let b = SetModel::new(3, "box", vec![cube(0, 1)]).unwrap();
        let s1 = b.sample_points(&SampleSpec::new(100, 7));
        let s2 = b.sample_points(&SampleSpec::new(100, 7));
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 100);
        assert!(s1.iter().all(|p| b.has(p)));
        let single = SetModel::new(3, "p", vec![Primitive::point(Point::of([1, 2, 3]))]).unwrap();
        assert_eq!(single.sample_points(&SampleSpec::new(10, 1)), vec![Point::of([1, 2, 3])]);
        let seg = SetModel::new(
            3,
            "s",
            vec![Primitive::segment(Point::of([0, 0, 0]), Point::of([2, 0, 0])).unwrap()],
        )
        .unwrap();
        let pts = seg.sample_points(&SampleSpec::new(3, 0));
        assert!(pts.contains(&Point::of([0, 0, 0])) && pts.contains(&Point::of([2, 0, 0])));
    }

    #[test]
    fn cross_junction_is_structural() {
        let pts = main_cross(4).structural_points();
        assert_eq!(pts.len(), 7);
        assert!(pts.contains(&Point::origin(3).unwrap()));
    }
}
