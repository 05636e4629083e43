use serde::{Deserialize, Serialize};

use super::hull;
use crate::error::{check_dim, Error, Result};
use crate::numerics::{Point, Scalar};

/// A closed bounded convex piece of a [`super::SetModel`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Primitive {
    Point {
        coords: Point,
    },
    Segment {
        a: Point,
        b: Point,
    },
    #[serde(rename = "box")]
    AxisBox {
        lo: Point,
        hi: Point,
    },
    Polytope {
        vertices: Vec<Point>,
    },
}

/// A convex region obtained by clipping a primitive to an axis box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clipped {
    Point(Point),
    Segment(Point, Point),
    Box(Point, Point),
    /// `conv(vertices) ∩ [lo, hi]`, kept implicit.
    Hull {
        vertices: Vec<Point>,
        lo: Point,
        hi: Point,
    },
}

impl Primitive {
    pub fn point(p: Point) -> Primitive {
        Primitive::Point { coords: p }
    }

    /// A segment; coincident endpoints collapse to a point.
    pub fn segment(a: Point, b: Point) -> Result<Primitive> {
        check_dim(a.dim(), b.dim())?;
        Ok(if a == b {
            Primitive::point(a)
        } else {
            Primitive::Segment { a, b }
        })
    }

    pub fn axis_box(lo: Point, hi: Point) -> Result<Primitive> {
        check_dim(lo.dim(), hi.dim())?;
        if let Some(j) = (0..lo.dim()).find(|&j| lo[j] > hi[j]) {
            return Err(Error::InvalidParameter(format!(
                "box has lo > hi in coordinate {}",
                j + 1
            )));
        }
        Ok(Primitive::AxisBox { lo, hi })
    }

    /// The convex hull of `vertices`. Duplicates are dropped; one or two
    /// distinct vertices give a point or a segment.
    pub fn polytope(vertices: Vec<Point>) -> Result<Primitive> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidParameter("polytope needs at least one vertex".into()))?;
        for v in &vertices {
            check_dim(first.dim(), v.dim())?;
        }
        let mut distinct: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if !distinct.contains(&v) {
                distinct.push(v);
            }
        }
        Ok(match distinct.len() {
            1 => Primitive::point(distinct.pop().unwrap()),
            2 => {
                let b = distinct.pop().unwrap();
                let a = distinct.pop().unwrap();
                Primitive::Segment { a, b }
            }
            _ => Primitive::Polytope { vertices: distinct },
        })
    }

    /// Re-applies the constructor invariants (used after deserialization).
    pub fn normalized(self) -> Result<Primitive> {
        match self {
            Primitive::Point { coords } => Ok(Primitive::point(coords)),
            Primitive::Segment { a, b } => Primitive::segment(a, b),
            Primitive::AxisBox { lo, hi } => Primitive::axis_box(lo, hi),
            Primitive::Polytope { vertices } => Primitive::polytope(vertices),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Primitive::Point { coords } => coords.dim(),
            Primitive::Segment { a, .. } => a.dim(),
            Primitive::AxisBox { lo, .. } => lo.dim(),
            Primitive::Polytope { vertices } => vertices[0].dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Primitive::Point { .. } => "point",
            Primitive::Segment { .. } => "segment",
            Primitive::AxisBox { .. } => "box",
            Primitive::Polytope { .. } => "polytope",
        }
    }

    /// Extreme points (box corners, segment endpoints, polytope vertices).
    pub fn vertices(&self) -> Vec<Point> {
        match self {
            Primitive::Point { coords } => vec![coords.clone()],
            Primitive::Segment { a, b } => vec![a.clone(), b.clone()],
            Primitive::AxisBox { lo, hi } => box_corners(lo, hi),
            Primitive::Polytope { vertices } => vertices.clone(),
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            Primitive::AxisBox { lo, hi } => (lo.clone(), hi.clone()),
            other => {
                let vs = other.vertices();
                let dim = vs[0].dim();
                let lo = (0..dim).map(|j| vs.iter().map(|v| &v[j]).min().unwrap().clone());
                let hi = (0..dim).map(|j| vs.iter().map(|v| &v[j]).max().unwrap().clone());
                (
                    Point::new(lo.collect()).unwrap(),
                    Point::new(hi.collect()).unwrap(),
                )
            }
        }
    }

    /// Coordinates that are constant over the primitive, with their values.
    pub fn constant_coords(&self) -> Vec<(usize, Scalar)> {
        match self {
            Primitive::Point { coords } => coords.coords().iter().cloned().enumerate().collect(),
            Primitive::Segment { a, b } => (0..a.dim())
                .filter(|&j| a[j] == b[j])
                .map(|j| (j, a[j].clone()))
                .collect(),
            Primitive::AxisBox { lo, hi } => (0..lo.dim())
                .filter(|&j| lo[j] == hi[j])
                .map(|j| (j, lo[j].clone()))
                .collect(),
            Primitive::Polytope { vertices } => (0..vertices[0].dim())
                .filter(|&j| vertices.iter().all(|v| v[j] == vertices[0][j]))
                .map(|j| (j, vertices[0][j].clone()))
                .collect(),
        }
    }

    /// The unique axis along which a segment runs, if it is axis-parallel.
    pub fn axis_direction(&self) -> Option<usize> {
        match self {
            Primitive::Segment { a, b } => {
                let moving: Vec<usize> = (0..a.dim()).filter(|&j| a[j] != b[j]).collect();
                (moving.len() == 1).then(|| moving[0])
            }
            Primitive::AxisBox { lo, hi } => {
                let moving: Vec<usize> = (0..lo.dim()).filter(|&j| lo[j] != hi[j]).collect();
                (moving.len() == 1).then(|| moving[0])
            }
            _ => None,
        }
    }

    /// Exact membership (callers guarantee matching dimensions).
    pub fn contains(&self, x: &Point) -> bool {
        match self {
            Primitive::Point { coords } => coords == x,
            Primitive::Segment { a, b } => {
                let d = b.sub(a);
                match segment_parameter(a, &d, x) {
                    Some(t) => !t.is_negative() && t <= Scalar::one(),
                    None => false,
                }
            }
            Primitive::AxisBox { lo, hi } => in_box(lo, hi, x),
            Primitive::Polytope { vertices } => hull::hull_contains(vertices, x),
        }
    }

    /// `{t in [0,1] : a + t (b - a) in self}`, a closed interval or empty.
    pub fn line_interval(&self, a: &Point, b: &Point) -> Option<(Scalar, Scalar)> {
        let d = b.sub(a);
        if d.is_origin() {
            return self.contains(a).then(|| (Scalar::zero(), Scalar::one()));
        }
        match self {
            Primitive::Point { coords } => {
                let t = segment_parameter(a, &d, coords)?;
                unit_interval(t.clone(), t)
            }
            Primitive::Segment { a: sa, b: sb } => segment_line_interval(sa, sb, a, &d),
            Primitive::AxisBox { lo, hi } => {
                let mut t0 = Scalar::zero();
                let mut t1 = Scalar::one();
                for j in 0..a.dim() {
                    if d[j].is_zero() {
                        if a[j] < lo[j] || a[j] > hi[j] {
                            return None;
                        }
                        continue;
                    }
                    let u = (&lo[j] - &a[j]) / &d[j];
                    let v = (&hi[j] - &a[j]) / &d[j];
                    let (u, v) = if u <= v { (u, v) } else { (v, u) };
                    if u > t0 {
                        t0 = u;
                    }
                    if v < t1 {
                        t1 = v;
                    }
                    if t0 > t1 {
                        return None;
                    }
                }
                Some((t0, t1))
            }
            Primitive::Polytope { vertices } => hull::hull_line_interval(vertices, a, &d),
        }
    }

    /// `self ∩ [lo, hi]`, or `None` when empty.
    pub fn clip_to_box(&self, lo: &Point, hi: &Point) -> Option<Clipped> {
        match self {
            Primitive::Point { coords } => in_box(lo, hi, coords).then(|| Clipped::Point(coords.clone())),
            Primitive::Segment { a, b } => {
                let clip = Primitive::AxisBox { lo: lo.clone(), hi: hi.clone() };
                let (t0, t1) = clip.line_interval(a, b)?;
                let p = a.lerp(b, &t0);
                Some(if t0 == t1 {
                    Clipped::Point(p)
                } else {
                    Clipped::Segment(p, a.lerp(b, &t1))
                })
            }
            Primitive::AxisBox { lo: blo, hi: bhi } => {
                let (l, h) = box_overlap(blo, bhi, lo, hi)?;
                Some(if l == h { Clipped::Point(l) } else { Clipped::Box(l, h) })
            }
            Primitive::Polytope { vertices } => {
                hull::hull_box_point(vertices, lo, hi, None)?;
                Some(Clipped::Hull {
                    vertices: vertices.clone(),
                    lo: lo.clone(),
                    hi: hi.clone(),
                })
            }
        }
    }

    /// Some common point of the two primitives, if they meet.
    pub fn intersection_point(&self, other: &Primitive) -> Option<Point> {
        self.intersection_points(other).into_iter().next()
    }

    /// Representative points of `self ∩ other`: the whole intersection when
    /// it is a point, its two ends and midpoint when it is a segment or box,
    /// and one LP-feasible point for hull intersections.
    pub fn intersection_points(&self, other: &Primitive) -> Vec<Point> {
        use Primitive as P;
        match (self, other) {
            (P::Point { coords }, o) | (o, P::Point { coords }) => {
                if o.contains(coords) {
                    vec![coords.clone()]
                } else {
                    vec![]
                }
            }
            (P::Segment { a, b }, o) | (o, P::Segment { a, b }) => match o.line_interval(a, b) {
                Some((t0, t1)) if t0 == t1 => vec![a.lerp(b, &t0)],
                Some((t0, t1)) => {
                    let mid = Scalar::midpoint(&t0, &t1);
                    vec![a.lerp(b, &t0), a.lerp(b, &mid), a.lerp(b, &t1)]
                }
                None => vec![],
            },
            (P::AxisBox { lo, hi }, P::AxisBox { lo: lo2, hi: hi2 }) => match box_overlap(lo, hi, lo2, hi2) {
                Some((l, h)) if l == h => vec![l],
                Some((l, h)) => {
                    let c = l.midpoint(&h);
                    vec![l, c, h]
                }
                None => vec![],
            },
            (P::AxisBox { lo, hi }, P::Polytope { vertices }) | (P::Polytope { vertices }, P::AxisBox { lo, hi }) => {
                hull::hull_box_point(vertices, lo, hi, None).into_iter().collect()
            }
            (P::Polytope { vertices: u }, P::Polytope { vertices: v }) => {
                hull::hulls_intersection(u, v).into_iter().collect()
            }
        }
    }

    pub fn intersects(&self, other: &Primitive) -> bool {
        use Primitive as P;
        match (self, other) {
            (P::Point { coords }, o) | (o, P::Point { coords }) => o.contains(coords),
            (P::Segment { a, b }, o) | (o, P::Segment { a, b }) => o.line_interval(a, b).is_some(),
            (P::AxisBox { lo, hi }, P::AxisBox { lo: lo2, hi: hi2 }) => box_overlap(lo, hi, lo2, hi2).is_some(),
            _ => self.intersection_point(other).is_some(),
        }
    }

    /// Points added at dyadic refinement `level >= 1`: parameter values
    /// with denominator exactly `2^level` along every free direction.
    pub(crate) fn dyadic_points(&self, level: u32) -> Vec<Point> {
        let denom = 1i64 << level;
        let fresh = |k: i64| k % 2 == 1;
        match self {
            Primitive::Point { .. } => vec![],
            Primitive::Segment { a, b } => (0..=denom)
                .filter(|&k| fresh(k))
                .map(|k| a.lerp(b, &Scalar::new(k, denom)))
                .collect(),
            Primitive::AxisBox { lo, hi } => {
                let free: Vec<usize> = (0..lo.dim()).filter(|&j| lo[j] != hi[j]).collect();
                let mut out = Vec::new();
                let mut idx = vec![0i64; free.len()];
                loop {
                    if idx.iter().any(|&k| fresh(k)) {
                        let mut p = lo.clone();
                        for (slot, &j) in free.iter().enumerate() {
                            let t = Scalar::new(idx[slot], denom);
                            p = p.with_coord(j, &lo[j] + (&hi[j] - &lo[j]) * t);
                        }
                        out.push(p);
                    }
                    // odometer over {0..denom}^free
                    let mut pos = 0;
                    loop {
                        if pos == idx.len() {
                            return out;
                        }
                        idx[pos] += 1;
                        if idx[pos] <= denom {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                }
            }
            Primitive::Polytope { vertices } => {
                let mut out = Vec::new();
                if level == 1 {
                    let n = Scalar::from_int(vertices.len() as i64);
                    let mut c = vertices[0].clone();
                    for v in &vertices[1..] {
                        c = c.add(v);
                    }
                    out.push(c.scale(&n.recip()));
                }
                for (i, u) in vertices.iter().enumerate() {
                    for v in &vertices[i + 1..] {
                        out.extend(
                            (0..=denom)
                                .filter(|&k| fresh(k))
                                .map(|k| u.lerp(v, &Scalar::new(k, denom))),
                        );
                    }
                }
                out
            }
        }
    }
}

impl Clipped {
    /// Up to three distinct points of the region; a single entry means the
    /// region is that one point.
    pub fn representatives(&self) -> Vec<Point> {
        match self {
            Clipped::Point(p) => vec![p.clone()],
            Clipped::Segment(p, r) | Clipped::Box(p, r) => vec![p.clone(), p.midpoint(r), r.clone()],
            Clipped::Hull { vertices, lo, hi } => {
                let Some(first) = hull::hull_box_point(vertices, lo, hi, None) else {
                    return vec![];
                };
                for j in 0..lo.dim() {
                    let low = hull::hull_box_point(vertices, lo, hi, Some((j, 1))).expect("feasible");
                    let high = hull::hull_box_point(vertices, lo, hi, Some((j, -1))).expect("feasible");
                    if low[j] != high[j] {
                        let mid = low.midpoint(&high);
                        return vec![low, mid, high];
                    }
                }
                vec![first]
            }
        }
    }

    /// Vertices of the region when they are known in closed form.
    pub fn corner_points(&self) -> Vec<Point> {
        match self {
            Clipped::Point(p) => vec![p.clone()],
            Clipped::Segment(p, r) => vec![p.clone(), r.clone()],
            Clipped::Box(lo, hi) => box_corners(lo, hi),
            Clipped::Hull { .. } => self.representatives(),
        }
    }
}

pub(crate) fn in_box(lo: &Point, hi: &Point, x: &Point) -> bool {
    (0..x.dim()).all(|j| lo[j] <= x[j] && x[j] <= hi[j])
}

pub(crate) fn box_overlap(lo: &Point, hi: &Point, lo2: &Point, hi2: &Point) -> Option<(Point, Point)> {
    let l: Vec<Scalar> = (0..lo.dim()).map(|j| Scalar::max_of(&lo[j], &lo2[j]).clone()).collect();
    let h: Vec<Scalar> = (0..lo.dim()).map(|j| Scalar::min_of(&hi[j], &hi2[j]).clone()).collect();
    if l.iter().zip(&h).any(|(a, b)| a > b) {
        return None;
    }
    Some((Point::new(l).unwrap(), Point::new(h).unwrap()))
}

/// Corners of `[lo, hi]`, without repeats along degenerate sides.
pub(crate) fn box_corners(lo: &Point, hi: &Point) -> Vec<Point> {
    let free: Vec<usize> = (0..lo.dim()).filter(|&j| lo[j] != hi[j]).collect();
    (0..1usize << free.len())
        .map(|mask| {
            let mut p = lo.clone();
            for (bit, &j) in free.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    p = p.with_coord(j, hi[j].clone());
                }
            }
            p
        })
        .collect()
}

/// The `t` with `a + t d = x`, if `x` lies on that line (`d != 0`).
fn segment_parameter(a: &Point, d: &Point, x: &Point) -> Option<Scalar> {
    let j = (0..d.dim()).find(|&j| !d[j].is_zero())?;
    let t = (&x[j] - &a[j]) / &d[j];
    (0..d.dim())
        .all(|i| &a[i] + &d[i] * &t == x[i])
        .then_some(t)
}

fn unit_interval(t0: Scalar, t1: Scalar) -> Option<(Scalar, Scalar)> {
    let t0 = Scalar::max_of(&t0, &Scalar::zero()).clone();
    let t1 = Scalar::min_of(&t1, &Scalar::one()).clone();
    (t0 <= t1).then_some((t0, t1))
}

/// Parameters `t in [0,1]` of the query line `p + t d` lying on `[sa, sb]`.
fn segment_line_interval(sa: &Point, sb: &Point, p: &Point, d: &Point) -> Option<(Scalar, Scalar)> {
    let e = sb.sub(sa);
    let dim = p.dim();
    let parallel = (0..dim).all(|i| (0..dim).all(|j| &e[i] * &d[j] == &e[j] * &d[i]));
    if parallel {
        // collinear iff sa lies on the query line
        let ta = segment_parameter(p, d, sa)?;
        let tb = segment_parameter(p, d, sb)?;
        let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        return unit_interval(lo, hi);
    }
    // Solve t d - s e = sa - p on a pair of rows with nonzero determinant.
    let r = sa.sub(p);
    for i in 0..dim {
        for j in i + 1..dim {
            let det = &e[i] * &d[j] - &d[i] * &e[j];
            if det.is_zero() {
                continue;
            }
            // [d_i -e_i; d_j -e_j] [t; s] = [r_i; r_j]
            let t = (&e[i] * &r[j] - &r[i] * &e[j]) / &det;
            let s = (&d[i] * &r[j] - &r[i] * &d[j]) / &det;
            let consistent = (0..dim).all(|k| &d[k] * &t - &e[k] * &s == r[k]);
            let in_range = |v: &Scalar| !v.is_negative() && *v <= Scalar::one();
            return (consistent && in_range(&t) && in_range(&s)).then(|| (t.clone(), t));
        }
    }
    unreachable!("non-parallel directions have a nonzero 2x2 minor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn seg(a: [i64; 3], b: [i64; 3]) -> Primitive {
        Primitive::segment(Point::of(a), Point::of(b)).unwrap()
    }

    #[test]
    fn constructors_normalize() {
        let p = Point::of([1, 2, 3]);
        assert_eq!(Primitive::segment(p.clone(), p.clone()).unwrap(), Primitive::point(p.clone()));
        assert!(Primitive::axis_box(Point::of([1, 0, 0]), Point::of([0, 1, 1])).is_err());
        let poly = Primitive::polytope(vec![p.clone(), p.clone(), Point::of([0, 0, 0])]).unwrap();
        assert!(matches!(poly, Primitive::Segment { .. }));
        assert!(Primitive::polytope(vec![]).is_err());
    }

    #[test]
    fn segment_membership() {
        let s = seg([0, 0, 0], [1, 1, 1]);
        assert!(s.contains(&Point::of([(1, 3), (1, 3), (1, 3)])));
        assert!(!s.contains(&Point::of([(1, 3), (1, 3), (1, 2)])));
        assert!(!s.contains(&Point::of([2, 2, 2])));
    }

    #[test]
    fn crossing_segments_meet_in_one_parameter() {
        let s = seg([-1, 0, 0], [1, 0, 0]);
        let t = s.line_interval(&Point::of([0, -1, 0]), &Point::of([0, 3, 0])).unwrap();
        assert_eq!(t, (q((1, 4)), q((1, 4))));
        assert!(s
            .line_interval(&Point::of([0, -1, 1]), &Point::of([0, 3, 1]))
            .is_none());
        // collinear overlap
        let t = s.line_interval(&Point::of([0, 0, 0]), &Point::of([4, 0, 0])).unwrap();
        assert_eq!(t, (q(0), q((1, 4))));
    }

    #[test]
    fn polytope_line_interval_agrees_with_box_clipping() {
        let cube_vertices = box_corners(&Point::of([0, 0, 0]), &Point::of([1, 1, 1]));
        let poly = Primitive::Polytope { vertices: cube_vertices };
        let cube = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 1])).unwrap();
        let a = Point::of([(-1, 2), (1, 4), (0, 1)]);
        let b = Point::of([(3, 2), (3, 4), (1, 1)]);
        assert_eq!(poly.line_interval(&a, &b), cube.line_interval(&a, &b));
        assert_eq!(cube.line_interval(&a, &b), Some((q((1, 4)), q((3, 4)))));
    }

    #[test]
    fn dyadic_levels_do_not_repeat_points() {
        let b = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 0])).unwrap();
        let l1 = b.dyadic_points(1);
        let l2 = b.dyadic_points(2);
        assert_eq!(l1.len(), 9 - 4);
        assert_eq!(l2.len(), 25 - 9);
        assert!(l2.iter().all(|p| !l1.contains(p)));
    }

    #[test]
    fn hull_clip_representatives_are_distinct() {
        let tri = Primitive::polytope(vec![
            Point::of([0, 0, 0]),
            Point::of([2, 0, 0]),
            Point::of([0, 2, 0]),
        ])
        .unwrap();
        let clip = tri
            .clip_to_box(&Point::of([1, 0, 0]), &Point::of([2, 2, 0]))
            .unwrap();
        let reps = clip.representatives();
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().all(|p| tri.contains(p) && p[0] >= q(1)));
        let corner = tri.clip_to_box(&Point::of([2, 0, 0]), &Point::of([3, 1, 0])).unwrap();
        assert_eq!(corner.representatives(), vec![Point::of([2, 0, 0])]);
    }
}
