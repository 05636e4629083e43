use std::collections::HashSet;

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::numerics::{dist, IndexSet, Norm, Point, Scalar};
use crate::set_model::{box_overlap, Clipped, Primitive, SetModel};

/// A polyline whose coordinate functions are monotone, and strictly
/// monotone on `strict_indices`; hence an l1-geodesic between its ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicPath {
    waypoints: Vec<Point>,
    strict_indices: IndexSet,
}

impl GeodesicPath {
    pub fn new(waypoints: Vec<Point>, strict_indices: IndexSet) -> Result<GeodesicPath> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidParameter("a path needs two waypoints".into()));
        }
        let dim = waypoints[0].dim();
        for w in &waypoints {
            check_dim(dim, w.dim())?;
        }
        let steps: Vec<Point> = waypoints.windows(2).map(|w| w[1].sub(&w[0])).collect();
        if steps.iter().any(Point::is_origin) {
            return Err(Error::InvalidParameter("consecutive waypoints coincide".into()));
        }
        for j in 0..dim {
            let signs: HashSet<i32> = steps.iter().map(|s| s[j].signum()).filter(|&s| s != 0).collect();
            if signs.len() > 1 {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {} is not monotone along the path",
                    j + 1
                )));
            }
            if strict_indices.contains(j) && steps.iter().any(|s| s[j].is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {} is not strictly monotone along the path",
                    j + 1
                )));
            }
        }
        let path = GeodesicPath {
            waypoints,
            strict_indices,
        };
        assert_eq!(path.length(), path.chord(), "sign-consistent polylines are geodesics");
        Ok(path)
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.waypoints
    }

    pub fn strict_indices(&self) -> IndexSet {
        self.strict_indices
    }

    /// Sum of the l1 lengths of the steps.
    pub fn length(&self) -> Scalar {
        self.waypoints
            .windows(2)
            .map(|w| dist(&w[0], &w[1], Norm::L1))
            .sum()
    }

    /// l1 distance between the ends.
    pub fn chord(&self) -> Scalar {
        dist(&self.waypoints[0], self.waypoints.last().unwrap(), Norm::L1)
    }

    /// Whether every step lies in `m`.
    pub fn lies_in(&self, m: &SetModel) -> bool {
        self.waypoints.windows(2).all(|w| m.covers_segment(&w[0], &w[1]))
    }
}

/// Search for a monotone polyline from `x` to `y` inside `m`, strictly
/// monotone on `strict`, through points of `m ∩ box(x, y)`: the lattice
/// splitting each side of the box into `1/density` parts, plus corners of
/// the primitives and of their pairwise overlaps clipped to the box.
///
/// `None` means no path through these nodes, not that no geodesic exists.
pub fn monotone_geodesic(
    m: &SetModel,
    x: &Point,
    y: &Point,
    strict: IndexSet,
    density: &Scalar,
) -> Result<Option<GeodesicPath>> {
    check_dim(m.dim(), x.dim())?;
    check_dim(m.dim(), y.dim())?;
    if !m.has(x) || !m.has(y) {
        return Err(Error::Precondition("both ends must lie in the set".into()));
    }
    if x == y {
        return Err(Error::Precondition("ends must differ".into()));
    }
    if let Some(j) = strict.iter().find(|&j| x[j] == y[j]) {
        return Err(Error::Precondition(format!(
            "coordinate {} is strict but equal at both ends",
            j + 1
        )));
    }
    if !density.is_positive() || *density > Scalar::one() {
        return Err(Error::InvalidParameter("density must lie in (0, 1]".into()));
    }
    let nodes = candidate_nodes(m, x, y, density);
    Ok(search(m, x, y, strict, &nodes).map(|w| GeodesicPath::new(w, strict).expect("search keeps monotone steps")))
}

fn candidate_nodes(m: &SetModel, x: &Point, y: &Point, density: &Scalar) -> Vec<Point> {
    let dim = x.dim();
    let lo = Point::new((0..dim).map(|j| Scalar::min_of(&x[j], &y[j]).clone()).collect()).unwrap();
    let hi = Point::new((0..dim).map(|j| Scalar::max_of(&x[j], &y[j]).clone()).collect()).unwrap();
    let mut seen: HashSet<Point> = HashSet::new();
    let mut nodes = Vec::new();
    let mut push = |p: Point, nodes: &mut Vec<Point>| {
        if seen.insert(p.clone()) {
            nodes.push(p);
        }
    };
    push(y.clone(), &mut nodes);
    push(x.clone(), &mut nodes);
    let clips: Vec<Clipped> = m.primitives().iter().filter_map(|p| p.clip_to_box(&lo, &hi)).collect();
    for c in &clips {
        let reps = c.representatives();
        for p in c.corner_points().into_iter().chain(reps) {
            push(p, &mut nodes);
        }
    }
    for (i, a) in m.primitives().iter().enumerate() {
        for b in &m.primitives()[i + 1..] {
            match (a, b) {
                (Primitive::AxisBox { lo: l1, hi: h1 }, Primitive::AxisBox { lo: l2, hi: h2 }) => {
                    let Some((ol, oh)) = box_overlap(l1, h1, l2, h2) else { continue };
                    let Some((cl, ch)) = box_overlap(&ol, &oh, &lo, &hi) else { continue };
                    let mid = cl.midpoint(&ch);
                    for p in crate::set_model::box_corners(&cl, &ch) {
                        push(p, &mut nodes);
                    }
                    push(mid, &mut nodes);
                }
                _ => {
                    for p in a.intersection_points(b) {
                        if crate::set_model::in_box(&lo, &hi, &p) {
                            push(p, &mut nodes);
                        }
                    }
                }
            }
        }
    }
    let steps = (Scalar::one() / density).floor();
    let n = steps.to_f64() as i64;
    let levels: Vec<Vec<Scalar>> = (0..dim)
        .map(|j| {
            if x[j] == y[j] {
                vec![x[j].clone()]
            } else {
                (0..=n).map(|k| &x[j] + (&y[j] - &x[j]) * Scalar::new(k, n)).collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; dim];
    loop {
        let p = Point::new((0..dim).map(|j| levels[j][idx[j]].clone()).collect()).unwrap();
        if m.has(&p) {
            push(p, &mut nodes);
        }
        let mut pos = 0;
        loop {
            if pos == dim {
                return nodes;
            }
            idx[pos] += 1;
            if idx[pos] < levels[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Depth-first search over the nodes; node 0 is `y`, node 1 is `x`.
fn search(m: &SetModel, x: &Point, y: &Point, strict: IndexSet, nodes: &[Point]) -> Option<Vec<Point>> {
    let dim = x.dim();
    // Per coordinate, rank nodes along the direction from x to y, so that
    // monotonicity tests are integer comparisons.
    let ranks: Vec<Vec<u32>> = {
        let mut per_node = vec![vec![0u32; dim]; nodes.len()];
        for j in 0..dim {
            let flip = y[j] < x[j];
            let mut values: Vec<&Scalar> = nodes.iter().map(|p| &p[j]).collect();
            values.sort();
            values.dedup();
            for (k, p) in nodes.iter().enumerate() {
                let r = values.binary_search(&&p[j]).unwrap() as u32;
                per_node[k][j] = if flip { values.len() as u32 - 1 - r } else { r };
            }
        }
        per_node
    };
    let advances = |from: usize, to: usize| {
        (0..dim).all(|j| {
            let (a, b) = (ranks[from][j], ranks[to][j]);
            if strict.contains(j) {
                b > a
            } else {
                b >= a
            }
        }) && ranks[from] != ranks[to]
    };
    let mut parent: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut expanded = vec![false; nodes.len()];
    let mut stack = vec![1usize];
    expanded[1] = true;
    while let Some(p) = stack.pop() {
        for q in 0..nodes.len() {
            if expanded[q] || !advances(p, q) || !m.covers_segment(&nodes[p], &nodes[q]) {
                continue;
            }
            parent[q] = Some(p);
            if q == 0 {
                let mut path = vec![nodes[0].clone()];
                let mut cur = 0;
                while let Some(prev) = parent[cur] {
                    path.push(nodes[prev].clone());
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            expanded[q] = true;
            stack.push(q);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn cube() -> SetModel {
        let b = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([1, 1, 1])).unwrap();
        SetModel::new(3, "box", vec![b]).unwrap()
    }

    pub(crate) fn main_cocross(e: i64) -> SetModel {
        let prims = (0..3)
            .map(|j| {
                let lo = Point::of([-e, -e, -e]).with_coord(j, q(0));
                let hi = Point::of([e, e, e]).with_coord(j, q(0));
                Primitive::axis_box(lo, hi).unwrap()
            })
            .collect();
        SetModel::new(3, "cocross", prims).unwrap()
    }

    #[test]
    fn path_invariants_are_enforced() {
        let all = IndexSet::full(3);
        assert!(GeodesicPath::new(vec![Point::of([0, 0, 0])], all).is_err());
        let zigzag = vec![Point::of([0, 0, 0]), Point::of([1, 1, 1]), Point::of([2, 0, 2])];
        assert!(GeodesicPath::new(zigzag, IndexSet::empty()).is_err());
        let flat = vec![Point::of([0, 0, 0]), Point::of([1, 0, 1]), Point::of([2, 1, 2])];
        assert!(GeodesicPath::new(flat.clone(), all).is_err());
        let p = GeodesicPath::new(flat, IndexSet::from_indices([0, 2])).unwrap();
        assert_eq!(p.length(), q(5));
        assert_eq!(p.chord(), q(5));
    }

    #[test]
    fn box_diagonal_is_direct() {
        let m = cube();
        let p = monotone_geodesic(&m, &Point::of([0, 0, 0]), &Point::of([1, 1, 1]), IndexSet::full(3), &q((1, 2)))
            .unwrap()
            .unwrap();
        assert_eq!(p.waypoints(), &[Point::of([0, 0, 0]), Point::of([1, 1, 1])]);
        assert!(p.lies_in(&m));
    }

    #[test]
    fn cross_legs_through_the_center() {
        let prims = (0..3)
            .map(|j| {
                let o = Point::origin(3).unwrap();
                Primitive::segment(o.with_coord(j, q(-4)), o.with_coord(j, q(4))).unwrap()
            })
            .collect();
        let m = SetModel::new(3, "cross", prims).unwrap();
        let p = monotone_geodesic(&m, &Point::of([2, 0, 0]), &Point::of([0, 2, 0]), IndexSet::empty(), &q((1, 2)))
            .unwrap()
            .unwrap();
        assert!(p.waypoints().contains(&Point::origin(3).unwrap()));
        assert!(p.lies_in(&m));
    }

    #[test]
    fn cocross_blocks_strict_paths_at_every_density() {
        let m = main_cocross(2);
        for d in [q((1, 2)), q((1, 4)), q((1, 8))] {
            let r = monotone_geodesic(&m, &Point::of([1, 1, 0]), &Point::of([0, 2, 2]), IndexSet::full(3), &d).unwrap();
            assert!(r.is_none());
        }
        assert!(monotone_geodesic(&m, &Point::of([1, 1, 0]), &Point::of([1, 2, 2]), IndexSet::full(3), &q(1)).is_err());
    }

    #[test]
    fn staircase_of_boxes_is_traversed() {
        let b0 = Primitive::axis_box(Point::of([0, 0, 0]), Point::of([2, 2, 2])).unwrap();
        let b1 = Primitive::axis_box(Point::of([1, 1, 1]), Point::of([3, 3, 3])).unwrap();
        let m = SetModel::new(3, "stairs", vec![b0, b1]).unwrap();
        let x = Point::of([0, 0, 0]);
        let y = Point::of([3, 3, 3]);
        let p = monotone_geodesic(&m, &x, &y, IndexSet::full(3), &q((1, 2))).unwrap().unwrap();
        assert!(p.lies_in(&m));
        let x = Point::of([2, 0, 0]);
        let y = Point::of(["5/2", "3/2", "3/2"]);
        assert!(monotone_geodesic(&m, &x, &y, IndexSet::full(3), &q((1, 8))).unwrap().is_none());
    }
}
