//! Brute-force floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sunlab::scenario_lab::{generate, Family, FamilySpec};
use sunlab::{q, Point, Primitive, Scalar, SetModel};

pub fn to_f64(p: &Point) -> Vec<f64> {
    p.coords().iter().map(Scalar::to_f64).collect()
}

/// Points of `m` such that every point of `m` lies within `h` (l-infinity)
/// of one of them.
pub fn discretize(m: &SetModel, h: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for prim in m.primitives() {
        match prim {
            Primitive::Point { coords } => out.push(to_f64(coords)),
            Primitive::Segment { a, b } => {
                let (a, b) = (to_f64(a), to_f64(b));
                let n = steps(linf(&a, &b), h);
                for k in 0..=n {
                    let t = k as f64 / n as f64;
                    out.push(a.iter().zip(&b).map(|(x, y)| x + t * (y - x)).collect());
                }
            }
            Primitive::AxisBox { lo, hi } => {
                let (lo, hi) = (to_f64(lo), to_f64(hi));
                let axes: Vec<Vec<f64>> = lo
                    .iter()
                    .zip(&hi)
                    .map(|(l, u)| {
                        let n = steps(u - l, h);
                        (0..=n).map(|k| l + (u - l) * k as f64 / n as f64).collect()
                    })
                    .collect();
                product(&axes, &mut Vec::new(), &mut out);
            }
            Primitive::Polytope { vertices } => {
                let vs: Vec<Vec<f64>> = vertices.iter().map(to_f64).collect();
                let diam = vs
                    .iter()
                    .flat_map(|a| vs.iter().map(move |b| linf(a, b)))
                    .fold(0.0, f64::max);
                let n = steps((vs.len() - 1) as f64 * diam, h);
                barycentric(&vs, n, &mut vec![0; vs.len()], 0, n, &mut out);
            }
        }
    }
    out
}

fn steps(length: f64, h: f64) -> usize {
    ((length / h).ceil() as usize).max(1)
}

fn product(axes: &[Vec<f64>], prefix: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
    if prefix.len() == axes.len() {
        out.push(prefix.clone());
        return;
    }
    for v in &axes[prefix.len()] {
        prefix.push(*v);
        product(axes, prefix, out);
        prefix.pop();
    }
}

fn barycentric(vs: &[Vec<f64>], n: usize, w: &mut Vec<usize>, i: usize, left: usize, out: &mut Vec<Vec<f64>>) {
    if i + 1 == vs.len() {
        w[i] = left;
        let dim = vs[0].len();
        out.push(
            (0..dim)
                .map(|j| vs.iter().zip(w.iter()).map(|(v, k)| v[j] * *k as f64).sum::<f64>() / n as f64)
                .collect(),
        );
        return;
    }
    for k in 0..=left {
        w[i] = k;
        barycentric(vs, n, w, i + 1, left - k, out);
    }
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Distance from `x` to the discretized set.
pub fn voxel_distance(samples: &[Vec<f64>], x: &[f64], norm: fn(&[f64], &[f64]) -> f64) -> f64 {
    samples.iter().map(|s| norm(s, x)).fold(f64::INFINITY, f64::min)
}

pub fn scene(family: Family, dim: usize, extent: i64, seed: u64) -> SetModel {
    generate(&FamilySpec::new(family, dim, q(extent)), seed).unwrap()
}

/// A random point of the bounding box of `m` grown by `margin`, on the grid
/// of step 1/64.
pub fn random_point_near(m: &SetModel, margin: i64, rng: &mut ChaCha8Rng) -> Point {
    let (lo, hi) = m.bounding_box();
    let coords = (0..m.dim())
        .map(|j| {
            let a = ((lo[j].to_f64() - margin as f64) * 64.0).floor() as i64;
            let b = ((hi[j].to_f64() + margin as f64) * 64.0).ceil() as i64;
            Scalar::new(rng.random_range(a..=b), 64)
        })
        .collect();
    Point::new(coords).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A varied set of small dimension-3 scenes.
pub fn oracle_scenes() -> Vec<SetModel> {
    let mut out = vec![
        scene(Family::MainCross, 3, 2, 0),
        scene(Family::MainCocross, 3, 2, 0),
        scene(Family::Box, 3, 2, 0),
        scene(Family::Simplex, 3, 2, 0),
        scene(Family::TwoPoints, 3, 2, 0),
    ];
    for seed in 0..2 {
        for family in [
            Family::CrossSubset,
            Family::DisconnectedCross,
            Family::CocrossCj,
            Family::RandomBox,
            Family::MonotoneTube,
            Family::RandomL1Convex,
        ] {
            out.push(scene(family, 3, 2, seed));
        }
    }
    out
}
