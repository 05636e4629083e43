//! Exact recognition of crosses and cocrosses.
//!
//! The main cross `cr(x)` is the union of the axis-parallel lines through
//! `x`; a cross is a subset of one with empty eqc. The cocross `c_J(x)`
//! (frozen set `J`) holds the points equal to `x` on `J` that also match `x`
//! in at least one coordinate outside `J`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::numerics::{IndexSet, Point, Scalar};
use crate::set_model::{Primitive, SetModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocrossWitness {
    pub center: Point,
    pub frozen: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub eqc: IndexSet,
    pub is_cross: bool,
    pub cross_center: Option<Point>,
    pub is_cocross: bool,
    pub cocross: Option<CocrossWitness>,
    pub is_main_cross_subset: Option<Point>,
    pub component_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop1_expected_strictly_l1_convex: Option<bool>,
}

/// A center `x` with `M ⊆ cr(x)`, ignoring eqc.
pub fn main_cross_center(m: &SetModel) -> Option<Point> {
    let dim = m.dim();
    // per coordinate: the value forced by some line, if any
    let mut forced: Vec<Option<Scalar>> = vec![None; dim];
    let mut points: Vec<Point> = Vec::new();
    for prim in m.primitives() {
        let consts = prim.constant_coords();
        if consts.len() == dim {
            points.push(prim.vertices().swap_remove(0));
            continue;
        }
        if consts.len() + 1 < dim {
            return None;
        }
        for (j, v) in consts {
            match &forced[j] {
                Some(w) if *w != v => return None,
                Some(_) => {}
                None => forced[j] = Some(v),
            }
        }
    }
    let fresh = points
        .iter()
        .flat_map(|p| p.coords().iter())
        .max()
        .map(|v| v + Scalar::one())
        .unwrap_or_else(Scalar::zero);
    let candidates: Vec<Vec<Scalar>> = (0..dim)
        .map(|j| match &forced[j] {
            Some(v) => vec![v.clone()],
            None => {
                let mut vals: BTreeSet<Scalar> = points.iter().map(|p| p[j].clone()).collect();
                vals.insert(fresh.clone());
                vals.into_iter().collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; dim];
    loop {
        let center = Point::new((0..dim).map(|j| candidates[j][idx[j]].clone()).collect())
            .expect("valid dimension");
        let fits = points
            .iter()
            .all(|p| (0..dim).filter(|&j| p[j] == center[j]).count() + 1 >= dim);
        if fits {
            return Some(center);
        }
        let mut pos = 0;
        loop {
            if pos == dim {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// A center of a cross containing `M`; requires eqc(M) = ∅.
pub fn is_cross(m: &SetModel) -> Option<Point> {
    if !m.eqc().is_empty() {
        return None;
    }
    main_cross_center(m)
}

/// A center `x` with `M ⊆ c_J(x)` for `J = eqc(M)`, provided `|J| <= dim - 2`.
pub fn is_cocross(m: &SetModel) -> Option<CocrossWitness> {
    let dim = m.dim();
    let frozen = m.eqc();
    if frozen.len() + 2 > dim {
        return None;
    }
    let options: Vec<Vec<(usize, Scalar)>> = m
        .primitives()
        .iter()
        .map(|p| free_constants(p, &frozen))
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    let mut chosen: Vec<Option<Scalar>> = vec![None; dim];
    if !assign(&options, 0, &mut chosen) {
        return None;
    }
    let frozen_values = m.primitives()[0].constant_coords();
    let coords = (0..dim)
        .map(|j| {
            if frozen.contains(j) {
                frozen_values
                    .iter()
                    .find(|(i, _)| *i == j)
                    .map(|(_, v)| v.clone())
                    .expect("frozen coordinates are constant")
            } else {
                chosen[j].clone().unwrap_or_else(Scalar::zero)
            }
        })
        .collect();
    Some(CocrossWitness {
        center: Point::new(coords).expect("valid dimension"),
        frozen,
    })
}

fn free_constants(p: &Primitive, frozen: &IndexSet) -> Vec<(usize, Scalar)> {
    p.constant_coords()
        .into_iter()
        .filter(|(j, _)| !frozen.contains(*j))
        .collect()
}

/// Backtracking: one option per primitive, consistent per coordinate.
fn assign(options: &[Vec<(usize, Scalar)>], k: usize, chosen: &mut Vec<Option<Scalar>>) -> bool {
    let Some(opts) = options.get(k) else {
        return true;
    };
    // already satisfied by an earlier choice
    if opts.iter().any(|(j, v)| chosen[*j].as_ref() == Some(v)) {
        return assign(options, k + 1, chosen);
    }
    for (j, v) in opts {
        if chosen[*j].is_none() {
            chosen[*j] = Some(v.clone());
            if assign(options, k + 1, chosen) {
                return true;
            }
            chosen[*j] = None;
        }
    }
    false
}

pub fn classify(m: &SetModel) -> Classification {
    let cross = is_cross(m);
    let cocross = is_cocross(m);
    let component_count = m.component_count();
    let prop1 = (cocross.is_some() && m.dim() == 3).then(|| cross.is_some() && component_count == 1);
    Classification {
        eqc: m.eqc(),
        is_cross: cross.is_some(),
        cross_center: cross,
        is_cocross: cocross.is_some(),
        cocross,
        is_main_cross_subset: main_cross_center(m),
        component_count,
        prop1_expected_strictly_l1_convex: prop1,
    }
}
