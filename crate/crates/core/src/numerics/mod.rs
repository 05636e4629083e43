//! Exact scalars, points, norms and the coordinate-equality relations
//! (`eqc`, all-coordinates-differ, and its relative form).

mod index_set;
mod point;
mod scalar;

pub use index_set::IndexSet;
pub use point::{Point, MAX_DIM, MIN_DIM};
pub use scalar::{q, IntoScalar, Scalar};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    Linf,
}

/// `sum |p_i|` for L1, `max |p_i|` for Linf.
pub fn norm(p: &Point, which: Norm) -> Scalar {
    match which {
        Norm::L1 => p.coords().iter().map(Scalar::abs).sum(),
        Norm::Linf => p
            .coords()
            .iter()
            .map(Scalar::abs)
            .max()
            .unwrap_or_else(Scalar::zero),
    }
}

/// `norm(x - y)` without materializing the difference.
pub fn dist(x: &Point, y: &Point, which: Norm) -> Scalar {
    assert_eq!(x.dim(), y.dim(), "point dimension mismatch");
    let diffs = x.coords().iter().zip(y.coords()).map(|(a, b)| (a - b).abs());
    match which {
        Norm::L1 => diffs.sum(),
        Norm::Linf => diffs.max().unwrap_or_else(Scalar::zero),
    }
}

/// The set of coordinates on which `x` and `y` agree.
pub fn eqc_pair(x: &Point, y: &Point) -> Result<IndexSet> {
    x.ensure_same_dim(y)?;
    Ok(IndexSet::from_indices(
        (0..x.dim()).filter(|&j| x[j] == y[j]),
    ))
}

/// True iff every coordinate of `x` differs from the matching one of `y`.
pub fn ff(x: &Point, y: &Point) -> Result<bool> {
    Ok(eqc_pair(x, y)?.is_empty())
}

/// True iff `x_j != y_j` for every `j` outside `eqc_m`.
pub fn ff_mod(x: &Point, y: &Point, eqc_m: &IndexSet) -> Result<bool> {
    x.ensure_same_dim(y)?;
    Ok((0..x.dim())
        .filter(|j| !eqc_m.contains(*j))
        .all(|j| x[j] != y[j]))
}

/// `lambda x + (1 - lambda) y` for `lambda > 0`: the ray from `y` through `x`.
pub fn ray_point(y: &Point, x: &Point, lambda: &Scalar) -> Result<Point> {
    y.ensure_same_dim(x)?;
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "ray parameter must be positive, got {lambda}"
        )));
    }
    Ok(y.lerp(x, lambda))
}

/// L1 betweenness of `z` relative to `x` and `y`, decided componentwise:
/// `z_j` lies in the closed interval spanned by `x_j` and `y_j` for all `j`.
pub fn between_l1(x: &Point, z: &Point, y: &Point) -> Result<bool> {
    x.ensure_same_dim(z)?;
    x.ensure_same_dim(y)?;
    Ok((0..x.dim()).all(|j| {
        let (lo, hi) = if x[j] <= y[j] { (&x[j], &y[j]) } else { (&y[j], &x[j]) };
        lo <= &z[j] && &z[j] <= hi
    }))
}

/// The same relation decided by the L1 triangle equality
/// `|x - y|_1 = |x - z|_1 + |z - y|_1`.
pub fn between_l1_by_norms(x: &Point, z: &Point, y: &Point) -> Result<bool> {
    x.ensure_same_dim(z)?;
    x.ensure_same_dim(y)?;
    Ok(dist(x, y, Norm::L1) == dist(x, z, Norm::L1) + dist(z, y, Norm::L1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[&str]) -> Point {
        Point::of(c.iter().copied())
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&p(&["0", "0", "0"]), Norm::L1), q(0));
        assert_eq!(norm(&p(&["1", "-2", "3"]), Norm::L1), q(6));
        assert_eq!(norm(&p(&["1", "-2", "3"]), Norm::Linf), q(3));
        assert_eq!(norm(&p(&["1/2", "1/2", "1/2"]), Norm::Linf), q((1, 2)));
    }

    #[test]
    fn eqc_and_ff_examples() {
        let x = p(&["1", "2", "3"]);
        assert_eq!(eqc_pair(&x, &p(&["1", "5", "3"])).unwrap(), IndexSet::from_one_based([1, 3]));
        assert_eq!(eqc_pair(&x, &x).unwrap(), IndexSet::full(3));
        let zero = p(&["0", "0", "0"]);
        let ones = p(&["1", "1", "1"]);
        assert!(eqc_pair(&zero, &ones).unwrap().is_empty());
        assert!(ff(&zero, &ones).unwrap());
        assert!(!ff(&x, &p(&["1", "5", "6"])).unwrap());
        assert!(!ff(&x, &x).unwrap());
    }

    #[test]
    fn ff_mod_examples() {
        let a = p(&["1", "2", "0"]);
        let b = p(&["1", "5", "3"]);
        assert!(ff_mod(&a, &b, &IndexSet::from_one_based([1])).unwrap());
        assert!(!ff_mod(&a, &b, &IndexSet::empty()).unwrap());
        assert!(ff_mod(&a, &a, &IndexSet::full(3)).unwrap());
    }

    #[test]
    fn ray_point_examples() {
        let y = p(&["1", "0", "0"]);
        let x = p(&["1", "1", "0"]);
        assert_eq!(ray_point(&y, &x, &q(2)).unwrap(), p(&["1", "2", "0"]));
        assert_eq!(ray_point(&y, &x, &q(1)).unwrap(), x);
        assert_eq!(
            ray_point(&p(&["0", "0", "0"]), &p(&["1", "1", "1"]), &q(3)).unwrap(),
            p(&["3", "3", "3"])
        );
        assert!(ray_point(&y, &x, &q(0)).is_err());
        assert!(ray_point(&y, &x, &q(-1)).is_err());
    }

    #[test]
    fn between_examples() {
        let o = p(&["0", "0", "0"]);
        assert!(between_l1(&o, &p(&["1", "0", "0"]), &p(&["1", "1", "0"])).unwrap());
        assert!(!between_l1(&o, &p(&["2", "0", "0"]), &p(&["1", "1", "0"])).unwrap());
        let y = p(&["1", "1", "0"]);
        assert!(between_l1(&o, &o, &y).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = p(&["1", "2"]);
        let b = p(&["1", "2", "3"]);
        assert!(matches!(eqc_pair(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(ff(&a, &b).is_err());
        assert!(ff_mod(&a, &b, &IndexSet::empty()).is_err());
        assert!(between_l1(&a, &a, &b).is_err());
        assert!(Point::new(vec![q(1)]).is_err());
        assert!(Point::new(vec![q(1); 5]).is_err());
    }

    fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
        // Few distinct values so that coordinate ties are common.
        Scalar::new(rng.random_range(-4..=4), rng.random_range(1..=2))
    }

    #[test]
    fn betweenness_criteria_agree_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xbe7);
        let mut agreeing_true = 0;
        for _ in 0..10_000 {
            let dim = rng.random_range(2..=4);
            let mut point = || Point::new((0..dim).map(|_| small_rational(&mut rng)).collect()).unwrap();
            let (x, z, y) = (point(), point(), point());
            let a = between_l1(&x, &z, &y).unwrap();
            assert_eq!(a, between_l1_by_norms(&x, &z, &y).unwrap(), "{x} {z} {y}");
            agreeing_true += a as usize;
        }
        assert!(agreeing_true > 100);
    }

    fn arb_point(dim: usize) -> impl Strategy<Value = Point> {
        prop::collection::vec((-20i64..=20, 1i64..=6), dim)
            .prop_map(|v| Point::new(v.into_iter().map(|(n, d)| Scalar::new(n, d)).collect()).unwrap())
    }

    fn arb_pair() -> impl Strategy<Value = (Point, Point)> {
        (2usize..=4).prop_flat_map(|d| (arb_point(d), arb_point(d)))
    }

    proptest! {
        #[test]
        fn norms_are_subadditive_and_homogeneous((x, y) in arb_pair(), n in -5i64..=5, d in 1i64..=4) {
            let c = Scalar::new(n, d);
            for which in [Norm::L1, Norm::Linf] {
                prop_assert!(norm(&x.add(&y), which) <= norm(&x, which) + norm(&y, which));
                prop_assert_eq!(norm(&x.scale(&c), which), c.abs() * norm(&x, which));
                prop_assert_eq!(norm(&x, which).is_zero(), x.is_origin());
            }
        }

        #[test]
        fn eqc_pair_is_symmetric((x, y) in arb_pair()) {
            prop_assert_eq!(eqc_pair(&x, &y).unwrap(), eqc_pair(&y, &x).unwrap());
        }

        #[test]
        fn ff_is_ff_mod_with_empty_eqc((x, y) in arb_pair()) {
            prop_assert_eq!(ff(&x, &y).unwrap(), ff_mod(&x, &y, &IndexSet::empty()).unwrap());
        }
    }
}
