//! Exact optimization of piecewise-linear functions of one parameter on
//! `[0, 1]`, by enumeration of rational breakpoints.

use crate::numerics::{Norm, Point, Scalar};

/// `t -> offset + slope * t`.
#[derive(Debug, Clone)]
pub(crate) struct Affine {
    pub offset: Scalar,
    pub slope: Scalar,
}

impl Affine {
    pub fn at(&self, t: &Scalar) -> Scalar {
        &self.offset + &self.slope * t
    }

    fn negated(&self) -> Affine {
        Affine {
            offset: -&self.offset,
            slope: -&self.slope,
        }
    }
}

/// Minimum value of a convex piecewise-linear function on `[0,1]` and the
/// interval `[t_lo, t_hi]` on which it is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PlMinimum {
    pub value: Scalar,
    pub t_lo: Scalar,
    pub t_hi: Scalar,
}

fn in_unit(t: &Scalar) -> bool {
    !t.is_negative() && *t <= Scalar::one()
}

/// Minimizes a convex function whose kinks all lie in `kinks` (points
/// outside `[0,1]` are ignored). The argmin of a convex PL function is an
/// interval whose ends are kinks or endpoints, so enumerating them is exact.
pub(crate) fn minimize_convex(kinks: Vec<Scalar>, f: impl Fn(&Scalar) -> Scalar) -> PlMinimum {
    let mut candidates = vec![Scalar::zero(), Scalar::one()];
    candidates.extend(kinks.into_iter().filter(in_unit));
    candidates.sort();
    candidates.dedup();
    let values: Vec<Scalar> = candidates.iter().map(&f).collect();
    let value = values.iter().min().cloned().expect("nonempty candidate list");
    let mut attained = candidates.iter().zip(&values).filter(|(_, v)| **v == value).map(|(t, _)| t);
    let t_lo = attained.next().cloned().expect("minimum is attained");
    let t_hi = attained.next_back().cloned().unwrap_or_else(|| t_lo.clone());
    PlMinimum { value, t_lo, t_hi }
}

fn pairwise_crossings(pieces: &[Affine]) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            let ds = &a.slope - &b.slope;
            if !ds.is_zero() {
                out.push((&b.offset - &a.offset) / ds);
            }
        }
    }
    out
}

fn max_at(pieces: &[Affine], t: &Scalar) -> Scalar {
    pieces.iter().map(|p| p.at(t)).max().expect("at least one piece")
}

/// Minimizes `t -> max_k pieces[k](t)` over `[0,1]`.
pub(crate) fn minimize_max_affine(pieces: &[Affine]) -> PlMinimum {
    minimize_convex(pairwise_crossings(pieces), |t| max_at(pieces, t))
}

/// Maximizes `t -> min_k pieces[k](t)` over `[0,1]`; returns the maximum and
/// the smallest maximizer.
pub(crate) fn maximize_min_affine(pieces: &[Affine]) -> (Scalar, Scalar) {
    let negated: Vec<Affine> = pieces.iter().map(Affine::negated).collect();
    let m = minimize_max_affine(&negated);
    (-m.value, m.t_lo)
}

/// Minimizes `t -> |x - (a + t (b - a))|` over `[0,1]` in the given norm.
pub(crate) fn segment_distance(x: &Point, a: &Point, b: &Point, which: Norm) -> PlMinimum {
    // residual_j(t) = c_j - t d_j
    let c = x.sub(a);
    let d = b.sub(a);
    match which {
        Norm::Linf => {
            let mut pieces = Vec::with_capacity(2 * x.dim());
            for j in 0..x.dim() {
                let piece = Affine {
                    offset: c[j].clone(),
                    slope: -&d[j],
                };
                pieces.push(piece.negated());
                pieces.push(piece);
            }
            minimize_max_affine(&pieces)
        }
        Norm::L1 => {
            let kinks = (0..x.dim())
                .filter(|&j| !d[j].is_zero())
                .map(|j| &c[j] / &d[j])
                .collect();
            minimize_convex(kinks, |t| {
                (0..x.dim()).map(|j| (&c[j] - &d[j] * t).abs()).sum()
            })
        }
    }
}
