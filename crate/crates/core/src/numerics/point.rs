use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use super::scalar::{IntoScalar, Scalar};
use crate::error::{check_dim, Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;

/// A point of R^n, n in {2, 3, 4}, with exact rational coordinates.
///
/// Arithmetic helpers (`sub`, `add`, `lerp`, ...) panic on a dimension
/// mismatch; the public predicates in [`crate::numerics`] check dimensions
/// and report [`Error::DimensionMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Point> {
        if !(MIN_DIM..=MAX_DIM).contains(&coords.len()) {
            return Err(Error::UnsupportedDimension(coords.len()));
        }
        Ok(Point { coords })
    }

    /// Builds a point from literals; panics on an unsupported dimension.
    pub fn of<T: IntoScalar>(coords: impl IntoIterator<Item = T>) -> Point {
        Point::new(coords.into_iter().map(IntoScalar::into_scalar).collect())
            .expect("point dimension must be 2, 3 or 4")
    }

    pub fn origin(dim: usize) -> Result<Point> {
        Point::new(vec![Scalar::zero(); dim])
    }

    /// The unit vector e_j (0-based `axis`).
    pub fn unit(dim: usize, axis: usize) -> Result<Point> {
        let mut p = Point::origin(dim)?;
        if axis >= dim {
            return Err(Error::InvalidParameter(format!("axis {axis} out of range for dim {dim}")));
        }
        p.coords[axis] = Scalar::one();
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn with_coord(&self, axis: usize, value: Scalar) -> Point {
        let mut coords = self.coords.clone();
        coords[axis] = value;
        Point { coords }
    }

    pub fn ensure_same_dim(&self, other: &Point) -> Result<()> {
        check_dim(self.dim(), other.dim())
    }

    fn zip_map(&self, other: &Point, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Point {
        assert_eq!(self.dim(), other.dim(), "point dimension mismatch");
        Point {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Point) -> Point {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn scale(&self, factor: &Scalar) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        self.zip_map(other, |a, b| a + (b - a) * t)
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        self.zip_map(other, Scalar::midpoint)
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Renders as `(1,-3/2,0)`, or with `decimals` places when given.
    pub fn render(&self, decimals: Option<usize>) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match decimals {
                Some(k) => c.to_decimal_string(k),
                None => c.to_string(),
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, axis: usize) -> &Scalar {
        &self.coords[axis]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Parses `"1,1/2,0"`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Point> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let coords = body
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Scalar>>>()?;
        Point::new(coords)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Point, D::Error> {
        let coords = Vec::<Scalar>::deserialize(deserializer)?;
        Point::new(coords).map_err(serde::de::Error::custom)
    }
}
