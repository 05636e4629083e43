//! Three-valued, evidence-carrying results for predicates quantified over a
//! continuum.

use serde::Serialize;

use crate::classification::CocrossWitness;
use crate::numerics::{Point, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    /// Decided exhaustively.
    Proven { evidence: Evidence },
    /// An exact counterexample.
    Refuted { evidence: Evidence },
    /// No counterexample among the sampled cases.
    SampledPass { coverage: Coverage },
}

impl Verdict {
    /// Pass under the "sampled pass counts as pass" convention.
    pub fn passes(&self) -> bool {
        !self.is_refuted()
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Proven { evidence } | Verdict::Refuted { evidence } => Some(evidence),
            Verdict::SampledPass { .. } => None,
        }
    }

    pub fn coverage(&self) -> Option<&Coverage> {
        match self {
            Verdict::SampledPass { coverage } => Some(coverage),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proven { .. } => "proven",
            Verdict::Refuted { .. } => "refuted",
            Verdict::SampledPass { .. } => "sampled_pass",
        }
    }
}

/// What a sampled pass actually examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    /// Pairs (for convexity) or external points (for sun checks) examined.
    pub checked: usize,
    /// Cases where the conditional clause applied: pairs with all free
    /// coordinates different, or (x, nearest point) pairs ray-tested.
    pub conditional: usize,
    /// Finest geodesic density, or the last lambda of the schedule.
    pub resolution: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every pair of a finite set was examined.
    FinitePairs { pairs: usize },
    /// No point of the set lies l1-between `x` and `y`.
    MengerGap { x: Point, y: Point },
    /// No strictly monotone polyline from `x` to `y` at any tried density.
    GeodesicExhausted {
        x: Point,
        y: Point,
        densities: Vec<Scalar>,
        certificate: Option<Certificate>,
    },
    /// `y` is nearest to `x` but not to `z = y + lambda (x - y)`:
    /// `competing` is a point of the set at distance `rho_z < distance_z`.
    NonSolar {
        x: Point,
        y: Point,
        lambda: Scalar,
        z: Point,
        rho_z: Scalar,
        distance_z: Scalar,
        competing: Point,
    },
    /// Every candidate nearest point of `x` fails the ray test.
    NoSolarPoint { x: Point, candidates: Vec<NonSolarStep> },
}

/// One failed ray test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSolarStep {
    pub y: Point,
    pub lambda: Scalar,
    pub rho_z: Scalar,
    pub distance_z: Scalar,
}

/// Exact reason why no strictly monotone curve can exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The set lies in a cocross; a curve strictly monotone in every free
    /// coordinate meets it for finitely many parameters only.
    CocrossContainment { witness: CocrossWitness },
}
