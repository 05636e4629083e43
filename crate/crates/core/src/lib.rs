//! Exact rational toolkit for metric projection, l1-convexity, cross and
//! cocross classification, and sun / strict-sun checks in l-infinity.

pub mod classification;
pub mod config;
pub mod error;
pub mod l1_convexity;
pub mod lp;
pub mod numerics;
pub(crate) mod piecewise;
pub mod projection;
pub mod scenario_lab;
pub mod set_model;
pub mod sun_checker;
pub mod verdict;

pub use config::Config;
pub use error::{Error, Result};
pub use numerics::{q, IndexSet, Norm, Point, Scalar};
pub use set_model::{Primitive, SampleSpec, SetModel};
