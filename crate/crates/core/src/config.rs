//! Run configuration shared by the library entry points and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::l1_convexity::Budget;
use crate::numerics::{q, Scalar};
use crate::set_model::SampleSpec;
use crate::sun_checker::SweepSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// Half-width of the truncation box for generated scenes.
    pub extent: Scalar,
    pub lambda_schedule: Vec<Scalar>,
    /// Geodesic lattice densities, coarse to fine.
    pub densities: Vec<Scalar>,
    /// Random pairs on top of the structural pairs.
    pub pair_budget: usize,
    /// Random external points on top of the sweep lattice.
    pub sweep_budget: usize,
    /// Sweep lattice subdivisions per side; `None` picks by dimension.
    pub sweep_steps: Option<u32>,
    pub sample_count: usize,
    /// Grid step of the brute-force oracles.
    pub oracle_resolution: Scalar,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            seed: 0,
            extent: q(4),
            lambda_schedule: vec![q(2), q(4), q(8), q(16)],
            densities: vec![q((1, 2)), q((1, 4)), q((1, 8))],
            pair_budget: 200,
            sweep_budget: 64,
            sweep_steps: None,
            sample_count: 48,
            oracle_resolution: q((1, 16)),
        }
    }
}

impl Config {
    pub fn with_seed(mut self, seed: u64) -> Config {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if !self.extent.is_positive() {
            return bad("extent must be positive");
        }
        if !self.oracle_resolution.is_positive() {
            return bad("oracle resolution must be positive");
        }
        if self.lambda_schedule.is_empty() || self.lambda_schedule.iter().any(|l| !l.is_positive()) {
            return bad("lambda schedule must be nonempty and positive");
        }
        if self.lambda_schedule.windows(2).any(|w| w[0] >= w[1]) {
            return bad("lambda schedule must be increasing");
        }
        if self.densities.is_empty() || self.densities.iter().any(|d| !d.is_positive() || *d > Scalar::one()) {
            return bad("densities must lie in (0, 1]");
        }
        if self.densities.windows(2).any(|w| w[0] <= w[1]) {
            return bad("densities must be listed coarse to fine");
        }
        if self.sample_count == 0 {
            return bad("sample count must be positive");
        }
        if self.sweep_steps == Some(0) {
            return bad("sweep steps must be positive");
        }
        Ok(())
    }

    pub fn budget(&self) -> Budget {
        Budget {
            samples: SampleSpec::new(self.sample_count, self.seed),
            random_pairs: self.pair_budget,
            densities: self.densities.clone(),
        }
    }

    pub fn sweep(&self, dim: usize) -> SweepSpec {
        let mut spec = SweepSpec::for_dim(dim);
        if let Some(steps) = self.sweep_steps {
            spec.lattice_steps = steps;
        }
        spec.random_points = self.sweep_budget;
        spec.seed = self.seed;
        spec
    }
}
