//! Monte-Carlo mean squared errors of the feature-dynamics estimators.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::generate_features;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::seed::GenSeed;

use super::features::{estimate_alpha, estimate_beta, estimate_delta};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureEstimates {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MseReport {
    pub truth: ModelParams,
    pub n: usize,
    pub mse_alpha: f64,
    pub mse_beta: f64,
    pub mse_delta: f64,
    /// Per-realization estimates, in realization order.
    pub estimates: Vec<FeatureEstimates>,
}

impl MseReport {
    pub fn from_estimates(truth: ModelParams, n: usize, estimates: Vec<FeatureEstimates>) -> Result<Self> {
        if estimates.is_empty() {
            return Err(Error::InsufficientData("no realizations".into()));
        }
        let r = estimates.len() as f64;
        let mse = |get: fn(&FeatureEstimates) -> f64, x: f64| {
            estimates.iter().map(|e| (get(e) - x).powi(2)).sum::<f64>() / r
        };
        Ok(MseReport {
            truth,
            n,
            mse_alpha: mse(|e| e.alpha, truth.alpha()),
            mse_beta: mse(|e| e.beta, truth.beta()),
            mse_delta: mse(|e| e.delta, truth.delta()),
            estimates,
        })
    }

    pub fn mean(&self) -> FeatureEstimates {
        let r = self.estimates.len() as f64;
        let sum = |get: fn(&FeatureEstimates) -> f64| self.estimates.iter().map(get).sum::<f64>() / r;
        FeatureEstimates {
            alpha: sum(|e| e.alpha),
            beta: sum(|e| e.beta),
            delta: sum(|e| e.delta),
        }
    }
}

/// Estimates `(α, β, δ)` on one matrix.
pub fn estimate_features(f: &crate::FeatureMatrix) -> Result<FeatureEstimates> {
    let beta = estimate_beta(f)?;
    Ok(FeatureEstimates {
        alpha: estimate_alpha(f, beta)?,
        beta,
        delta: estimate_delta(f)?,
    })
}

/// Generates `realizations` matrices of `n` nodes under `truth` and returns
/// the MSE of each estimator. Realization `r` uses
/// [`GenSeed::features`]`(seed, r)`.
pub fn mse_harness(truth: &ModelParams, n: usize, realizations: usize, seed: u64) -> Result<MseReport> {
    if realizations == 0 {
        return Err(Error::InvalidParameter {
            name: "realizations",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let estimates = (0..realizations as u64)
        .into_par_iter()
        .map(|r| estimate_features(&generate_features(n, truth, GenSeed::features(seed, r))))
        .collect::<Result<Vec<_>>>()?;
    MseReport::from_estimates(*truth, n, estimates)
}
