//! Model parameters and the sigmoid link function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        })
    }
}

/// Generative parameters of the feature dynamics and of triadic closure.
///
/// * `alpha` scales the number of new features per node,
/// * `beta` is the power-law exponent of the cumulative feature count,
/// * `delta` mixes preferential attachment (0) with i.i.d. adoption at 1/2 (1),
/// * `p` is the per-common-neighbour probability of closing a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    alpha: f64,
    beta: f64,
    delta: f64,
    p: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, delta: f64, p: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must be a finite positive number",
            });
        }
        Ok(ModelParams {
            alpha,
            beta: unit_interval("beta", beta)?,
            delta: unit_interval("delta", delta)?,
            p: unit_interval("p", p)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Steepness `K` and threshold `θ` of the sigmoid
/// `Φ(s) = 1 / (1 + exp(K (θ - s)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmoidParams {
    k_steep: f64,
    theta: f64,
}

impl SigmoidParams {
    pub fn new(k_steep: f64, theta: f64) -> Result<Self> {
        if !(k_steep.is_finite() && k_steep > 0.0) {
            return Err(Error::InvalidParameter {
                name: "K",
                value: k_steep,
                reason: "must be a finite positive number",
            });
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "must be finite",
            });
        }
        Ok(SigmoidParams { k_steep, theta })
    }

    pub fn k_steep(&self) -> f64 {
        self.k_steep
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// First-phase link probability for similarity `s`.
    pub fn phi(&self, s: f64) -> f64 {
        phi(s, self)
    }
}

/// Logistic `1 / (1 + e^z)` evaluated without overflow for any finite `z`.
pub(crate) fn logistic_of_neg(z: f64) -> f64 {
    if z >= 0.0 {
        let e = (-z).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + z.exp())
    }
}

/// `Φ(s) = 1 / (1 + exp(K (θ - s)))`.
///
/// Saturates to exactly 0 or 1 for very large `|K (θ - s)|` instead of
/// overflowing.
///
/// ```
/// use featnet::{phi, SigmoidParams};
/// let sp = SigmoidParams::new(1.0, 0.0).unwrap();
/// assert_eq!(phi(0.0, &sp), 0.5);
/// ```
pub fn phi(s: f64, sp: &SigmoidParams) -> f64 {
    logistic_of_neg(sp.k_steep * (sp.theta - s))
}
