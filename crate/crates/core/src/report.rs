//! Fitted parameters plus fit diagnostics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EstimationReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_hat: Option<f64>,
    /// Named diagnostics such as regression `R²`, maximised log-likelihoods
    /// and solver residuals.
    #[serde(default)]
    pub diagnostics: BTreeMap<String, f64>,
}

impl EstimationReport {
    /// Checks that every present estimate lies in its parameter range.
    pub fn validate(&self) -> Result<()> {
        let unit = [
            ("beta_hat", self.beta_hat),
            ("delta_hat", self.delta_hat),
            ("p_hat", self.p_hat),
        ];
        for (name, value) in unit {
            if let Some(v) = value {
                if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                    return Err(Error::InvalidParameter {
                        name,
                        value: v,
                        reason: "must lie in [0, 1]",
                    });
                }
            }
        }
        for (name, value) in [("alpha_hat", self.alpha_hat), ("k_hat", self.k_hat)] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidParameter {
                        name,
                        value: v,
                        reason: "must be a finite positive number",
                    });
                }
            }
        }
        if let Some(t) = self.theta_hat {
            if !t.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "theta_hat",
                    value: t,
                    reason: "must be finite",
                });
            }
        }
        Ok(())
    }

    pub fn set_diagnostic(&mut self, name: &str, value: f64) {
        self.diagnostics.insert(name.to_string(), value);
    }
}
