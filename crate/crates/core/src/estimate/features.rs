//! Estimators for the feature-dynamics parameters `β`, `α` and `δ`.

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

use super::optimize::golden_section_max;
use super::regression::{ols, LinearFit};

/// Below this `β̂` the logarithmic growth branch is used for `α̂`.
pub const LOG_BRANCH_THRESHOLD: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaFit {
    /// Slope clamped to `[0, 1]`.
    pub beta: f64,
    pub fit: LinearFit,
}

/// Share of the series skipped at the start of the `β` regression.
///
/// `E[L_n] = (α/β) n^β + α ζ(1-β) + o(1)`, so the constant offset bends the
/// log-log curve for small `i` and biases the slope upwards (by about 0.035
/// at `α = 10, β = 0.5, n = 1000` when every point is used). Fitting only the
/// last 90% of the nodes removes most of that bias.
pub const BETA_FIT_SKIP_FRACTION: f64 = 0.1;

/// Log-log slope of `L_i` against `i`, over `i >= max(2, ⌈n/10⌉)` with
/// `L_i > 0`. `cum_counts[i - 1]` is `L_i`; values need not be integers.
pub fn fit_beta_from_counts(cum_counts: &[f64]) -> Result<BetaFit> {
    let first = ((cum_counts.len() as f64 * BETA_FIT_SKIP_FRACTION).ceil() as usize).max(2);
    let (xs, ys): (Vec<f64>, Vec<f64>) = cum_counts
        .iter()
        .enumerate()
        .skip(first - 1)
        .filter(|(_, &l)| l > 0.0)
        .map(|(idx, &l)| (((idx + 1) as f64).ln(), l.ln()))
        .unzip();
    if xs.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "beta regression needs 3 points with i >= {first} and L_i > 0, found {}",
            xs.len()
        )));
    }
    let fit = ols(&xs, &ys)?;
    Ok(BetaFit {
        beta: fit.slope.clamp(0.0, 1.0),
        fit,
    })
}

pub fn estimate_beta(f: &FeatureMatrix) -> Result<f64> {
    Ok(fit_beta_from_counts(&counts_as_f64(f))?.beta)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFit {
    pub alpha: f64,
    /// Slope `γ̂` of the growth regression.
    pub gamma: f64,
    pub fit: LinearFit,
    /// Whether `L_i` was regressed on `ln i` (β̂ below the threshold).
    pub log_branch: bool,
}

/// `α̂ = γ̂` with `γ̂` the slope of `L_i` on `ln i` when `β̂` is (near) zero,
/// otherwise `α̂ = β̂ γ̂` with `γ̂` the slope of `L_i` on `i^β̂`. Uses all
/// points `i = 1..n` and an intercept.
pub fn fit_alpha_from_counts(cum_counts: &[f64], beta_hat: f64) -> Result<AlphaFit> {
    if !(beta_hat.is_finite() && (0.0..=1.0).contains(&beta_hat)) {
        return Err(Error::InvalidParameter {
            name: "beta_hat",
            value: beta_hat,
            reason: "must lie in [0, 1]",
        });
    }
    let log_branch = beta_hat < LOG_BRANCH_THRESHOLD;
    let xs: Vec<f64> = (1..=cum_counts.len())
        .map(|i| {
            let i = i as f64;
            if log_branch {
                i.ln()
            } else {
                i.powf(beta_hat)
            }
        })
        .collect();
    let fit = ols(&xs, cum_counts)?;
    let gamma = fit.slope;
    let alpha = if log_branch { gamma } else { beta_hat * gamma };
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NotIdentifiable(format!(
            "growth regression gives non-positive alpha ({alpha})"
        )));
    }
    Ok(AlphaFit {
        alpha,
        gamma,
        fit,
        log_branch,
    })
}

pub fn estimate_alpha(f: &FeatureMatrix, beta_hat: f64) -> Result<f64> {
    Ok(fit_alpha_from_counts(&counts_as_f64(f), beta_hat)?.alpha)
}

fn counts_as_f64(f: &FeatureMatrix) -> Vec<f64> {
    f.cum_counts().iter().map(|&l| l as f64).collect()
}

/// Sufficient statistics of the `δ` likelihood: every (node, old feature)
/// observation is summarised by the feature's adoption ratio `c / i` and
/// whether the node adopted it.
#[derive(Debug, Clone, PartialEq)]
pub struct AdoptionStats {
    // (c / i, adopted, declined), ordered by (i, c)
    groups: Vec<(f64, u64, u64)>,
}

impl AdoptionStats {
    pub fn from_matrix(f: &FeatureMatrix) -> Self {
        let mut holders = vec![0u32; f.num_features()];
        let mut groups = Vec::new();
        let mut tally: Vec<(u64, u64)> = Vec::new();
        for (idx, row) in f.rows().enumerate() {
            let i = idx + 1;
            let old = f.cum_count(i - 1);
            if i >= 2 && old > 0 {
                tally.clear();
                tally.resize(i, (0, 0));
                let mut cursor = row.iter().peekable();
                for (k0, &c) in holders[..old].iter().enumerate() {
                    let k = k0 as u32 + 1;
                    while cursor.peek().is_some_and(|&&x| x < k) {
                        cursor.next();
                    }
                    let adopted = cursor.peek().is_some_and(|&&x| x == k);
                    let slot = &mut tally[c as usize];
                    if adopted {
                        slot.0 += 1;
                    } else {
                        slot.1 += 1;
                    }
                }
                for (c, &(a, d)) in tally.iter().enumerate() {
                    if a + d > 0 {
                        groups.push((c as f64 / i as f64, a, d));
                    }
                }
            }
            for &k in row {
                holders[k as usize - 1] += 1;
            }
        }
        AdoptionStats { groups }
    }

    /// Number of (node, old feature) observations.
    pub fn observations(&self) -> u64 {
        self.groups.iter().map(|&(_, a, d)| a + d).sum()
    }

    /// `Σ f ln P + (1 - f) ln(1 - P)` over all observations.
    pub fn loglik(&self, delta: f64) -> f64 {
        let mut total = 0.0;
        for &(ratio, a, d) in &self.groups {
            let p = 0.5 * delta + (1.0 - delta) * ratio;
            if a > 0 {
                total += a as f64 * p.ln();
            }
            if d > 0 {
                total += d as f64 * (1.0 - p).ln();
            }
        }
        total
    }

    /// Derivative of [`loglik`](Self::loglik) in `δ`.
    pub fn score(&self, delta: f64) -> f64 {
        let mut total = 0.0;
        for &(ratio, a, d) in &self.groups {
            let slope = 0.5 - ratio;
            let p = 0.5 * delta + (1.0 - delta) * ratio;
            if a > 0 {
                total += a as f64 * slope / p;
            }
            if d > 0 {
                total -= d as f64 * slope / (1.0 - p);
            }
        }
        total
    }
}

/// Log-likelihood of `δ` given the observed matrix (the `δ`-independent
/// Poisson factors are dropped). Returns `-inf` when an observation has
/// probability zero.
pub fn delta_loglikelihood(f: &FeatureMatrix, delta: f64) -> Result<f64> {
    if !(delta.is_finite() && (0.0..=1.0).contains(&delta)) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(AdoptionStats::from_matrix(f).loglik(delta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaFit {
    pub delta: f64,
    pub loglik: f64,
}

/// Maximises the concave `δ` log-likelihood on `[0, 1]`.
pub fn fit_delta_from_stats(stats: &AdoptionStats) -> Result<DeltaFit> {
    if stats.observations() == 0 {
        return Err(Error::InsufficientData(
            "no old-feature observations (all L_{i-1} = 0)".into(),
        ));
    }
    const TOL: f64 = 1e-10;
    let (s0, s1) = (stats.score(0.0), stats.score(1.0));
    let delta = if s0.is_finite() && s1.is_finite() {
        // concave: the score is non-increasing
        if s0 <= 0.0 {
            0.0
        } else if s1 >= 0.0 {
            1.0
        } else {
            super::optimize::bisect_decreasing(|d| stats.score(d), 0.0, 1.0, TOL)
        }
    } else {
        golden_section_max(|d| stats.loglik(d), 0.0, 1.0, TOL).0
    };
    Ok(DeltaFit {
        delta,
        loglik: stats.loglik(delta),
    })
}

pub fn fit_delta(f: &FeatureMatrix) -> Result<DeltaFit> {
    fit_delta_from_stats(&AdoptionStats::from_matrix(f))
}

pub fn estimate_delta(f: &FeatureMatrix) -> Result<f64> {
    Ok(fit_delta(f)?.delta)
}
