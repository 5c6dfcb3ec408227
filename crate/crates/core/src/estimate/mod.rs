//! Estimators for every model parameter.
//!
//! * `β̂` and `α̂` come from regressions of the cumulative feature count,
//! * `δ̂` maximises the adoption likelihood of old features,
//! * `(K, θ)` are selected from a first-phase link count and one anchor
//!   point of the sigmoid,
//! * `p̂` maximises the triadic-closure likelihood on a phase-labelled graph.

mod features;
mod harness;
mod optimize;
mod regression;
mod sigmoid_fit;
mod triadic;

pub use features::{
    delta_loglikelihood, estimate_alpha, estimate_beta, estimate_delta, fit_alpha_from_counts,
    fit_beta_from_counts, fit_delta, fit_delta_from_stats, AdoptionStats, AlphaFit, BetaFit,
    DeltaFit, BETA_FIT_SKIP_FRACTION, LOG_BRANCH_THRESHOLD,
};
pub use harness::{estimate_features, mse_harness, FeatureEstimates, MseReport};
pub use regression::{ols, LinearFit};
pub use sigmoid_fit::{
    achievable_links, calibrate_theta, first_phase_fraction, fit_k_theta,
    fit_k_theta_from_histogram, KThetaFit, K_MAX, K_MIN,
};
pub use triadic::{estimate_p, fit_p, fit_p_from_stats, p_loglikelihood, ClosureStats, PFit};
