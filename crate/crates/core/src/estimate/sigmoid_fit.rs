//! Choosing the sigmoid parameters `(K, θ)` from an observed first-phase
//! link count.
//!
//! This is a selection mechanism rather than an estimator: given the number
//! of first-phase links `ℓ` and one anchor point `Φ(s*) = f*`, it returns the
//! `(K, θ)` consistent with both on the observed feature matrix.

use crate::error::{Error, Result};
use crate::graph::{EdgePhase, LabeledGraph};
use crate::matrix::FeatureMatrix;
use crate::params::{logistic_of_neg, SigmoidParams};
use crate::similarity::{SimilarityHistogram, SimilarityIndex};

use super::optimize::bisect_sign_change;

pub const K_MIN: f64 = 1e-4;
pub const K_MAX: f64 = 1e3;
const GRID_POINTS: usize = 400;

/// Threshold `θ` for which the expected number of first-phase links at
/// steepness `k` equals `ell`.
pub fn calibrate_theta(hist: &SimilarityHistogram, k: f64, ell: f64) -> Result<SigmoidParams> {
    let total = hist.total_pairs() as f64;
    if !(ell > 0.0 && ell < total) {
        return Err(Error::LinkCountOutOfRange {
            ell,
            low: 0.0,
            high: total,
        });
    }
    let expected = |theta: f64| {
        SigmoidParams::new(k, theta).map(|sp| hist.expected_links(&sp) - ell)
    };
    SigmoidParams::new(k, 0.0)?;
    let max_s = hist.max_similarity().unwrap_or(0) as f64;
    let (mut lo, mut hi) = (-1.0, max_s + 1.0);
    let mut step = 1.0 + 10.0 / k;
    for _ in 0..200 {
        if expected(lo)? > 0.0 {
            break;
        }
        lo -= step;
        step *= 2.0;
    }
    step = 1.0 + 10.0 / k;
    for _ in 0..200 {
        if expected(hi)? < 0.0 {
            break;
        }
        hi += step;
        step *= 2.0;
    }
    if !(expected(lo)? > 0.0 && expected(hi)? < 0.0) {
        return Err(Error::NoConvergence(format!(
            "could not bracket theta for K = {k}, ell = {ell}"
        )));
    }
    let (theta, _) = bisect_sign_change(|t| expected(t).unwrap_or(f64::NAN), lo, hi, 1e-9 * ell);
    SigmoidParams::new(k, theta)
}

/// Solution of the `(K, θ)` selection system.
#[derive(Debug, Clone, PartialEq)]
pub struct KThetaFit {
    pub params: SigmoidParams,
    /// `Σ Φ(S_{i,j}) - ℓ` at the returned parameters.
    pub residual: f64,
    /// Every `K` in `[K_MIN, K_MAX]` at which a sign change was resolved,
    /// ascending. The largest is returned in `params`: a second, smaller
    /// root appears when `ℓ` is close to the flat-sigmoid limit `f*·pairs`,
    /// and it belongs to that degenerate plateau.
    pub roots: Vec<f64>,
    /// Intermediate constant `c = K (θ - s*) = ln(1/f* - 1)`.
    pub c: f64,
}

/// Expected first-phase links when `θ` is tied to `K` through
/// `K (θ - s*) = c`.
fn constrained_links(hist: &SimilarityHistogram, k: f64, s_star: f64, c: f64) -> f64 {
    hist.bins()
        .map(|(s, count)| count as f64 * logistic_of_neg(c + k * (s_star - s as f64)))
        .sum()
}

/// Link counts in the limits `K → 0⁺` and `K → ∞` under the constraint.
pub fn achievable_links(hist: &SimilarityHistogram, s_star: usize, f_star: f64) -> (f64, f64) {
    let total = hist.total_pairs() as f64;
    let above: u64 = hist.bins().filter(|&(s, _)| s > s_star).map(|(_, c)| c).sum();
    let at = hist.count(s_star) as f64;
    (f_star * total, above as f64 + f_star * at)
}

pub fn fit_k_theta_from_histogram(
    hist: &SimilarityHistogram,
    ell: f64,
    s_star: usize,
    f_star: f64,
) -> Result<KThetaFit> {
    if !(f_star > 0.0 && f_star < 1.0) {
        return Err(Error::InvalidParameter {
            name: "f_star",
            value: f_star,
            reason: "must lie strictly between 0 and 1",
        });
    }
    let c = (1.0 / f_star - 1.0).ln();
    let s = s_star as f64;
    let g = |k: f64| constrained_links(hist, k, s, c) - ell;

    let ratio = (K_MAX / K_MIN).powf(1.0 / GRID_POINTS as f64);
    let grid: Vec<f64> = (0..=GRID_POINTS).map(|t| K_MIN * ratio.powi(t as i32)).collect();
    let values: Vec<f64> = grid.iter().map(|&k| g(k)).collect();
    let tol = 1e-9 * ell;
    let mut roots = Vec::new();
    for w in 0..GRID_POINTS {
        let (a, b) = (values[w], values[w + 1]);
        if a == 0.0 {
            roots.push(grid[w]);
        } else if a.signum() != b.signum() && b != 0.0 {
            let (k, _) = bisect_sign_change(g, grid[w], grid[w + 1], tol);
            roots.push(k);
        }
    }
    if values[GRID_POINTS] == 0.0 {
        roots.push(K_MAX);
    }
    // The constrained link count need not be monotone in K, so a target
    // outside the two limits can still be reached at an interior K.
    let Some(&k) = roots.last() else {
        let (lim0, lim_inf) = achievable_links(hist, s_star, f_star);
        let (low, high) = (lim0.min(lim_inf), lim0.max(lim_inf));
        if !(ell > low && ell < high) {
            return Err(Error::LinkCountOutOfRange { ell, low, high });
        }
        return Err(Error::NoConvergence(format!(
            "no sign change of the link equation for K in [{K_MIN}, {K_MAX}]"
        )));
    };
    let residual = g(k);
    if residual.abs() > 1e-6 * ell {
        return Err(Error::NoConvergence(format!(
            "link equation residual {residual} exceeds tolerance"
        )));
    }
    Ok(KThetaFit {
        params: SigmoidParams::new(k, s + c / k)?,
        residual,
        roots,
        c,
    })
}

pub fn fit_k_theta(f: &FeatureMatrix, ell: f64, s_star: usize, f_star: f64) -> Result<KThetaFit> {
    fit_k_theta_from_histogram(&SimilarityIndex::new(f).histogram(), ell, s_star, f_star)
}

/// Fraction of node pairs with exactly `s_star` common features that are
/// joined by a first-phase edge; `None` when no pair has that similarity.
pub fn first_phase_fraction(f: &FeatureMatrix, g: &LabeledGraph, s_star: usize) -> Result<Option<f64>> {
    if f.n() != g.n() {
        return Err(Error::InconsistentGraph(format!(
            "graph has {} nodes, feature matrix {}",
            g.n(),
            f.n()
        )));
    }
    let index = SimilarityIndex::new(f);
    let mut buf = Vec::new();
    let (mut pairs, mut linked) = (0u64, 0u64);
    for i in 0..f.n() {
        index.fill_earlier(i, &mut buf);
        for (j, &s) in buf.iter().enumerate() {
            if s as usize == s_star {
                pairs += 1;
                if g.phase(i + 1, j + 1) == Some(EdgePhase::First) {
                    linked += 1;
                }
            }
        }
    }
    Ok((pairs > 0).then(|| linked as f64 / pairs as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::generate_features;
    use crate::{GenSeed, ModelParams};

    fn sample_hist() -> SimilarityHistogram {
        let params = ModelParams::new(10.0, 0.5, 0.1, 0.0).unwrap();
        SimilarityHistogram::of(&generate_features(200, &params, GenSeed::new(3, 0)))
    }

    #[test]
    fn logistic_inversion_constant() {
        let c = (1.0f64 / 0.725 - 1.0).ln();
        assert!((c + 0.9694).abs() < 1e-4);
    }

    #[test]
    fn calibrated_theta_reproduces_link_count() {
        let hist = sample_hist();
        for k in [0.5, 1.0, 4.0, 10.0] {
            let sp = calibrate_theta(&hist, k, 1500.0).unwrap();
            assert!((hist.expected_links(&sp) - 1500.0).abs() < 1e-6 * 1500.0);
        }
        assert!(calibrate_theta(&hist, 1.0, 0.0).is_err());
        assert!(calibrate_theta(&hist, 1.0, hist.total_pairs() as f64).is_err());
    }

    #[test]
    fn fit_plugs_back_into_both_equations() {
        let hist = sample_hist();
        let truth = SigmoidParams::new(1.0, 10.0).unwrap();
        let ell = hist.expected_links(&truth);
        let fit = fit_k_theta_from_histogram(&hist, ell, 10, 0.5).unwrap();
        assert!((fit.params.phi(10.0) - 0.5).abs() < 1e-9);
        assert!((hist.expected_links(&fit.params) - ell).abs() < 1e-6 * ell);
        assert!((fit.params.k_steep() - 1.0).abs() < 1e-6, "{:?}", fit);
        assert!((fit.params.theta() - 10.0).abs() < 1e-6);

        let c = (1.0f64 / 0.725 - 1.0).ln();
        let truth = SigmoidParams::new(0.8, 12.0 + c / 0.8).unwrap();
        let ell = hist.expected_links(&truth);
        let fit = fit_k_theta_from_histogram(&hist, ell, 12, 0.725).unwrap();
        assert!((fit.params.phi(12.0) - 0.725).abs() < 1e-9);
        assert!((hist.expected_links(&fit.params) - ell).abs() < 1e-6 * ell);
        assert!((fit.c + 0.9694).abs() < 1e-4);
    }

    #[test]
    fn rejects_unreachable_targets() {
        let hist = sample_hist();
        assert!(fit_k_theta_from_histogram(&hist, 100.0, 10, 0.0).is_err());
        assert!(fit_k_theta_from_histogram(&hist, 100.0, 10, 1.0).is_err());
        // every pair linked is out of reach for any finite K
        let all = hist.total_pairs() as f64;
        assert!(matches!(
            fit_k_theta_from_histogram(&hist, all, 10, 0.5),
            Err(Error::LinkCountOutOfRange { .. })
        ));
        assert!(matches!(
            fit_k_theta_from_histogram(&hist, 1.0, 10, 0.5),
            Err(Error::LinkCountOutOfRange { .. })
        ));
    }

    #[test]
    fn non_monotone_link_curve_takes_largest_root() {
        // 60 pairs at s = 0 and 100 at s = 11: with f* = 0.5 the curve falls
        // from 80 to about 60.3 near K = 0.31 and then climbs to 100
        let mut counts = vec![0u64; 12];
        counts[0] = 60;
        counts[11] = 100;
        let hist = SimilarityHistogram::from_counts(counts);
        let fit = fit_k_theta_from_histogram(&hist, 70.0, 10, 0.5).unwrap();
        assert_eq!(fit.roots.len(), 2);
        assert!(fit.roots[0] < 0.31 && fit.roots[1] > 0.31);
        assert_eq!(fit.params.k_steep(), fit.roots[1]);
        assert!((hist.expected_links(&fit.params) - 70.0).abs() < 1e-6 * 70.0);
        assert!(fit_k_theta_from_histogram(&hist, 60.0, 10, 0.5).is_err());
    }

    #[test]
    fn limits_match_extreme_k() {
        let hist = sample_hist();
        let (lim0, lim_inf) = achievable_links(&hist, 10, 0.3);
        let c = (1.0f64 / 0.3 - 1.0).ln();
        assert!((constrained_links(&hist, 1e-9, 10.0, c) - lim0).abs() < 1e-3 * lim0);
        assert!((constrained_links(&hist, 1e4, 10.0, c) - lim_inf).abs() < 1e-3 * lim_inf);
    }

    #[test]
    fn first_phase_fraction_counts_pairs() {
        let f = crate::matrix::tests::example();
        let g = LabeledGraph::from_edges(3, [(2, 1, EdgePhase::First), (3, 1, EdgePhase::Second)]).unwrap();
        assert_eq!(first_phase_fraction(&f, &g, 2).unwrap(), Some(1.0 / 3.0));
        assert_eq!(first_phase_fraction(&f, &g, 5).unwrap(), None);
    }
}
