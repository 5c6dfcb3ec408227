//! Stochastic growth of the feature matrix.
//!
//! Node 1 shows `Poi(α)` features. Every later node `i` first adopts each
//! existing feature `k` independently with probability
//! `δ/2 + (1 - δ) · (holders of k among 1..i-1) / i`, then introduces
//! `Poi(α / i^(1-β))` brand-new features.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::matrix::{inclusion_probability_from_count, FeatureMatrix};
use crate::params::ModelParams;
use crate::seed::GenSeed;

/// Mean number of new features of node `i`, `λ_i = α / i^(1-β)`.
/// `λ_1 = α` for every `β`.
pub fn lambda_i(alpha: f64, beta: f64, i: usize) -> f64 {
    alpha / (i as f64).powf(1.0 - beta)
}

fn poisson<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> usize {
    // λ > 0 is guaranteed by ModelParams
    Poisson::new(lambda)
        .expect("positive finite Poisson mean")
        .sample(rng) as usize
}

/// Draws an `n`-node feature matrix.
///
/// Random draws at step `i` happen in a fixed order: one uniform per old
/// feature in index order, then the Poisson count of new features.
///
/// ```
/// use featnet::{generate_features, GenSeed, ModelParams};
/// let params = ModelParams::new(10.0, 0.5, 0.1, 0.0).unwrap();
/// let f = generate_features(200, &params, GenSeed::new(42, 0));
/// assert_eq!(f.n(), 200);
/// f.check_invariants().unwrap();
/// ```
pub fn generate_features(n: usize, params: &ModelParams, seed: GenSeed) -> FeatureMatrix {
    let mut rng = seed.rng();
    let mut matrix = FeatureMatrix::default();
    // holders[k] = nodes so far exhibiting feature k + 1
    let mut holders: Vec<u32> = Vec::new();
    let delta = params.delta();

    for i in 1..=n {
        let mut row = Vec::new();
        if i >= 2 {
            for (k, &count) in holders.iter().enumerate() {
                let prob = inclusion_probability_from_count(count as usize, i, delta);
                if rng.random::<f64>() < prob {
                    row.push(k as u32 + 1);
                }
            }
        }
        let new_count = poisson(&mut rng, lambda_i(params.alpha(), params.beta(), i));
        let first_new = holders.len() as u32 + 1;
        row.extend(first_new..first_new + new_count as u32);
        for &k in &row {
            if (k as usize) > holders.len() {
                holders.push(0);
            }
            holders[k as usize - 1] += 1;
        }
        matrix.push_row(row, new_count);
    }
    matrix
}

/// Difference between the mean adoption fraction of the older half of the
/// features and that of the newer half.
///
/// A feature introduced by node `i_k` can be exhibited by nodes
/// `i_k..=n`; its adoption fraction is the number of holders (introducer
/// included) over that count. Features `1..=⌊L_n/2⌋` form the first half.
/// Small values mean features are spread uniformly over the matrix.
pub fn uniformity_measure(f: &FeatureMatrix) -> Result<f64> {
    let total = f.num_features();
    if total < 2 {
        return Err(Error::InsufficientData(format!(
            "uniformity needs at least 2 features, matrix has {total}"
        )));
    }
    let n = f.n();
    let holders = f.adoption_counts();
    let mut introducer = 1usize;
    let fractions: Vec<f64> = (1..=total)
        .map(|k| {
            while f.cum_count(introducer) < k {
                introducer += 1;
            }
            holders[k - 1] as f64 / (n - introducer + 1) as f64
        })
        .collect();
    let half = total / 2;
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    Ok(mean(&fractions[..half]) - mean(&fractions[half..]))
}
