//! Two-phase construction of the node-node graph on top of a feature matrix.
//!
//! When node `i` arrives:
//!
//! 1. each earlier node `j` is linked independently with probability
//!    `Φ(S_{i,j})`; these links form the set `L_i*` and are tagged
//!    [`EdgePhase::First`];
//! 2. each earlier node `j ∉ L_i*` is linked with probability
//!    `1 - (1 - p)^{C_{i,j}}`, where `C_{i,j}` counts the neighbours `j` had
//!    before step `i` that are also in `L_i*`. Every such common neighbour
//!    gets one independent `Bernoulli(p)` chance to close the triangle.
//!
//! Second-phase links created at step `i` never feed into other step-`i`
//! decisions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgePhase, LabeledGraph};
use crate::matrix::FeatureMatrix;
use crate::params::{phi, SigmoidParams};
use crate::seed::GenSeed;
use crate::similarity::SimilarityIndex;

/// `1 - (1 - p)^c`: probability that at least one of `c` common neighbours
/// induces the link.
pub fn second_phase_link_probability(c: usize, p: f64) -> f64 {
    match c {
        0 => 0.0,
        1 => p,
        _ => 1.0 - (1.0 - p).powi(c as i32),
    }
}

/// Builds the graph for `f` with sigmoid `sp` and triadic-closure
/// probability `p`.
///
/// Draw order per step `i`: one uniform per earlier node `j` in ascending
/// order (first phase), then for each unlinked `j` with `C_{i,j} > 0` in
/// ascending order, up to `C_{i,j}` uniforms, stopping at the first success.
/// When `p = 0` the second phase consumes no draws.
///
/// ```
/// use featnet::{build_network, generate_features, EdgePhase, GenSeed, ModelParams, SigmoidParams};
/// let params = ModelParams::new(8.0, 0.5, 0.2, 0.3).unwrap();
/// let f = generate_features(100, &params, GenSeed::new(1, 0));
/// let sp = SigmoidParams::new(1.0, 6.0).unwrap();
/// let g = build_network(&f, &sp, params.p(), GenSeed::new(1, 1)).unwrap();
/// assert_eq!(g.count_phase(EdgePhase::Unknown), 0);
/// ```
pub fn build_network(
    f: &FeatureMatrix,
    sp: &SigmoidParams,
    p: f64,
    seed: GenSeed,
) -> Result<LabeledGraph> {
    let index = SimilarityIndex::new(f);
    build_network_with_index(&index, sp, p, seed)
}

/// As [`build_network`], reusing a precomputed similarity index.
pub fn build_network_with_index(
    index: &SimilarityIndex<'_>,
    sp: &SigmoidParams,
    p: f64,
    seed: GenSeed,
) -> Result<LabeledGraph> {
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(build_with_draws(index, sp, p, &mut StreamDraws(seed.rng())))
}

/// Source of the uniforms consumed by the builder, keyed by the decision
/// they serve. The production source ignores the keys and reads a stream.
pub(crate) trait DrawSource {
    fn first(&mut self, i: usize, j: usize) -> f64;
    fn second(&mut self, i: usize, j: usize, attempt: u32) -> f64;
}

struct StreamDraws<R>(R);

impl<R: Rng> DrawSource for StreamDraws<R> {
    fn first(&mut self, _i: usize, _j: usize) -> f64 {
        self.0.random()
    }

    fn second(&mut self, _i: usize, _j: usize, _attempt: u32) -> f64 {
        self.0.random()
    }
}

pub(crate) fn build_with_draws<D: DrawSource>(
    index: &SimilarityIndex<'_>,
    sp: &SigmoidParams,
    p: f64,
    draws: &mut D,
) -> LabeledGraph {
    let f = index.matrix();
    let n = f.n();

    let max_row = f.rows().map(<[u32]>::len).max().unwrap_or(0);
    let phi_table: Vec<f64> = (0..=max_row).map(|s| phi(s as f64, sp)).collect();

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges: Vec<Edge> = Vec::new();
    let mut sims = Vec::new();
    let mut in_first = vec![false; n];
    let mut common = vec![0u32; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut first: Vec<u32> = Vec::new();
    let mut second: Vec<u32> = Vec::new();

    for i in 1..n {
        index.fill_earlier(i, &mut sims);
        first.clear();
        for (j, &s) in sims.iter().enumerate() {
            if draws.first(i, j) < phi_table[s as usize] {
                first.push(j as u32);
            }
        }

        second.clear();
        if p > 0.0 && !first.is_empty() {
            for &m in &first {
                in_first[m as usize] = true;
            }
            // C_{i,j} from neighbours known before step i
            for &m in &first {
                for &j in &adj[m as usize] {
                    let j = j as usize;
                    if in_first[j] {
                        continue;
                    }
                    if common[j] == 0 {
                        touched.push(j as u32);
                    }
                    common[j] += 1;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let c = std::mem::take(&mut common[j as usize]);
                for attempt in 0..c {
                    if draws.second(i, j as usize, attempt) < p {
                        second.push(j);
                        break;
                    }
                }
            }
            touched.clear();
            for &m in &first {
                in_first[m as usize] = false;
            }
        }

        for (list, phase) in [(&first, EdgePhase::First), (&second, EdgePhase::Second)] {
            for &j in list.iter() {
                adj[j as usize].push(i as u32);
                adj[i].push(j);
                edges.push(Edge {
                    hi: i as u32,
                    lo: j,
                    phase,
                });
            }
        }
    }
    LabeledGraph::from_valid_edges(n, edges)
}
