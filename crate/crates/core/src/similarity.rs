//! Pairwise similarity `S_{i,j}` over all earlier nodes.
//!
//! The pair loop dominates network construction, so two layouts are kept:
//! packed bitsets (dense matrices, popcount per pair) and an inverted
//! feature-to-holders index (sparse matrices, cost proportional to the
//! number of shared entries). The cheaper one is picked per matrix.

use rayon::prelude::*;

use crate::matrix::FeatureMatrix;
use crate::params::{phi, SigmoidParams};

const MAX_BITSET_WORDS: usize = 1 << 26;

#[derive(Debug)]
enum Layout {
    Bitset { words: usize, bits: Vec<u64> },
    Inverted { holders: Vec<Vec<u32>> },
}

#[derive(Debug)]
pub struct SimilarityIndex<'a> {
    matrix: &'a FeatureMatrix,
    layout: Layout,
}

impl<'a> SimilarityIndex<'a> {
    pub fn new(matrix: &'a FeatureMatrix) -> Self {
        let n = matrix.n() as f64;
        let words = matrix.num_features().div_ceil(64);
        let bitset_cost = 0.5 * n * n * words.max(1) as f64;
        let inverted_cost: f64 = matrix
            .adoption_counts()
            .iter()
            .map(|&h| 0.5 * (h as f64) * (h as f64))
            .sum::<f64>()
            + matrix.nnz() as f64 * 4.0;
        let layout = if bitset_cost <= inverted_cost && words * matrix.n() <= MAX_BITSET_WORDS {
            let mut bits = vec![0u64; words * matrix.n()];
            for (i, row) in matrix.rows().enumerate() {
                let base = i * words;
                for &k in row {
                    let k = k as usize - 1;
                    bits[base + k / 64] |= 1u64 << (k % 64);
                }
            }
            Layout::Bitset { words, bits }
        } else {
            let mut holders = vec![Vec::new(); matrix.num_features()];
            for (i, row) in matrix.rows().enumerate() {
                for &k in row {
                    holders[k as usize - 1].push(i as u32);
                }
            }
            Layout::Inverted { holders }
        };
        SimilarityIndex { matrix, layout }
    }

    pub fn matrix(&self) -> &FeatureMatrix {
        self.matrix
    }

    /// Sets `out[j] = S_{i,j}` for every `j < i` (0-based node indices) and
    /// truncates `out` to length `i`.
    pub fn fill_earlier(&self, i: usize, out: &mut Vec<u32>) {
        out.clear();
        out.resize(i, 0);
        match &self.layout {
            Layout::Bitset { words, bits } => {
                let row_i = &bits[i * words..(i + 1) * words];
                // only words that node i touches matter
                let used = self
                    .matrix
                    .row(i + 1)
                    .last()
                    .map_or(0, |&k| (k as usize - 1) / 64 + 1);
                for (j, slot) in out.iter_mut().enumerate() {
                    let row_j = &bits[j * words..j * words + used];
                    *slot = row_i[..used]
                        .iter()
                        .zip(row_j)
                        .map(|(a, b)| (a & b).count_ones())
                        .sum();
                }
            }
            Layout::Inverted { holders } => {
                let row = self.matrix.row(i + 1);
                for &k in row {
                    for &j in &holders[k as usize - 1] {
                        if j as usize >= i {
                            break;
                        }
                        out[j as usize] += 1;
                    }
                }
            }
        }
    }

    /// Histogram of `S_{i,j}` over all pairs `j < i`.
    pub fn histogram(&self) -> SimilarityHistogram {
        let n = self.matrix.n();
        let counts = (0..n)
            .into_par_iter()
            .fold(
                || (Vec::<u64>::new(), Vec::<u32>::new()),
                |(mut hist, mut buf), i| {
                    self.fill_earlier(i, &mut buf);
                    for &s in &buf {
                        let s = s as usize;
                        if hist.len() <= s {
                            hist.resize(s + 1, 0);
                        }
                        hist[s] += 1;
                    }
                    (hist, buf)
                },
            )
            .map(|(hist, _)| hist)
            .reduce(Vec::new, |mut a, b| {
                if a.len() < b.len() {
                    a.resize(b.len(), 0);
                }
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            });
        SimilarityHistogram { counts }
    }
}

/// Number of unordered node pairs at each similarity value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimilarityHistogram {
    counts: Vec<u64>,
}

impl SimilarityHistogram {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        SimilarityHistogram { counts }
    }

    pub fn of(matrix: &FeatureMatrix) -> Self {
        SimilarityIndex::new(matrix).histogram()
    }

    /// Pairs with exactly `s` common features.
    pub fn count(&self, s: usize) -> u64 {
        self.counts.get(s).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max_similarity(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }

    /// Non-empty `(s, count)` bins.
    pub fn bins(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(s, &c)| (s, c))
    }

    /// Expected number of first-phase links, `Σ_{i>j} Φ(S_{i,j})`.
    pub fn expected_links(&self, sp: &SigmoidParams) -> f64 {
        self.bins().map(|(s, c)| c as f64 * phi(s as f64, sp)).sum()
    }
}
