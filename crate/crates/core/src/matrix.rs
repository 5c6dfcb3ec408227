//! Left-ordered binary node-by-feature matrix.
//!
//! Row `i` lists the features exhibited by node `i`. Features are numbered
//! in order of first appearance, so the `N_i` features introduced by node `i`
//! occupy exactly the block `L_{i-1} + 1 ..= L_i`, where `L_i` is the number
//! of distinct features seen among the first `i` nodes.
//!
//! Node and feature indices in the public API are 1-based. Rows are stored
//! sparsely as sorted index lists.

use std::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureMatrix {
    rows: Vec<Vec<u32>>,
    new_counts: Vec<usize>,
    cum_counts: Vec<usize>,
}

impl FeatureMatrix {
    /// Builds a matrix from explicit rows (1-based feature indices) and
    /// checks left-ordering. Rows need not be sorted; duplicates are rejected.
    ///
    /// ```
    /// use featnet::FeatureMatrix;
    /// let f = FeatureMatrix::from_rows(vec![
    ///     vec![1, 2, 3],
    ///     vec![1, 3, 4, 5],
    ///     vec![2, 3, 4, 6, 7, 8],
    /// ]).unwrap();
    /// assert_eq!(f.cum_counts(), &[3, 5, 8]);
    /// assert_eq!(f.new_counts(), &[3, 2, 3]);
    /// ```
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut matrix = FeatureMatrix::default();
        for (idx, mut row) in rows.into_iter().enumerate() {
            let node = idx + 1;
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotLeftOrdered {
                    node,
                    reason: "duplicate feature index".into(),
                });
            }
            if row.first() == Some(&0) {
                return Err(Error::NotLeftOrdered {
                    node,
                    reason: "feature indices are 1-based".into(),
                });
            }
            let prev = matrix.num_features();
            let new_count = row.iter().filter(|&&k| k as usize > prev).count();
            let expected_new = (prev + 1..=prev + new_count).map(|k| k as u32);
            if !row[row.len() - new_count..].iter().copied().eq(expected_new) {
                return Err(Error::NotLeftOrdered {
                    node,
                    reason: format!(
                        "new features must be exactly {}..={}",
                        prev + 1,
                        prev + new_count
                    ),
                });
            }
            matrix.push_row(row, new_count);
        }
        Ok(matrix)
    }

    /// Appends a node. `row` must already be sorted and end with the block of
    /// `new_count` fresh indices.
    pub(crate) fn push_row(&mut self, row: Vec<u32>, new_count: usize) {
        let total = self.num_features() + new_count;
        self.rows.push(row);
        self.new_counts.push(new_count);
        self.cum_counts.push(total);
    }

    /// Number of nodes `n`.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of distinct features `L_n`.
    pub fn num_features(&self) -> usize {
        self.cum_counts.last().copied().unwrap_or(0)
    }

    /// Number of non-zero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Features of node `i` (1-based), sorted ascending.
    ///
    /// # Panics
    /// If `i` is 0 or greater than `n`.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i - 1]
    }

    pub fn get_row(&self, i: usize) -> Option<&[u32]> {
        i.checked_sub(1).and_then(|idx| self.rows.get(idx)).map(Vec::as_slice)
    }

    /// All rows in node order.
    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.rows.iter().map(Vec::as_slice)
    }

    /// `N_1, ..., N_n`.
    pub fn new_counts(&self) -> &[usize] {
        &self.new_counts
    }

    /// `L_1, ..., L_n`.
    pub fn cum_counts(&self) -> &[usize] {
        &self.cum_counts
    }

    /// `L_i` with the convention `L_0 = 0`.
    pub fn cum_count(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.cum_counts[i - 1]
        }
    }

    pub fn contains(&self, i: usize, k: usize) -> bool {
        self.get_row(i)
            .is_some_and(|row| row.binary_search(&(k as u32)).is_ok())
    }

    /// Node that introduced feature `k` (both 1-based).
    pub fn introducer(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.num_features() {
            return None;
        }
        // first i with L_i >= k
        Some(self.cum_counts.partition_point(|&l| l < k) + 1)
    }

    /// Number of nodes exhibiting each feature; index 0 is feature 1.
    pub fn adoption_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_features()];
        for row in &self.rows {
            for &k in row {
                counts[k as usize - 1] += 1;
            }
        }
        counts
    }

    /// Re-checks every structural invariant.
    pub fn check_invariants(&self) -> Result<()> {
        let mut prev = 0usize;
        for (idx, row) in self.rows.iter().enumerate() {
            let node = idx + 1;
            let fail = |reason: String| Err(Error::NotLeftOrdered { node, reason });
            let n_new = self.new_counts[idx];
            if self.cum_counts[idx] != prev + n_new {
                return fail("cumulative count mismatch".into());
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return fail("row not strictly increasing".into());
            }
            if row.first() == Some(&0) {
                return fail("feature index 0".into());
            }
            if row.len() < n_new {
                return fail("row shorter than its new-feature block".into());
            }
            let (old, new) = row.split_at(row.len() - n_new);
            if old.last().is_some_and(|&k| k as usize > prev) {
                return fail("references a feature introduced later".into());
            }
            if !new.iter().map(|&k| k as usize).eq(prev + 1..=prev + n_new) {
                return fail("new features are not the next contiguous block".into());
            }
            prev += n_new;
        }
        Ok(())
    }

    /// Dense 0/1 export, `n` rows by `L_n` columns.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let cols = self.num_features();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0u8; cols];
                for &k in row {
                    dense[k as usize - 1] = 1;
                }
                dense
            })
            .collect()
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::NodeOutOfRange { node: i, n: self.n() })
        } else {
            Ok(())
        }
    }
}

/// Size of the intersection of two sorted index lists.
pub(crate) fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            Ordering::Less => x += 1,
            Ordering::Greater => y += 1,
            Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Number of features nodes `i` and `j` have in common, `S_{i,j}`.
pub fn similarity(f: &FeatureMatrix, i: usize, j: usize) -> Result<usize> {
    f.check_node(i)?;
    f.check_node(j)?;
    Ok(intersection_size(f.row(i), f.row(j)))
}

/// `P_i(k) = δ/2 + (1 - δ) c / i` where `c` is the number of earlier nodes
/// holding the feature.
pub fn inclusion_probability_from_count(count: usize, i: usize, delta: f64) -> f64 {
    0.5 * delta + (1.0 - delta) * count as f64 / i as f64
}

/// Probability that node `i` adopts the old feature `k`, given rows
/// `1..i-1` of `f`. `i` may be `n + 1` to ask about a hypothetical next node.
pub fn inclusion_probability(f: &FeatureMatrix, i: usize, k: usize, delta: f64) -> Result<f64> {
    if !(delta.is_finite() && (0.0..=1.0).contains(&delta)) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must lie in [0, 1]",
        });
    }
    if i < 2 || i > f.n() + 1 {
        return Err(Error::NodeOutOfRange { node: i, n: f.n() });
    }
    if k == 0 || k > f.cum_count(i - 1) {
        return Err(Error::FeatureNotIntroduced { feature: k, node: i });
    }
    let holders = (1..i).filter(|&j| f.contains(j, k)).count();
    Ok(inclusion_probability_from_count(holders, i, delta))
}
