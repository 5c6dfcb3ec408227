//! Maximum-likelihood estimate of the triadic-closure probability `p`.
//!
//! Requires phase labels: at every step `i` the first-phase neighbours
//! `L_i*` must be known to count common neighbours `C_{i,j}`. Each
//! candidate `j ∉ L_i*` with `C_{i,j} > 0` contributes a
//! `Bernoulli(1 - (1 - p)^{C_{i,j}})` observation.

use crate::error::{Error, Result};
use crate::graph::{EdgePhase, LabeledGraph};
use crate::matrix::FeatureMatrix;

use super::optimize::golden_section_max;

/// Second-phase candidates grouped by common-neighbour count:
/// `counts[c] = (linked, unlinked)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosureStats {
    counts: Vec<(u64, u64)>,
}

impl ClosureStats {
    pub fn from_graph(g: &LabeledGraph) -> Result<Self> {
        if !g.has_phase_labels() {
            return Err(Error::MissingPhaseLabels);
        }
        let n = g.n();
        let mut in_first = vec![false; n];
        let mut common = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut counts: Vec<(u64, u64)> = Vec::new();
        for i in 0..n {
            let earlier: Vec<u32> = g.adj0(i).iter().copied().take_while(|&v| (v as usize) < i).collect();
            let first: Vec<u32> = earlier
                .iter()
                .copied()
                .filter(|&v| g.phase(i + 1, v as usize + 1) == Some(EdgePhase::First))
                .collect();
            for &v in &first {
                in_first[v as usize] = true;
            }
            for &v in &first {
                for &j in g.adj0(v as usize) {
                    if (j as usize) >= i {
                        break;
                    }
                    if in_first[j as usize] {
                        continue;
                    }
                    if common[j as usize] == 0 {
                        touched.push(j);
                    }
                    common[j as usize] += 1;
                }
            }
            for &j in &earlier {
                if g.phase(i + 1, j as usize + 1) == Some(EdgePhase::Second) && common[j as usize] == 0 {
                    return Err(Error::InconsistentGraph(format!(
                        "second-phase edge ({}, {}) has no first-phase common neighbour",
                        i + 1,
                        j + 1
                    )));
                }
            }
            for &j in &touched {
                let c = common[j as usize] as usize;
                if counts.len() <= c {
                    counts.resize(c + 1, (0, 0));
                }
                // j ∉ L_i*, so any edge to i is second-phase
                if g.has_edge(i + 1, j as usize + 1) {
                    counts[c].0 += 1;
                } else {
                    counts[c].1 += 1;
                }
                common[j as usize] = 0;
            }
            touched.clear();
            for &v in &first {
                in_first[v as usize] = false;
            }
        }
        Ok(ClosureStats { counts })
    }

    /// `(c, linked, unlinked)` for every non-empty `c ≥ 1`.
    pub fn groups(&self) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a + b > 0)
            .map(|(c, &(a, b))| (c, a, b))
    }

    pub fn candidates(&self) -> u64 {
        self.groups().map(|(_, a, b)| a + b).sum()
    }

    pub fn linked(&self) -> u64 {
        self.groups().map(|(_, a, _)| a).sum()
    }

    pub fn loglik(&self, p: f64) -> f64 {
        let log_q = (1.0 - p).ln();
        let mut total = 0.0;
        for (c, linked, unlinked) in self.groups() {
            let c = c as f64;
            if linked > 0 {
                // 1 - q^c, accurate for small p
                let prob = -(c * log_q).exp_m1();
                total += linked as f64 * prob.ln();
            }
            if unlinked > 0 {
                total += unlinked as f64 * c * log_q;
            }
        }
        total
    }
}

/// Log-likelihood of `p` on a phase-labelled graph.
pub fn p_loglikelihood(g: &LabeledGraph, p: f64) -> Result<f64> {
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(ClosureStats::from_graph(g)?.loglik(p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PFit {
    pub p: f64,
    pub loglik: f64,
    pub candidates: u64,
}

pub fn fit_p_from_stats(stats: &ClosureStats) -> Result<PFit> {
    let candidates = stats.candidates();
    if candidates == 0 {
        return Err(Error::NotIdentifiable(
            "no unlinked pair has a first-phase common neighbour".into(),
        ));
    }
    let linked = stats.linked();
    let p = if linked == 0 {
        0.0
    } else if linked == candidates {
        1.0
    } else {
        golden_section_max(|p| stats.loglik(p), 0.0, 1.0, 1e-10).0
    };
    Ok(PFit {
        p,
        loglik: stats.loglik(p),
        candidates,
    })
}

/// Estimates `p` from the feature matrix and its phase-labelled graph.
/// The matrix only fixes the node set; the likelihood depends on the
/// graph alone.
pub fn fit_p(f: &FeatureMatrix, g: &LabeledGraph) -> Result<PFit> {
    if f.n() != g.n() {
        return Err(Error::InconsistentGraph(format!(
            "graph has {} nodes, feature matrix {}",
            g.n(),
            f.n()
        )));
    }
    fit_p_from_stats(&ClosureStats::from_graph(g)?)
}

pub fn estimate_p(f: &FeatureMatrix, g: &LabeledGraph) -> Result<f64> {
    Ok(fit_p(f, g)?.p)
}
