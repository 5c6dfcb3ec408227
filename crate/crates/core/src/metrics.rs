//! Network and feature statistics: clustering, reachability, degree
//! distribution, connected components and shared-feature curves.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::matrix::FeatureMatrix;
use crate::similarity::SimilarityIndex;

/// Triangle count and `Σ_v C(deg v, 2)`, the number of paths of length two
/// (each triangle contributes three of them).
pub fn triplet_counts(g: &LabeledGraph) -> (u64, u64) {
    let n = g.n();
    let triangles: u64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let nu = g.adj0(u);
            let mut count = 0u64;
            for &v in nu.iter().filter(|&&v| v as usize > u) {
                // common neighbours w > v of u and v
                let nv = g.adj0(v as usize);
                let (mut a, mut b) = (nu.partition_point(|&w| w <= v), nv.partition_point(|&w| w <= v));
                while a < nu.len() && b < nv.len() {
                    match nu[a].cmp(&nv[b]) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            count += 1;
                            a += 1;
                            b += 1;
                        }
                    }
                }
            }
            count
        })
        .sum();
    let connected: u64 = g
        .degrees()
        .iter()
        .map(|&d| (d as u64) * (d as u64).saturating_sub(1) / 2)
        .sum();
    (triangles, connected)
}

/// Clustering coefficient over node triples: among the sets of three nodes
/// joined by at least two edges, the share joined by all three. A triangle
/// is one closed triple and a path of length two with open ends is one open
/// triple. `0` when no such set exists.
///
/// This is lower than [`transitivity`], which counts every triangle three
/// times.
///
/// ```
/// use featnet::{metrics::clustering_coefficient, EdgePhase, LabeledGraph};
/// let triangle = LabeledGraph::from_edges(3, [(2, 1, EdgePhase::First), (3, 1, EdgePhase::First), (3, 2, EdgePhase::Second)]).unwrap();
/// assert_eq!(clustering_coefficient(&triangle), 1.0);
/// ```
pub fn clustering_coefficient(g: &LabeledGraph) -> f64 {
    let (triangles, paths) = triplet_counts(g);
    let open = paths - 3 * triangles;
    if triangles + open == 0 {
        0.0
    } else {
        triangles as f64 / (triangles + open) as f64
    }
}

/// Standard transitivity `3 × triangles / Σ_v C(deg v, 2)`.
pub fn transitivity(g: &LabeledGraph) -> f64 {
    let (triangles, paths) = triplet_counts(g);
    if paths == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / paths as f64
    }
}

/// BFS distances from `src` (0-based), `u32::MAX` for unreachable nodes.
/// Stops expanding past `limit`.
fn bfs(g: &LabeledGraph, src: usize, limit: u32, dist: &mut [u32], queue: &mut VecDeque<u32>) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[src] = 0;
    queue.push_back(src as u32);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        if du >= limit {
            continue;
        }
        for &v in g.adj0(u as usize) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reachability {
    /// Fraction of all `n (n - 1) / 2` node pairs at distance `≤ h`.
    pub fraction: f64,
    /// Largest distance among the pairs counted.
    pub h_star: u32,
    pub pairs: u64,
}

/// Pairs at shortest-path distance at most `h`, over all unordered pairs
/// (isolated nodes included in the denominator).
pub fn reachable_pairs(g: &LabeledGraph, h: u32) -> Reachability {
    let n = g.n();
    let (pairs, h_star) = (0..n)
        .into_par_iter()
        .fold(
            || (0u64, 0u32, vec![0u32; n], VecDeque::new()),
            |(mut pairs, mut h_star, mut dist, mut queue), src| {
                bfs(g, src, h, &mut dist, &mut queue);
                for &d in &dist[src + 1..] {
                    if d != u32::MAX && d <= h {
                        pairs += 1;
                        h_star = h_star.max(d);
                    }
                }
                (pairs, h_star, dist, queue)
            },
        )
        .map(|(p, m, _, _)| (p, m))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    let total = n as u64 * n.saturating_sub(1) as u64 / 2;
    Reachability {
        fraction: if total == 0 { 0.0 } else { pairs as f64 / total as f64 },
        h_star,
        pairs,
    }
}

/// `(d, fraction of nodes with degree ≥ d)` for `d = 0..=max degree`.
pub fn degree_ccdf(g: &LabeledGraph) -> Vec<(usize, f64)> {
    let degrees = g.degrees();
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0u64; max + 1];
    for d in degrees {
        hist[d] += 1;
    }
    let n = g.n().max(1) as f64;
    let mut remaining = g.n() as u64;
    let mut out = Vec::with_capacity(max + 1);
    for (d, &count) in hist.iter().enumerate() {
        out.push((d, if g.n() == 0 { 1.0 } else { remaining as f64 / n }));
        remaining -= count;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub count: usize,
    pub largest_size: usize,
    pub largest_edges: usize,
    pub largest_diameter: u32,
    pub isolated: usize,
    /// Component sizes, descending.
    pub sizes: Vec<usize>,
    /// Edge count of each component, aligned with `sizes`.
    pub edge_counts: Vec<usize>,
}

/// Connected components; the largest is the first one of maximal size in
/// node order.
pub fn component_summary(g: &LabeledGraph) -> ComponentSummary {
    let n = g.n();
    let mut label = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        label[start] = id;
        queue.push_back(start as u32);
        let (mut size, mut degree_sum) = (0usize, 0usize);
        while let Some(u) = queue.pop_front() {
            size += 1;
            degree_sum += g.adj0(u as usize).len();
            for &v in g.adj0(u as usize) {
                if label[v as usize] == u32::MAX {
                    label[v as usize] = id;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
        edges.push(degree_sum / 2);
    }
    let largest = (0..sizes.len()).fold(None, |best: Option<usize>, c| match best {
        Some(b) if sizes[b] >= sizes[c] => Some(b),
        _ => Some(c),
    });
    let (largest_size, largest_edges, largest_diameter) = match largest {
        None => (0, 0, 0),
        Some(c) => {
            let members: Vec<usize> = (0..n).filter(|&v| label[v] == c as u32).collect();
            let diameter = members
                .par_iter()
                .fold(
                    || (0u32, vec![0u32; n], VecDeque::new()),
                    |(mut best, mut dist, mut queue), &src| {
                        bfs(g, src, u32::MAX, &mut dist, &mut queue);
                        for &v in &members {
                            best = best.max(dist[v]);
                        }
                        (best, dist, queue)
                    },
                )
                .map(|(b, _, _)| b)
                .reduce(|| 0, u32::max);
            (sizes[c], edges[c], diameter)
        }
    };
    let isolated = sizes.iter().filter(|&&s| s == 1).count();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    ComponentSummary {
        count: sizes.len(),
        largest_size,
        largest_edges,
        largest_diameter,
        isolated,
        sizes: order.iter().map(|&c| sizes[c]).collect(),
        edge_counts: order.iter().map(|&c| edges[c]).collect(),
    }
}

/// One row of the shared-feature tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharedFeatureRow {
    /// Number of common features.
    pub x: usize,
    pub linked_pairs: u64,
    pub unlinked_pairs: u64,
    /// Share of all linked pairs that have exactly `x` common features.
    pub frac_of_linked: f64,
    /// Share of all unlinked pairs that have exactly `x` common features.
    pub frac_of_unlinked: f64,
    /// Share of the pairs with `x` common features that are linked.
    pub link_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharedFeatureCurves {
    /// Rows for every `x` observed on at least one pair, ascending.
    pub rows: Vec<SharedFeatureRow>,
    pub total_linked: u64,
    pub total_unlinked: u64,
}

/// Distribution of common-feature counts among linked and unlinked pairs,
/// and the empirical link probability at each count.
pub fn shared_feature_distributions(f: &FeatureMatrix, g: &LabeledGraph) -> Result<SharedFeatureCurves> {
    if f.n() != g.n() {
        return Err(Error::InconsistentGraph(format!(
            "graph has {} nodes, feature matrix {}",
            g.n(),
            f.n()
        )));
    }
    let index = SimilarityIndex::new(f);
    let mut counts: Vec<(u64, u64)> = Vec::new();
    let mut buf = Vec::new();
    for i in 0..f.n() {
        index.fill_earlier(i, &mut buf);
        // neighbours of i below i, ascending
        let mut nbrs = g.adj0(i).iter().copied().take_while(|&v| (v as usize) < i).peekable();
        for (j, &s) in buf.iter().enumerate() {
            let s = s as usize;
            if counts.len() <= s {
                counts.resize(s + 1, (0, 0));
            }
            if nbrs.peek() == Some(&(j as u32)) {
                nbrs.next();
                counts[s].0 += 1;
            } else {
                counts[s].1 += 1;
            }
        }
    }
    let total_linked: u64 = counts.iter().map(|c| c.0).sum();
    let total_unlinked: u64 = counts.iter().map(|c| c.1).sum();
    let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let rows = counts
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a + b > 0)
        .map(|(x, &(a, b))| SharedFeatureRow {
            x,
            linked_pairs: a,
            unlinked_pairs: b,
            frac_of_linked: ratio(a, total_linked),
            frac_of_unlinked: ratio(b, total_unlinked),
            link_probability: ratio(a, a + b),
        })
        .collect();
    Ok(SharedFeatureCurves {
        rows,
        total_linked,
        total_unlinked,
    })
}
