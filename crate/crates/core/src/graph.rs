//! Undirected simple graph whose edges remember how they were created.

use std::fmt;

use crate::error::{Error, Result};

/// Provenance of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgePhase {
    /// Observed edge of unknown origin (e.g. an ingested co-authorship link).
    Unknown,
    /// Created by feature similarity; these edges form `A'`.
    First,
    /// Created by triadic closure through common neighbours.
    Second,
}

impl EdgePhase {
    /// Numeric code used in the graph file format.
    pub fn code(self) -> u8 {
        match self {
            EdgePhase::Unknown => 0,
            EdgePhase::First => 1,
            EdgePhase::Second => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(EdgePhase::Unknown),
            1 => Some(EdgePhase::First),
            2 => Some(EdgePhase::Second),
            _ => None,
        }
    }
}

impl fmt::Display for EdgePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Edge between `hi > lo`, stored 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Edge {
    pub hi: u32,
    pub lo: u32,
    pub phase: EdgePhase,
}

/// Undirected simple graph on nodes `1..=n`, each edge tagged with an
/// [`EdgePhase`]. The first-phase edges are the matrix `A'`; all edges
/// together are `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    // sorted neighbour lists, 0-based
    adj: Vec<Vec<u32>>,
    // sorted by (hi, lo)
    edges: Vec<Edge>,
}

impl LabeledGraph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from 1-based `(i, j, phase)` triples. Self-loops,
    /// out-of-range nodes and repeated pairs are errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, EdgePhase)>) -> Result<Self> {
        let mut builder = GraphBuilder::new(n);
        for (i, j, phase) in edges {
            if !builder.add_edge(i, j, phase)? {
                return Err(Error::InvalidEdge {
                    i,
                    j,
                    reason: "duplicate edge",
                });
            }
        }
        Ok(builder.build())
    }

    /// Assembles a graph from 0-based edges that are already known to be valid
    /// and unique.
    pub(crate) fn from_valid_edges(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.hi as usize].push(e.lo);
            adj[e.lo as usize].push(e.hi);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        LabeledGraph { n, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn count_phase(&self, phase: EdgePhase) -> usize {
        self.edges.iter().filter(|e| e.phase == phase).count()
    }

    /// Edges as 1-based `(i, j, phase)` with `i > j`, ordered by `(i, j)`.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize, EdgePhase)> + '_ {
        self.edges
            .iter()
            .map(|e| (e.hi as usize + 1, e.lo as usize + 1, e.phase))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i - 1].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Neighbours of node `i` (1-based), ascending.
    pub fn neighbors(&self, i: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[i - 1].iter().map(|&v| v as usize + 1)
    }

    /// Phase of the edge `{i, j}`, if present.
    pub fn phase(&self, i: usize, j: usize) -> Option<EdgePhase> {
        if i == 0 || j == 0 || i > self.n || j > self.n || i == j {
            return None;
        }
        let (hi, lo) = if i > j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        self.edges
            .binary_search_by(|e| (e.hi, e.lo).cmp(&(hi as u32, lo as u32)))
            .ok()
            .map(|idx| self.edges[idx].phase)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.phase(i, j).is_some()
    }

    /// True when every edge is tagged first- or second-phase.
    pub fn has_phase_labels(&self) -> bool {
        self.edges.iter().all(|e| e.phase != EdgePhase::Unknown)
    }

    /// The subgraph `A'` of first-phase edges, on the same node set.
    pub fn first_phase_subgraph(&self) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.phase == EdgePhase::First)
            .collect();
        LabeledGraph::from_valid_edges(self.n, edges)
    }

    /// The same graph with every edge relabelled.
    pub fn with_uniform_phase(&self, phase: EdgePhase) -> LabeledGraph {
        let edges = self.edges.iter().map(|e| Edge { phase, ..*e }).collect();
        LabeledGraph::from_valid_edges(self.n, edges)
    }

    pub(crate) fn adj0(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }
}

/// Incremental construction of a [`LabeledGraph`] from 1-based edges.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<Edge>,
    seen: std::collections::HashSet<(u32, u32)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
            seen: Default::default(),
        }
    }

    /// Adds `{i, j}`; returns `false` if the pair was already present (the
    /// earlier phase is kept).
    pub fn add_edge(&mut self, i: usize, j: usize, phase: EdgePhase) -> Result<bool> {
        if i == j {
            return Err(Error::InvalidEdge {
                i,
                j,
                reason: "self-loop",
            });
        }
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::InvalidEdge {
                i,
                j,
                reason: "node index out of range",
            });
        }
        let (hi, lo) = if i > j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        let key = (hi as u32, lo as u32);
        if !self.seen.insert(key) {
            return Ok(false);
        }
        self.edges.push(Edge {
            hi: key.0,
            lo: key.1,
            phase,
        });
        Ok(true)
    }

    pub fn build(self) -> LabeledGraph {
        LabeledGraph::from_valid_edges(self.n, self.edges)
    }
}
