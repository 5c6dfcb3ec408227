//! Growing feature-structure network model.
//!
//! Nodes arrive one at a time. Each node adopts features introduced by
//! earlier nodes (with tunable preferential attachment) and brings a
//! Poisson number of new ones; it then links to earlier nodes with a
//! probability that grows with the number of shared features, and closes
//! triangles through common neighbours.
//!
//! The crate generates feature matrices and graphs from the dynamics,
//! estimates every parameter back from data, computes the network
//! statistics used to compare simulated and observed networks, and ingests
//! document corpora into feature matrices and co-authorship graphs.

pub mod dynamics;
pub mod error;
pub mod estimate;
pub mod experiment;
pub mod graph;
pub mod ingest;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod network;
pub mod params;
pub mod report;
pub mod seed;
pub mod similarity;

pub use dynamics::{generate_features, lambda_i, uniformity_measure};
pub use error::{Error, Result};
pub use graph::{EdgePhase, GraphBuilder, LabeledGraph};
pub use matrix::{inclusion_probability, similarity, FeatureMatrix};
pub use network::{build_network, second_phase_link_probability};
pub use params::{phi, ModelParams, SigmoidParams};
pub use report::EstimationReport;
pub use seed::GenSeed;
pub use similarity::{SimilarityHistogram, SimilarityIndex};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/features.md")]
    mod features {}
    #[doc = include_str!("../../../book/src/network.md")]
    mod network {}
    #[doc = include_str!("../../../book/src/estimation.md")]
    mod estimation {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/ingestion.md")]
    mod ingestion {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
