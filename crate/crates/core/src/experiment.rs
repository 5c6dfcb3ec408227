//! Repeated simulation of the full model and parameter sweeps.
//!
//! Seeding: all randomness derives from one root seed. Realization `r` of
//! sweep cell `c` draws its feature matrix from stream `(c << 33) | (r << 1)`
//! and its network from the next stream, so cell `0` reproduces a plain
//! simulation and results do not depend on thread scheduling.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{generate_features, uniformity_measure};
use crate::error::{Error, Result};
use crate::estimate::calibrate_theta;
use crate::graph::{EdgePhase, LabeledGraph};
use crate::matrix::FeatureMatrix;
use crate::metrics::{clustering_coefficient, reachable_pairs};
use crate::network::build_network_with_index;
use crate::params::{ModelParams, SigmoidParams};
use crate::seed::GenSeed;
use crate::similarity::SimilarityIndex;

/// How the sigmoid is chosen for each realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LinkRule {
    Fixed(SigmoidParams),
    /// Steepness `k`; `θ` solved per realization so that the expected
    /// number of first-phase links equals `ell`.
    Calibrated { k: f64, ell: f64 },
}

impl LinkRule {
    pub fn k(&self) -> f64 {
        match self {
            LinkRule::Fixed(sp) => sp.k_steep(),
            LinkRule::Calibrated { k, .. } => *k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n: usize,
    pub params: ModelParams,
    pub link: LinkRule,
    pub realizations: usize,
    pub seed: u64,
    /// Distance horizon of the reachable-pairs statistic.
    pub horizon: u32,
}

impl SimulationConfig {
    pub fn new(n: usize, params: ModelParams, link: LinkRule) -> Self {
        SimulationConfig {
            n,
            params,
            link,
            realizations: 1,
            seed: 0,
            horizon: 20,
        }
    }
}

fn stream(cell: u64, realization: u64, network: bool) -> u64 {
    (cell << 33) | (realization << 1) | network as u64
}

/// Statistics of one simulated realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealizationSummary {
    pub realization: usize,
    pub theta: f64,
    pub features: usize,
    pub mean_row_size: f64,
    pub uniformity: f64,
    pub links: usize,
    pub first_phase_links: usize,
    pub second_phase_links: usize,
    pub clustering: f64,
    pub reachable: f64,
    pub h_star: u32,
}

/// One simulated realization with its inputs.
#[derive(Debug, Clone)]
pub struct Realization {
    pub index: usize,
    pub matrix: FeatureMatrix,
    pub sigmoid: SigmoidParams,
    pub graph: LabeledGraph,
}

impl Realization {
    pub fn summarize(&self, horizon: u32) -> RealizationSummary {
        let f = &self.matrix;
        let g = &self.graph;
        let reach = reachable_pairs(g, horizon);
        RealizationSummary {
            realization: self.index,
            theta: self.sigmoid.theta(),
            features: f.num_features(),
            mean_row_size: if f.n() == 0 { 0.0 } else { f.nnz() as f64 / f.n() as f64 },
            uniformity: uniformity_measure(f).unwrap_or(f64::NAN),
            links: g.num_edges(),
            first_phase_links: g.count_phase(EdgePhase::First),
            second_phase_links: g.count_phase(EdgePhase::Second),
            clustering: clustering_coefficient(g),
            reachable: reach.fraction,
            h_star: reach.h_star,
        }
    }
}

/// Simulates realization `index` of sweep cell `cell`.
pub fn simulate_realization(config: &SimulationConfig, cell: u64, index: usize) -> Result<Realization> {
    let r = index as u64;
    let matrix = generate_features(config.n, &config.params, GenSeed::new(config.seed, stream(cell, r, false)));
    let sim = SimilarityIndex::new(&matrix);
    let sigmoid = match config.link {
        LinkRule::Fixed(sp) => sp,
        LinkRule::Calibrated { k, ell } => calibrate_theta(&sim.histogram(), k, ell)?,
    };
    let graph = build_network_with_index(&sim, &sigmoid, config.params.p(), GenSeed::new(config.seed, stream(cell, r, true)))?;
    drop(sim);
    Ok(Realization {
        index,
        matrix,
        sigmoid,
        graph,
    })
}

/// Runs every realization of `config` (in parallel) and returns their
/// summaries in realization order. `on_realization` sees each realization
/// before it is dropped, e.g. to write it to disk.
pub fn run_simulation<F>(config: &SimulationConfig, cell: u64, on_realization: F) -> Result<Vec<RealizationSummary>>
where
    F: Fn(&Realization) -> Result<()> + Sync,
{
    if config.realizations == 0 {
        return Err(Error::InvalidParameter {
            name: "realizations",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    (0..config.realizations)
        .into_par_iter()
        .map(|r| {
            let realization = simulate_realization(config, cell, r)?;
            on_realization(&realization)?;
            Ok(realization.summarize(config.horizon))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

impl MeanSd {
    /// Mean and sample standard deviation of the finite values; `NaN` when
    /// there are none.
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let xs: Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
        if xs.is_empty() {
            return MeanSd { mean: f64::NAN, sd: f64::NAN };
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let sd = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        MeanSd { mean, sd }
    }

    /// Standard error of the mean for `n` values.
    pub fn se(&self, n: usize) -> f64 {
        self.sd / (n as f64).sqrt()
    }
}

/// Averages over the realizations of one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub realizations: usize,
    pub theta: MeanSd,
    pub features: MeanSd,
    pub mean_row_size: MeanSd,
    pub uniformity: MeanSd,
    pub links: MeanSd,
    pub first_phase_links: MeanSd,
    pub second_phase_links: MeanSd,
    pub clustering: MeanSd,
    pub reachable: MeanSd,
    /// Largest `h*` over the realizations.
    pub h_star_max: u32,
}

pub fn aggregate(summaries: &[RealizationSummary]) -> Aggregate {
    let col = |get: fn(&RealizationSummary) -> f64| MeanSd::of(summaries.iter().map(get));
    Aggregate {
        realizations: summaries.len(),
        theta: col(|s| s.theta),
        features: col(|s| s.features as f64),
        mean_row_size: col(|s| s.mean_row_size),
        uniformity: col(|s| s.uniformity),
        links: col(|s| s.links as f64),
        first_phase_links: col(|s| s.first_phase_links as f64),
        second_phase_links: col(|s| s.second_phase_links as f64),
        clustering: col(|s| s.clustering),
        reachable: col(|s| s.reachable),
        h_star_max: summaries.iter().map(|s| s.h_star).max().unwrap_or(0),
    }
}

/// One row of a sweep grid file. Exactly one of `theta` and `ell` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub p: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub theta: Option<f64>,
    pub ell: Option<f64>,
}

impl GridCell {
    pub fn config(&self, realizations: usize, seed: u64) -> Result<SimulationConfig> {
        let params = ModelParams::new(self.alpha, self.beta, self.delta, self.p)?;
        let link = match (self.theta, self.ell) {
            (Some(theta), None) => LinkRule::Fixed(SigmoidParams::new(self.k, theta)?),
            (None, Some(ell)) => {
                SigmoidParams::new(self.k, 0.0)?;
                LinkRule::Calibrated { k: self.k, ell }
            }
            _ => {
                return Err(Error::InvalidParameter {
                    name: "theta/ell",
                    value: f64::NAN,
                    reason: "exactly one of theta and ell must be given",
                })
            }
        };
        Ok(SimulationConfig {
            realizations,
            seed,
            ..SimulationConfig::new(self.n, params, link)
        })
    }
}

/// Parameter combinations to simulate, each with the same realization count
/// and root seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentGrid {
    pub cells: Vec<GridCell>,
    pub realizations: usize,
    pub seed: u64,
}

/// CSV columns `n,alpha,beta,delta,p,K,theta,ell`; leave `theta` or `ell`
/// empty.
pub fn read_grid(reader: impl Read) -> Result<Vec<GridCell>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    let mut cells = Vec::new();
    for row in rdr.deserialize() {
        let cell: GridCell = row?;
        if cell.theta.is_some() == cell.ell.is_some() {
            return Err(Error::parse(cells.len() + 2, 1, "exactly one of theta and ell must be given"));
        }
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(Error::parse(1, 1, "grid has no cells"));
    }
    Ok(cells)
}

/// One output row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub cell: usize,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub p: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub theta_mean: f64,
    pub realizations: usize,
    pub links_mean: f64,
    pub links_sd: f64,
    pub first_phase_links_mean: f64,
    pub second_phase_links_mean: f64,
    pub clustering_mean: f64,
    pub clustering_sd: f64,
    pub reachable_mean: f64,
    pub reachable_sd: f64,
    pub h_star_max: u32,
    pub features_mean: f64,
    pub uniformity_mean: f64,
}

impl SweepRow {
    pub fn new(cell: usize, config: &SimulationConfig, agg: &Aggregate) -> Self {
        SweepRow {
            cell,
            n: config.n,
            alpha: config.params.alpha(),
            beta: config.params.beta(),
            delta: config.params.delta(),
            p: config.params.p(),
            k: config.link.k(),
            theta_mean: agg.theta.mean,
            realizations: agg.realizations,
            links_mean: agg.links.mean,
            links_sd: agg.links.sd,
            first_phase_links_mean: agg.first_phase_links.mean,
            second_phase_links_mean: agg.second_phase_links.mean,
            clustering_mean: agg.clustering.mean,
            clustering_sd: agg.clustering.sd,
            reachable_mean: agg.reachable.mean,
            reachable_sd: agg.reachable.sd,
            h_star_max: agg.h_star_max,
            features_mean: agg.features.mean,
            uniformity_mean: agg.uniformity.mean,
        }
    }
}

impl ExperimentGrid {
    /// Simulates every cell; cells run one after another, realizations
    /// within a cell in parallel.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.cells
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                let config = cell.config(self.realizations, self.seed)?;
                let summaries = run_simulation(&config, c as u64, |_| Ok(()))?;
                Ok(SweepRow::new(c, &config, &aggregate(&summaries)))
            })
            .collect()
    }
}

pub fn write_csv<T: Serialize>(writer: impl Write, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
