use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use featnet::experiment::write_csv;
use featnet::io::{load_graph, load_matrix};
use featnet::metrics::{
    clustering_coefficient, component_summary, degree_ccdf, reachable_pairs, shared_feature_distributions,
    transitivity,
};

use super::{create_dir, output};

/// Network statistics of a graph.
///
/// Prints clustering, transitivity, the reachable-pairs fraction and a
/// component summary. With --out-dir, also writes `degree_ccdf.csv`,
/// `components.csv` and, given --features, `shared_features.csv`.
#[derive(Debug, clap::Args)]
#[command(args_override_self = true)]
pub struct Args {
    #[arg(long)]
    graph: PathBuf,
    /// Feature matrix of the same nodes, for the shared-feature tables.
    #[arg(long)]
    features: Option<PathBuf>,
    /// Distance horizon for the reachable-pairs fraction.
    #[arg(long, default_value_t = 20)]
    h: u32,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<()> {
    let g = load_graph(&args.graph).with_context(|| format!("cannot read graph {}", args.graph.display()))?;
    let f = match &args.features {
        Some(path) => {
            let f = load_matrix(path).with_context(|| format!("cannot read features {}", path.display()))?;
            if f.n() != g.n() {
                bail!("graph has {} nodes but the feature matrix has {}", g.n(), f.n());
            }
            Some(f)
        }
        None => None,
    };
    let reach = reachable_pairs(&g, args.h);
    let comps = component_summary(&g);

    let mut out = output(None)?;
    writeln!(out, "nodes = {}", g.n())?;
    writeln!(out, "edges = {}", g.num_edges())?;
    writeln!(out, "clustering = {}", clustering_coefficient(&g))?;
    writeln!(out, "transitivity = {}", transitivity(&g))?;
    writeln!(out, "reachable_h{} = {}", args.h, reach.fraction)?;
    writeln!(out, "h_star = {}", reach.h_star)?;
    writeln!(out, "components = {}", comps.count)?;
    writeln!(out, "isolated = {}", comps.isolated)?;
    writeln!(out, "largest_component_nodes = {}", comps.largest_size)?;
    writeln!(out, "largest_component_edges = {}", comps.largest_edges)?;
    writeln!(out, "largest_component_diameter = {}", comps.largest_diameter)?;
    out.flush()?;

    let Some(dir) = &args.out_dir else {
        return Ok(());
    };
    create_dir(dir)?;
    let mut w = output(Some(&dir.join("degree_ccdf.csv")))?;
    writeln!(w, "degree,ccdf")?;
    for (d, frac) in degree_ccdf(&g) {
        writeln!(w, "{d},{frac}")?;
    }
    w.flush()?;

    let mut w = output(Some(&dir.join("components.csv")))?;
    writeln!(w, "component,nodes,edges")?;
    for (c, (size, edges)) in comps.sizes.iter().zip(&comps.edge_counts).enumerate() {
        writeln!(w, "{},{size},{edges}", c + 1)?;
    }
    w.flush()?;

    if let Some(f) = &f {
        let curves = shared_feature_distributions(f, &g)?;
        write_csv(output(Some(&dir.join("shared_features.csv")))?, &curves.rows)?;
    }
    Ok(())
}
