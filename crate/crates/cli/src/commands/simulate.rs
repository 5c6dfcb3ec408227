use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{bail, Context, Result};
use featnet::estimate::first_phase_fraction;
use featnet::experiment::{aggregate, run_simulation, write_csv, Aggregate, LinkRule, MeanSd, SimulationConfig};
use featnet::io::{save_graph, save_matrix};
use featnet::{ModelParams, SigmoidParams};

use super::{create_dir, output};

/// Simulate feature matrices and networks.
///
/// Writes `features.txt` and `graph.tsv` (or `features_<r>.txt` and
/// `graph_<r>.tsv` for several realizations), `summary.csv` with one row
/// per realization and, for more than one realization, `aggregate.csv`
/// with means and standard deviations. The aggregate table is also
/// printed.
#[derive(Debug, clap::Args)]
#[command(args_override_self = true)]
pub struct Args {
    /// Number of nodes.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    delta: f64,
    /// Triadic-closure probability per common neighbour.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Sigmoid steepness.
    #[arg(long = "K", value_name = "K")]
    k: f64,
    /// Sigmoid threshold.
    #[arg(long, conflicts_with = "ell", required_unless_present = "ell")]
    theta: Option<f64>,
    /// Expected number of first-phase links; theta is solved for in each
    /// realization.
    #[arg(long)]
    ell: Option<f64>,
    /// Also report the fraction of pairs with this many common features
    /// that are linked in the first phase.
    #[arg(long)]
    s_star: Option<usize>,
    #[arg(long, default_value_t = 1)]
    realizations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Distance horizon for the reachable-pairs fraction.
    #[arg(long, default_value_t = 20)]
    horizon: u32,
    #[arg(long, env = "FEATNET_OUT_DIR", default_value = "featnet-out")]
    out_dir: PathBuf,
}

fn file_names(dir: &Path, r: usize, total: usize) -> (PathBuf, PathBuf) {
    if total == 1 {
        return (dir.join("features.txt"), dir.join("graph.tsv"));
    }
    let width = (total - 1).to_string().len();
    (
        dir.join(format!("features_{r:0width$}.txt")),
        dir.join(format!("graph_{r:0width$}.tsv")),
    )
}

pub(crate) fn aggregate_rows(agg: &Aggregate) -> Vec<(&'static str, MeanSd)> {
    vec![
        ("theta", agg.theta),
        ("features", agg.features),
        ("mean_row_size", agg.mean_row_size),
        ("uniformity", agg.uniformity),
        ("links", agg.links),
        ("first_phase_links", agg.first_phase_links),
        ("second_phase_links", agg.second_phase_links),
        ("clustering", agg.clustering),
        ("reachable", agg.reachable),
    ]
}

fn write_aggregate(mut w: impl Write, agg: &Aggregate, f_star: Option<MeanSd>) -> Result<()> {
    writeln!(w, "metric,mean,sd")?;
    for (name, v) in aggregate_rows(agg) {
        writeln!(w, "{name},{},{}", v.mean, v.sd)?;
    }
    if let Some(v) = f_star {
        writeln!(w, "f_star,{},{}", v.mean, v.sd)?;
    }
    writeln!(w, "h_star_max,{},", agg.h_star_max)?;
    w.flush()?;
    Ok(())
}

pub fn run(args: Args) -> Result<()> {
    if args.realizations == 0 {
        bail!("--realizations must be at least 1");
    }
    let params = ModelParams::new(args.alpha, args.beta, args.delta, args.p)?;
    let link = match (args.theta, args.ell) {
        (Some(theta), None) => LinkRule::Fixed(SigmoidParams::new(args.k, theta)?),
        (None, Some(ell)) => {
            SigmoidParams::new(args.k, 0.0)?;
            LinkRule::Calibrated { k: args.k, ell }
        }
        _ => bail!("give exactly one of --theta and --ell"),
    };
    let config = SimulationConfig {
        realizations: args.realizations,
        seed: args.seed,
        horizon: args.horizon,
        ..SimulationConfig::new(args.n, params, link)
    };
    create_dir(&args.out_dir)?;

    let f_stars = Mutex::new(vec![f64::NAN; args.realizations]);
    let summaries = run_simulation(&config, 0, |real| {
        let (fp, gp) = file_names(&args.out_dir, real.index, args.realizations);
        save_matrix(&fp, &real.matrix)?;
        save_graph(&gp, &real.graph)?;
        if let Some(s) = args.s_star {
            let value = first_phase_fraction(&real.matrix, &real.graph, s)?.unwrap_or(f64::NAN);
            f_stars.lock().expect("f* table")[real.index] = value;
        }
        Ok(())
    })
    .with_context(|| format!("simulation into {} failed", args.out_dir.display()))?;

    let summary_path = args.out_dir.join("summary.csv");
    write_csv(output(Some(&summary_path))?, &summaries)?;
    if args.s_star.is_some() {
        let values = f_stars.into_inner().expect("f* table");
        let mut w = output(Some(&args.out_dir.join("f_star.csv")))?;
        writeln!(w, "realization,f_star")?;
        for (r, v) in values.iter().enumerate() {
            writeln!(w, "{r},{v}")?;
        }
        w.flush()?;
        if args.realizations > 1 {
            let agg = aggregate(&summaries);
            let fs = Some(MeanSd::of(values));
            write_aggregate(output(Some(&args.out_dir.join("aggregate.csv")))?, &agg, fs)?;
            write_aggregate(output(None)?, &agg, fs)?;
            return Ok(());
        }
    } else if args.realizations > 1 {
        let agg = aggregate(&summaries);
        write_aggregate(output(Some(&args.out_dir.join("aggregate.csv")))?, &agg, None)?;
        write_aggregate(output(None)?, &agg, None)?;
        return Ok(());
    }
    write_csv(output(None)?, &summaries)?;
    Ok(())
}
