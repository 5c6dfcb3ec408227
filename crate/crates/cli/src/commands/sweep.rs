use std::fs::File;
use std::path::PathBuf;

use anyhow::{Context, Result};
use featnet::experiment::{read_grid, write_csv, ExperimentGrid};

use super::output;

/// Simulate every cell of a parameter grid and write one CSV row of
/// aggregated statistics per cell.
///
/// The grid is a CSV file with columns `n,alpha,beta,delta,p,K,theta,ell`
/// where exactly one of `theta` and `ell` is filled in. Lines starting
/// with `#` are ignored.
#[derive(Debug, clap::Args)]
#[command(args_override_self = true)]
pub struct Args {
    #[arg(long)]
    grid: PathBuf,
    #[arg(long, default_value_t = 100)]
    realizations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<()> {
    let file = File::open(&args.grid).with_context(|| format!("cannot open grid {}", args.grid.display()))?;
    let cells = read_grid(file).with_context(|| format!("in {}", args.grid.display()))?;
    let grid = ExperimentGrid {
        cells,
        realizations: args.realizations,
        seed: args.seed,
    };
    let rows = grid.run()?;
    write_csv(output(args.out.as_deref())?, &rows)?;
    Ok(())
}
