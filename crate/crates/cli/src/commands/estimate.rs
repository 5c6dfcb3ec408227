use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use featnet::estimate::{
    first_phase_fraction, fit_alpha_from_counts, fit_beta_from_counts, fit_delta, fit_k_theta, fit_p,
};
use featnet::io::{load_graph, load_matrix, write_report};
use featnet::{EdgePhase, EstimationReport, FeatureMatrix, LabeledGraph};

use super::output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Param {
    Alpha,
    Beta,
    Delta,
    /// Sigmoid steepness and threshold; needs a graph or --ell/--f-star.
    Ktheta,
    /// Triadic-closure probability; needs a phase-labelled graph.
    P,
    All,
}

/// Estimate model parameters from a feature matrix and, optionally, its
/// graph.
///
/// The report lists `key = value` lines followed by one JSON line holding
/// the same estimates and fit diagnostics.
#[derive(Debug, clap::Args)]
#[command(args_override_self = true)]
pub struct Args {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Parameters to estimate.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    which: Vec<Param>,
    /// Similarity at which the sigmoid is anchored.
    #[arg(long, default_value_t = 10)]
    s_star: usize,
    /// Value of the sigmoid at --s-star. Defaults to the fraction of pairs
    /// with that similarity joined by a first-phase edge.
    #[arg(long)]
    f_star: Option<f64>,
    /// First-phase link count. Defaults to the graph's first-phase edges.
    #[arg(long)]
    ell: Option<f64>,
    /// Treat edges without a phase label as first-phase edges.
    #[arg(long)]
    unlabeled_as_first_phase: bool,
    /// Report file; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn relabel_unknown(g: &LabeledGraph) -> Result<LabeledGraph> {
    let edges = g.edges().map(|(i, j, phase)| {
        let phase = if phase == EdgePhase::Unknown { EdgePhase::First } else { phase };
        (i, j, phase)
    });
    Ok(LabeledGraph::from_edges(g.n(), edges)?)
}

fn estimate_ktheta(args: &Args, f: &FeatureMatrix, g: Option<&LabeledGraph>, report: &mut EstimationReport) -> Result<()> {
    let ell = match (args.ell, g) {
        (Some(ell), _) => ell,
        (None, Some(g)) if g.has_phase_labels() => g.count_phase(EdgePhase::First) as f64,
        (None, Some(_)) => bail!(
            "graph has edges without phase labels; pass --ell or --unlabeled-as-first-phase to estimate K and theta"
        ),
        (None, None) => bail!("K and theta need --ell or a phase-labelled --graph"),
    };
    let f_star = match (args.f_star, g) {
        (Some(v), _) => v,
        (None, Some(g)) => first_phase_fraction(f, g, args.s_star)?
            .with_context(|| format!("no node pair shares exactly {} features; pass --f-star", args.s_star))?,
        (None, None) => bail!("K and theta need --f-star or a --graph"),
    };
    let fit = fit_k_theta(f, ell, args.s_star, f_star).context("K/theta selection failed")?;
    report.k_hat = Some(fit.params.k_steep());
    report.theta_hat = Some(fit.params.theta());
    report.set_diagnostic("ktheta_residual", fit.residual);
    report.set_diagnostic("ktheta_roots", fit.roots.len() as f64);
    report.set_diagnostic("ktheta_c", fit.c);
    report.set_diagnostic("ktheta_ell", ell);
    report.set_diagnostic("ktheta_f_star", f_star);
    Ok(())
}

pub fn run(args: Args) -> Result<()> {
    let f = load_matrix(&args.features).with_context(|| format!("cannot read features {}", args.features.display()))?;
    let g = match &args.graph {
        Some(path) => {
            let g = load_graph(path).with_context(|| format!("cannot read graph {}", path.display()))?;
            if g.n() != f.n() {
                bail!("graph has {} nodes but the feature matrix has {}", g.n(), f.n());
            }
            Some(if args.unlabeled_as_first_phase { relabel_unknown(&g)? } else { g })
        }
        None => None,
    };
    let wants = |p: Param| args.which.contains(&p) || args.which.contains(&Param::All);

    let mut report = EstimationReport::default();
    let counts: Vec<f64> = f.cum_counts().iter().map(|&l| l as f64).collect();
    if wants(Param::Alpha) || wants(Param::Beta) {
        let beta = fit_beta_from_counts(&counts).context("beta regression failed")?;
        report.set_diagnostic("beta_r2", beta.fit.r_squared);
        if wants(Param::Beta) {
            report.beta_hat = Some(beta.beta);
        }
        if wants(Param::Alpha) {
            let alpha = fit_alpha_from_counts(&counts, beta.beta).context("alpha regression failed")?;
            report.alpha_hat = Some(alpha.alpha);
            report.set_diagnostic("alpha_r2", alpha.fit.r_squared);
            report.set_diagnostic("alpha_log_branch", f64::from(u8::from(alpha.log_branch)));
        }
    }
    if wants(Param::Delta) {
        let fit = fit_delta(&f).context("delta estimation failed")?;
        report.delta_hat = Some(fit.delta);
        report.set_diagnostic("delta_loglik", fit.loglik);
    }
    if wants(Param::P) {
        let Some(g) = &g else {
            bail!("estimating p needs --graph");
        };
        if !g.has_phase_labels() {
            bail!(
                "cannot estimate p: graph has edges without phase labels \
                 (pass --unlabeled-as-first-phase to treat them as first-phase edges)"
            );
        }
        let fit = fit_p(&f, g).context("p estimation failed")?;
        report.p_hat = Some(fit.p);
        report.set_diagnostic("p_loglik", fit.loglik);
        report.set_diagnostic("p_candidates", fit.candidates as f64);
    }
    if wants(Param::Ktheta) {
        estimate_ktheta(&args, &f, g.as_ref(), &mut report)?;
    }
    report.validate()?;
    let mut w = output(args.out.as_deref())?;
    write_report(&mut w, &report)?;
    w.flush()?;
    Ok(())
}
