use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use featnet::ingest::{build_coauthorship_graph, build_feature_matrix, read_documents, Stopwords};
use featnet::io::{save_graph, save_matrix};

use super::output;

/// Turn a JSON-lines document corpus into a feature matrix of title and
/// abstract 2-grams and a co-authorship graph.
///
/// Nodes are the documents in date order. Graph edges carry no phase
/// label.
#[derive(Debug, clap::Args)]
#[command(args_override_self = true)]
pub struct Args {
    /// One JSON object per line with `id`, `entry_date` (YYYY-MM-DD),
    /// `title`, `abstract` and `authors`.
    #[arg(long)]
    docs: PathBuf,
    /// Stopword file, one word per line; the built-in list when omitted.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    out_features: PathBuf,
    #[arg(long)]
    out_graph: PathBuf,
    /// Document id of each node, one per line.
    #[arg(long)]
    out_node_ids: Option<PathBuf>,
    /// 2-gram of each feature, one per line.
    #[arg(long)]
    out_vocab: Option<PathBuf>,
}

fn write_lines(path: &std::path::Path, lines: &[String]) -> Result<()> {
    let mut w = output(Some(path))?;
    for line in lines {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: Args) -> Result<()> {
    let file = File::open(&args.docs).with_context(|| format!("cannot open {}", args.docs.display()))?;
    let docs = read_documents(BufReader::new(file)).with_context(|| format!("in {}", args.docs.display()))?;
    let stopwords = match &args.stopwords {
        Some(path) => Stopwords::from_file(path).with_context(|| format!("cannot read stopwords {}", path.display()))?,
        None => Stopwords::default(),
    };
    let corpus = build_feature_matrix(&docs, &stopwords)?;
    let graph = build_coauthorship_graph(&docs)?;
    save_matrix(&args.out_features, &corpus.matrix)
        .with_context(|| format!("cannot write {}", args.out_features.display()))?;
    save_graph(&args.out_graph, &graph).with_context(|| format!("cannot write {}", args.out_graph.display()))?;
    if let Some(path) = &args.out_node_ids {
        write_lines(path, &corpus.node_ids)?;
    }
    if let Some(path) = &args.out_vocab {
        write_lines(path, &corpus.features)?;
    }
    let mut out = output(None)?;
    writeln!(out, "documents = {}", docs.len())?;
    writeln!(out, "features = {}", corpus.matrix.num_features())?;
    writeln!(out, "links = {}", graph.num_edges())?;
    out.flush()?;
    Ok(())
}
