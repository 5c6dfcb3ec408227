//! Plain-text file formats.
//!
//! Feature matrix:
//!
//! ```text
//! n L_n
//! i N_i k1 k2 ...        one line per node, features sorted, 1-based
//! ```
//!
//! Graph (tab separated, phase `1` first, `2` second, `0` unknown):
//!
//! ```text
//! # nodes N
//! i<TAB>j<TAB>phase
//! ```
//!
//! The header is optional when reading (the largest index is used), and a
//! missing phase column reads as `0`.
//!
//! Estimation report: `key = value` lines followed by a single line holding
//! the same content as one JSON object.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{EdgePhase, GraphBuilder, LabeledGraph};
use crate::matrix::FeatureMatrix;
use crate::report::EstimationReport;

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut col = 0;
    line.split_inclusive(char::is_whitespace).filter_map(move |piece| {
        let start = col + 1;
        col += piece.chars().count();
        let token = piece.trim_end();
        (!token.is_empty()).then_some((start, token))
    })
}

fn number<T: std::str::FromStr>(line: usize, (col, tok): (usize, &str), what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("expected {what}, found {tok:?}")))
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

pub fn write_matrix(mut w: impl Write, f: &FeatureMatrix) -> Result<()> {
    writeln!(w, "{} {}", f.n(), f.num_features())?;
    for (idx, row) in f.rows().enumerate() {
        write!(w, "{} {}", idx + 1, f.new_counts()[idx])?;
        for k in row {
            write!(w, " {k}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_matrix(r: impl BufRead) -> Result<FeatureMatrix> {
    let mut lines = r.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = loop {
        match lines.next() {
            None => return Err(Error::parse(1, 1, "empty feature matrix file (expected header `n L_n`)")),
            Some((no, line)) => {
                let line = line?;
                if !is_skippable(&line) {
                    break (no, line);
                }
            }
        }
    };
    let mut head = tokens(&header);
    let n: usize = number(header_line, head.next().unwrap(), "node count n")?;
    let total: usize = number(
        header_line,
        head.next().ok_or_else(|| Error::parse(header_line, header.len() + 1, "missing L_n in header"))?,
        "feature count L_n",
    )?;
    if let Some((col, tok)) = head.next() {
        return Err(Error::parse(header_line, col, format!("unexpected token {tok:?} in header")));
    }

    let mut rows = Vec::with_capacity(n);
    let mut new_counts = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (no, line) in lines {
        let line = line?;
        last_line = no;
        if is_skippable(&line) {
            continue;
        }
        let mut toks = tokens(&line);
        let i: usize = number(no, toks.next().unwrap(), "node index")?;
        if i != rows.len() + 1 {
            return Err(Error::parse(no, 1, format!("expected node {}, found {i}", rows.len() + 1)));
        }
        let count_tok = toks
            .next()
            .ok_or_else(|| Error::parse(no, line.len() + 1, "missing new-feature count N_i"))?;
        let count: usize = number(no, count_tok, "new-feature count N_i")?;
        let mut row: Vec<u32> = Vec::new();
        for tok in toks {
            let k: u32 = number(no, tok, "feature index")?;
            if k == 0 || row.last().is_some_and(|&prev| prev >= k) {
                return Err(Error::parse(no, tok.0, "feature indices must be positive and strictly increasing"));
            }
            row.push(k);
        }
        rows.push(row);
        new_counts.push((no, count));
    }
    if rows.len() != n {
        return Err(Error::parse(last_line + 1, 1, format!("header declares {n} nodes, file has {}", rows.len())));
    }
    let matrix = FeatureMatrix::from_rows(rows)?;
    for (idx, &(no, count)) in new_counts.iter().enumerate() {
        if matrix.new_counts()[idx] != count {
            return Err(Error::parse(
                no,
                1,
                format!("N_{} = {count} does not match the row (implies {})", idx + 1, matrix.new_counts()[idx]),
            ));
        }
    }
    if matrix.num_features() != total {
        return Err(Error::parse(header_line, 1, format!("header declares L_n = {total}, rows give {}", matrix.num_features())));
    }
    Ok(matrix)
}

pub fn write_graph(mut w: impl Write, g: &LabeledGraph) -> Result<()> {
    writeln!(w, "# nodes {}", g.n())?;
    for (i, j, phase) in g.edges() {
        writeln!(w, "{i}\t{j}\t{phase}")?;
    }
    Ok(())
}

pub fn read_graph(r: impl BufRead) -> Result<LabeledGraph> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize, EdgePhase)> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            let mut words = rest.split_whitespace();
            if words.next() == Some("nodes") {
                let tok = words.next().ok_or_else(|| Error::parse(no, line.len() + 1, "missing node count"))?;
                let col = line.find(tok).map_or(1, |c| c + 1);
                declared = Some(number(no, (col, tok), "node count")?);
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let toks: Vec<(usize, &str)> = tokens(&line).collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(Error::parse(no, 1, format!("expected `i j [phase]`, found {} fields", toks.len())));
        }
        let i: usize = number(no, toks[0], "node index")?;
        let j: usize = number(no, toks[1], "node index")?;
        let phase = match toks.get(2) {
            None => EdgePhase::Unknown,
            Some(&tok) => {
                let code: u8 = number(no, tok, "phase code 0, 1 or 2")?;
                EdgePhase::from_code(code)
                    .ok_or_else(|| Error::parse(no, tok.0, format!("phase must be 0, 1 or 2, found {code}")))?
            }
        };
        edges.push((no, i, j, phase));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|e| e.1.max(e.2)).max().unwrap_or(0));
    let mut builder = GraphBuilder::new(n);
    for (no, i, j, phase) in edges {
        match builder.add_edge(i, j, phase) {
            Ok(true) => {}
            Ok(false) => return Err(Error::parse(no, 1, format!("duplicate edge ({i}, {j})"))),
            Err(e) => return Err(Error::parse(no, 1, e.to_string())),
        }
    }
    Ok(builder.build())
}

pub fn write_report(mut w: impl Write, report: &EstimationReport) -> Result<()> {
    report.validate()?;
    let fields = [
        ("alpha_hat", report.alpha_hat),
        ("beta_hat", report.beta_hat),
        ("delta_hat", report.delta_hat),
        ("p_hat", report.p_hat),
        ("k_hat", report.k_hat),
        ("theta_hat", report.theta_hat),
    ];
    for (name, value) in fields {
        if let Some(v) = value {
            writeln!(w, "{name} = {v}")?;
        }
    }
    for (name, v) in &report.diagnostics {
        if v.is_finite() {
            writeln!(w, "diagnostics.{name} = {v}")?;
        }
    }
    let mut json_ready = report.clone();
    json_ready.diagnostics.retain(|_, v| v.is_finite());
    serde_json::to_writer(&mut w, &json_ready).map_err(std::io::Error::from)?;
    writeln!(w)?;
    Ok(())
}

/// Reads the JSON line of a report file; the `key = value` lines are
/// informational.
pub fn read_report(r: impl BufRead) -> Result<EstimationReport> {
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim_start();
        if trimmed.starts_with('{') {
            let offset = line.len() - trimmed.len();
            let report: EstimationReport = serde_json::from_str(trimmed)
                .map_err(|e| Error::parse(idx + 1, offset + e.column(), format!("invalid report JSON: {e}")))?;
            report.validate()?;
            return Ok(report);
        }
    }
    Err(Error::parse(1, 1, "report file has no JSON line"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

pub fn save_matrix(path: impl AsRef<Path>, f: &FeatureMatrix) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_matrix(&mut w, f)?;
    Ok(w.flush()?)
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
    read_matrix(open(path.as_ref())?)
}

pub fn save_graph(path: impl AsRef<Path>, g: &LabeledGraph) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_graph(&mut w, g)?;
    Ok(w.flush()?)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<LabeledGraph> {
    read_graph(open(path.as_ref())?)
}

pub fn save_report(path: impl AsRef<Path>, report: &EstimationReport) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_report(&mut w, report)?;
    Ok(w.flush()?)
}

pub fn load_report(path: impl AsRef<Path>) -> Result<EstimationReport> {
    read_report(open(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::generate_features;
    use crate::matrix::tests::example;
    use crate::{GenSeed, ModelParams};
    use proptest::prelude::*;

    fn matrix_text(f: &FeatureMatrix) -> String {
        let mut buf = Vec::new();
        write_matrix(&mut buf, f).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn parse_err_at<T: std::fmt::Debug>(r: Result<T>) -> (usize, usize) {
        match r {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn example_matrix_text() {
        let text = matrix_text(&example());
        assert_eq!(text, "3 8\n1 3 1 2 3\n2 2 1 3 4 5\n3 3 2 3 4 6 7 8\n");
        assert_eq!(read_matrix(text.as_bytes()).unwrap(), example());
    }

    #[test]
    fn matrix_errors_have_locations() {
        assert_eq!(parse_err_at(read_matrix("".as_bytes())), (1, 1));
        assert_eq!(parse_err_at(read_matrix("2 x\n".as_bytes())), (1, 3));
        assert_eq!(parse_err_at(read_matrix("1 2\n1 2 1 q\n".as_bytes())), (2, 7));
        assert_eq!(parse_err_at(read_matrix("1 2\n1 2 2 1\n".as_bytes())), (2, 7));
        assert_eq!(parse_err_at(read_matrix("2 2\n1 2 1 2\n".as_bytes())).0, 3);
        assert_eq!(parse_err_at(read_matrix("1 2\n1 1 1 2\n".as_bytes())).0, 2);
        assert_eq!(parse_err_at(read_matrix("1 3\n1 2 1 2\n".as_bytes())).0, 1);
        assert_eq!(parse_err_at(read_matrix("1 2\n2 2 1 2\n".as_bytes())).0, 2);
        // a gap in the new-feature block is a left-ordering violation
        assert!(matches!(read_matrix("1 2\n1 2 2\n".as_bytes()), Err(Error::NotLeftOrdered { .. }) | Err(Error::Parse { .. })));
    }

    #[test]
    fn zero_node_matrix() {
        let empty = FeatureMatrix::default();
        assert_eq!(read_matrix(matrix_text(&empty).as_bytes()).unwrap(), empty);
    }

    #[test]
    fn graph_text_and_defaults() {
        let g = LabeledGraph::from_edges(4, [(2, 1, EdgePhase::First), (4, 2, EdgePhase::Second), (3, 1, EdgePhase::Unknown)]).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# nodes 4\n2\t1\t1\n3\t1\t0\n4\t2\t2\n");
        assert_eq!(read_graph(text.as_bytes()).unwrap(), g);

        let bare = read_graph("1 2\n3 2\n".as_bytes()).unwrap();
        assert_eq!(bare.n(), 3);
        assert!(!bare.has_phase_labels());
        assert_eq!(read_graph("".as_bytes()).unwrap().n(), 0);
    }

    #[test]
    fn graph_errors_have_locations() {
        assert_eq!(parse_err_at(read_graph("# nodes 3\n1 2 7\n".as_bytes())), (2, 5));
        assert_eq!(parse_err_at(read_graph("# nodes 3\n1 2\n2 1\n".as_bytes())).0, 3);
        assert_eq!(parse_err_at(read_graph("# nodes 3\n1 4\n".as_bytes())).0, 2);
        assert_eq!(parse_err_at(read_graph("1\n".as_bytes())).0, 1);
        assert_eq!(parse_err_at(read_graph("# nodes x\n".as_bytes())), (1, 9));
    }

    #[test]
    fn report_round_trip() {
        let mut report = EstimationReport {
            alpha_hat: Some(10.125),
            beta_hat: Some(0.5),
            theta_hat: Some(-1.5e-7),
            ..Default::default()
        };
        report.set_diagnostic("beta_r2", 0.999);
        let mut buf = Vec::new();
        write_report(&mut buf, &report).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("alpha_hat = 10.125\nbeta_hat = 0.5\n"));
        assert!(text.contains("diagnostics.beta_r2 = 0.999\n"));
        assert_eq!(read_report(text.as_bytes()).unwrap(), report);
        assert_eq!(parse_err_at(read_report("alpha_hat = 1\n".as_bytes())), (1, 1));
        assert_eq!(parse_err_at(read_report("x\n  {\"alpha_hat\": }\n".as_bytes())).0, 2);
        assert!(read_report("{\"beta_hat\": 3.0}\n".as_bytes()).is_err());
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let f = example();
        save_matrix(dir.path().join("f.txt"), &f).unwrap();
        assert_eq!(load_matrix(dir.path().join("f.txt")).unwrap(), f);
        assert!(matches!(load_matrix(dir.path().join("missing.txt")), Err(Error::Io(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_matrix_round_trips(seed in any::<u64>(), n in 0usize..60, delta in 0.0f64..=1.0) {
            let params = ModelParams::new(3.0, 0.6, delta, 0.0).unwrap();
            let f = generate_features(n, &params, GenSeed::new(seed, 0));
            prop_assert_eq!(read_matrix(matrix_text(&f).as_bytes()).unwrap(), f);
        }

        #[test]
        fn graph_round_trips(n in 1usize..30, raw in proptest::collection::vec((1usize..30, 1usize..30, 0u8..3), 0..80)) {
            let mut b = GraphBuilder::new(n);
            for (i, j, code) in raw {
                let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
                if i != j {
                    b.add_edge(i, j, EdgePhase::from_code(code).unwrap()).unwrap();
                }
            }
            let g = b.build();
            let mut buf = Vec::new();
            write_graph(&mut buf, &g).unwrap();
            prop_assert_eq!(read_graph(buf.as_slice()).unwrap(), g);
        }

        #[test]
        fn report_round_trips(a in proptest::option::of(1e-6f64..1e6), b in proptest::option::of(0.0f64..=1.0),
                              t in proptest::option::of(-1e3f64..1e3), d in -1e9f64..1e9) {
            let mut report = EstimationReport { alpha_hat: a, beta_hat: b, delta_hat: b, p_hat: b, k_hat: a, theta_hat: t, ..Default::default() };
            report.set_diagnostic("x", d);
            let mut buf = Vec::new();
            write_report(&mut buf, &report).unwrap();
            prop_assert_eq!(read_report(buf.as_slice()).unwrap(), report);
        }
    }
}
