//! Document records, chronological feature matrices and co-authorship
//! graphs.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgePhase, GraphBuilder, LabeledGraph};
use crate::matrix::FeatureMatrix;

use super::text::{extract_2grams_from, Stopwords};

/// One bibliographic record. Stored one JSON object per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    /// ISO-8601 calendar date, `YYYY-MM-DD`.
    pub entry_date: String,
    pub title: String,
    #[serde(rename = "abstract", default)]
    pub abstract_text: String,
    #[serde(default)]
    pub authors: Vec<String>,
}

impl DocumentRecord {
    pub fn date(&self) -> Result<NaiveDate> {
        NaiveDate::parse_from_str(self.entry_date.trim(), "%Y-%m-%d").map_err(|e| Error::InvalidRecord {
            id: self.id.clone(),
            reason: format!("entry_date {:?} is not a YYYY-MM-DD date ({e})", self.entry_date),
        })
    }
}

/// Distinct 2-grams of the title and the abstract, title first.
pub fn extract_2grams(doc: &DocumentRecord, stopwords: &Stopwords) -> Vec<String> {
    extract_2grams_from([doc.title.as_str(), doc.abstract_text.as_str()], stopwords)
}

/// Reads JSON-lines records. Blank lines are skipped; malformed lines are
/// reported with their line and column.
pub fn read_documents(reader: impl BufRead) -> Result<Vec<DocumentRecord>> {
    let mut docs = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: DocumentRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(idx + 1, e.column(), format!("invalid document record: {e}")))?;
        doc.date().map_err(|e| Error::parse(idx + 1, 1, e.to_string()))?;
        if !ids.insert(doc.id.clone()) {
            return Err(Error::parse(idx + 1, 1, format!("duplicate document id {:?}", doc.id)));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn write_documents(mut writer: impl Write, docs: &[DocumentRecord]) -> Result<()> {
    for doc in docs {
        serde_json::to_writer(&mut writer, doc).map_err(std::io::Error::from)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Permutation putting `docs` in chronological order, ties kept in input
/// order.
pub fn chronological_order(docs: &[DocumentRecord]) -> Result<Vec<usize>> {
    let dates = docs.iter().map(DocumentRecord::date).collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..docs.len()).collect();
    order.sort_by_key(|&i| dates[i]);
    Ok(order)
}

/// A corpus indexed as a feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestedCorpus {
    pub matrix: FeatureMatrix,
    /// Document ids of nodes `1..=n`.
    pub node_ids: Vec<String>,
    /// 2-gram of each feature `1..=L_n`.
    pub features: Vec<String>,
}

/// Builds the left-ordered feature matrix: documents sorted by date (stable),
/// 2-grams numbered in order of first appearance.
pub fn build_feature_matrix(docs: &[DocumentRecord], stopwords: &Stopwords) -> Result<IngestedCorpus> {
    let order = chronological_order(docs)?;
    let grams: Vec<Vec<String>> = order
        .par_iter()
        .map(|&i| extract_2grams(&docs[i], stopwords))
        .collect();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut features = Vec::new();
    let mut rows = Vec::with_capacity(grams.len());
    for doc_grams in grams {
        let mut row = Vec::with_capacity(doc_grams.len());
        for g in doc_grams {
            let next = features.len() as u32 + 1;
            let k = *index.entry(g).or_insert_with_key(|g| {
                features.push(g.clone());
                next
            });
            row.push(k);
        }
        row.sort_unstable();
        rows.push(row);
    }
    Ok(IngestedCorpus {
        matrix: FeatureMatrix::from_rows(rows)?,
        node_ids: order.iter().map(|&i| docs[i].id.clone()).collect(),
        features,
    })
}

/// Harmonises an author string: `Last, First` becomes `First Last`, stray
/// punctuation is removed, case and whitespace are normalised. Initials are
/// not expanded, so `J. J. Anaya` and `Jose Javier Anaya` stay distinct.
pub fn normalize_author(name: &str) -> String {
    let reordered = match name.split_once(',') {
        Some((last, first)) if !first.trim().is_empty() => format!("{} {}", first.trim(), last.trim()),
        _ => name.to_string(),
    };
    let cleaned: String = reordered
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if c.is_alphanumeric() || c.is_whitespace() { c } else { ' ' })
        .collect();
    cleaned.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Links two documents when they share a normalised author. Nodes follow
/// [`chronological_order`]; edges carry [`EdgePhase::Unknown`].
pub fn build_coauthorship_graph(docs: &[DocumentRecord]) -> Result<LabeledGraph> {
    let order = chronological_order(docs)?;
    let mut by_author: HashMap<String, Vec<usize>> = HashMap::new();
    for (node, &i) in order.iter().enumerate() {
        let authors: HashSet<String> = docs[i]
            .authors
            .iter()
            .map(|a| normalize_author(a))
            .filter(|a| !a.is_empty())
            .collect();
        for a in authors {
            by_author.entry(a).or_default().push(node + 1);
        }
    }
    let mut builder = GraphBuilder::new(docs.len());
    let mut groups: Vec<Vec<usize>> = by_author.into_values().collect();
    groups.sort();
    for nodes in groups {
        for (x, &i) in nodes.iter().enumerate() {
            for &j in &nodes[..x] {
                builder.add_edge(i, j, EdgePhase::Unknown)?;
            }
        }
    }
    Ok(builder.build())
}
