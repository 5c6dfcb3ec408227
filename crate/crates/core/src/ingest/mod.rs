//! Document corpora to feature matrices and co-authorship graphs.

mod corpus;
mod text;

pub use corpus::{
    build_coauthorship_graph, build_feature_matrix, chronological_order, extract_2grams,
    normalize_author, read_documents, write_documents, DocumentRecord, IngestedCorpus,
};
pub use text::{extract_2grams_from, normalize_sentence, split_sentences, Stopwords, DEFAULT_STOPWORDS};
