//! Turning free text into 2-gram features.

use std::collections::{BTreeSet, HashSet};
use std::io::BufRead;
use std::path::Path;

use crate::error::Result;

/// Default exclusion list. A 2-gram containing any of these words is not a
/// feature. Entries are stored after the same normalisation applied to the
/// text (`doesn't` becomes `doesnt`).
pub const DEFAULT_STOPWORDS: &[&str] = &[
    "the", "a", "of", "and", "to", "is", "for", "in", "an", "with", "by", "from", "on", "or",
    "that", "at", "be", "which", "are", "as", "one", "may", "it", "and/or", "if", "via", "can",
    "when", "we", "his", "her", "their", "this", "our", "into", "has", "have", "only", "also",
    "do", "does", "presents", "paper", "doesnt", "not",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords::from_words(DEFAULT_STOPWORDS.iter().copied())
    }
}

impl Stopwords {
    /// Normalises every word the way text tokens are normalised; empty
    /// results are dropped.
    pub fn from_words<S: AsRef<str>>(words: impl IntoIterator<Item = S>) -> Self {
        let words = words
            .into_iter()
            .flat_map(|w| normalize_sentence(w.as_ref()))
            .collect();
        Stopwords { words }
    }

    /// One word per line; blank lines and lines starting with `#` are
    /// skipped.
    pub fn from_reader(reader: impl BufRead) -> Result<Self> {
        let mut words = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let word = line.trim();
            if !word.is_empty() && !word.starts_with('#') {
                words.push(word.to_string());
            }
        }
        Ok(Stopwords::from_words(words))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Stopwords::from_reader(std::io::BufReader::new(file))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Splits on `.`, `!` or `?` followed by whitespace or the end of the text.
pub fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((idx, ch)) = chars.next() {
        if matches!(ch, '.' | '!' | '?') {
            let at_boundary = chars.peek().is_none_or(|&(_, next)| next.is_whitespace());
            if at_boundary {
                out.push(&text[start..idx]);
                start = idx + ch.len_utf8();
            }
        }
    }
    out.push(&text[start..]);
    out.retain(|s| !s.trim().is_empty());
    out
}

/// Lowercases, deletes punctuation other than `/` and `.`, and splits on
/// whitespace. Dots at either end of a token are dropped, so only inner
/// dots (`5.9`, `u.s`) survive.
pub fn normalize_sentence(sentence: &str) -> Vec<String> {
    let cleaned: String = sentence
        .chars()
        .flat_map(char::to_lowercase)
        .filter(|&c| c.is_alphanumeric() || c.is_whitespace() || c == '/' || c == '.')
        .collect();
    cleaned
        .split_whitespace()
        .map(|t| t.trim_matches('.'))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn push_grams(text: &str, stopwords: &Stopwords, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
    for sentence in split_sentences(text) {
        let tokens = normalize_sentence(sentence);
        for pair in tokens.windows(2) {
            if stopwords.contains(&pair[0]) || stopwords.contains(&pair[1]) {
                continue;
            }
            let gram = format!("{} {}", pair[0], pair[1]);
            if seen.insert(gram.clone()) {
                out.push(gram);
            }
        }
    }
}

/// Distinct 2-grams of `texts`, in order of first occurrence. Each text is
/// split into sentences separately, so no 2-gram spans two texts or two
/// sentences.
///
/// ```
/// use featnet::ingest::{extract_2grams_from, Stopwords};
/// let grams = extract_2grams_from(["Lane departure warning."], &Stopwords::default());
/// assert_eq!(grams, ["lane departure", "departure warning"]);
/// ```
pub fn extract_2grams_from<'a>(texts: impl IntoIterator<Item = &'a str>, stopwords: &Stopwords) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for text in texts {
        push_grams(text, stopwords, &mut seen, &mut out);
    }
    out
}
