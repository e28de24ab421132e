//! Text normalization: tokenize, drop stopwords and query words, stem, count.

pub mod porter;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use unicode_normalization::UnicodeNormalization;

use crate::corpus::Query;
use crate::error::{Error, Result};

const SMART_STOPWORDS: &str = include_str!("../../data/smart_stopwords.txt");

/// A set of lowercase words removed before stemming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    /// The bundled 571-entry SMART list.
    pub fn smart() -> Self {
        StopwordList::parse(SMART_STOPWORDS)
    }

    pub fn empty() -> Self {
        StopwordList {
            words: HashSet::new(),
        }
    }

    /// One word per line; `#` starts a comment line. Words are lowercased.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.nfc().collect::<String>().to_lowercase())
            .collect();
        StopwordList { words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading stopword list {}", path.display()), e))?;
        Ok(StopwordList::parse(&text))
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

impl FromIterator<String> for StopwordList {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        StopwordList {
            words: iter.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stemmer {
    #[default]
    Porter,
    /// Leaves tokens unchanged.
    Identity,
}

impl Stemmer {
    pub fn stem(self, token: &str) -> String {
        match self {
            Stemmer::Porter => porter::stem(token),
            Stemmer::Identity => token.to_string(),
        }
    }
}

/// Immutable normalization settings, optionally bound to one query.
#[derive(Debug, Clone)]
pub struct Pipeline {
    stopwords: StopwordList,
    stemmer: Stemmer,
    query_terms: HashSet<String>,
    query_stems: HashSet<String>,
}

impl Pipeline {
    pub fn new(stopwords: StopwordList, stemmer: Stemmer) -> Self {
        Pipeline {
            stopwords,
            stemmer,
            query_terms: HashSet::new(),
            query_stems: HashSet::new(),
        }
    }

    /// Same settings, with query words taken from every variant of `query`.
    pub fn for_query(&self, query: &Query) -> Pipeline {
        self.with_query_terms(query.variants().iter().flat_map(|v| tokenize(v)))
    }

    pub fn with_query_terms<I, S>(&self, terms: I) -> Pipeline
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let query_terms: HashSet<String> = terms
            .into_iter()
            .map(|t| t.as_ref().to_lowercase())
            .collect();
        let query_stems = query_terms.iter().map(|t| self.stemmer.stem(t)).collect();
        Pipeline {
            stopwords: self.stopwords.clone(),
            stemmer: self.stemmer,
            query_terms,
            query_stems,
        }
    }

    pub fn stopwords(&self) -> &StopwordList {
        &self.stopwords
    }

    pub fn stemmer(&self) -> Stemmer {
        self.stemmer
    }

    pub fn query_terms(&self) -> &HashSet<String> {
        &self.query_terms
    }

    /// Stemmed term for a token, or `None` when the token is filtered out.
    pub fn term(&self, token: &str) -> Option<String> {
        if token.is_empty() || self.stopwords.contains(token) || self.query_terms.contains(token) {
            return None;
        }
        let stemmed = self.stemmer.stem(token);
        if stemmed.is_empty() || self.query_stems.contains(&stemmed) {
            return None;
        }
        Some(stemmed)
    }

    pub fn vectorize(&self, text: &str) -> TermVector {
        to_vector(text, self)
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline::new(StopwordList::smart(), Stemmer::Porter)
    }
}

/// Sparse term-frequency vector. Every stored count is at least 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermVector {
    weights: BTreeMap<String, u32>,
}

impl TermVector {
    pub fn new() -> Self {
        TermVector::default()
    }

    pub fn add(&mut self, term: impl Into<String>, count: u32) {
        if count > 0 {
            *self.weights.entry(term.into()).or_insert(0) += count;
        }
    }

    pub fn get(&self, term: &str) -> u32 {
        self.weights.get(term).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Entries in term order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.weights.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

impl<S: Into<String>> FromIterator<(S, u32)> for TermVector {
    fn from_iter<I: IntoIterator<Item = (S, u32)>>(iter: I) -> Self {
        let mut v = TermVector::new();
        for (t, c) in iter {
            v.add(t, c);
        }
        v
    }
}

/// Lowercased runs of letters and digits, with URLs removed.
///
/// Input is NFC-normalized first. Inside each whitespace-separated chunk,
/// anything from an `http://` or `https://` prefix to the end of the chunk is
/// a URL and is discarded. `#` and `@` are separators, so hashtag and mention
/// bodies survive as ordinary tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    let text: String = text.nfc().collect();
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let kept = match find_url(chunk) {
            Some(at) => &chunk[..at],
            None => chunk,
        };
        for run in kept.split(|c: char| !c.is_alphanumeric()) {
            if !run.is_empty() {
                tokens.push(run.to_lowercase());
            }
        }
    }
    tokens
}

fn find_url(chunk: &str) -> Option<usize> {
    let lower = chunk.to_ascii_lowercase();
    ["http://", "https://"]
        .iter()
        .filter_map(|scheme| lower.find(scheme))
        .min()
}

pub fn to_vector(text: &str, pipeline: &Pipeline) -> TermVector {
    let mut v = TermVector::new();
    for token in tokenize(text) {
        if let Some(term) = pipeline.term(&token) {
            v.add(term, 1);
        }
    }
    v
}
