//! Reference implementations the crate is checked against. Each one is written
//! for clarity, not speed, and shares no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Frozen NLTK Porter stems (original algorithm mode), word -> stem.
pub fn porter_table() -> BTreeMap<String, String> {
    let text = std::fs::read_to_string(fixture("porter_vocab.tsv")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let (w, s) = l.split_once('\t').unwrap();
            (w.to_string(), s.to_string())
        })
        .collect()
}

pub fn smart_words() -> HashSet<String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/smart_stopwords.txt");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// Whitespace chunks, each cut at a URL scheme, lowercased and split into
/// runs of letters and digits. Scans characters one at a time.
pub fn naive_tokens(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let lower_chunk: Vec<char> = chunk.chars().collect();
        let mut end = lower_chunk.len();
        for i in 0..lower_chunk.len() {
            let rest: String = lower_chunk[i..]
                .iter()
                .collect::<String>()
                .to_ascii_lowercase();
            if rest.starts_with("http://") || rest.starts_with("https://") {
                end = i;
                break;
            }
        }
        let mut cur = String::new();
        for &c in &lower_chunk[..end] {
            if c.is_alphanumeric() {
                cur.extend(c.to_lowercase());
            } else if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
    }
    out
}

/// Terms after stopword and query removal, stemmed through `stems`.
pub fn naive_terms(
    text: &str,
    stop: &HashSet<String>,
    query: &[&str],
    stems: &BTreeMap<String, String>,
) -> Vec<String> {
    let query_stems: Vec<String> = query
        .iter()
        .map(|q| stems.get(*q).cloned().unwrap_or_else(|| q.to_string()))
        .collect();
    naive_tokens(text)
        .into_iter()
        .filter(|t| !stop.contains(t) && !query.contains(&t.as_str()))
        .map(|t| {
            stems
                .get(&t)
                .cloned()
                .unwrap_or_else(|| panic!("no stem for `{t}`"))
        })
        .filter(|s| !query_stems.contains(s))
        .collect()
}

fn count(terms: &[String], term: &str) -> f64 {
    terms.iter().filter(|t| *t == term).count() as f64
}

/// Cosine restricted to the words both term lists contain, computed by
/// recounting every term of the joint vocabulary.
pub fn naive_sim(a: &[String], b: &[String]) -> f64 {
    let mut vocab: Vec<&String> = a.iter().chain(b).collect();
    vocab.sort();
    vocab.dedup();
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for w in vocab {
        let (x, y) = (count(a, w), count(b, w));
        if x > 0.0 && y > 0.0 {
            dot += x * y;
            na += x * x;
            nb += y * y;
        }
    }
    if dot == 0.0 {
        0.0
    } else {
        dot / (na.sqrt() * nb.sqrt())
    }
}

/// Votes for each title: the sum of tweet similarities.
pub fn naive_votes(
    tweets: &[&str],
    titles: &[&str],
    stop: &HashSet<String>,
    query: &[&str],
    stems: &BTreeMap<String, String>,
) -> Vec<f64> {
    titles
        .iter()
        .map(|title| {
            let n = naive_terms(title, stop, query, stems);
            tweets
                .iter()
                .map(|t| naive_sim(&naive_terms(t, stop, query, stems), &n))
                .sum()
        })
        .collect()
}

pub fn naive_dcg(rels: &[f64], k: usize) -> f64 {
    let mut total = 0.0;
    for (i, r) in rels.iter().enumerate().take(k) {
        let position = (i + 1) as f64;
        total += (2f64.powf(*r) - 1.0) / (1.0 + position).log2();
    }
    total
}

pub fn naive_ndcg(rels: &[f64], k: usize) -> f64 {
    let mut ideal = rels.to_vec();
    ideal.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let idcg = naive_dcg(&ideal, k);
    if idcg == 0.0 {
        0.0
    } else {
        naive_dcg(rels, k) / idcg
    }
}

/// First region in table order whose name appears (any case) or whose code
/// appears: as a whole letter run when `loose` is false, anywhere otherwise.
/// Slides a window over the characters instead of tokenizing.
pub fn brute_region<'a>(
    location: &str,
    table: &'a [(String, String)],
    loose: bool,
) -> Option<&'a str> {
    let chars: Vec<char> = location.chars().collect();
    let lower: Vec<char> = location.to_lowercase().chars().collect();
    for (code, name) in table {
        let name: Vec<char> = name.to_lowercase().chars().collect();
        if lower.windows(name.len()).any(|w| w == name.as_slice()) {
            return Some(code);
        }
        let code_chars: Vec<char> = code.chars().collect();
        for i in 0..chars.len().saturating_sub(1) {
            if chars[i..i + 2] != code_chars[..] {
                continue;
            }
            let before = i == 0 || !chars[i - 1].is_alphabetic();
            let after = i + 2 == chars.len() || !chars[i + 2].is_alphabetic();
            if loose || (before && after) {
                return Some(code);
            }
        }
    }
    None
}
