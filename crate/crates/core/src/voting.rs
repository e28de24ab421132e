//! Community votes: every tweet in a slice adds its similarity to each news
//! title, and the engine list is re-sorted by the accumulated votes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{CorpusSlice, Engine, NewsDoc, NewsKey};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::similarity::{cosine_with, SimMode};
use crate::textproc::{Pipeline, TermVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VoteOptions {
    pub sim: SimMode,
    /// Append the snippet to the title when building news vectors.
    pub include_snippet: bool,
}

/// Accumulated votes, parallel to a slice's news list.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteVector<T> {
    scores: Vec<(String, T)>,
    tweet_count: usize,
}

impl<T: Real> VoteVector<T> {
    pub fn new(scores: Vec<(String, T)>, tweet_count: usize) -> Result<Self> {
        if let Some((id, v)) = scores.iter().find(|(_, v)| v.is_nan() || *v < T::zero()) {
            return Err(Error::contract(format!(
                "vote for `{id}` is negative or NaN: {v}"
            )));
        }
        Ok(VoteVector {
            scores,
            tweet_count,
        })
    }

    pub fn scores(&self) -> &[(String, T)] {
        &self.scores
    }

    pub fn votes(&self) -> impl Iterator<Item = T> + '_ {
        self.scores.iter().map(|(_, v)| *v)
    }

    pub fn tweet_count(&self) -> usize {
        self.tweet_count
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

fn news_text<'a>(doc: &'a NewsDoc, opts: &VoteOptions) -> std::borrow::Cow<'a, str> {
    if opts.include_snippet && !doc.snippet.is_empty() {
        format!("{} {}", doc.title, doc.snippet).into()
    } else {
        doc.title.as_str().into()
    }
}

/// Votes of the slice's tweets for each of its news documents.
///
/// Query words are taken from the slice's query, replacing any already bound
/// to `pipeline`. Each tweet and each title is vectorized once; sums run in
/// tweet order.
pub fn vote<T: Real>(
    slice: &CorpusSlice,
    pipeline: &Pipeline,
    opts: &VoteOptions,
) -> Result<VoteVector<T>> {
    if slice.news.is_empty() {
        return Err(Error::EmptySlice {
            query_id: slice.query.id().to_string(),
            engine: slice.engine.to_string(),
            date: slice.date,
        });
    }
    let pipeline = pipeline.for_query(&slice.query);
    let news_vecs: Vec<TermVector> = slice
        .news
        .iter()
        .map(|d| pipeline.vectorize(&news_text(d, opts)))
        .collect();
    let mut totals = vec![T::zero(); news_vecs.len()];
    for tweet in &slice.tweets {
        let tv = pipeline.vectorize(&tweet.text);
        if tv.is_empty() {
            continue;
        }
        for (total, nv) in totals.iter_mut().zip(&news_vecs) {
            *total = *total + cosine_with::<T>(&tv, nv, opts.sim).value();
        }
    }
    let scores = slice
        .news
        .iter()
        .map(|d| d.id.clone())
        .zip(totals)
        .collect();
    VoteVector::new(scores, slice.tweets.len())
}

/// Which method produced a ranking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Engine,
    /// Re-ranked with tweets from this region.
    Ctvm(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Engine => f.write_str("engine"),
            Provenance::Ctvm(r) => write!(f, "ctvm:{r}"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "engine" => Ok(Provenance::Engine),
            Some(("ctvm", region)) if !region.is_empty() => {
                Ok(Provenance::Ctvm(region.to_string()))
            }
            _ => Err(Error::input(format!("unknown provenance `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry<T> {
    pub news_id: String,
    /// 1-based.
    pub position: usize,
    /// Absent for the engine ranking.
    pub vote: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranking<T> {
    provenance: Provenance,
    entries: Vec<RankEntry<T>>,
}

impl<T: Real> Ranking<T> {
    /// Checks positions are 1..k and ids are unique.
    pub fn new(provenance: Provenance, entries: Vec<RankEntry<T>>) -> Result<Self> {
        let mut ids = HashSet::new();
        for (i, e) in entries.iter().enumerate() {
            if e.position != i + 1 {
                return Err(Error::contract(format!(
                    "ranking positions must be 1..{}, found {} at index {i}",
                    entries.len(),
                    e.position
                )));
            }
            if !ids.insert(e.news_id.as_str()) {
                return Err(Error::contract(format!(
                    "news `{}` ranked twice",
                    e.news_id
                )));
            }
        }
        Ok(Ranking {
            provenance,
            entries,
        })
    }

    /// The engine's own order.
    pub fn engine(news: &[NewsDoc]) -> Result<Self> {
        let mut docs: Vec<&NewsDoc> = news.iter().collect();
        docs.sort_by_key(|d| d.original_rank);
        let entries = docs
            .iter()
            .enumerate()
            .map(|(i, d)| RankEntry {
                news_id: d.id.clone(),
                position: i + 1,
                vote: None,
            })
            .collect();
        Ranking::new(Provenance::Engine, entries)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn entries(&self) -> &[RankEntry<T>] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.news_id.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Orders `news` by vote descending; equal votes keep engine order.
pub fn rerank<T: Real>(
    news: &[NewsDoc],
    votes: &VoteVector<T>,
    region: &str,
) -> Result<Ranking<T>> {
    if news.len() != votes.len() {
        return Err(Error::contract(format!(
            "{} votes for {} news documents",
            votes.len(),
            news.len()
        )));
    }
    let mut rows: Vec<(&NewsDoc, T)> = Vec::with_capacity(news.len());
    for (doc, (id, v)) in news.iter().zip(votes.scores()) {
        if &doc.id != id {
            return Err(Error::contract(format!(
                "vote vector is not parallel to news list: `{id}` vs `{}`",
                doc.id
            )));
        }
        rows.push((doc, *v));
    }
    rows.sort_by(|(da, va), (db, vb)| {
        vb.partial_cmp(va)
            .unwrap_or(Ordering::Equal)
            .then(da.original_rank.cmp(&db.original_rank))
    });
    let entries = rows
        .into_iter()
        .enumerate()
        .map(|(i, (d, v))| RankEntry {
            news_id: d.id.clone(),
            position: i + 1,
            vote: Some(v),
        })
        .collect();
    Ranking::new(Provenance::Ctvm(region.to_string()), entries)
}

/// Engine ranking plus one re-ranking per region slice.
///
/// Every slice must carry exactly `news` (same ids, same order).
pub fn four_way<T: Real>(
    news: &[NewsDoc],
    slices: &BTreeMap<String, CorpusSlice>,
    pipeline: &Pipeline,
    opts: &VoteOptions,
) -> Result<BTreeMap<Provenance, Ranking<T>>> {
    let mut ordered: Vec<NewsDoc> = news.to_vec();
    ordered.sort_by_key(|d| d.original_rank);
    let mut out = BTreeMap::new();
    out.insert(Provenance::Engine, Ranking::engine(&ordered)?);
    for (region, slice) in slices {
        if slice.news != ordered {
            return Err(Error::contract(format!(
                "slice for region `{region}` has a different news list"
            )));
        }
        if &slice.region != region {
            return Err(Error::contract(format!(
                "slice keyed `{region}` holds tweets of region `{}`",
                slice.region
            )));
        }
        let votes = vote::<T>(slice, pipeline, opts)?;
        let ranking = rerank(&slice.news, &votes, region)?;
        out.insert(ranking.provenance().clone(), ranking);
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
struct RankingRow {
    query_id: String,
    engine: String,
    date: NaiveDate,
    provenance: String,
    position: usize,
    news_id: String,
    vote: Option<String>,
}

/// Writes rankings as comma-separated rows with a header:
/// `query_id,engine,date,provenance,position,news_id,vote`.
pub fn write_rankings<'a, T, W, I>(out: W, rankings: I) -> Result<()>
where
    T: Real,
    W: Write,
    I: IntoIterator<Item = (&'a NewsKey, &'a Ranking<T>)>,
{
    let mut w = csv::Writer::from_writer(out);
    for (key, ranking) in rankings {
        for e in ranking.entries() {
            w.serialize(RankingRow {
                query_id: key.query_id.clone(),
                engine: key.engine.to_string(),
                date: key.date,
                provenance: ranking.provenance().to_string(),
                position: e.position,
                news_id: e.news_id.clone(),
                vote: e.vote.map(|v| v.to_string()),
            })
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| Error::io("writing rankings", e))
}

/// Inverse of [`write_rankings`]. Rows of one ranking must be contiguous.
pub fn read_rankings<T: Real, R: Read>(input: R) -> Result<Vec<(NewsKey, Ranking<T>)>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out: Vec<(NewsKey, Provenance, Vec<RankEntry<T>>)> = Vec::new();
    for row in rdr.deserialize::<RankingRow>() {
        let row = row.map_err(csv_err)?;
        let key = NewsKey {
            query_id: row.query_id,
            engine: Engine::from(row.engine),
            date: row.date,
        };
        let provenance: Provenance = row.provenance.parse()?;
        let vote = match row.vote.as_deref() {
            None | Some("") => None,
            Some(s) => Some(T::from_f64_lossy(s.parse::<f64>().map_err(|e| {
                Error::input(format!("bad vote `{s}` for `{}`: {e}", row.news_id))
            })?)),
        };
        let entry = RankEntry {
            news_id: row.news_id,
            position: row.position,
            vote,
        };
        match out.last_mut() {
            Some((k, p, entries)) if *k == key && *p == provenance => entries.push(entry),
            _ => out.push((key, provenance, vec![entry])),
        }
    }
    out.into_iter()
        .map(|(k, p, e)| Ok((k, Ranking::new(p, e)?)))
        .collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::input(format!("rankings file: {e}"))
}
