//! Tweet, news and query records; line-delimited JSON ingestion; slicing by
//! (query, engine, region, date).

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geofilter::{resolve_region_with, AbbrevMatch, RegionTable};

pub const DEFAULT_MAX_TWEET_CHARS: usize = 280;

/// A query and the lowercase phrases that count as mentioning it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    id: String,
    variants: Vec<String>,
}

impl Query {
    /// Variants are trimmed and lowercased; at least one must remain non-empty.
    pub fn new<I, S>(id: impl Into<String>, variants: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let id = id.into();
        let mut out = Vec::new();
        for v in variants {
            let v = v.as_ref().trim().to_lowercase();
            if v.is_empty() {
                return Err(Error::input(format!("query `{id}` has an empty variant")));
            }
            if !out.contains(&v) {
                out.push(v);
            }
        }
        if out.is_empty() {
            return Err(Error::input(format!("query `{id}` has no variants")));
        }
        Ok(Query { id, variants: out })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn variants(&self) -> &[String] {
        &self.variants
    }

    /// Case-insensitive substring match of any variant on raw text.
    pub fn matches(&self, text: &str) -> bool {
        let lower = text.to_lowercase();
        self.variants.iter().any(|v| lower.contains(v.as_str()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub user_location: String,
    pub timestamp: DateTime<Utc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
}

impl Tweet {
    pub fn date(&self) -> NaiveDate {
        self.timestamp.date_naive()
    }
}

/// Search engine that produced a news result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum Engine {
    Google,
    Yahoo,
    Other(String),
}

impl From<String> for Engine {
    fn from(s: String) -> Self {
        match s.trim().to_lowercase().as_str() {
            "google" => Engine::Google,
            "yahoo" => Engine::Yahoo,
            other => Engine::Other(other.to_string()),
        }
    }
}

impl From<&str> for Engine {
    fn from(s: &str) -> Self {
        Engine::from(s.to_string())
    }
}

impl From<Engine> for String {
    fn from(e: Engine) -> String {
        e.to_string()
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Google => f.write_str("google"),
            Engine::Yahoo => f.write_str("yahoo"),
            Engine::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewsDoc {
    pub id: String,
    pub query_id: String,
    pub engine: Engine,
    pub original_rank: u32,
    pub title: String,
    #[serde(default)]
    pub snippet: String,
    pub retrieved_date: NaiveDate,
}

/// Counts from one ingestion pass.
///
/// `accepted` includes the tweets whose region could not be resolved;
/// `region_unresolved` is that subset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub accepted: usize,
    pub region_unresolved: usize,
    pub duplicates_dropped: usize,
    pub malformed_dropped: usize,
}

impl IngestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IngestOptions {
    pub max_text_chars: usize,
    pub abbrev: AbbrevMatch,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            max_text_chars: DEFAULT_MAX_TWEET_CHARS,
            abbrev: AbbrevMatch::Token,
        }
    }
}

/// Reads one JSON tweet per line.
///
/// Region comes from the record's own `region` field when that names a table
/// entry (re-reading an ingested file), otherwise from the user location.
/// Blank lines are ignored. Lines that fail to parse, are not UTF-8, have blank
/// text, or exceed the length limit are counted as malformed. Only a read
/// failure on the stream itself is an error.
pub fn ingest_tweets<R: BufRead>(
    reader: R,
    regions: &RegionTable,
    opts: &IngestOptions,
) -> Result<(Vec<Tweet>, IngestReport)> {
    let mut report = IngestReport::default();
    let mut seen = HashSet::new();
    let mut tweets = Vec::new();
    for line in reader.split(b'\n') {
        let line = line.map_err(|e| Error::io("reading tweet stream", e))?;
        let Ok(line) = std::str::from_utf8(&line) else {
            report.malformed_dropped += 1;
            continue;
        };
        if line.trim().is_empty() {
            continue;
        }
        let Ok(mut tweet) = serde_json::from_str::<Tweet>(line) else {
            report.malformed_dropped += 1;
            continue;
        };
        if tweet.text.trim().is_empty() || tweet.text.chars().count() > opts.max_text_chars {
            report.malformed_dropped += 1;
            continue;
        }
        if !seen.insert(tweet.id.clone()) {
            report.duplicates_dropped += 1;
            continue;
        }
        tweet.region = match tweet.region.take().filter(|r| regions.contains(r)) {
            Some(r) => Some(r),
            None => {
                resolve_region_with(&tweet.user_location, regions, opts.abbrev).map(str::to_string)
            }
        };
        if tweet.region.is_none() {
            report.region_unresolved += 1;
        }
        report.accepted += 1;
        tweets.push(tweet);
    }
    Ok((tweets, report))
}

pub fn write_tweets<W: Write>(mut out: W, tweets: &[Tweet]) -> Result<()> {
    for t in tweets {
        let line = serde_json::to_string(t).expect("tweet serializes");
        writeln!(out, "{line}").map_err(|e| Error::io("writing tweets", e))?;
    }
    Ok(())
}

fn read_json_lines<T, R>(reader: R, what: &str) -> Result<Vec<T>>
where
    T: for<'de> Deserialize<'de>,
    R: BufRead,
{
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(format!("reading {what}"), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| Error::input(format!("{what} line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

/// Reads one JSON news record per line and checks rank contiguity per
/// (query, engine, date). News files are small and hand-curated, so any bad
/// line is fatal.
pub fn read_news<R: BufRead>(reader: R) -> Result<Vec<NewsDoc>> {
    let news: Vec<NewsDoc> = read_json_lines(reader, "news")?;
    let mut ids = HashSet::new();
    for doc in &news {
        if doc.title.trim().is_empty() {
            return Err(Error::input(format!(
                "news `{}` has an empty title",
                doc.id
            )));
        }
        if doc.original_rank == 0 {
            return Err(Error::input(format!("news `{}` has rank 0", doc.id)));
        }
        if !ids.insert(doc.id.as_str()) {
            return Err(Error::input(format!("duplicate news id `{}`", doc.id)));
        }
    }
    for key in news_keys(&news) {
        let mut ranks: Vec<u32> = news
            .iter()
            .filter(|d| {
                d.query_id == key.query_id && d.engine == key.engine && d.retrieved_date == key.date
            })
            .map(|d| d.original_rank)
            .collect();
        ranks.sort_unstable();
        if ranks.iter().zip(1..).any(|(&r, want)| r != want) {
            return Err(Error::input(format!(
                "news ranks for query `{}` / {} / {} are not 1..{}",
                key.query_id,
                key.engine,
                key.date,
                ranks.len()
            )));
        }
    }
    Ok(news)
}

#[derive(Deserialize)]
struct QueryRecord {
    id: String,
    variants: Vec<String>,
}

pub fn read_queries<R: BufRead>(reader: R) -> Result<Vec<Query>> {
    let recs: Vec<QueryRecord> = read_json_lines(reader, "queries")?;
    let mut seen = HashSet::new();
    recs.into_iter()
        .map(|r| {
            if !seen.insert(r.id.clone()) {
                return Err(Error::input(format!("duplicate query id `{}`", r.id)));
            }
            Query::new(r.id, r.variants)
        })
        .collect()
}

/// Identifies one engine result list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewsKey {
    pub query_id: String,
    pub engine: Engine,
    pub date: NaiveDate,
}

/// Distinct result lists present in `news`, sorted.
pub fn news_keys(news: &[NewsDoc]) -> Vec<NewsKey> {
    let mut keys: Vec<NewsKey> = news
        .iter()
        .map(|d| NewsKey {
            query_id: d.query_id.clone(),
            engine: d.engine.clone(),
            date: d.retrieved_date,
        })
        .collect();
    keys.sort();
    keys.dedup();
    keys
}

/// Everything one vote vector is computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSlice {
    pub query: Query,
    pub engine: Engine,
    pub region: String,
    pub date: NaiveDate,
    /// Sorted by timestamp, then id.
    pub tweets: Vec<Tweet>,
    /// Sorted by original rank.
    pub news: Vec<NewsDoc>,
}

impl CorpusSlice {
    pub fn key(&self) -> NewsKey {
        NewsKey {
            query_id: self.query.id.clone(),
            engine: self.engine.clone(),
            date: self.date,
        }
    }
}

/// Selects the tweets and engine results for one (query, engine, region, date).
///
/// A tweet is kept when its region equals `region`, its UTC day equals `date`
/// and its text contains a query variant. Having no tweets is fine; having no
/// news is [`Error::EmptySlice`].
pub fn slice(
    tweets: &[Tweet],
    news: &[NewsDoc],
    query: &Query,
    engine: &Engine,
    region: &str,
    date: NaiveDate,
) -> Result<CorpusSlice> {
    let mut picked_news: Vec<NewsDoc> = news
        .iter()
        .filter(|d| d.query_id == query.id && &d.engine == engine && d.retrieved_date == date)
        .cloned()
        .collect();
    if picked_news.is_empty() {
        return Err(Error::EmptySlice {
            query_id: query.id.clone(),
            engine: engine.to_string(),
            date,
        });
    }
    picked_news.sort_by_key(|d| d.original_rank);

    let mut picked: Vec<Tweet> = tweets
        .iter()
        .filter(|t| {
            t.region.as_deref() == Some(region) && t.date() == date && query.matches(&t.text)
        })
        .cloned()
        .collect();
    picked.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.id.cmp(&b.id)));

    Ok(CorpusSlice {
        query: query.clone(),
        engine: engine.clone(),
        region: region.to_string(),
        date,
        tweets: picked,
        news: picked_news,
    })
}
