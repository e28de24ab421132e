//! Graded interest judgments from regional judges, aggregated to one mean
//! score per (query, news document, region).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_MIN_JUDGES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    NotRelevant = 0,
    JustOk = 1,
    Interesting = 2,
    VeryInteresting = 3,
}

impl Label {
    pub fn score(self) -> u8 {
        self as u8
    }

    pub fn from_score(score: i64) -> Option<Label> {
        match score {
            0 => Some(Label::NotRelevant),
            1 => Some(Label::JustOk),
            2 => Some(Label::Interesting),
            3 => Some(Label::VeryInteresting),
            _ => None,
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    /// Accepts the display names in any case, with spaces, `_` or `-` between
    /// words or none at all.
    fn from_str(s: &str) -> Result<Self> {
        let folded: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .collect::<String>()
            .to_lowercase();
        match folded.as_str() {
            "veryinteresting" => Ok(Label::VeryInteresting),
            "interesting" => Ok(Label::Interesting),
            "justok" => Ok(Label::JustOk),
            "notrelevant" => Ok(Label::NotRelevant),
            _ => Err(Error::input(format!("unknown label `{s}`"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::VeryInteresting => "Very Interesting",
            Label::Interesting => "Interesting",
            Label::JustOk => "Just OK",
            Label::NotRelevant => "Not Relevant",
        })
    }
}

/// One line of a judgment file. Either `label` or `score` must be given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawJudgment {
    pub query_id: String,
    pub news_id: String,
    pub region: String,
    pub judge_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<i64>,
}

impl RawJudgment {
    /// `None` when the label is unknown, missing, or contradicts the score.
    pub fn resolve_label(&self) -> Option<Label> {
        let from_label = match &self.label {
            Some(s) => Some(s.parse::<Label>().ok()?),
            None => None,
        };
        let from_score = match self.score {
            Some(n) => Some(Label::from_score(n)?),
            None => None,
        };
        match (from_label, from_score) {
            (Some(a), Some(b)) if a != b => None,
            (a, b) => a.or(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JudgmentKey {
    pub query_id: String,
    pub news_id: String,
    pub region: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JudgmentSet<T> {
    pub key: JudgmentKey,
    /// One entry per distinct judge.
    pub labels: Vec<(String, Label)>,
    pub aggregated: Option<T>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AggregateReport {
    pub sets_kept: usize,
    pub sets_dropped: usize,
    pub records_skipped: usize,
}

/// Reads JSON judgment lines. Lines that do not parse are counted, not fatal.
pub fn read_judgments<R: BufRead>(reader: R) -> Result<(Vec<RawJudgment>, usize)> {
    let mut out = Vec::new();
    let mut malformed = 0;
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io("reading judgments", e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RawJudgment>(&line) {
            Ok(r) => out.push(r),
            Err(_) => malformed += 1,
        }
    }
    Ok((out, malformed))
}

/// Groups records by key, keeps each judge's last label, drops sets with fewer
/// than `min_judges` judges, and scores survivors with the mean label score.
pub fn aggregate<T: Real>(
    records: &[RawJudgment],
    min_judges: usize,
) -> Result<(Vec<JudgmentSet<T>>, AggregateReport)> {
    if min_judges == 0 {
        return Err(Error::contract("min_judges must be at least 1"));
    }
    let mut report = AggregateReport::default();
    let mut groups: BTreeMap<JudgmentKey, Vec<(String, Label)>> = BTreeMap::new();
    for rec in records {
        let Some(label) = rec.resolve_label() else {
            report.records_skipped += 1;
            continue;
        };
        let key = JudgmentKey {
            query_id: rec.query_id.clone(),
            news_id: rec.news_id.clone(),
            region: rec.region.clone(),
        };
        let labels = groups.entry(key).or_default();
        match labels.iter_mut().find(|(j, _)| *j == rec.judge_id) {
            Some(slot) => slot.1 = label,
            None => labels.push((rec.judge_id.clone(), label)),
        }
    }
    let mut sets = Vec::new();
    for (key, labels) in groups {
        if labels.len() < min_judges {
            report.sets_dropped += 1;
            continue;
        }
        let total: u32 = labels.iter().map(|(_, l)| u32::from(l.score())).sum();
        let mean = T::from_count(total) / T::from_count(labels.len() as u32);
        sets.push(JudgmentSet {
            key,
            labels,
            aggregated: Some(mean),
        });
    }
    report.sets_kept = sets.len();
    Ok((sets, report))
}

/// Aggregated relevance for one judging region, keyed by (query, news).
#[derive(Debug, Clone, Default)]
pub struct RelevanceTable<T> {
    scores: HashMap<(String, String), T>,
}

impl<T: Real> RelevanceTable<T> {
    /// With `round`, means are rounded to the nearest grade (halves round up).
    pub fn for_region(sets: &[JudgmentSet<T>], region: &str, round: bool) -> Self {
        let scores = sets
            .iter()
            .filter(|s| s.key.region == region)
            .filter_map(|s| {
                let v = s.aggregated?;
                let v = if round { v.round() } else { v };
                Some(((s.key.query_id.clone(), s.key.news_id.clone()), v))
            })
            .collect();
        RelevanceTable { scores }
    }

    pub fn insert(&mut self, query_id: &str, news_id: &str, relevance: T) {
        self.scores
            .insert((query_id.to_string(), news_id.to_string()), relevance);
    }

    pub fn get(&self, query_id: &str, news_id: &str) -> Option<T> {
        self.scores
            .get(&(query_id.to_string(), news_id.to_string()))
            .copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(news: &str, judge: &str, score: i64) -> RawJudgment {
        RawJudgment {
            query_id: "q".into(),
            news_id: news.into(),
            region: "CA".into(),
            judge_id: judge.into(),
            label: None,
            score: Some(score),
        }
    }

    #[test]
    fn label_scores() {
        assert_eq!("Very Interesting".parse::<Label>().unwrap().score(), 3);
        assert_eq!("interesting".parse::<Label>().unwrap().score(), 2);
        assert_eq!("Just OK".parse::<Label>().unwrap().score(), 1);
        assert_eq!("not_relevant".parse::<Label>().unwrap().score(), 0);
        assert!("Boring".parse::<Label>().is_err());
        for l in [
            Label::NotRelevant,
            Label::JustOk,
            Label::Interesting,
            Label::VeryInteresting,
        ] {
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
            assert_eq!(Label::from_score(l.score() as i64), Some(l));
        }
    }

    #[test]
    fn mean_of_three() {
        let r = [rec("n", "a", 3), rec("n", "b", 2), rec("n", "c", 1)];
        let (sets, rep) = aggregate::<f64>(&r, 3).unwrap();
        assert_eq!(sets[0].aggregated, Some(2.0));
        assert_eq!(rep.sets_kept, 1);
    }

    #[test]
    fn two_judges_dropped() {
        let r = [rec("n", "a", 3), rec("n", "b", 2)];
        let (sets, rep) = aggregate::<f64>(&r, 3).unwrap();
        assert!(sets.is_empty());
        assert_eq!(rep.sets_dropped, 1);
    }

    #[test]
    fn all_not_relevant() {
        let r = [
            rec("n", "a", 0),
            rec("n", "b", 0),
            rec("n", "c", 0),
            rec("n", "d", 0),
        ];
        let (sets, _) = aggregate::<f64>(&r, 3).unwrap();
        assert_eq!(sets[0].aggregated, Some(0.0));
    }

    #[test]
    fn duplicate_judge_last_wins() {
        let r = [
            rec("n", "a", 0),
            rec("n", "b", 3),
            rec("n", "a", 3),
            rec("n", "c", 3),
        ];
        let (sets, _) = aggregate::<f64>(&r, 3).unwrap();
        assert_eq!(sets[0].labels.len(), 3);
        assert_eq!(sets[0].aggregated, Some(3.0));
        // a duplicate does not count as an extra judge
        let r = [rec("n", "a", 1), rec("n", "a", 2), rec("n", "b", 2)];
        assert!(aggregate::<f64>(&r, 3).unwrap().0.is_empty());
    }

    #[test]
    fn unknown_labels_skipped() {
        let mut bad = rec("n", "z", 9);
        let mut conflict = rec("n", "y", 1);
        conflict.label = Some("Very Interesting".into());
        let mut worded = rec("n", "x", 0);
        worded.score = None;
        worded.label = Some("Interesting".into());
        let mut missing = rec("n", "w", 0);
        missing.score = None;
        bad.label = None;
        let (sets, rep) = aggregate::<f64>(&[bad, conflict, worded, missing], 1).unwrap();
        assert_eq!(rep.records_skipped, 3);
        assert_eq!(sets[0].aggregated, Some(2.0));
    }

    #[test]
    fn zero_min_judges_rejected() {
        assert!(aggregate::<f64>(&[], 0).is_err());
    }

    #[test]
    fn relevance_table_rounding() {
        let r = [rec("n", "a", 3), rec("n", "b", 2)];
        let (sets, _) = aggregate::<f64>(&r, 2).unwrap();
        let raw = RelevanceTable::for_region(&sets, "CA", false);
        let rounded = RelevanceTable::for_region(&sets, "CA", true);
        assert_eq!(raw.get("q", "n"), Some(2.5));
        assert_eq!(rounded.get("q", "n"), Some(3.0));
        assert!(RelevanceTable::for_region(&sets, "NY", false).is_empty());
    }

    #[test]
    fn read_counts_bad_lines() {
        let text = "{\"query_id\":\"q\",\"news_id\":\"n\",\"region\":\"CA\",\"judge_id\":\"a\",\"label\":\"Just OK\"}\nnope\n\n";
        let (recs, bad) = read_judgments(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(bad, 1);
    }
}
