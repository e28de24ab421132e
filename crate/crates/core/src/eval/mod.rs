//! Ranking evaluation: NDCG@k per ranking, means per method, and the
//! engine-versus-community comparison report.

mod ndcg;
mod report;

pub use ndcg::{
    dcg_at_k, dcg_with, ndcg_at_k, ndcg_of_relevances, ndcg_with, ranked_relevances, Discount,
    Gain, NdcgConfig, DEFAULT_CUTOFFS,
};
pub use report::{read_report_csv, render_table, write_report_csv};

use std::collections::BTreeMap;

use crate::corpus::{Engine, NewsKey};
use crate::error::{Error, Result};
use crate::judgments::RelevanceTable;
use crate::scalar::Real;
use crate::voting::{Provenance, Ranking};

type Groups<T> = BTreeMap<(Engine, Provenance), Vec<(NewsKey, Ranking<T>)>>;

/// What to do with ranked documents that have no aggregated judgment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Score them 0 and count them.
    #[default]
    ZeroFill,
    /// Skip any ranking that contains one.
    RequireComplete,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow<T> {
    pub engine: Engine,
    pub provenance: Provenance,
    pub cutoff: usize,
    pub mean_ndcg: T,
    pub query_count: usize,
    pub better_than_engine: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryDetail<T> {
    pub key: NewsKey,
    pub provenance: Provenance,
    pub cutoff: usize,
    pub ndcg: T,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport<T> {
    pub rows: Vec<ReportRow<T>>,
    pub details: Vec<QueryDetail<T>>,
    /// Unjudged documents scored as 0.
    pub missing_judgments: usize,
    /// Rankings left out: nothing judged, or incomplete under
    /// [`MissingPolicy::RequireComplete`].
    pub skipped_rankings: usize,
}

/// Mean NDCG at every cutoff over rankings of a single method.
///
/// A ranking none of whose documents is judged is never evaluable. The mean is
/// unweighted across rankings; `query_index` for the literal discount follows
/// input order.
pub fn mean_ndcg<T: Real>(
    rankings: &[(NewsKey, Ranking<T>)],
    table: &RelevanceTable<T>,
    cfg: &NdcgConfig,
    policy: MissingPolicy,
) -> Result<EvalReport<T>> {
    let Some((first_key, first)) = rankings.first() else {
        return Err(Error::EmptyReport);
    };
    if rankings
        .iter()
        .any(|(k, r)| r.provenance() != first.provenance() || k.engine != first_key.engine)
    {
        return Err(Error::contract(
            "mean_ndcg expects rankings from a single engine and method",
        ));
    }
    let mut report = EvalReport::default();
    let mut sums = vec![T::zero(); cfg.cutoffs().len()];
    let mut count = 0usize;
    for (key, ranking) in rankings {
        if ranking.is_empty() {
            return Err(Error::contract("cannot score an empty ranking"));
        }
        let (rels, missing) = ranked_relevances(ranking, &key.query_id, table);
        if missing == ranking.len() || (missing > 0 && policy == MissingPolicy::RequireComplete) {
            report.skipped_rankings += 1;
            continue;
        }
        report.missing_judgments += missing;
        count += 1;
        for (sum, &k) in sums.iter_mut().zip(cfg.cutoffs()) {
            let v = ndcg_with(&rels, k, cfg.gain, cfg.discount, count);
            *sum = *sum + v;
            report.details.push(QueryDetail {
                key: key.clone(),
                provenance: ranking.provenance().clone(),
                cutoff: k,
                ndcg: v,
            });
        }
    }
    if count == 0 {
        return Err(Error::EmptyReport);
    }
    let n = T::from_count(count as u32);
    report.rows = sums
        .into_iter()
        .zip(cfg.cutoffs())
        .map(|(sum, &cutoff)| ReportRow {
            engine: first_key.engine.clone(),
            provenance: first.provenance().clone(),
            cutoff,
            mean_ndcg: sum / n,
            query_count: count,
            better_than_engine: false,
        })
        .collect();
    Ok(report)
}

/// Marks each community row that strictly beats the engine row with the same
/// engine and cutoff. Every engine present needs its engine row.
pub fn compare<T: Real>(mut rows: Vec<ReportRow<T>>) -> Result<Vec<ReportRow<T>>> {
    let mut baseline: BTreeMap<(Engine, usize), T> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.provenance == Provenance::Engine) {
        baseline.insert((r.engine.clone(), r.cutoff), r.mean_ndcg);
    }
    for r in rows.iter_mut() {
        if r.provenance == Provenance::Engine {
            r.better_than_engine = false;
            continue;
        }
        let Some(&base) = baseline.get(&(r.engine.clone(), r.cutoff)) else {
            return Err(Error::contract(format!(
                "no engine baseline for {} at NDCG@{}",
                r.engine, r.cutoff
            )));
        };
        r.better_than_engine = r.mean_ndcg > base;
    }
    Ok(rows)
}

/// Scores every ranking, grouped by engine and method, and marks the rows
/// that beat the engine.
pub fn evaluate<T: Real>(
    rankings: &[(NewsKey, Ranking<T>)],
    table: &RelevanceTable<T>,
    cfg: &NdcgConfig,
    policy: MissingPolicy,
) -> Result<EvalReport<T>> {
    let mut groups: Groups<T> = BTreeMap::new();
    for (k, r) in rankings {
        groups
            .entry((k.engine.clone(), r.provenance().clone()))
            .or_default()
            .push((k.clone(), r.clone()));
    }
    let mut out = EvalReport::default();
    for group in groups.values() {
        let part = match mean_ndcg(group, table, cfg, policy) {
            Ok(p) => p,
            Err(Error::EmptyReport) => {
                out.skipped_rankings += group.len();
                continue;
            }
            Err(e) => return Err(e),
        };
        out.rows.extend(part.rows);
        out.details.extend(part.details);
        out.missing_judgments += part.missing_judgments;
        out.skipped_rankings += part.skipped_rankings;
    }
    if out.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    out.rows = compare(out.rows)?;
    Ok(out)
}
