//! End-to-end runs over a whole dataset: every engine result list gets its
//! engine ranking plus one community ranking per region, and each region's
//! judges score all of them.

use std::collections::BTreeMap;

use crate::corpus::{news_keys, slice, NewsDoc, NewsKey, Query, Tweet};
use crate::error::{Error, Result};
use crate::eval::{evaluate, EvalReport, MissingPolicy, NdcgConfig};
use crate::judgments::{JudgmentSet, RelevanceTable};
use crate::scalar::Real;
use crate::textproc::Pipeline;
use crate::voting::{four_way, Provenance, Ranking, VoteOptions};

#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub tweets: Vec<Tweet>,
    pub news: Vec<NewsDoc>,
    pub queries: Vec<Query>,
}

#[derive(Debug, Clone)]
pub struct RankSettings {
    /// Regions whose tweets vote, in output order.
    pub regions: Vec<String>,
    pub pipeline: Pipeline,
    pub vote: VoteOptions,
}

impl Default for RankSettings {
    fn default() -> Self {
        RankSettings {
            regions: ["CA", "NY", "TX"].map(String::from).to_vec(),
            pipeline: Pipeline::default(),
            vote: VoteOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EvalSettings {
    pub policy: MissingPolicy,
    pub round_relevance: bool,
}

/// Rankings for every (query, engine, date) in the news list: engine first,
/// then one per region in `settings.regions` order.
pub fn rank_all<T: Real>(
    data: &Dataset,
    settings: &RankSettings,
) -> Result<Vec<(NewsKey, Ranking<T>)>> {
    let queries: BTreeMap<&str, &Query> = data.queries.iter().map(|q| (q.id(), q)).collect();
    let mut out = Vec::new();
    for key in news_keys(&data.news) {
        let query = queries.get(key.query_id.as_str()).ok_or_else(|| {
            Error::input(format!("news refers to unknown query `{}`", key.query_id))
        })?;
        let mut slices = BTreeMap::new();
        let mut news = Vec::new();
        for region in &settings.regions {
            let s = slice(
                &data.tweets,
                &data.news,
                query,
                &key.engine,
                region,
                key.date,
            )?;
            news.clone_from(&s.news);
            slices.insert(region.clone(), s);
        }
        if settings.regions.is_empty() {
            news = data
                .news
                .iter()
                .filter(|d| {
                    d.query_id == key.query_id
                        && d.engine == key.engine
                        && d.retrieved_date == key.date
                })
                .cloned()
                .collect();
        }
        let mut rankings = four_way::<T>(&news, &slices, &settings.pipeline, &settings.vote)?;
        let engine = rankings
            .remove(&Provenance::Engine)
            .expect("engine ranking always present");
        out.push((key.clone(), engine));
        for region in &settings.regions {
            let r = rankings
                .remove(&Provenance::Ctvm(region.clone()))
                .expect("one ranking per region");
            out.push((key.clone(), r));
        }
    }
    Ok(out)
}

/// One evaluation per judging region that has any usable judgment.
pub fn report<T: Real>(
    rankings: &[(NewsKey, Ranking<T>)],
    judgments: &[JudgmentSet<T>],
    truth_regions: &[String],
    ndcg: &NdcgConfig,
    settings: &EvalSettings,
) -> Result<Vec<(String, EvalReport<T>)>> {
    let mut out = Vec::new();
    for region in truth_regions {
        let table = RelevanceTable::for_region(judgments, region, settings.round_relevance);
        match evaluate(rankings, &table, ndcg, settings.policy) {
            Ok(rep) => out.push((region.clone(), rep)),
            Err(Error::EmptyReport) => continue,
            Err(e) => return Err(e),
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyReport);
    }
    Ok(out)
}
