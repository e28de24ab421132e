//! Re-ranks a news engine's results by how strongly a geographic community's
//! tweets echo each headline, and measures rankings against graded judgments
//! with NDCG@k.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix it to `f64`, which the command line tool uses.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod geofilter;
pub mod judgments;
pub mod scalar;
pub mod similarity;
pub mod textproc;
pub mod voting;

pub use corpus::{CorpusSlice, Engine, IngestReport, NewsDoc, NewsKey, Query, Tweet};
pub use error::{Error, Result};
pub use eval::{MissingPolicy, NdcgConfig};
pub use geofilter::{resolve_region, AbbrevMatch, RegionTable};
pub use judgments::{Label, RawJudgment, RelevanceTable};
pub use scalar::Real;
pub use similarity::SimMode;
pub use textproc::{Pipeline, StopwordList, TermVector};
pub use voting::{Provenance, VoteOptions};

pub type SimScore = similarity::SimScore<f64>;
pub type VoteVector = voting::VoteVector<f64>;
pub type Ranking = voting::Ranking<f64>;
pub type JudgmentSet = judgments::JudgmentSet<f64>;
pub type EvalReport = eval::EvalReport<f64>;
pub type ReportRow = eval::ReportRow<f64>;

pub type SimScore32 = similarity::SimScore<f32>;
pub type VoteVector32 = voting::VoteVector<f32>;
pub type Ranking32 = voting::Ranking<f32>;
pub type EvalReport32 = eval::EvalReport<f32>;
