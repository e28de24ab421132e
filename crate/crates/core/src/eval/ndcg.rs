use crate::error::{Error, Result};
use crate::judgments::RelevanceTable;
use crate::scalar::Real;
use crate::voting::Ranking;

pub const DEFAULT_CUTOFFS: [usize; 3] = [3, 5, 10];

/// Gain of a document with relevance `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gain {
    /// `2^r - 1`
    #[default]
    Exponential,
    /// `r`
    Linear,
    /// `2^(r - 1)`, the exponent placement as typeset in the source formula.
    Literal,
}

/// Denominator applied to each gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Discount {
    /// `log2(1 + position)`
    #[default]
    Position,
    /// `log2(1 + query_index)`: one constant per query, cancelled by the
    /// normalization.
    QueryIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdcgConfig {
    cutoffs: Vec<usize>,
    pub gain: Gain,
    pub discount: Discount,
}

impl NdcgConfig {
    /// Cutoffs must be positive and strictly ascending.
    pub fn new(cutoffs: Vec<usize>, gain: Gain, discount: Discount) -> Result<Self> {
        if cutoffs.is_empty() {
            return Err(Error::input("at least one NDCG cutoff is required"));
        }
        if cutoffs[0] == 0 || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!(
                "NDCG cutoffs must be positive and ascending, got {cutoffs:?}"
            )));
        }
        Ok(NdcgConfig {
            cutoffs,
            gain,
            discount,
        })
    }

    /// Both formula readings taken literally.
    pub fn literal(cutoffs: Vec<usize>) -> Result<Self> {
        NdcgConfig::new(cutoffs, Gain::Literal, Discount::QueryIndex)
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }
}

impl Default for NdcgConfig {
    fn default() -> Self {
        NdcgConfig::new(
            DEFAULT_CUTOFFS.to_vec(),
            Gain::Exponential,
            Discount::Position,
        )
        .expect("default cutoffs are valid")
    }
}

fn two<T: Real>() -> T {
    T::one() + T::one()
}

fn gain<T: Real>(g: Gain, r: T) -> T {
    match g {
        Gain::Exponential => two::<T>().powf(r) - T::one(),
        Gain::Linear => r,
        Gain::Literal => two::<T>().powf(r - T::one()),
    }
}

/// DCG with gain `2^r - 1` and discount `log2(1 + position)`.
pub fn dcg_at_k<T: Real>(relevances: &[T], k: usize) -> T {
    dcg_with(relevances, k, Gain::Exponential, Discount::Position, 1)
}

/// `query_index` is 1-based and only used by [`Discount::QueryIndex`].
pub fn dcg_with<T: Real>(
    relevances: &[T],
    k: usize,
    g: Gain,
    d: Discount,
    query_index: usize,
) -> T {
    relevances
        .iter()
        .take(k)
        .enumerate()
        .map(|(j, &r)| {
            let at = match d {
                Discount::Position => j + 1,
                Discount::QueryIndex => query_index,
            };
            gain(g, r) / T::from_count(1 + at as u32).log2()
        })
        .sum()
}

/// DCG of `relevances` over DCG of the same values sorted descending.
/// Zero when the ideal DCG is zero.
pub fn ndcg_with<T: Real>(
    relevances: &[T],
    k: usize,
    g: Gain,
    d: Discount,
    query_index: usize,
) -> T {
    let mut ideal = relevances.to_vec();
    ideal.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let idcg = dcg_with(&ideal, k, g, d, query_index);
    if idcg <= T::zero() {
        return T::zero();
    }
    let v = dcg_with(relevances, k, g, d, query_index) / idcg;
    // the ideal order is a maximum, so anything above 1 is rounding
    v.min(T::one())
}

pub fn ndcg_of_relevances<T: Real>(relevances: &[T], k: usize) -> T {
    ndcg_with(relevances, k, Gain::Exponential, Discount::Position, 1)
}

/// Relevances in ranked order; unjudged documents score 0.
/// Returns the list and how many documents were unjudged.
pub fn ranked_relevances<T: Real>(
    ranking: &Ranking<T>,
    query_id: &str,
    table: &RelevanceTable<T>,
) -> (Vec<T>, usize) {
    let mut missing = 0;
    let rels = ranking
        .ids()
        .map(|id| {
            table.get(query_id, id).unwrap_or_else(|| {
                missing += 1;
                T::zero()
            })
        })
        .collect();
    (rels, missing)
}

/// Standard NDCG@k of one ranking.
pub fn ndcg_at_k<T: Real>(
    ranking: &Ranking<T>,
    query_id: &str,
    table: &RelevanceTable<T>,
    k: usize,
) -> Result<T> {
    if ranking.is_empty() {
        return Err(Error::contract("cannot score an empty ranking"));
    }
    if k == 0 {
        return Err(Error::contract("NDCG cutoff must be at least 1"));
    }
    let (rels, _) = ranked_relevances(ranking, query_id, table);
    Ok(ndcg_of_relevances(&rels, k))
}
