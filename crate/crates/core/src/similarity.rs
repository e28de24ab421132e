//! Term-frequency cosine similarity between a tweet and a news title.

use crate::scalar::Real;
use crate::textproc::TermVector;

/// Which terms the cosine norms range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SimMode {
    /// Dot product and both norms restricted to the shared terms.
    #[default]
    CommonSet,
    /// Textbook cosine: norms over each vector's full support.
    FullCosine,
}

/// Similarity in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SimScore<T>(T);

impl<T: Real> SimScore<T> {
    pub fn zero() -> Self {
        SimScore(T::zero())
    }

    /// Clamps into `[0, 1]` to absorb rounding on near-parallel vectors.
    pub fn new(value: T) -> Self {
        SimScore(value.max(T::zero()).min(T::one()))
    }

    pub fn value(self) -> T {
        self.0
    }
}

/// Shared-term cosine; see [`cosine_with`].
pub fn cosine<T: Real>(a: &TermVector, b: &TermVector) -> SimScore<T> {
    cosine_with(a, b, SimMode::CommonSet)
}

/// Returns 0 when the vectors share no term or a norm vanishes.
pub fn cosine_with<T: Real>(a: &TermVector, b: &TermVector, mode: SimMode) -> SimScore<T> {
    // iterate the smaller map and look up in the larger
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut dot = T::zero();
    let mut small_sq = T::zero();
    let mut large_sq = T::zero();
    let mut shared = 0usize;
    for (term, ws) in small.iter() {
        let wl = large.get(term);
        if wl == 0 {
            continue;
        }
        shared += 1;
        let (ws, wl) = (T::from_count(ws), T::from_count(wl));
        dot = dot + ws * wl;
        small_sq = small_sq + ws * ws;
        large_sq = large_sq + wl * wl;
    }
    if shared == 0 {
        return SimScore::zero();
    }
    if mode == SimMode::FullCosine {
        small_sq = squared_norm(small);
        large_sq = squared_norm(large);
    }
    // one rounding: exact whenever the product is a perfect square
    let denom = (small_sq * large_sq).sqrt();
    if denom <= T::zero() {
        return SimScore::zero();
    }
    SimScore::new(dot / denom)
}

fn squared_norm<T: Real>(v: &TermVector) -> T {
    v.iter()
        .map(|(_, w)| {
            let w = T::from_count(w);
            w * w
        })
        .sum()
}
