//! The anchor-sampled index.
//!
//! Four arrays over the anchor set `A`: `rsa` lists anchors by the suffix
//! `S[i..n]`, `lsa` lists them by the reversed prefix `rev(S[1..i])`, and
//! `rlcp`/`llcp` hold the LCP of each entry with its predecessor. Queries
//! split a pattern at the anchor of its first `ℓ` letters and search one or
//! both halves; see [`BdIndex::query_bidirectional`] and
//! [`BdIndex::query_grid`].

mod build;
mod format;
mod search;

pub use build::{build_full, build_sparse};
pub use format::FORMAT_VERSION;
pub use search::SearchFirst;

use crate::anchors::AnchorScheme;
use crate::range2d::Grid2D;
use crate::rmq::BlockRmq;

/// Which sampled array a search runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Suffixes `S[i..n]`, ordered by `rsa`.
    Right,
    /// Reversed prefixes `rev(S[1..i])`, ordered by `lsa`.
    Left,
}

/// Half-open rank interval `[lo, hi)` into `rsa` or `lsa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchRange {
    pub lo: usize,
    pub hi: usize,
}

impl MatchRange {
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }
}

/// Upper bound on `words() / |A|` for indexes with at least 64 anchors.
pub const WORDS_PER_ANCHOR: usize = 8;

#[derive(Debug, Clone)]
pub struct BdIndex {
    scheme: AnchorScheme,
    n: usize,
    rsa: Vec<u64>,
    rlcp: Vec<u64>,
    lsa: Vec<u64>,
    llcp: Vec<u64>,
    rmq_r: BlockRmq,
    rmq_l: BlockRmq,
    grid: Option<Grid2D>,
}

impl PartialEq for BdIndex {
    fn eq(&self, other: &Self) -> bool {
        self.scheme == other.scheme
            && self.n == other.n
            && self.rsa == other.rsa
            && self.rlcp == other.rlcp
            && self.lsa == other.lsa
            && self.llcp == other.llcp
            && self.grid == other.grid
    }
}

impl BdIndex {
    pub(crate) fn from_arrays(
        scheme: AnchorScheme,
        n: usize,
        rsa: Vec<u64>,
        rlcp: Vec<u64>,
        lsa: Vec<u64>,
        llcp: Vec<u64>,
        grid: Option<Grid2D>,
    ) -> Self {
        let rmq_r = BlockRmq::new(&rlcp);
        let rmq_l = BlockRmq::new(&llcp);
        Self { scheme, n, rsa, rlcp, lsa, llcp, rmq_r, rmq_l, grid }
    }

    /// Points `(rank in rsa, rank in lsa)`, both 1-based, listed by x.
    pub(crate) fn grid_ys(rsa: &[u64], lsa: &[u64]) -> Vec<usize> {
        let mut by_anchor: Vec<(u64, usize)> = lsa.iter().enumerate().map(|(y, &a)| (a, y + 1)).collect();
        by_anchor.sort_unstable();
        rsa.iter()
            .map(|a| {
                let at = by_anchor.binary_search_by_key(a, |&(p, _)| p).expect("rsa and lsa hold the same anchors");
                by_anchor[at].1
            })
            .collect()
    }

    /// Add the 2D grid if it is not present yet.
    pub fn with_grid(mut self) -> Self {
        if self.grid.is_none() {
            let ys = Self::grid_ys(&self.rsa, &self.lsa);
            self.grid = Some(Grid2D::from_ys(&ys).expect("ranks form a permutation"));
        }
        self
    }

    pub fn scheme(&self) -> &AnchorScheme {
        &self.scheme
    }

    /// Length of the indexed text.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of anchors.
    pub fn len(&self) -> usize {
        self.rsa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rsa.is_empty()
    }

    pub fn rsa(&self) -> &[u64] {
        &self.rsa
    }

    pub fn rlcp(&self) -> &[u64] {
        &self.rlcp
    }

    pub fn lsa(&self) -> &[u64] {
        &self.lsa
    }

    pub fn llcp(&self) -> &[u64] {
        &self.llcp
    }

    pub fn grid(&self) -> Option<&Grid2D> {
        self.grid.as_ref()
    }

    pub fn has_grid(&self) -> bool {
        self.grid.is_some()
    }

    /// Memory held beyond the text, in 64-bit words.
    pub fn words(&self) -> usize {
        4 * self.len() + self.rmq_r.words() + self.rmq_l.words() + self.grid.as_ref().map_or(0, |g| g.words()) + 8
    }
}
