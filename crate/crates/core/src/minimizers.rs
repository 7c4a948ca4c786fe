//! `(w, k)`-minimizers under the lexicographic order and under a random
//! order given by Karp-Rabin fingerprints.
//!
//! Every tied minimal position of every window is reported. The anchor
//! algorithms resolve ties themselves and need all candidates.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::kr::{Fingerprinter, KrContext};
use crate::lce::LceIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizerOrder {
    Lex,
    Randomized { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizerParams {
    pub w: usize,
    pub k: usize,
    pub order: MinimizerOrder,
}

impl MinimizerParams {
    pub fn new(w: usize, k: usize, order: MinimizerOrder) -> Result<Self> {
        if w == 0 || k == 0 {
            return Err(Error::InvalidMinimizerParams { w, k });
        }
        Ok(Self { w, k, order })
    }

    pub fn compute(&self, s: &[u8]) -> Result<Vec<usize>> {
        match self.order {
            MinimizerOrder::Lex => lex_minimizers(s, self.w, self.k),
            MinimizerOrder::Randomized { seed } => ran_minimizers(s, self.w, self.k, &KrContext::new(s, seed)),
        }
    }
}

fn check(len: usize, w: usize, k: usize) -> Result<()> {
    if w == 0 || k == 0 {
        return Err(Error::InvalidMinimizerParams { w, k });
    }
    if len < w + k - 1 {
        return Err(Error::ShorterThanWindow);
    }
    Ok(())
}

/// Lexicographic minimizers, 1-based and ascending.
pub fn lex_minimizers(s: &[u8], w: usize, k: usize) -> Result<Vec<usize>> {
    check(s.len(), w, k)?;
    let idx = LceIndex::new(s)?;
    Ok(lex_minimizers_in(&idx, 0, s.len(), w, k))
}

/// Randomized minimizers: fragments are ordered by fingerprint value, equal
/// fingerprints tie.
pub fn ran_minimizers(s: &[u8], w: usize, k: usize, kr: &KrContext<'_>) -> Result<Vec<usize>> {
    check(s.len(), w, k)?;
    if !kr.is_over(s) {
        return Err(Error::ForeignContext);
    }
    let keys = kr.fingerprinter().rolling(s, k);
    Ok(keyed_minimizers(&keys, w))
}

/// Lexicographic minimizers of `idx.bytes()[offset..offset + len]`, 1-based
/// relative to `offset`.
pub(crate) fn lex_minimizers_in(idx: &LceIndex, offset: usize, len: usize, w: usize, k: usize) -> Vec<usize> {
    window_minima(len - k + 1, w, |a, b| idx.cmp_fragments(offset + a + 1, offset + b + 1, k))
}

pub(crate) fn keyed_minimizers(keys: &[u64], w: usize) -> Vec<usize> {
    window_minima(keys.len(), w, |a, b| keys[a].cmp(&keys[b]))
}

/// Fingerprints of all length-`k` fragments of a byte slice.
pub(crate) fn fragment_keys(fp: &Fingerprinter, s: &[u8], k: usize) -> Vec<u64> {
    fp.rolling(s, k)
}

/// All positions (1-based) that are minimal in at least one window of `w`
/// consecutive items among `0..count`, ascending.
///
/// The deque holds items with non-decreasing values, so the items tied with
/// the front form a prefix. Every item of that prefix that is at or before
/// the last reported position has already been reported, so each window
/// only walks the unreported tail of the prefix.
fn window_minima<F>(count: usize, w: usize, mut cmp: F) -> Vec<usize>
where
    F: FnMut(usize, usize) -> Ordering,
{
    let mut out = Vec::new();
    let mut dq: VecDeque<usize> = VecDeque::with_capacity(w + 1);
    let mut last: Option<usize> = None;
    for t in 0..count {
        while let Some(&back) = dq.back() {
            if cmp(back, t) == Ordering::Greater {
                dq.pop_back();
            } else {
                break;
            }
        }
        dq.push_back(t);
        if t + 1 < w {
            continue;
        }
        let start = t + 1 - w;
        while dq.front().is_some_and(|&f| f < start) {
            dq.pop_front();
        }
        let front = dq[0];
        let mut at = match last {
            Some(l) => dq.partition_point(|&p| p <= l),
            None => 0,
        };
        while at < dq.len() && (dq[at] == front || cmp(dq[at], front) == Ordering::Equal) {
            out.push(dq[at] + 1);
            last = Some(dq[at]);
            at += 1;
        }
    }
    out
}
