use std::cmp::Ordering;

use super::{BdIndex, MatchRange, Side};
use crate::anchors::pattern_anchor;
use crate::error::{Error, Result};
use crate::text::Text;

/// Which half of a split pattern index II searches first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchFirst {
    /// Search the longer half, verify the shorter one.
    #[default]
    Longer,
    Right,
    Left,
}

impl BdIndex {
    fn side_arrays(&self, side: Side) -> (&[u64], &[u64], &crate::rmq::BlockRmq) {
        match side {
            Side::Right => (&self.rsa, &self.rlcp, &self.rmq_r),
            Side::Left => (&self.lsa, &self.llcp, &self.rmq_l),
        }
    }

    /// LCP of the entries at ranks `a < b`.
    #[inline]
    fn entry_lcp(&self, side: Side, a: usize, b: usize) -> usize {
        let (_, lcp, rmq) = self.side_arrays(side);
        rmq.min(lcp, a + 1, b) as usize
    }

    /// Compare the entry at rank `t`, truncated to `|part|`, with `part`,
    /// given that their first `from` letters already agree. Returns the order
    /// and the LCP.
    fn compare_entry(&self, s: &[u8], side: Side, t: usize, part: &[u8], from: usize) -> (Ordering, usize) {
        let (arr, _, _) = self.side_arrays(side);
        let anchor = arr[t] as usize;
        let mut m = from;
        match side {
            Side::Right => {
                let tail = &s[anchor - 1..];
                while m < part.len() && m < tail.len() && tail[m] == part[m] {
                    m += 1;
                }
                if m == part.len() {
                    (Ordering::Equal, m)
                } else if m == tail.len() {
                    (Ordering::Less, m)
                } else {
                    (tail[m].cmp(&part[m]), m)
                }
            }
            Side::Left => {
                // Letter `m` of rev(S[1..anchor]) is S[anchor - m].
                while m < part.len() && m < anchor && s[anchor - 1 - m] == part[m] {
                    m += 1;
                }
                if m == part.len() {
                    (Ordering::Equal, m)
                } else if m == anchor {
                    (Ordering::Less, m)
                } else {
                    (s[anchor - 1 - m].cmp(&part[m]), m)
                }
            }
        }
    }

    /// First rank whose truncated entry is `>= part` (or `> part` when
    /// `upper`), by binary search steered with the stored LCP values so no
    /// letter of `part` is compared twice along a boundary.
    fn bound(&self, s: &[u8], side: Side, part: &[u8], upper: bool) -> usize {
        let count = self.len() as isize;
        let (mut l, mut r) = (-1isize, count);
        let (mut l_lcp, mut r_lcp) = (0usize, 0usize);
        while r - l > 1 {
            let mid = ((l + r) / 2) as usize;
            // Either the stored LCP settles the side outright, or it tells
            // how many letters of `part` are already known to match.
            let (decided, from) = if l_lcp >= r_lcp && l >= 0 {
                let x = self.entry_lcp(side, l as usize, mid);
                match x.cmp(&l_lcp) {
                    Ordering::Greater => (Some((true, l_lcp)), 0),
                    Ordering::Less => (Some((false, x)), 0),
                    Ordering::Equal => (None, l_lcp),
                }
            } else if r_lcp > l_lcp && r < count {
                let x = self.entry_lcp(side, mid, r as usize);
                match x.cmp(&r_lcp) {
                    Ordering::Greater => (Some((false, r_lcp)), 0),
                    Ordering::Less => (Some((true, x)), 0),
                    Ordering::Equal => (None, r_lcp),
                }
            } else {
                (None, 0)
            };
            let (go_right, lcp) = decided.unwrap_or_else(|| {
                let (ord, m) = self.compare_entry(s, side, mid, part, from);
                let right = if upper { ord != Ordering::Greater } else { ord == Ordering::Less };
                (right, m)
            });
            if go_right {
                l = mid as isize;
                l_lcp = lcp;
            } else {
                r = mid as isize;
                r_lcp = lcp;
            }
        }
        r as usize
    }

    /// Ranks of all entries on `side` that have `part` as a prefix.
    pub fn range_search(&self, text: &Text, side: Side, part: &[u8]) -> Result<MatchRange> {
        self.check_text(text)?;
        if part.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(self.range_unchecked(text.as_bytes(), side, part))
    }

    fn range_unchecked(&self, s: &[u8], side: Side, part: &[u8]) -> MatchRange {
        let lo = self.bound(s, side, part, false);
        let hi = self.bound(s, side, part, true);
        MatchRange { lo, hi: hi.max(lo) }
    }

    fn check_text(&self, text: &Text) -> Result<()> {
        if text.len() != self.n {
            return Err(Error::TextMismatch { index_n: self.n, text_n: text.len() });
        }
        Ok(())
    }

    /// Anchor offset `j` of the pattern plus its two overlapping halves:
    /// `P[j..]` and `rev(P[1..=j])`.
    fn split(&self, text: &Text, pattern: &[u8]) -> Result<(usize, Vec<u8>)> {
        self.check_text(text)?;
        let ell = self.scheme.ell();
        if pattern.len() < ell {
            return Err(Error::PatternTooShort);
        }
        let j = pattern_anchor(&pattern[..ell], &self.scheme)?;
        let left: Vec<u8> = pattern[..j].iter().rev().copied().collect();
        Ok((j, left))
    }

    /// Occurrences of `pattern` by searching one half in the sampled arrays
    /// and verifying the other half letter by letter.
    pub fn query_bidirectional(&self, text: &Text, pattern: &[u8]) -> Result<Vec<usize>> {
        self.query_bidirectional_with(text, pattern, SearchFirst::Longer)
    }

    pub fn query_bidirectional_with(&self, text: &Text, pattern: &[u8], first: SearchFirst) -> Result<Vec<usize>> {
        let (j, left) = self.split(text, pattern)?;
        let s = text.as_bytes();
        let right = &pattern[j - 1..];
        let use_right = match first {
            SearchFirst::Longer => right.len() >= left.len(),
            SearchFirst::Right => true,
            SearchFirst::Left => false,
        };
        let mut out = Vec::new();
        if use_right {
            let range = self.range_unchecked(s, Side::Right, right);
            for &a in &self.rsa[range.lo..range.hi] {
                let a = a as usize;
                if a < j {
                    continue;
                }
                let start = a - j + 1;
                if s[start - 1..a - 1] == pattern[..j - 1] {
                    out.push(start);
                }
            }
        } else {
            let range = self.range_unchecked(s, Side::Left, &left);
            for &a in &self.lsa[range.lo..range.hi] {
                let a = a as usize;
                let end = a - 1 + right.len();
                if end > s.len() {
                    continue;
                }
                if s[a - 1..end] == *right {
                    out.push(a - j + 1);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Occurrences of `pattern` by searching both halves and reporting the
    /// grid points inside the induced rectangle. No letter verification.
    pub fn query_grid(&self, text: &Text, pattern: &[u8]) -> Result<Vec<usize>> {
        let grid = self.grid.as_ref().ok_or(Error::NoGrid)?;
        let (j, left) = self.split(text, pattern)?;
        let s = text.as_bytes();
        let xr = self.range_unchecked(s, Side::Right, &pattern[j - 1..]);
        if xr.is_empty() {
            return Ok(Vec::new());
        }
        let yr = self.range_unchecked(s, Side::Left, &left);
        if yr.is_empty() {
            return Ok(Vec::new());
        }
        let mut out: Vec<usize> = grid
            .report(xr.lo + 1, xr.hi, yr.lo + 1, yr.hi)
            .into_iter()
            .map(|(x, _)| self.rsa[x - 1] as usize - j + 1)
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}
