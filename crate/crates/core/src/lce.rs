//! Exact longest-common-extension queries over one string: suffix array,
//! inverse suffix array, LCP array, and a sparse table over the LCP array.
//!
//! Also hosts the rotation comparison that drives the anchor scan: the order
//! of two rotations of a window is settled by at most three LCP queries and
//! three letter comparisons.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rmq::SparseTable;

#[derive(Debug, Clone)]
pub struct LceIndex {
    bytes: Vec<u8>,
    sa: Vec<u32>,
    rank: Vec<u32>,
    rmq: SparseTable,
}

/// Suffix array of `s` by prefix doubling with counting-sort passes.
/// Suffixes are compared with end-of-string smaller than every letter.
pub fn suffix_array(s: &[u8]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_by_key(|&i| s[i as usize]);
    let mut rank: Vec<u32> = s.iter().map(|&c| c as u32).collect();
    let mut tmp = vec![0u32; n];
    let mut count = vec![0u32; n.max(256) + 1];
    let mut k = 1;
    loop {
        // Order by second key: suffixes with no second half first.
        let mut idx = 0;
        for i in n.saturating_sub(k)..n {
            tmp[idx] = i as u32;
            idx += 1;
        }
        for &p in &sa {
            if p as usize >= k {
                tmp[idx] = p - k as u32;
                idx += 1;
            }
        }
        // Stable counting sort by first key.
        count.iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r as usize + 1] += 1;
        }
        for c in 1..count.len() {
            count[c] += count[c - 1];
        }
        for &p in tmp.iter() {
            let r = rank[p as usize] as usize;
            sa[count[r] as usize] = p;
            count[r] += 1;
        }
        let key = |p: u32| {
            let p = p as usize;
            let second = if p + k < n { rank[p + k] as i64 } else { -1 };
            (rank[p], second)
        };
        tmp[sa[0] as usize] = 0;
        let mut classes = 0;
        for t in 1..n {
            if key(sa[t]) != key(sa[t - 1]) {
                classes += 1;
            }
            tmp[sa[t] as usize] = classes;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if classes as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's algorithm; `lcp[t]` is the LCP of suffixes `sa[t-1]` and `sa[t]`,
/// `lcp[0] = 0`.
pub fn lcp_array(s: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

pub fn build_lce(s: &[u8]) -> Result<LceIndex> {
    LceIndex::new(s)
}

impl LceIndex {
    pub fn new(s: &[u8]) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sa = suffix_array(s);
        let mut rank = vec![0u32; s.len()];
        for (t, &p) in sa.iter().enumerate() {
            rank[p as usize] = t as u32;
        }
        let lcp = lcp_array(s, &sa, &rank);
        Ok(Self { bytes: s.to_vec(), rmq: SparseTable::new(&lcp), sa, rank })
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// 1-based suffix array.
    pub fn sa(&self) -> Vec<usize> {
        self.sa.iter().map(|&p| p as usize + 1).collect()
    }

    /// 1-based start of the `t`-th smallest suffix (`t` is 0-based).
    pub fn sa_at(&self, t: usize) -> usize {
        self.sa[t] as usize + 1
    }

    /// 0-based lexicographic rank of the suffix at 1-based `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        self.rank[i - 1] as usize
    }

    /// `lcp[t]` for 0-based `t`, with `lcp[0] = 0`.
    pub fn lcp(&self) -> &[u32] {
        self.rmq.values()
    }

    /// Storage in 64-bit words.
    pub fn words(&self) -> usize {
        self.bytes.len().div_ceil(8) + (self.sa.len() + self.rank.len()).div_ceil(2) + self.rmq.words()
    }

    pub fn lcp_query(&self, i: usize, j: usize) -> Result<usize> {
        for p in [i, j] {
            if p == 0 || p > self.len() {
                return Err(Error::PositionOutOfRange { pos: p, len: self.len() });
            }
        }
        Ok(self.lcp_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn lcp_unchecked(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len() - i + 1;
        }
        let (a, b) = (self.rank[i - 1] as usize, self.rank[j - 1] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(lo + 1, hi) as usize
    }

    /// Order of the length-`k` fragments at 1-based `i` and `j`; both must
    /// fit in the string.
    #[inline]
    pub(crate) fn cmp_fragments(&self, i: usize, j: usize, k: usize) -> Ordering {
        let l = self.lcp_unchecked(i, j).min(k);
        if l == k {
            Ordering::Equal
        } else {
            self.bytes[i - 1 + l].cmp(&self.bytes[j - 1 + l])
        }
    }

    /// Order of rotations `i` and `j` of the whole string.
    pub fn compare_rotations(&self, i: usize, j: usize) -> Result<Ordering> {
        for p in [i, j] {
            if p == 0 || p > self.len() {
                return Err(Error::PositionOutOfRange { pos: p, len: self.len() });
            }
        }
        Ok(compare_rotations_by(&self.window(0, self.len()), i, j))
    }

    /// View of the window `bytes[offset..offset + len]` for rotation
    /// comparisons; LCP answers are clipped by the comparison cascade.
    pub fn window(&self, offset: usize, len: usize) -> Window<'_> {
        debug_assert!(offset + len <= self.len());
        Window { idx: self, offset, len }
    }
}

/// LCP and letter access over a string whose rotations are being compared.
/// Positions are 1-based within the string.
pub trait RotationSource {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// LCP of suffixes `a` and `b`; may exceed the string (callers clip).
    fn lcp(&self, a: usize, b: usize) -> usize;
    fn letter(&self, a: usize) -> u8;
}

#[derive(Debug, Clone, Copy)]
pub struct Window<'a> {
    idx: &'a LceIndex,
    offset: usize,
    len: usize,
}

impl RotationSource for Window<'_> {
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn lcp(&self, a: usize, b: usize) -> usize {
        self.idx.lcp_unchecked(self.offset + a, self.offset + b)
    }

    #[inline]
    fn letter(&self, a: usize) -> u8 {
        self.idx.bytes[self.offset + a - 1]
    }
}

impl RotationSource for [u8] {
    fn len(&self) -> usize {
        <[u8]>::len(self)
    }

    fn lcp(&self, a: usize, b: usize) -> usize {
        self[a - 1..].iter().zip(&self[b - 1..]).take_while(|(x, y)| x == y).count()
    }

    fn letter(&self, a: usize) -> u8 {
        self[a - 1]
    }
}

/// Compare rotations `i` and `j` of `src` (1-based).
///
/// With `i < j`, rotation `i` is `F[i..] F[..i-1]` and rotation `j` is
/// `F[j..] F[..j-1]`. The three stages line up the pieces where both
/// rotations are contiguous in `F`: first `|F| - j + 1` letters from `i`
/// and `j`, then `j - i` letters from `i + λ1` against the start of `F`,
/// then the last `i - 1` letters from `1` against `j - i + 1`.
pub fn compare_rotations_by<S: RotationSource + ?Sized>(src: &S, i: usize, j: usize) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    if i > j {
        return compare_rotations_by(src, j, i).reverse();
    }
    let len = src.len();

    let seg = len - j + 1;
    let l1 = src.lcp(i, j).min(seg);
    if l1 < seg {
        return src.letter(i + l1).cmp(&src.letter(j + l1));
    }

    let seg = j - i;
    let l2 = src.lcp(i + l1, 1).min(seg);
    if l2 < seg {
        return src.letter(i + l1 + l2).cmp(&src.letter(1 + l2));
    }

    let seg = i - 1;
    if seg == 0 {
        return Ordering::Equal;
    }
    let l3 = src.lcp(1, j - i + 1).min(seg);
    if l3 < seg {
        return src.letter(1 + l3).cmp(&src.letter(j - i + 1 + l3));
    }
    Ordering::Equal
}
