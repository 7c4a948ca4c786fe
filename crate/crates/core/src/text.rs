//! The indexed text and the brute-force oracles every other module is
//! checked against.
//!
//! Public positions are 1-based and ranges are inclusive: `S[i..=j]` is
//! written `(i, j)` with `1 <= i <= j <= n`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// An immutable byte string with its alphabet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    sigma: usize,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        let sigma = alphabet_size(&bytes);
        Ok(Self { bytes, sigma })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false; a `Text` holds at least one letter.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Letter at 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        self.bytes[i - 1]
    }

    /// The fragment `S[i..=j]` (1-based, inclusive).
    pub fn fragment(&self, i: usize, j: usize) -> Result<&[u8]> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::RangeOutOfBounds { i, j, len: self.len() });
        }
        Ok(&self.bytes[i - 1..j])
    }

    pub fn reverse(&self) -> Text {
        let mut bytes = self.bytes.clone();
        bytes.reverse();
        Text { bytes, sigma: self.sigma }
    }
}

/// Number of distinct byte values in `bytes`.
pub fn alphabet_size(bytes: &[u8]) -> usize {
    let mut seen = [false; 256];
    for &c in bytes {
        seen[c as usize] = true;
    }
    seen.iter().filter(|&&b| b).count()
}

/// Every 1-based start of `pattern` in `text`, by direct scan.
pub fn naive_find_all(text: &[u8], pattern: &[u8]) -> Result<Vec<usize>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    Ok(text.windows(pattern.len()).enumerate().filter(|(_, w)| *w == pattern).map(|(i, _)| i + 1).collect())
}

/// Materialize rotation `i` (1-based) of `window`.
pub fn rotation(window: &[u8], i: usize) -> Vec<u8> {
    let mut r = Vec::with_capacity(window.len());
    r.extend_from_slice(&window[i - 1..]);
    r.extend_from_slice(&window[..i - 1]);
    r
}

/// Compare rotations `i` and `j` of `window` by building both.
pub fn compare_rotations_naive(window: &[u8], i: usize, j: usize) -> Result<Ordering> {
    for p in [i, j] {
        if p == 0 || p > window.len() {
            return Err(Error::PositionOutOfRange { pos: p, len: window.len() });
        }
    }
    Ok(rotation(window, i).cmp(&rotation(window, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reverse_examples() {
        let t = Text::new("aacaaacgcta").unwrap();
        let r = t.reverse();
        assert_eq!(r.as_bytes(), b"atcgcaaacaa");
        assert_eq!(r.sigma(), t.sigma());
        assert_eq!(Text::new("a").unwrap().reverse().as_bytes(), b"a");
    }

    #[test]
    fn sigma_counts_distinct_bytes() {
        assert_eq!(Text::new("aacaaacgcta").unwrap().sigma(), 4);
        assert_eq!(Text::new(vec![0u8, 0, 255]).unwrap().sigma(), 2);
        assert_eq!(Text::new(Vec::<u8>::new()), Err(Error::EmptyText));
    }

    #[test]
    fn find_all_examples() {
        assert_eq!(naive_find_all(b"aacaaacgcta", b"acaaa").unwrap(), vec![2]);
        assert_eq!(naive_find_all(b"aaaa", b"aa").unwrap(), vec![1, 2, 3]);
        assert!(naive_find_all(b"abc", b"d").unwrap().is_empty());
        assert_eq!(naive_find_all(b"abc", b""), Err(Error::EmptyPattern));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(compare_rotations_naive(b"aacaa", 4, 1).unwrap(), Ordering::Less);
        assert_eq!(compare_rotations_naive(b"aaaa", 1, 3).unwrap(), Ordering::Equal);
        assert_eq!(compare_rotations_naive(b"ab", 1, 2).unwrap(), Ordering::Less);
        assert!(compare_rotations_naive(b"ab", 0, 1).is_err());
        assert!(compare_rotations_naive(b"ab", 1, 3).is_err());
    }

    #[test]
    fn rotation_order_is_a_total_preorder() {
        for len in 1..=8usize {
            for mask in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len).map(|b| if mask >> b & 1 == 1 { b'b' } else { b'a' }).collect();
                let cmp = |a, b| compare_rotations_naive(&w, a, b).unwrap();
                for a in 1..=len {
                    for b in 1..=len {
                        assert_eq!(cmp(a, b), cmp(b, a).reverse());
                        for c in 1..=len {
                            if cmp(a, b) != Ordering::Greater && cmp(b, c) != Ordering::Greater {
                                assert_ne!(cmp(a, c), Ordering::Greater);
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(bytes in proptest::collection::vec(any::<u8>(), 1..1000)) {
            let t = Text::new(bytes).unwrap();
            prop_assert_eq!(t.reverse().reverse(), t);
        }

        #[test]
        fn substring_matches_itself(bytes in proptest::collection::vec(0u8..3, 1..200), a in 0usize..200, b in 0usize..200) {
            let n = bytes.len();
            let (i, j) = { let (x, y) = (a % n + 1, b % n + 1); (x.min(y), x.max(y)) };
            let t = Text::new(bytes).unwrap();
            let hits = naive_find_all(t.as_bytes(), t.fragment(i, j).unwrap()).unwrap();
            prop_assert!(hits.contains(&i));
        }
    }
}
