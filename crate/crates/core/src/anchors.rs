//! Reduced bidirectional anchors, lexicographic and randomized.
//!
//! For a window `W` of length `ℓ`, the lexicographic anchor is the leftmost
//! start `j` in `[1, ℓ - r]` of a minimal rotation of `W`. The randomized
//! anchor is the start of the length-`(r + 1)` fragment with the smallest
//! fingerprint; ties go to the candidate whose successor rotation (starting
//! right after the fragment, wrapping `ℓ + 1` to `1`) is smallest, leftmost
//! on equality.
//!
//! [`fast_anchors`] works block by block: candidates are the
//! `(ℓ - r, r + 1)`-minimizers of the block and rotations are compared with
//! LCP queries on the block, so the expected work is linear.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::kr::Fingerprinter;
use crate::lce::{compare_rotations_by, LceIndex, RotationSource};
use crate::minimizers::{fragment_keys, keyed_minimizers, lex_minimizers_in};
use crate::text::{compare_rotations_naive, Text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnchorKind {
    Lex,
    Randomized,
}

impl AnchorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AnchorKind::Lex => "lex",
            AnchorKind::Randomized => "ran",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnchorScheme {
    ell: usize,
    r: usize,
    kind: AnchorKind,
    seed: u64,
}

impl AnchorScheme {
    pub fn new(ell: usize, r: usize, kind: AnchorKind, seed: u64) -> Result<Self> {
        if ell < 2 || r >= ell {
            return Err(Error::InvalidScheme { ell, r });
        }
        Ok(Self { ell, r, kind, seed })
    }

    pub fn lex(ell: usize, r: usize) -> Result<Self> {
        Self::new(ell, r, AnchorKind::Lex, 0)
    }

    pub fn randomized(ell: usize, r: usize, seed: u64) -> Result<Self> {
        Self::new(ell, r, AnchorKind::Randomized, seed)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn kind(&self) -> AnchorKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Candidate starts per window, `ℓ - r`.
    pub fn w(&self) -> usize {
        self.ell - self.r
    }

    /// Fragment length, `r + 1`.
    pub fn k(&self) -> usize {
        self.r + 1
    }
}

/// Sorted anchor positions of a text together with the scheme that chose them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorSet {
    scheme: AnchorScheme,
    positions: Vec<usize>,
    n: usize,
}

impl AnchorSet {
    /// Wrap externally computed positions; they are sorted and deduplicated.
    pub fn from_positions(scheme: AnchorScheme, mut positions: Vec<usize>, n: usize) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Self { scheme, positions, n }
    }

    pub fn scheme(&self) -> &AnchorScheme {
        &self.scheme
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Length of the text the anchors were computed on.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.positions.binary_search(&pos).is_ok()
    }

    /// `n / |A|`.
    pub fn density_inverse(&self) -> f64 {
        self.n as f64 / self.positions.len().max(1) as f64
    }
}

/// `⌈4 log ℓ / log σ⌉` clamped to `[0, ℓ - 1]`, computed exactly as the
/// least `r` with `σ^r >= ℓ^4`.
pub fn default_r(ell: usize, sigma: usize) -> Result<usize> {
    if sigma < 2 {
        return Err(Error::AlphabetTooSmall);
    }
    if ell < 2 {
        return Err(Error::InvalidScheme { ell, r: 0 });
    }
    let target = (ell as u128).saturating_pow(4);
    let mut r = 0;
    let mut pow: u128 = 1;
    while pow < target {
        pow = pow.saturating_mul(sigma as u128);
        r += 1;
    }
    Ok(r.min(ell - 1))
}

/// Successor offset of a randomized candidate, wrapping `ℓ + 1` to 1.
#[inline]
fn successor(c: usize, r: usize, ell: usize) -> usize {
    let s = c + r + 1;
    if s > ell {
        s - ell
    } else {
        s
    }
}

/// Single-window oracle: rotations are materialized and fingerprints are
/// computed per fragment by Horner's rule.
pub fn naive_window_anchor(window: &[u8], scheme: &AnchorScheme) -> usize {
    match scheme.kind {
        AnchorKind::Lex => {
            let mut best = 1;
            for c in 2..=scheme.w() {
                if compare_rotations_naive(window, c, best).unwrap() == Ordering::Less {
                    best = c;
                }
            }
            best
        }
        AnchorKind::Randomized => {
            let fp = Fingerprinter::new(scheme.seed);
            naive_randomized_with(window, scheme.r, |frag| fp.hash(frag))
        }
    }
}

/// Randomized anchor of one window under an arbitrary fragment order given
/// by `key`. Exposed so the tie-break can be driven by a chosen order.
pub fn naive_randomized_with(window: &[u8], r: usize, key: impl Fn(&[u8]) -> u64) -> usize {
    let ell = window.len();
    let keys: Vec<u64> = (1..=ell - r).map(|c| key(&window[c - 1..c + r])).collect();
    let min = *keys.iter().min().unwrap();
    let mut tied = (1..=ell - r).filter(|&c| keys[c - 1] == min);
    let mut best = tied.next().unwrap();
    for c in tied {
        let ord = compare_rotations_naive(window, successor(c, r, ell), successor(best, r, ell)).unwrap();
        if ord == Ordering::Less {
            best = c;
        }
    }
    best
}

fn check_scheme(n: usize, scheme: &AnchorScheme) -> Result<()> {
    if n < scheme.ell {
        return Err(Error::TextShorterThanWindow);
    }
    Ok(())
}

/// Θ(nℓ²) reference computation: every window is resolved from scratch.
pub fn naive_anchors(text: &Text, scheme: &AnchorScheme) -> Result<AnchorSet> {
    let n = text.len();
    check_scheme(n, scheme)?;
    let s = text.as_bytes();
    let positions = (0..=n - scheme.ell).map(|i| i + naive_window_anchor(&s[i..i + scheme.ell], scheme)).collect();
    Ok(AnchorSet::from_positions(*scheme, positions, n))
}

/// Block-decomposed anchor computation with `b`-letter blocks.
///
/// Blocks start every `b - ℓ + 1` letters and each owns the windows that
/// start in its stride, so every window is resolved inside exactly one
/// block. Working memory is O(b) beyond the output.
pub fn fast_anchors(text: &Text, scheme: &AnchorScheme, b: usize) -> Result<AnchorSet> {
    fast_anchors_par(text, scheme, b, 1)
}

/// As [`fast_anchors`], with blocks split across `threads` workers. The
/// output does not depend on the thread count.
pub fn fast_anchors_par(text: &Text, scheme: &AnchorScheme, b: usize, threads: usize) -> Result<AnchorSet> {
    let n = text.len();
    check_scheme(n, scheme)?;
    if b < 2 * scheme.ell {
        return Err(Error::BlockTooShort);
    }
    let s = text.as_bytes();
    let stride = b - scheme.ell + 1;
    let windows = n - scheme.ell + 1;
    let blocks = windows.div_ceil(stride);
    let threads = threads.clamp(1, blocks);

    let mut positions = if threads == 1 {
        let mut out = Vec::new();
        for t in 0..blocks {
            anchors_in_block(s, scheme, t * stride, b, stride, &mut out);
        }
        out
    } else {
        let per = blocks.div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for t in w * per..((w + 1) * per).min(blocks) {
                            anchors_in_block(s, scheme, t * stride, b, stride, &mut out);
                        }
                        out
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
        })
    };
    positions.sort_unstable();
    positions.dedup();
    Ok(AnchorSet { scheme: *scheme, positions, n })
}

/// Resolve the windows owned by the block starting at 0-based `start`,
/// pushing absolute 1-based anchors to `out`.
fn anchors_in_block(s: &[u8], scheme: &AnchorScheme, start: usize, b: usize, stride: usize, out: &mut Vec<usize>) {
    let n = s.len();
    let ell = scheme.ell;
    let end = (start + b).min(n);
    let block = &s[start..end];
    let owned = stride.min(n - ell + 1 - start);
    let (w, k) = (scheme.w(), scheme.k());

    match scheme.kind {
        AnchorKind::Lex => {
            let idx = LceIndex::new(block).expect("non-empty block");
            let cands = lex_minimizers_in(&idx, 0, block.len(), w, k);
            let mut lo = 0;
            for ws in 0..owned {
                // Candidates for window `ws` are block positions ws+1 ..= ws+w.
                while cands[lo] <= ws {
                    lo += 1;
                }
                let win = idx.window(ws, ell);
                let mut best = cands[lo] - ws;
                for &c in cands[lo + 1..].iter().take_while(|&&c| c <= ws + w) {
                    if compare_rotations_by(&win, c - ws, best) == Ordering::Less {
                        best = c - ws;
                    }
                }
                push_dedup(out, start + ws + best);
            }
        }
        AnchorKind::Randomized => {
            let fp = Fingerprinter::new(scheme.seed);
            let keys = fragment_keys(&fp, block, k);
            let cands = keyed_minimizers(&keys, w);
            let mut idx: Option<LceIndex> = None;
            let mut lo = 0;
            let mut tied = Vec::new();
            for ws in 0..owned {
                while cands[lo] <= ws {
                    lo += 1;
                }
                let in_window = cands[lo..].iter().take_while(|&&c| c <= ws + w);
                let min = in_window.clone().map(|&c| keys[c - 1]).min().unwrap();
                tied.clear();
                tied.extend(in_window.filter(|&&c| keys[c - 1] == min).map(|&c| c - ws));
                let mut best = tied[0];
                if tied.len() > 1 {
                    let idx = idx.get_or_insert_with(|| LceIndex::new(block).expect("non-empty block"));
                    let win = idx.window(ws, ell);
                    best = resolve_ties(&win, &tied, scheme.r);
                }
                push_dedup(out, start + ws + best);
            }
        }
    }
}

fn resolve_ties<S: RotationSource + ?Sized>(win: &S, tied: &[usize], r: usize) -> usize {
    let ell = win.len();
    let mut best = tied[0];
    for &c in &tied[1..] {
        if compare_rotations_by(win, successor(c, r, ell), successor(best, r, ell)) == Ordering::Less {
            best = c;
        }
    }
    best
}

#[inline]
fn push_dedup(out: &mut Vec<usize>, pos: usize) {
    if out.last() != Some(&pos) {
        out.push(pos);
    }
}

/// Anchor offset (1-based, in `[1, ℓ - r]`) of a single length-`ℓ` window,
/// used to split query patterns. Replays the scheme's seed for the
/// randomized order.
pub fn pattern_anchor(prefix: &[u8], scheme: &AnchorScheme) -> Result<usize> {
    if prefix.len() != scheme.ell {
        return Err(Error::WindowLengthMismatch { expected: scheme.ell, got: prefix.len() });
    }
    let w = scheme.w();
    match scheme.kind {
        AnchorKind::Lex => {
            let idx = LceIndex::new(prefix)?;
            let win = idx.window(0, prefix.len());
            let mut best = 1;
            for c in 2..=w {
                if compare_rotations_by(&win, c, best) == Ordering::Less {
                    best = c;
                }
            }
            Ok(best)
        }
        AnchorKind::Randomized => {
            let fp = Fingerprinter::new(scheme.seed);
            let keys = fragment_keys(&fp, prefix, scheme.k());
            let min = *keys[..w].iter().min().unwrap();
            let tied: Vec<usize> = (1..=w).filter(|&c| keys[c - 1] == min).collect();
            if tied.len() == 1 {
                return Ok(tied[0]);
            }
            Ok(resolve_ties(prefix, &tied, scheme.r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimizers::{lex_minimizers, ran_minimizers};
    use crate::KrContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn text(s: &[u8]) -> Text {
        Text::new(s).unwrap()
    }

    #[test]
    fn default_r_examples() {
        assert_eq!(default_r(128, 4).unwrap(), 14);
        assert_eq!(default_r(1024, 2).unwrap(), 40);
        assert_eq!(default_r(4, 256).unwrap(), 1);
        assert_eq!(default_r(32, 4).unwrap(), 10);
        assert_eq!(default_r(8, 2).unwrap(), 7);
        assert_eq!(default_r(8, 1), Err(Error::AlphabetTooSmall));
    }

    #[test]
    fn scheme_bounds() {
        assert!(AnchorScheme::lex(1, 0).is_err());
        assert!(AnchorScheme::lex(5, 5).is_err());
        assert!(AnchorScheme::lex(5, 4).is_ok());
    }

    #[test]
    fn worked_examples() {
        let t = text(b"aacaaacgcta");
        let a5 = AnchorScheme::lex(5, 0).unwrap();
        let a51 = AnchorScheme::lex(5, 1).unwrap();
        assert_eq!(naive_anchors(&t, &a5).unwrap().positions(), &[4, 5, 6, 11]);
        assert_eq!(naive_anchors(&t, &a51).unwrap().positions(), &[4, 5, 6, 7]);
        assert_eq!(fast_anchors(&t, &a5, 10).unwrap().positions(), &[4, 5, 6, 11]);
        assert_eq!(fast_anchors(&t, &a51, 10).unwrap().positions(), &[4, 5, 6, 7]);
        assert_eq!(fast_anchors(&t, &a51, 25_000).unwrap().positions(), &[4, 5, 6, 7]);
    }

    #[test]
    fn unary_picks_leftmost() {
        let t = text(&[b'a'; 20]);
        for r in 0..5 {
            for scheme in [AnchorScheme::lex(5, r).unwrap(), AnchorScheme::randomized(5, r, 1).unwrap()] {
                let expect: Vec<usize> = (1..=16).collect();
                assert_eq!(naive_anchors(&t, &scheme).unwrap().positions(), &expect[..]);
                assert_eq!(fast_anchors(&t, &scheme, 10).unwrap().positions(), &expect[..]);
            }
        }
    }

    #[test]
    fn randomized_tie_break_with_mocked_order() {
        let f = b"aacaaacgcta";
        let key = |frag: &[u8]| if frag == b"aac" { 0 } else { 1 + frag.iter().map(|&c| c as u64).sum::<u64>() };
        assert_eq!(naive_randomized_with(f, 2, key), 1);
        // Same tie, but now the successor rotation of the right copy wins.
        let g = b"aacgaaacaaa";
        assert_eq!(naive_randomized_with(g, 2, key), 6);
    }

    #[test]
    fn errors() {
        let t = text(b"abcd");
        let s = AnchorScheme::lex(5, 1).unwrap();
        assert_eq!(naive_anchors(&t, &s), Err(Error::TextShorterThanWindow));
        assert_eq!(fast_anchors(&t, &s, 10), Err(Error::TextShorterThanWindow));
        let t = text(b"abcdefghijk");
        assert_eq!(fast_anchors(&t, &s, 9), Err(Error::BlockTooShort));
        assert!(pattern_anchor(b"abcd", &s).is_err());
    }

    #[test]
    fn pattern_anchor_examples() {
        let s = AnchorScheme::lex(5, 1).unwrap();
        assert_eq!(pattern_anchor(b"acaaa", &s).unwrap(), 3);
        for r in 0..5 {
            assert_eq!(pattern_anchor(b"aaaaa", &AnchorScheme::lex(5, r).unwrap()).unwrap(), 1);
            assert_eq!(pattern_anchor(b"aaaaa", &AnchorScheme::randomized(5, r, 3).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn pattern_anchor_matches_naive_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for round in 0..500 {
            let ell = rng.gen_range(2..40);
            let sigma = [1u8, 2, 4, 26][round % 4];
            let r = rng.gen_range(0..ell);
            let win: Vec<u8> = (0..ell).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            for scheme in [AnchorScheme::lex(ell, r).unwrap(), AnchorScheme::randomized(ell, r, round as u64).unwrap()]
            {
                let oracle = naive_anchors(&text(&win), &scheme).unwrap();
                let j = pattern_anchor(&win, &scheme).unwrap();
                assert_eq!(oracle.positions(), &[j]);
            }
        }
    }

    #[test]
    fn fast_matches_naive_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for round in 0..80 {
            let sigma = [2u8, 3, 4][round % 3];
            let n = rng.gen_range(10..400);
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let t = text(&s);
            let ell = rng.gen_range(2..=n.min(20));
            let r = rng.gen_range(0..ell);
            for scheme in [AnchorScheme::lex(ell, r).unwrap(), AnchorScheme::randomized(ell, r, round as u64).unwrap()]
            {
                let naive = naive_anchors(&t, &scheme).unwrap();
                for b in [2 * ell, 3 * ell + 7, 25_000] {
                    assert_eq!(fast_anchors(&t, &scheme, b).unwrap(), naive, "{scheme:?} b={b}");
                }
                assert_eq!(fast_anchors_par(&t, &scheme, 2 * ell, 3).unwrap(), naive);
            }
        }
    }

    #[test]
    fn subset_of_minimizers_and_coverage() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let s: Vec<u8> = (0..3000).map(|_| b'a' + rng.gen_range(0..4)).collect();
        let t = text(&s);
        let ell = 16;
        let r = default_r(ell, 4).unwrap();
        let lex = fast_anchors(&t, &AnchorScheme::lex(ell, r).unwrap(), 64).unwrap();
        let ran = fast_anchors(&t, &AnchorScheme::randomized(ell, r, 4).unwrap(), 64).unwrap();
        let m_lex = lex_minimizers(&s, ell - r, r + 1).unwrap();
        let m_ran = ran_minimizers(&s, ell - r, r + 1, &KrContext::new(&s, 4)).unwrap();
        for (set, m) in [(&lex, &m_lex), (&ran, &m_ran)] {
            assert!(set.positions().iter().all(|p| m.binary_search(p).is_ok()));
            for i in 1..=s.len() - ell + 1 {
                assert!(set.positions().iter().any(|&p| p >= i && p < i + ell));
            }
        }
    }
}
