use std::cmp::Ordering;
use std::collections::HashSet;

use super::BdIndex;
use crate::anchors::AnchorSet;
use crate::error::{Error, Result};
use crate::kr::{lce_unchecked, KrContext};
use crate::lce::{lcp_array, suffix_array};
use crate::range2d::Grid2D;
use crate::text::Text;

fn check_anchors(text: &Text, anchors: &AnchorSet) -> Result<()> {
    let n = text.len();
    if anchors.n() != n || anchors.positions().iter().any(|&p| p == 0 || p > n) {
        return Err(Error::ForeignAnchorSet);
    }
    Ok(())
}

/// Sample a full suffix array: keep entries whose start maps to an anchor,
/// carrying the running LCP minimum since the previously kept entry.
fn sample(s: &[u8], keep: impl Fn(usize) -> Option<u64>) -> (Vec<u64>, Vec<u64>) {
    let sa = suffix_array(s);
    let mut rank = vec![0u32; s.len()];
    for (t, &p) in sa.iter().enumerate() {
        rank[p as usize] = t as u32;
    }
    let lcp = lcp_array(s, &sa, &rank);
    drop(rank);

    let mut out_sa = Vec::new();
    let mut out_lcp = Vec::new();
    let mut running = u32::MAX;
    for (t, &p) in sa.iter().enumerate() {
        running = running.min(lcp[t]);
        if let Some(anchor) = keep(p as usize + 1) {
            out_sa.push(anchor);
            out_lcp.push(if out_lcp.is_empty() { 0 } else { running as u64 });
            running = u32::MAX;
        }
    }
    (out_sa, out_lcp)
}

/// Build from full suffix and LCP arrays of `S` and of its reverse, sampled
/// by one sequential scan each.
pub fn build_full(text: &Text, anchors: &AnchorSet, with_grid: bool) -> Result<BdIndex> {
    check_anchors(text, anchors)?;
    let n = text.len();
    let set: HashSet<usize> = anchors.positions().iter().copied().collect();

    let (rsa, rlcp) = sample(text.as_bytes(), |p| set.contains(&p).then_some(p as u64));
    // Suffix q of rev(S) is rev(S[1..n-q+1]).
    let rev = text.reverse();
    let (lsa, llcp) = sample(rev.as_bytes(), |q| {
        let i = n - q + 1;
        set.contains(&i).then_some(i as u64)
    });
    Ok(finish(anchors, n, rsa, rlcp, lsa, llcp, with_grid))
}

fn finish(
    anchors: &AnchorSet,
    n: usize,
    rsa: Vec<u64>,
    rlcp: Vec<u64>,
    lsa: Vec<u64>,
    llcp: Vec<u64>,
    with_grid: bool,
) -> BdIndex {
    let grid = with_grid.then(|| Grid2D::from_ys(&BdIndex::grid_ys(&rsa, &lsa)).expect("ranks form a permutation"));
    BdIndex::from_arrays(*anchors.scheme(), n, rsa, rlcp, lsa, llcp, grid)
}

/// Sort `starts` (1-based positions in the context's string) by suffix,
/// using fingerprint LCE and one letter comparison per pair.
fn sparse_sort(ctx: &KrContext<'_>, letter: impl Fn(usize) -> u8, starts: &mut [u64]) -> Vec<u64> {
    let n = ctx.len();
    let cmp = |a: usize, b: usize| -> (Ordering, usize) {
        if a == b {
            return (Ordering::Equal, n - a + 1);
        }
        let cap = (n - a + 1).min(n - b + 1);
        let m = lce_unchecked(ctx, a, ctx, b, cap);
        if m == cap {
            // One suffix is a prefix of the other; the shorter sorts first.
            ((n - a + 1).cmp(&(n - b + 1)), m)
        } else {
            (letter(a + m).cmp(&letter(b + m)), m)
        }
    };
    starts.sort_unstable_by(|&a, &b| cmp(a as usize, b as usize).0);
    let mut lcps = Vec::with_capacity(starts.len());
    if !starts.is_empty() {
        lcps.push(0);
    }
    for t in 1..starts.len() {
        lcps.push(cmp(starts[t - 1] as usize, starts[t] as usize).1 as u64);
    }
    lcps
}

/// Build without any full suffix array: anchor suffixes (and reversed
/// prefixes) are sorted directly with a fingerprint LCE comparator.
///
/// `kr` must be a forward context over `text`; the reversed side uses a
/// context with the same seed and stride. Results are exact whenever the
/// fingerprints are collision-free on the probed fragments.
pub fn build_sparse(text: &Text, anchors: &AnchorSet, kr: &KrContext<'_>, with_grid: bool) -> Result<BdIndex> {
    check_anchors(text, anchors)?;
    if !kr.is_over(text.as_bytes()) {
        return Err(Error::ForeignContext);
    }
    let n = text.len();
    let s = text.as_bytes();

    let mut rsa: Vec<u64> = anchors.positions().iter().map(|&p| p as u64).collect();
    let rlcp = sparse_sort(kr, |p| s[p - 1], &mut rsa);

    let rev = KrContext::reversed(s, kr.seed(), kr.stride());
    // Reversed-text position q holds S[n - q + 1].
    let mut lsa: Vec<u64> = anchors.positions().iter().map(|&i| (n - i + 1) as u64).collect();
    let llcp = sparse_sort(&rev, |q| s[n - q], &mut lsa);
    drop(rev);
    for q in lsa.iter_mut() {
        *q = n as u64 - *q + 1;
    }
    Ok(finish(anchors, n, rsa, rlcp, lsa, llcp, with_grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchors::{fast_anchors, naive_anchors, AnchorScheme};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_lcp(a: &[u8], b: &[u8]) -> u64 {
        a.iter().zip(b).take_while(|(x, y)| x == y).count() as u64
    }

    /// Enumerate-and-sort oracle for all four arrays.
    fn oracle(s: &[u8], anchors: &[usize]) -> [Vec<u64>; 4] {
        let mut right: Vec<usize> = anchors.to_vec();
        right.sort_by(|&a, &b| s[a - 1..].cmp(&s[b - 1..]));
        let rev_prefix = |i: usize| -> Vec<u8> { s[..i].iter().rev().copied().collect() };
        let mut left: Vec<usize> = anchors.to_vec();
        left.sort_by_key(|&i| rev_prefix(i));
        let rl: Vec<u64> = (0..right.len())
            .map(|t| if t == 0 { 0 } else { naive_lcp(&s[right[t - 1] - 1..], &s[right[t] - 1..]) })
            .collect();
        let ll: Vec<u64> = (0..left.len())
            .map(|t| if t == 0 { 0 } else { naive_lcp(&rev_prefix(left[t - 1]), &rev_prefix(left[t])) })
            .collect();
        [right.iter().map(|&p| p as u64).collect(), rl, left.iter().map(|&p| p as u64).collect(), ll]
    }

    fn arrays(idx: &BdIndex) -> [Vec<u64>; 4] {
        [idx.rsa().to_vec(), idx.rlcp().to_vec(), idx.lsa().to_vec(), idx.llcp().to_vec()]
    }

    #[test]
    fn worked_example() {
        let t = Text::new("aacaaacgcta").unwrap();
        let a = naive_anchors(&t, &AnchorScheme::lex(5, 1).unwrap()).unwrap();
        let full = build_full(&t, &a, true).unwrap();
        assert_eq!(full.rsa(), &[4, 5, 6, 7]);
        assert_eq!(arrays(&full), oracle(t.as_bytes(), a.positions()));
        let kr = KrContext::new(t.as_bytes(), 1);
        assert_eq!(build_sparse(&t, &a, &kr, true).unwrap(), full);
    }

    #[test]
    fn single_anchor() {
        let t = Text::new("abcde").unwrap();
        let a = naive_anchors(&t, &AnchorScheme::lex(5, 0).unwrap()).unwrap();
        assert_eq!(a.len(), 1);
        let idx = build_full(&t, &a, true).unwrap();
        assert_eq!(idx.rlcp(), &[0]);
        assert_eq!(idx.grid().unwrap().report(1, 1, 1, 1), vec![(1, 1)]);
    }

    #[test]
    fn rejects_foreign_inputs() {
        let t = Text::new("aacaaacgcta").unwrap();
        let other = Text::new("aacaaacgctaaaaa").unwrap();
        let a = naive_anchors(&other, &AnchorScheme::lex(5, 1).unwrap()).unwrap();
        assert_eq!(build_full(&t, &a, false), Err(Error::ForeignAnchorSet));
        let a = naive_anchors(&t, &AnchorScheme::lex(5, 1).unwrap()).unwrap();
        let kr = KrContext::new(other.as_bytes(), 1);
        assert_eq!(build_sparse(&t, &a, &kr, false), Err(Error::ForeignContext));
    }

    #[test]
    fn random_texts_match_oracle_and_each_other() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for round in 0..30 {
            let sigma = [2u8, 4, 96][round % 3];
            let s: Vec<u8> = (0..800).map(|_| b' ' + rng.gen_range(0..sigma)).collect();
            let t = Text::new(s).unwrap();
            let scheme = if round % 2 == 0 {
                AnchorScheme::lex(12, 3).unwrap()
            } else {
                AnchorScheme::randomized(12, 3, round as u64).unwrap()
            };
            let a = fast_anchors(&t, &scheme, 100).unwrap();
            let full = build_full(&t, &a, true).unwrap();
            assert_eq!(arrays(&full), oracle(t.as_bytes(), a.positions()));
            for stride in [1, 16] {
                let kr = KrContext::with_stride(t.as_bytes(), 9, stride);
                assert_eq!(build_sparse(&t, &a, &kr, true).unwrap(), full);
            }
        }
    }

    #[test]
    fn unary_text_builders_agree() {
        let t = Text::new(vec![b'a'; 500]).unwrap();
        let a = fast_anchors(&t, &AnchorScheme::lex(8, 2).unwrap(), 16).unwrap();
        let full = build_full(&t, &a, false).unwrap();
        let kr = KrContext::new(t.as_bytes(), 2);
        assert_eq!(build_sparse(&t, &a, &kr, false).unwrap(), full);
        assert_eq!(arrays(&full), oracle(t.as_bytes(), a.positions()));
    }
}
