//! Static 2D orthogonal range reporting over a permutation grid.
//!
//! Points are `(x, y)` with both coordinates permutations of `[1, m]`. The
//! y-values, listed in x order, are stored in a wavelet matrix; a rectangle
//! query walks the levels, narrowing the x-interval with rank queries and
//! pruning value ranges that miss `[y_lo, y_hi]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct RankBits {
    words: Vec<u64>,
    /// Ones before each word.
    before: Vec<u32>,
}

impl RankBits {
    fn new(bits: impl Iterator<Item = bool>, len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, b) in bits.enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut before = Vec::with_capacity(words.len());
        let mut acc = 0u32;
        for w in &words {
            before.push(acc);
            acc += w.count_ones();
        }
        Self { words, before }
    }

    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let (q, rem) = (i / 64, i % 64);
        if q == self.words.len() {
            return self.before.last().map_or(0, |&b| b as usize + self.words[q - 1].count_ones() as usize);
        }
        self.before[q] as usize + (self.words[q] & ((1u64 << rem) - 1)).count_ones() as usize
    }

    #[inline]
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid2D {
    m: usize,
    bits: u32,
    levels: Vec<RankBits>,
    zeros: Vec<usize>,
    /// 0-based x for each 0-based y.
    x_of_y: Vec<u32>,
}

/// Build from `(x, y)` pairs, both 1-based permutations of `[1, m]`.
pub fn build_grid(points: &[(usize, usize)]) -> Result<Grid2D> {
    let m = points.len();
    let mut ys = vec![0usize; m];
    let mut seen = vec![false; m];
    for &(x, y) in points {
        if x == 0 || x > m || y == 0 || y > m || ys[x - 1] != 0 || seen[y - 1] {
            return Err(Error::NotPermutation);
        }
        ys[x - 1] = y;
        seen[y - 1] = true;
    }
    Grid2D::from_ys(&ys)
}

impl Grid2D {
    /// Build from the y-coordinate (1-based) of each x = 1..=m.
    pub fn from_ys(ys: &[usize]) -> Result<Self> {
        let m = ys.len();
        let mut x_of_y = vec![u32::MAX; m];
        for (x, &y) in ys.iter().enumerate() {
            if y == 0 || y > m || x_of_y[y - 1] != u32::MAX {
                return Err(Error::NotPermutation);
            }
            x_of_y[y - 1] = x as u32;
        }
        let bits = (usize::BITS - m.saturating_sub(1).leading_zeros()).max(1);
        let mut cur: Vec<u32> = ys.iter().map(|&y| (y - 1) as u32).collect();
        let mut levels = Vec::with_capacity(bits as usize);
        let mut zeros = Vec::with_capacity(bits as usize);
        for level in 0..bits {
            let shift = bits - 1 - level;
            levels.push(RankBits::new(cur.iter().map(|&v| v >> shift & 1 == 1), m));
            let (lo, hi): (Vec<u32>, Vec<u32>) = cur.iter().partition(|&&v| v >> shift & 1 == 0);
            zeros.push(lo.len());
            cur = lo;
            cur.extend(hi);
        }
        Ok(Self { m, bits, levels, zeros, x_of_y })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// y (1-based) of every x = 1..=m.
    pub fn ys(&self) -> Vec<usize> {
        let mut ys = vec![0; self.m];
        for (y, &x) in self.x_of_y.iter().enumerate() {
            ys[x as usize] = y + 1;
        }
        ys
    }

    pub fn words(&self) -> usize {
        let level_words: usize = self.levels.iter().map(|l| l.words.len() + l.before.len().div_ceil(2)).sum();
        level_words + self.zeros.len() + self.m.div_ceil(2) + 2
    }

    fn clamp(&self, lo: usize, hi: usize) -> Option<(usize, usize)> {
        let lo = lo.max(1);
        let hi = hi.min(self.m);
        (lo <= hi).then_some((lo, hi))
    }

    /// Points in the closed rectangle `[x_lo, x_hi] × [y_lo, y_hi]`, sorted
    /// by x. Empty or inverted bounds give no points.
    pub fn report(&self, x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let (Some((xl, xh)), Some((yl, yh))) = (self.clamp(x_lo, x_hi), self.clamp(y_lo, y_hi)) else {
            return out;
        };
        self.walk(0, xl - 1, xh, 0, (yl - 1, yh - 1), &mut |y| {
            out.push((self.x_of_y[y] as usize + 1, y + 1));
        });
        out.sort_unstable();
        out
    }

    /// Number of points in the rectangle, without enumerating them.
    pub fn count(&self, x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> usize {
        let (Some((xl, xh)), Some((yl, yh))) = (self.clamp(x_lo, x_hi), self.clamp(y_lo, y_hi)) else {
            return 0;
        };
        self.count_rec(0, xl - 1, xh, 0, (yl - 1, yh - 1))
    }

    fn node_span(&self, level: u32, prefix: usize) -> (usize, usize) {
        let width = self.bits - level;
        (prefix << width, ((prefix + 1) << width) - 1)
    }

    fn children(&self, level: u32, l: usize, r: usize) -> ((usize, usize), (usize, usize)) {
        let bv = &self.levels[level as usize];
        let (l0, r0) = (bv.rank0(l), bv.rank0(r));
        let z = self.zeros[level as usize];
        ((l0, r0), (z + l - l0, z + r - r0))
    }

    fn walk(&self, level: u32, l: usize, r: usize, prefix: usize, ys: (usize, usize), emit: &mut impl FnMut(usize)) {
        let (lo, hi) = self.node_span(level, prefix);
        if l >= r || hi < ys.0 || lo > ys.1 {
            return;
        }
        if level == self.bits {
            // Permutation grid: a leaf holds exactly one point.
            emit(prefix);
            return;
        }
        let ((l0, r0), (l1, r1)) = self.children(level, l, r);
        self.walk(level + 1, l0, r0, prefix << 1, ys, emit);
        self.walk(level + 1, l1, r1, prefix << 1 | 1, ys, emit);
    }

    fn count_rec(&self, level: u32, l: usize, r: usize, prefix: usize, ys: (usize, usize)) -> usize {
        let (lo, hi) = self.node_span(level, prefix);
        if l >= r || hi < ys.0 || lo > ys.1 {
            return 0;
        }
        if ys.0 <= lo && hi <= ys.1 {
            return r - l;
        }
        let ((l0, r0), (l1, r1)) = self.children(level, l, r);
        self.count_rec(level + 1, l0, r0, prefix << 1, ys) + self.count_rec(level + 1, l1, r1, prefix << 1 | 1, ys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(ys: &[usize], x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> Vec<(usize, usize)> {
        ys.iter()
            .enumerate()
            .map(|(x, &y)| (x + 1, y))
            .filter(|&(x, y)| x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi)
            .collect()
    }

    #[test]
    fn single_point() {
        let g = build_grid(&[(1, 1)]).unwrap();
        assert_eq!(g.report(1, 1, 1, 1), vec![(1, 1)]);
    }

    #[test]
    fn diagonal() {
        let pts: Vec<_> = (1..=8).map(|i| (i, i)).collect();
        let g = build_grid(&pts).unwrap();
        assert_eq!(g.report(3, 6, 3, 6), vec![(3, 3), (4, 4), (5, 5), (6, 6)]);
        assert_eq!(g.report(1, 8, 1, 8).len(), 8);
        assert!(g.report(4, 3, 1, 8).is_empty());
        assert!(g.report(1, 8, 9, 12).is_empty());
    }

    #[test]
    fn rejects_non_permutations() {
        assert_eq!(build_grid(&[(1, 1), (1, 2)]), Err(Error::NotPermutation));
        assert_eq!(build_grid(&[(1, 2), (2, 2)]), Err(Error::NotPermutation));
        assert_eq!(build_grid(&[(1, 3), (2, 1)]), Err(Error::NotPermutation));
    }

    #[test]
    fn empty_grid() {
        let g = build_grid(&[]).unwrap();
        assert!(g.report(1, 1, 1, 1).is_empty());
    }

    #[test]
    fn random_permutations_all_rectangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..200 {
            let m = rng.gen_range(1..=40);
            let mut ys: Vec<usize> = (1..=m).collect();
            ys.shuffle(&mut rng);
            let g = Grid2D::from_ys(&ys).unwrap();
            assert_eq!(g.ys(), ys);
            for _ in 0..50 {
                let (x_lo, x_hi) = (rng.gen_range(1..=m), rng.gen_range(1..=m));
                let (y_lo, y_hi) = (rng.gen_range(1..=m), rng.gen_range(1..=m));
                let want = brute(&ys, x_lo, x_hi, y_lo, y_hi);
                assert_eq!(g.report(x_lo, x_hi, y_lo, y_hi), want);
                assert_eq!(g.count(x_lo, x_hi, y_lo, y_hi), want.len());
            }
        }
    }
}
