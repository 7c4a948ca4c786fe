//! Range-minimum structures.

/// Classic sparse table: O(m log m) entries, O(1) query.
#[derive(Debug, Clone)]
pub struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: &[u32]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=values.len() - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.levels[0]
    }

    /// Minimum over the inclusive 0-based range `[a, b]`.
    #[inline]
    pub fn min(&self, a: usize, b: usize) -> u32 {
        debug_assert!(a <= b && b < self.len());
        let k = usize::BITS - 1 - (b - a + 1).leading_zeros();
        let row = &self.levels[k as usize];
        row[a].min(row[b + 1 - (1 << k)])
    }

    /// Storage in 64-bit words.
    pub fn words(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum::<usize>().div_ceil(2)
    }
}

const BLOCK: usize = 32;

/// Linear-space RMQ: a sparse table over per-block minima plus a scan of at
/// most two partial blocks. The value array itself is not stored; callers
/// pass it on each query.
#[derive(Debug, Clone)]
pub struct BlockRmq {
    len: usize,
    blocks: SparseTable,
}

impl BlockRmq {
    pub fn new(values: &[u64]) -> Self {
        let minima: Vec<u32> =
            values.chunks(BLOCK).map(|c| c.iter().copied().min().unwrap_or(0).min(u32::MAX as u64) as u32).collect();
        Self { len: values.len(), blocks: SparseTable::new(&minima) }
    }

    /// Minimum of `values[a..=b]`; `values` must be the array this was built on.
    pub fn min(&self, values: &[u64], a: usize, b: usize) -> u64 {
        debug_assert_eq!(values.len(), self.len);
        debug_assert!(a <= b && b < self.len);
        let (ba, bb) = (a / BLOCK, b / BLOCK);
        if bb - ba <= 1 {
            return values[a..=b].iter().copied().min().unwrap();
        }
        let head = values[a..(ba + 1) * BLOCK].iter().copied().min().unwrap();
        let tail = values[bb * BLOCK..=b].iter().copied().min().unwrap();
        let mid = self.blocks.min(ba + 1, bb - 1) as u64;
        // Block minima saturate at u32::MAX; fall back to a scan if hit.
        let mid = if mid == u32::MAX as u64 {
            values[(ba + 1) * BLOCK..bb * BLOCK].iter().copied().min().unwrap()
        } else {
            mid
        };
        head.min(tail).min(mid)
    }

    pub fn words(&self) -> usize {
        self.blocks.words() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sparse_table_matches_scan(values in proptest::collection::vec(0u32..50, 1..300), a in 0usize..300, b in 0usize..300) {
            let (a, b) = ((a % values.len()).min(b % values.len()), (a % values.len()).max(b % values.len()));
            let st = SparseTable::new(&values);
            prop_assert_eq!(st.min(a, b), *values[a..=b].iter().min().unwrap());
        }

        #[test]
        fn block_rmq_matches_scan(values in proptest::collection::vec(0u64..1000, 1..500), a in 0usize..500, b in 0usize..500) {
            let (a, b) = ((a % values.len()).min(b % values.len()), (a % values.len()).max(b % values.len()));
            let rmq = BlockRmq::new(&values);
            prop_assert_eq!(rmq.min(&values, a, b), *values[a..=b].iter().min().unwrap());
        }
    }
}
