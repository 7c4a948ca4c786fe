//! Karp-Rabin fingerprints modulo the Mersenne prime `2^61 - 1`.
//!
//! The fingerprint of `S[i..=j]` is `sum S[k] * rho^(j-k) mod p`. A
//! [`KrContext`] keeps prefix fingerprints so any fragment hashes in O(1);
//! with a checkpoint stride `s > 1` it keeps only every `s`-th prefix and
//! extends from the nearest checkpoint, trading O(s) per probe for `n/s`
//! words of memory.

use crate::error::{Error, Result};

/// The modulus, `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64) -> u64 {
    let prod = a as u128 * b as u128;
    let s = (prod as u64 & PRIME) + (prod >> 61) as u64;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the fingerprint base from a user seed. Bases 0 and 1 are skipped.
pub fn base_from_seed(seed: u64) -> u64 {
    let mut state = seed;
    loop {
        let rho = splitmix64(&mut state) % PRIME;
        if rho >= 2 {
            return rho;
        }
    }
}

/// Content-only fingerprinting with a fixed base; no text attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fingerprinter {
    seed: u64,
    rho: u64,
}

impl Fingerprinter {
    pub fn new(seed: u64) -> Self {
        Self { seed, rho: base_from_seed(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn base(&self) -> u64 {
        self.rho
    }

    pub fn pow(&self, mut e: u64) -> u64 {
        let (mut acc, mut b) = (1u64, self.rho);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, b);
            }
            b = mul_mod(b, b);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation over the whole slice.
    pub fn hash(&self, bytes: &[u8]) -> u64 {
        bytes.iter().fold(0, |h, &c| add_mod(mul_mod(h, self.rho), c as u64))
    }

    /// Fingerprints of every length-`k` fragment of `bytes`, left to right,
    /// by rolling the window one letter at a time.
    pub fn rolling(&self, bytes: &[u8], k: usize) -> Vec<u64> {
        if k == 0 || bytes.len() < k {
            return Vec::new();
        }
        let top = self.pow(k as u64 - 1);
        let mut out = Vec::with_capacity(bytes.len() - k + 1);
        let mut h = self.hash(&bytes[..k]);
        out.push(h);
        for t in k..bytes.len() {
            h = sub_mod(h, mul_mod(bytes[t - k] as u64, top));
            h = add_mod(mul_mod(h, self.rho), bytes[t] as u64);
            out.push(h);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    Forward,
    Reverse,
}

/// Prefix fingerprints over a borrowed text, or over its reverse.
#[derive(Debug, Clone)]
pub struct KrContext<'t> {
    text: &'t [u8],
    orientation: Orientation,
    fp: Fingerprinter,
    stride: usize,
    /// Prefix fingerprint of length `q * stride`.
    checkpoints: Vec<u64>,
    /// `rho^t` for `t` in `[0, stride]`.
    pow_small: Vec<u64>,
    /// `rho^(q * stride)`.
    pow_big: Vec<u64>,
}

/// Dense context: one prefix fingerprint and one power per position.
pub fn build_kr(text: &crate::Text, seed: u64) -> KrContext<'_> {
    KrContext::new(text.as_bytes(), seed)
}

impl<'t> KrContext<'t> {
    pub fn new(text: &'t [u8], seed: u64) -> Self {
        Self::build(text, seed, 1, Orientation::Forward)
    }

    pub fn with_stride(text: &'t [u8], seed: u64, stride: usize) -> Self {
        Self::build(text, seed, stride.max(1), Orientation::Forward)
    }

    /// Context over the reverse of `text` without materializing it.
    pub fn reversed(text: &'t [u8], seed: u64, stride: usize) -> Self {
        Self::build(text, seed, stride.max(1), Orientation::Reverse)
    }

    fn build(text: &'t [u8], seed: u64, stride: usize, orientation: Orientation) -> Self {
        let fp = Fingerprinter::new(seed);
        let n = text.len();
        let mut ctx = Self {
            text,
            orientation,
            fp,
            stride,
            checkpoints: Vec::with_capacity(n / stride + 1),
            pow_small: Vec::with_capacity(stride + 1),
            pow_big: Vec::with_capacity(n / stride + 1),
        };
        let mut p = 1;
        for _ in 0..=stride {
            ctx.pow_small.push(p);
            p = mul_mod(p, fp.rho);
        }
        let step = ctx.pow_small[stride];
        let (mut h, mut pw) = (0, 1);
        ctx.checkpoints.push(0);
        ctx.pow_big.push(1);
        for t in 1..=n {
            h = add_mod(mul_mod(h, fp.rho), ctx.letter(t) as u64);
            if t % stride == 0 {
                pw = mul_mod(pw, step);
                ctx.checkpoints.push(h);
                ctx.pow_big.push(pw);
            }
        }
        ctx
    }

    #[inline]
    fn letter(&self, t: usize) -> u8 {
        match self.orientation {
            Orientation::Forward => self.text[t - 1],
            Orientation::Reverse => self.text[self.text.len() - t],
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.fp.seed
    }

    pub fn base(&self) -> u64 {
        self.fp.rho
    }

    pub fn prime(&self) -> u64 {
        PRIME
    }

    pub fn fingerprinter(&self) -> Fingerprinter {
        self.fp
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn is_reversed(&self) -> bool {
        self.orientation == Orientation::Reverse
    }

    /// True when this context hashes exactly `bytes` in forward orientation.
    pub fn is_over(&self, bytes: &[u8]) -> bool {
        self.orientation == Orientation::Forward && (std::ptr::eq(self.text, bytes) || self.text == bytes)
    }

    /// Memory held by the tables, in 64-bit words.
    pub fn words(&self) -> usize {
        self.checkpoints.len() + self.pow_small.len() + self.pow_big.len()
    }

    /// `rho^len mod p`.
    #[inline]
    pub fn power(&self, len: usize) -> u64 {
        if self.stride == 1 {
            return self.pow_big[len];
        }
        mul_mod(self.pow_big[len / self.stride], self.pow_small[len % self.stride])
    }

    /// Fingerprint of the length-`t` prefix.
    #[inline]
    fn prefix(&self, t: usize) -> u64 {
        let q = t / self.stride;
        let mut h = self.checkpoints[q];
        for u in q * self.stride + 1..=t {
            h = add_mod(mul_mod(h, self.fp.rho), self.letter(u) as u64);
        }
        h
    }

    #[inline]
    fn hash_unchecked(&self, i: usize, j: usize) -> u64 {
        sub_mod(self.prefix(j), mul_mod(self.prefix(i - 1), self.power(j - i + 1)))
    }

    /// Fingerprint of `S[i..=j]`, 1-based inclusive.
    pub fn fragment_hash(&self, i: usize, j: usize) -> Result<u64> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::RangeOutOfBounds { i, j, len: self.len() });
        }
        Ok(self.hash_unchecked(i, j))
    }
}

/// Longest `m <= cap` such that the length-`m` fragments starting at `i` in
/// `a` and at `j` in `b` have equal fingerprints.
///
/// Probes lengths 1, 2, 4, ... until a mismatch, then bisects, so the cost
/// is O(log m) probes rather than O(log cap).
pub fn kr_lce(a: &KrContext<'_>, i: usize, b: &KrContext<'_>, j: usize, cap: usize) -> Result<usize> {
    if a.fp != b.fp {
        return Err(Error::IncompatibleContexts);
    }
    if i == 0 || i > a.len() {
        return Err(Error::PositionOutOfRange { pos: i, len: a.len() });
    }
    if j == 0 || j > b.len() {
        return Err(Error::PositionOutOfRange { pos: j, len: b.len() });
    }
    let room = (a.len() - i + 1).min(b.len() - j + 1);
    if cap > room {
        return Err(Error::RangeOutOfBounds { i, j: i.saturating_add(cap - 1), len: room });
    }
    Ok(lce_unchecked(a, i, b, j, cap))
}

pub(crate) fn lce_unchecked(a: &KrContext<'_>, i: usize, b: &KrContext<'_>, j: usize, cap: usize) -> usize {
    if cap == 0 || a.letter(i) != b.letter(j) {
        return 0;
    }
    let base_a = a.prefix(i - 1);
    let base_b = b.prefix(j - 1);
    let equal = |m: usize| {
        let ha = sub_mod(a.prefix(i + m - 1), mul_mod(base_a, a.power(m)));
        let hb = sub_mod(b.prefix(j + m - 1), mul_mod(base_b, b.power(m)));
        ha == hb
    };
    // `good` is known equal, `bad` is known unequal (or past cap).
    let mut good = 1;
    let mut bad = cap + 1;
    let mut probe = 2;
    while probe <= cap {
        if equal(probe) {
            good = probe;
            probe *= 2;
        } else {
            bad = probe;
            break;
        }
    }
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if equal(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}
