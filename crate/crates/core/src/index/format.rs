//! Binary index file, little-endian:
//!
//! ```text
//! "BDIX" | version u32 | kind u8 | ell u64 | r u64 | seed u64 | p u64 | n u64
//!        | count u64 | rsa[count] | rlcp[count] | lsa[count] | llcp[count]
//!        | grid-present u8 | grid payload
//! ```
//!
//! The grid payload is `grid-version u32 | m u64 | y[m] u64`, the lsa rank
//! of each rsa rank. The text is not stored.

use std::io::{Read, Write};

use super::BdIndex;
use crate::anchors::{AnchorKind, AnchorScheme};
use crate::error::{Error, Result};
use crate::kr::PRIME;
use crate::range2d::Grid2D;

const MAGIC: &[u8; 4] = b"BDIX";
pub const FORMAT_VERSION: u32 = 1;
const GRID_VERSION: u32 = 1;

fn put_u64(w: &mut impl Write, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn put_array(w: &mut impl Write, values: &[u64]) -> Result<()> {
    for &v in values {
        put_u64(w, v)?;
    }
    Ok(())
}

fn get<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format("truncated".into()),
        _ => e.into(),
    })?;
    Ok(buf)
}

fn get_u64(r: &mut impl Read) -> Result<u64> {
    Ok(u64::from_le_bytes(get::<8>(r)?))
}

fn get_array(r: &mut impl Read, count: usize) -> Result<Vec<u64>> {
    let mut v = Vec::with_capacity(count.min(1 << 24));
    for _ in 0..count {
        v.push(get_u64(r)?);
    }
    Ok(v)
}

impl BdIndex {
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        let kind = match self.scheme.kind() {
            AnchorKind::Lex => 0u8,
            AnchorKind::Randomized => 1u8,
        };
        w.write_all(&[kind])?;
        for v in [
            self.scheme.ell() as u64,
            self.scheme.r() as u64,
            self.scheme.seed(),
            PRIME,
            self.n as u64,
            self.len() as u64,
        ] {
            put_u64(&mut w, v)?;
        }
        for arr in [&self.rsa, &self.rlcp, &self.lsa, &self.llcp] {
            put_array(&mut w, arr)?;
        }
        match &self.grid {
            None => w.write_all(&[0])?,
            Some(g) => {
                w.write_all(&[1])?;
                w.write_all(&GRID_VERSION.to_le_bytes())?;
                put_u64(&mut w, g.len() as u64)?;
                for y in g.ys() {
                    put_u64(&mut w, y as u64)?;
                }
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        if &get::<4>(&mut r)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u32::from_le_bytes(get::<4>(&mut r)?);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let kind = match get::<1>(&mut r)?[0] {
            0 => AnchorKind::Lex,
            1 => AnchorKind::Randomized,
            k => return Err(Error::Format(format!("unknown anchor kind {k}"))),
        };
        let ell = get_u64(&mut r)? as usize;
        let rr = get_u64(&mut r)? as usize;
        let seed = get_u64(&mut r)?;
        let p = get_u64(&mut r)?;
        if p != PRIME {
            return Err(Error::Format(format!("unsupported fingerprint modulus {p}")));
        }
        let n = get_u64(&mut r)? as usize;
        let count = get_u64(&mut r)? as usize;
        if count > n {
            return Err(Error::Format("more anchors than text positions".into()));
        }
        let scheme = AnchorScheme::new(ell, rr, kind, seed).map_err(|e| Error::Format(e.to_string()))?;
        let rsa = get_array(&mut r, count)?;
        let rlcp = get_array(&mut r, count)?;
        let lsa = get_array(&mut r, count)?;
        let llcp = get_array(&mut r, count)?;
        if rsa.iter().chain(&lsa).any(|&a| a == 0 || a as usize > n) {
            return Err(Error::Format("anchor outside the text".into()));
        }
        let mut a: Vec<u64> = rsa.clone();
        let mut b: Vec<u64> = lsa.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b || a.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Format("rsa and lsa are not permutations of one anchor set".into()));
        }
        let grid = match get::<1>(&mut r)?[0] {
            0 => None,
            1 => {
                let gv = u32::from_le_bytes(get::<4>(&mut r)?);
                if gv != GRID_VERSION {
                    return Err(Error::Format(format!("unsupported grid version {gv}")));
                }
                let m = get_u64(&mut r)? as usize;
                if m != count {
                    return Err(Error::Format("grid size differs from anchor count".into()));
                }
                let ys: Vec<usize> = get_array(&mut r, m)?.into_iter().map(|y| y as usize).collect();
                Some(Grid2D::from_ys(&ys).map_err(|e| Error::Format(e.to_string()))?)
            }
            g => return Err(Error::Format(format!("bad grid flag {g}"))),
        };
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(Error::Format("trailing bytes".into()));
        }
        Ok(BdIndex::from_arrays(scheme, n, rsa, rlcp, lsa, llcp, grid))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::read_from(bytes)
    }
}
