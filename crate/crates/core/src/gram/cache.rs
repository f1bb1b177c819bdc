//! Batches of Gram points on a uniform index grid, with a bit-exact binary
//! file format and a CSV export.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;

use super::{gram_point, gram_point_from, GramPoint};
use crate::error::{Error, Result};
use crate::summation::CHUNK;
use crate::theta::{theta_offset, theta_prime_any};

pub const CACHE_MAGIC: &[u8; 9] = b"GRAMCACHE";
pub const CACHE_VERSION: u8 = 1;

/// Gram abscissas g(x_lo + i·stride), i = 0..count.
#[derive(Clone, Debug, PartialEq)]
pub struct GramCache {
    x_lo: f64,
    stride: f64,
    t: Vec<f64>,
}

impl GramCache {
    /// Generate g over `[x_lo, x_hi]`. Points are produced in fixed chunks of
    /// [`CHUNK`] indices; each chunk starts cold and warm-starts the rest from
    /// its predecessor, so the output does not depend on the worker count.
    pub fn generate(x_lo: f64, x_hi: f64, stride: f64, tol: f64) -> Result<Self> {
        if !(stride > 0.0) || !(x_hi >= x_lo) || x_lo < -1.0 {
            return Err(Error::Precondition(format!(
                "invalid Gram range [{x_lo}, {x_hi}] with stride {stride}"
            )));
        }
        let count = ((x_hi - x_lo) / stride + 1e-9).floor() as usize + 1;
        let chunks = count.div_ceil(CHUNK);
        let parts: Vec<Result<Vec<f64>>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(count);
                let mut out = Vec::with_capacity(hi - lo);
                let mut prev: Option<f64> = None;
                for i in lo..hi {
                    let x = x_lo + i as f64 * stride;
                    let p = match prev {
                        None => gram_point(x, tol)?,
                        Some(t) => {
                            let guess = t + stride * std::f64::consts::PI / theta_prime_any(t)?.value;
                            gram_point_from(x, guess, tol)?
                        }
                    };
                    prev = Some(p.t);
                    out.push(p.t);
                }
                Ok(out)
            })
            .collect();
        let mut t = Vec::with_capacity(count);
        for p in parts {
            t.extend(p?);
        }
        Ok(GramCache { x_lo, stride, t })
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn stride(&self) -> f64 {
        self.stride
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x_lo + i as f64 * self.stride
    }

    pub fn t_at(&self, i: usize) -> f64 {
        self.t[i]
    }

    pub fn abscissas(&self) -> &[f64] {
        &self.t
    }

    /// Index of `x` on the grid, if it is a grid point.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let k = (x - self.x_lo) / self.stride;
        let i = k.round();
        if (k - i).abs() < 1e-9 && i >= 0.0 && (i as usize) < self.t.len() {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Full point record with the residual recomputed.
    pub fn point(&self, i: usize) -> Result<GramPoint> {
        let x = self.x_at(i);
        let t = self.t[i];
        Ok(GramPoint {
            x,
            t,
            residual: theta_offset(t, x)?.abs(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let io = |e| Error::io(path, e);
        w.write_all(CACHE_MAGIC).map_err(io)?;
        w.write_all(&[CACHE_VERSION]).map_err(io)?;
        w.write_all(&self.stride.to_le_bytes()).map_err(io)?;
        w.write_all(&self.x_lo.to_le_bytes()).map_err(io)?;
        w.write_all(&(self.t.len() as u64).to_le_bytes()).map_err(io)?;
        for t in &self.t {
            w.write_all(&t.to_le_bytes()).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut r = BufReader::new(file);
        let mut magic = [0u8; 10];
        r.read_exact(&mut magic)
            .map_err(|_| Error::format(path, "truncated header"))?;
        if &magic[..9] != CACHE_MAGIC {
            return Err(Error::format(path, "not a Gram cache file"));
        }
        if magic[9] != CACHE_VERSION {
            return Err(Error::format(
                path,
                format!(
                    "cache version {} does not match supported version {}",
                    magic[9], CACHE_VERSION
                ),
            ));
        }
        let mut buf = [0u8; 8];
        let mut next = |r: &mut BufReader<File>| -> Result<[u8; 8]> {
            r.read_exact(&mut buf)
                .map_err(|_| Error::format(path, "truncated file"))?;
            Ok(buf)
        };
        let stride = f64::from_le_bytes(next(&mut r)?);
        let x_lo = f64::from_le_bytes(next(&mut r)?);
        let count = u64::from_le_bytes(next(&mut r)?) as usize;
        let mut t = Vec::with_capacity(count);
        for _ in 0..count {
            t.push(f64::from_le_bytes(next(&mut r)?));
        }
        let mut rest = Vec::new();
        r.read_to_end(&mut rest).map_err(|e| Error::io(path, e))?;
        if !rest.is_empty() {
            return Err(Error::format(path, "trailing bytes after abscissas"));
        }
        Ok(GramCache { x_lo, stride, t })
    }

    /// The first `count` points.
    pub fn truncated(&self, count: usize) -> GramCache {
        GramCache {
            x_lo: self.x_lo,
            stride: self.stride,
            t: self.t[..count.min(self.t.len())].to_vec(),
        }
    }

    /// File name used by [`GramCache::load_or_generate`].
    pub fn file_name(x_lo: f64, stride: f64, tol: f64) -> String {
        format!("gram_{x_lo}_{stride}_{tol:e}.bin")
    }

    /// Reuse the cache file in `dir` when it covers the requested grid,
    /// otherwise generate the grid and overwrite the file.
    pub fn load_or_generate(dir: &Path, x_lo: f64, x_hi: f64, stride: f64, tol: f64) -> Result<Self> {
        let count = ((x_hi - x_lo) / stride + 1e-9).floor() as usize + 1;
        let path = dir.join(Self::file_name(x_lo, stride, tol));
        if path.exists() {
            let c = Self::load(&path)?;
            if c.x_lo == x_lo && c.stride == stride && c.len() >= count {
                return Ok(c.truncated(count));
            }
        }
        let c = Self::generate(x_lo, x_hi, stride, tol)?;
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        c.save(&path)?;
        Ok(c)
    }

    /// CSV with header `x,t,residual`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W, sep: char) -> Result<()> {
        let io = |e| Error::io("<csv>", e);
        writeln!(w, "x{sep}t{sep}residual").map_err(io)?;
        for i in 0..self.len() {
            let p = self.point(i)?;
            writeln!(w, "{}{sep}{}{sep}{:.16e}", sig17(p.x), sig17(p.t), p.residual).map_err(io)?;
        }
        Ok(())
    }
}

/// Positional decimal with 17 significant digits.
pub(crate) fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.16}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (16 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_indexing() {
        let c = GramCache::generate(0.0, 11.0, 1.0, 1e-10).unwrap();
        assert_eq!(c.len(), 12);
        assert_eq!(c.index_of(5.0), Some(5));
        assert_eq!(c.index_of(5.5), None);
        assert!(c.abscissas().windows(2).all(|w| w[0] < w[1]));
        let h = GramCache::generate(-1.0, 2.0, 0.5, 1e-10).unwrap();
        assert_eq!(h.len(), 7);
    }

    #[test]
    fn invalid_ranges() {
        assert!(GramCache::generate(0.0, 10.0, 0.0, 1e-10).is_err());
        assert!(GramCache::generate(5.0, 1.0, 1.0, 1e-10).is_err());
        assert!(GramCache::generate(-2.0, 1.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn sig17_digits() {
        let x = 17.845_599_540_410_86;
        assert_eq!(sig17(x).len(), 18);
        assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
        assert_eq!(sig17(5.0), "5.0000000000000000");
    }
}
