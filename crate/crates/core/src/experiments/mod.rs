//! Gram-point sums, the auxiliary sums, and their CSV reports.

mod calibrate;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

pub use calibrate::{calibrate, CalibrationSeeds};
pub use report::{write_pair_csv, write_cosine_csv, write_sum_csv, Format};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::gram::{GramCache, DEFAULT_TOL};
use crate::special::EULER_GAMMA;
use crate::summation::{Neumaier, CHUNK};
use crate::zfun::{z_at_gram_abscissa, Method};

/// Environment variable naming the default Gram cache directory.
pub const CACHE_DIR_ENV: &str = "HARDYZ_CACHE_DIR";

/// Where Gram abscissas come from.
#[derive(Clone, Debug)]
pub struct Context {
    pub cache_dir: Option<PathBuf>,
    pub tolerance: f64,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            cache_dir: None,
            tolerance: DEFAULT_TOL,
        }
    }
}

impl Context {
    /// Default context with the cache directory taken from the environment.
    pub fn from_env() -> Self {
        Context {
            cache_dir: std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from),
            tolerance: DEFAULT_TOL,
        }
    }

    /// g(0), g(1), …, g(max_index).
    pub fn gram_cache(&self, max_index: u64) -> Result<GramCache> {
        let hi = max_index as f64;
        match &self.cache_dir {
            Some(dir) => GramCache::load_or_generate(dir, 0.0, hi, 1.0, self.tolerance),
            None => GramCache::generate(0.0, hi, 1.0, self.tolerance),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn tag(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn parse(s: &str) -> Result<Parity> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Domain(format!("parity must be even or odd, got '{s}'"))),
        }
    }

    /// Gram index of the i-th term: 2n with n = i + 1 (even), 2n + 1 with
    /// n = i (odd).
    pub fn index(self, i: usize) -> u64 {
        match self {
            Parity::Even => 2 * (i as u64 + 1),
            Parity::Odd => 2 * i as u64 + 1,
        }
    }

    /// Expected main term ±2N.
    pub fn main_term(self, n: u64) -> f64 {
        match self {
            Parity::Even => 2.0 * n as f64,
            Parity::Odd => -2.0 * n as f64,
        }
    }

    /// Number of terms for "n ≤ N".
    pub fn terms(self, n: u64) -> usize {
        match self {
            Parity::Even => n as usize,
            Parity::Odd => n as usize + 1,
        }
    }
}

/// log log N, clamped below at 1.
fn loglog(n: f64) -> f64 {
    n.ln().ln().max(1.0)
}

/// |E| / (N^{1/4} (log N)^{3/4} log log N)
pub fn norm_new(e: f64, n: u64) -> f64 {
    let nf = n as f64;
    e.abs() / (nf.powf(0.25) * nf.ln().powf(0.75) * loglog(nf))
}

/// |E| / (N^{3/4} (log N)^{3/4})
pub fn norm_old(e: f64, n: u64) -> f64 {
    let nf = n as f64;
    e.abs() / (nf.powf(0.75) * nf.ln().powf(0.75))
}

/// |E| / (N^{3/4} (log N)^{1/4})
pub fn norm_ivic(e: f64, n: u64) -> f64 {
    let nf = n as f64;
    e.abs() / (nf.powf(0.75) * nf.ln().powf(0.25))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumReport {
    pub n: u64,
    pub parity: Parity,
    pub s: f64,
    /// S − 2N (even) or S + 2N (odd)
    pub e: f64,
    pub norm_new: f64,
    pub norm_old: f64,
    pub norm_ivic: f64,
    pub method: Method,
    pub wall_s: f64,
}

impl SumReport {
    fn new(n: u64, parity: Parity, s: f64, method: Method, wall_s: f64) -> Self {
        let e = s - parity.main_term(n);
        SumReport {
            n,
            parity,
            s,
            e,
            norm_new: norm_new(e, n),
            norm_old: norm_old(e, n),
            norm_ivic: norm_ivic(e, n),
            method,
            wall_s,
        }
    }
}

/// Z(g(k)) for each Gram index in `indices`, in order.
pub fn gram_z_values(indices: &[u64], method: Method, cache: &GramCache) -> Result<Vec<f64>> {
    indices
        .par_iter()
        .map(|&k| {
            let i = cache
                .index_of(k as f64)
                .ok_or_else(|| Error::Precondition(format!("Gram cache does not cover index {k}")))?;
            Ok(z_at_gram_abscissa(k as i64, cache.t_at(i), method)?.z)
        })
        .collect()
}

/// Compensated sums of `terms[..n]` for each n in `ns`, each bit-identical
/// to reducing that prefix alone: full 4096-term chunks are summed once and
/// merged in order, the trailing partial chunk separately.
pub fn prefix_sums(terms: &[f64], ns: &[usize]) -> Vec<f64> {
    let full: Vec<Neumaier> = terms
        .par_chunks(CHUNK)
        .map(|c| c.iter().copied().collect::<Neumaier>())
        .collect();
    ns.iter()
        .map(|&n| {
            let n = n.min(terms.len());
            let whole = n / CHUNK;
            let mut acc = Neumaier::new();
            for p in &full[..whole] {
                acc.merge(p);
            }
            let tail: Neumaier = terms[whole * CHUNK..n].iter().copied().collect();
            if n % CHUNK != 0 {
                acc.merge(&tail);
            }
            acc.value()
        })
        .collect()
}

fn check_n(n: u64, min: u64, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("{what} needs N >= {min}, got {n}")));
    }
    Ok(())
}

/// Σ_{n=1}^{N} Z(g(2n)) or Σ_{n=0}^{N} Z(g(2n+1)).
pub fn gram_sum(n: u64, parity: Parity, method: Method, ctx: &Context) -> Result<SumReport> {
    Ok(error_scan(&[n], &[parity], method, ctx)?.remove(0))
}

pub fn sum_even(n: u64, method: Method, ctx: &Context) -> Result<SumReport> {
    gram_sum(n, Parity::Even, method, ctx)
}

pub fn sum_odd(n: u64, method: Method, ctx: &Context) -> Result<SumReport> {
    gram_sum(n, Parity::Odd, method, ctx)
}

/// Reports for every N in an ascending grid and every parity, ordered by N
/// then parity. Terms are evaluated once up to the largest N and each
/// report reuses the prefix.
pub fn error_scan(grid: &[u64], parities: &[Parity], method: Method, ctx: &Context) -> Result<Vec<SumReport>> {
    if grid.is_empty() || parities.is_empty() {
        return Ok(Vec::new());
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("N grid must be ascending".into()));
    }
    for &n in grid {
        check_n(n, 10, "Gram sum")?;
    }
    let n_max = *grid.last().unwrap_or(&0);
    let start = Instant::now();
    let cache = ctx.gram_cache(2 * n_max + 1)?;
    let mut by_parity = Vec::new();
    for &parity in parities {
        let indices: Vec<u64> = (0..parity.terms(n_max)).map(|i| parity.index(i)).collect();
        let terms = gram_z_values(&indices, method, &cache)?;
        let counts: Vec<usize> = grid.iter().map(|&n| parity.terms(n)).collect();
        by_parity.push((parity, prefix_sums(&terms, &counts)));
    }
    let wall = start.elapsed().as_secs_f64();
    let mut out = Vec::new();
    for (k, &n) in grid.iter().enumerate() {
        for (parity, sums) in &by_parity {
            out.push(SumReport::new(n, *parity, sums[k], method, wall));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSumReport {
    pub n: u64,
    /// Σ_{n=1}^{N} Z(g(n)) Z(g(n+1))
    pub p: f64,
    /// −2(γ + 1) N
    pub target: f64,
    /// |P − target| / N
    pub rel_dev: f64,
    /// Σ Z(g(n))² Z(g(n+1))² / (N log² N)
    pub moser: f64,
    pub method: Method,
    pub wall_s: f64,
}

/// Pair sum and the fourth-moment statistic from one pass over Z(g(1..N+1)).
pub fn pair_sum(n: u64, method: Method, ctx: &Context) -> Result<PairSumReport> {
    check_n(n, 100, "pair sum")?;
    let start = Instant::now();
    let cache = ctx.gram_cache(n + 1)?;
    let indices: Vec<u64> = (1..=n + 1).collect();
    let z = gram_z_values(&indices, method, &cache)?;
    let prods: Vec<f64> = z.windows(2).map(|w| w[0] * w[1]).collect();
    let squares: Vec<f64> = prods.iter().map(|p| p * p).collect();
    let len = prods.len();
    let p = prefix_sums(&prods, &[len])[0];
    let q = prefix_sums(&squares, &[len])[0];
    let nf = n as f64;
    let target = -2.0 * (EULER_GAMMA + 1.0) * nf;
    Ok(PairSumReport {
        n,
        p,
        target,
        rel_dev: (p - target).abs() / nf,
        moser: q / (nf * nf.ln().powi(2)),
        method,
        wall_s: start.elapsed().as_secs_f64(),
    })
}

/// Σ Z(g(n))² Z(g(n+1))² / (N log² N) over n = 1..N.
pub fn moser_fourth(n: u64, method: Method, ctx: &Context) -> Result<f64> {
    Ok(pair_sum(n, method, ctx)?.moser)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosineReport {
    pub n: u64,
    pub t: f64,
    /// T − N
    pub e: f64,
    /// |E| / (N^{1/4} (log N)^{−1/4})
    pub norm: f64,
    pub wall_s: f64,
}

/// Σ_{k ≤ ⌊√(g/2π)⌋} cos(g log k)/√k at g.
pub fn cosine_inner(g: f64) -> f64 {
    let kmax = (g / (2.0 * std::f64::consts::PI)).sqrt().floor() as usize;
    let mut acc = Neumaier::new();
    acc.add(1.0);
    for k in 2..=kmax {
        let ph = Dd::ln(k as f64).mul_f64(g).rem_two_pi();
        acc.add(ph.cos() / (k as f64).sqrt());
    }
    acc.value()
}

/// T(N) = Σ_{ν=1}^{N} Σ_{k ≤ √(g(ν)/2π)} cos(g(ν) log k)/√k.
pub fn titchmarsh_cosine_sum(n: u64, ctx: &Context) -> Result<CosineReport> {
    check_n(n, 100, "cosine sum")?;
    let start = Instant::now();
    let cache = ctx.gram_cache(n)?;
    let terms: Vec<f64> = (1..=n as usize)
        .into_par_iter()
        .map(|nu| cosine_inner(cache.t_at(nu)))
        .collect();
    let t = prefix_sums(&terms, &[terms.len()])[0];
    let nf = n as f64;
    let e = t - nf;
    Ok(CosineReport {
        n,
        t,
        e,
        norm: e.abs() / (nf.powf(0.25) * nf.ln().powf(-0.25)),
        wall_s: start.elapsed().as_secs_f64(),
    })
}
