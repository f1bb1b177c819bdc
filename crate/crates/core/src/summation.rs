//! Compensated accumulation and the fixed-order chunked reduction used by
//! every large sum in the crate.

use num_complex::Complex64;
use rayon::prelude::*;

/// Chunk length of the ordered parallel reduction.
pub const CHUNK: usize = 4096;

/// Kahan–Babuška–Neumaier accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexNeumaier) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<Neumaier>().value()
}

/// Sum `term(i)` for `i in 0..len` by compensated sums over fixed chunks of
/// [`CHUNK`] indices, combined serially in index order. The result does not
/// depend on the rayon pool size.
pub fn ordered_chunked_sum<F>(len: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let partials = chunk_partials(len, term);
    let mut total = Neumaier::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Per-chunk accumulators, in index order.
pub fn chunk_partials<F>(len: usize, term: F) -> Vec<Neumaier>
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            (lo..hi).map(&term).collect::<Neumaier>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn chunked_sum_is_pool_independent() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64).sqrt();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| ordered_chunked_sum(50_000, f));
        let b = four.install(|| ordered_chunked_sum(50_000, f));
        assert_eq!(a.to_bits(), b.to_bits());
        let serial = compensated_sum((0..50_000).map(f));
        assert!((a - serial).abs() < 1e-12);
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(ordered_chunked_sum(0, |_| 1.0), 0.0);
    }
}
