use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Default number of even-index Bernoulli numbers (B₂ … B₆₀).
pub const DEFAULT_DEPTH: usize = 30;

/// Even-index Bernoulli numbers B₂, B₄, …, B₂ₖ as f64.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<f64>,
}

impl BernoulliTable {
    /// Exact rational recurrence `Σ_{j<n+1} C(n+1, j) B_j = 0`, rounded once.
    pub fn new(depth: usize) -> Self {
        let n_max = 2 * depth;
        let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        b.push(BigRational::from_integer(BigInt::from(1)));
        for n in 1..=n_max {
            // binomial coefficients C(n+1, j) built incrementally
            let mut acc = BigRational::zero();
            let mut binom = BigInt::from(1);
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += bj * BigRational::from_integer(binom.clone());
                }
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            let bn = -acc / BigRational::from_integer(BigInt::from(n + 1));
            b.push(bn);
        }
        let values = (1..=depth)
            .map(|k| b[2 * k].to_f64().expect("Bernoulli number representable as f64"))
            .collect();
        BernoulliTable { values }
    }

    /// The shared default-depth table.
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_DEPTH))
    }

    pub fn depth(&self) -> usize {
        self.values.len()
    }

    /// B₂ₖ for `k ≥ 1`.
    pub fn b2k(&self, k: usize) -> f64 {
        self.values[k - 1]
    }
}

/// Sup-norm bound on the periodic Bernoulli function Pₘ(x) = Bₘ({x})/m!.
pub fn periodic_bound(m: u32) -> f64 {
    4.0 / (2.0 * std::f64::consts::PI).powi(m as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_head_exact() {
        let t = BernoulliTable::shared();
        assert_eq!(t.b2k(1), 1.0 / 6.0);
        assert_eq!(t.b2k(2), -1.0 / 30.0);
        assert_eq!(t.b2k(3), 1.0 / 42.0);
        assert_eq!(t.b2k(6), -691.0 / 2730.0);
        assert_eq!(t.depth(), DEFAULT_DEPTH);
    }

    #[test]
    fn matches_zeta_closed_form() {
        // B_2k = (-1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}
        let t = BernoulliTable::shared();
        for k in [5usize, 10, 20, 30] {
            let zeta: f64 = (1..200).map(|n| (n as f64).powi(-2 * k as i32)).sum();
            let fact: f64 = (1..=2 * k).map(|i| i as f64).product();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let expect = sign * 2.0 * fact * zeta / (2.0 * std::f64::consts::PI).powi(2 * k as i32);
            assert!(((t.b2k(k) - expect) / expect).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn periodic_bound_holds_for_p3() {
        // P_3(x) = B_3(x)/6 = (x^3 - 1.5x^2 + 0.5x)/6 on [0,1)
        let m = (0..1000)
            .map(|i| {
                let x = i as f64 / 1000.0;
                ((x * x * x - 1.5 * x * x + 0.5 * x) / 6.0).abs()
            })
            .fold(0.0, f64::max);
        assert!(m <= periodic_bound(3));
    }
}
