//! Minimal double-double arithmetic.
//!
//! Only what the phase computations need: error-free sums and products,
//! a handful of constants, and reduction modulo 2π. Values are unevaluated
//! sums `hi + lo` with `|lo| <= ulp(hi)/2`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const PI: Dd = Dd::new(3.141592653589793, 1.2246467991473532e-16);
pub const TWO_PI: Dd = Dd::new(6.283185307179586, 2.4492935982947064e-16);
pub const LN_2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);
pub const LN_2PI: Dd = Dd::new(1.8378770664093456, -7.756588316134483e-17);

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Natural logarithm of a positive f64, split as `e·ln2 + ln(m)` with
    /// `m ∈ [√½, √2)` so the libm call only sees a small argument.
    pub fn ln(x: f64) -> Dd {
        debug_assert!(x > 0.0 && x.is_finite());
        let bits = x.to_bits();
        let mut exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
        let mut mant = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | 0x3ff0_0000_0000_0000);
        if exp == -1023 {
            // subnormal: not reachable for the abscissas used here
            return Dd::from_f64(x.ln());
        }
        if mant > std::f64::consts::SQRT_2 {
            mant *= 0.5;
            exp += 1;
        }
        let small = (mant - 1.0).ln_1p();
        LN_2.mul_f64(exp as f64) + Dd::from_f64(small)
    }

    /// Reduce to `(-π, π]`; exact enough while `|self| < 2^40`.
    pub fn rem_two_pi(self) -> f64 {
        let k = (self.hi / TWO_PI.hi).round();
        let r = self - TWO_PI.mul_f64(k);
        let r = r.to_f64();
        if r > std::f64::consts::PI {
            r - TWO_PI.hi
        } else if r <= -std::f64::consts::PI {
            r + TWO_PI.hi
        } else {
            r
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_matches_libm() {
        for &x in &[1.0, 2.0, 6.5, 100.0, 1.0e6, 123456.789, 0.3] {
            let d = Dd::ln(x);
            assert!((d.to_f64() - x.ln()).abs() <= 2.0 * f64::EPSILON * x.ln().abs().max(1.0));
        }
        assert_eq!(Dd::ln(1.0).to_f64(), 0.0);
    }

    #[test]
    fn ln_2pi_constant_consistent() {
        let d = Dd::ln(TWO_PI.hi);
        // ln(2π_hi) differs from ln(2π) by lo/2π ≈ 3.9e-17
        assert!((d - LN_2PI).to_f64().abs() < 1e-16);
    }

    #[test]
    fn reduction_of_large_multiple() {
        let r = TWO_PI.mul_f64(123_456.0).rem_two_pi();
        assert!(r.abs() < 1e-20);
        let r = (TWO_PI.mul_f64(1000.0) + Dd::from_f64(0.25)).rem_two_pi();
        assert!((r - 0.25).abs() < 1e-15);
    }
}
