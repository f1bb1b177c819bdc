//! Stirling series for log Γ and ψ with remainder bounds taken from the
//! periodic Bernoulli function estimate |Pₘ(x)| ≤ 4/(2π)^m.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{periodic_bound, BernoulliTable};
use super::bounded::BoundedComplex;
use crate::error::{Error, Result};

/// Arguments are shifted upward by the recurrence until |z| reaches this.
pub const LOG_GAMMA_SHIFT_MIN: f64 = 12.0;
pub const DIGAMMA_SHIFT_MIN: f64 = 10.0;
const SHIFT_BUDGET: usize = 64;

/// Relative rounding allowance applied to the large intermediate terms.
const ROUNDING: f64 = 8.0 * f64::EPSILON;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// (2n−1)!!/(2n)!!
fn double_factorial_ratio(n: u32) -> f64 {
    (1..=n).map(|k| (2 * k - 1) as f64 / (2 * k) as f64).product()
}

/// ∫₀^∞ (1+u²)^{−(n+½)} du = (2n−2)!!/(2n−1)!!
fn stirling_kernel_integral(n: u32) -> f64 {
    (1..n).map(|k| (2 * k) as f64 / (2 * k + 1) as f64).product()
}

fn check_terms(n_terms: usize) -> Result<()> {
    let depth = BernoulliTable::shared().depth();
    if n_terms == 0 || n_terms > depth {
        return Err(Error::Precondition(format!(
            "n_terms must be in 1..={depth}, got {n_terms}"
        )));
    }
    Ok(())
}

fn check_pole(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "argument {} on the non-positive real axis",
            z.re
        )));
    }
    Ok(())
}

/// Number of unit shifts needed to reach `|z+k| ≥ min_abs` with `Re(z+k) ≥ 0`.
fn shift_count(z: Complex64, min_abs: f64) -> Result<usize> {
    let mut k = 0;
    let mut w = z;
    while w.re < 0.0 || w.norm() < min_abs {
        k += 1;
        w += 1.0;
        if k > SHIFT_BUDGET {
            return Err(Error::Domain(format!(
                "shift budget exhausted for argument {z}"
            )));
        }
    }
    Ok(k)
}

/// Principal-branch log Γ(z) by the Stirling series through B₂ₙ.
///
/// The truncation radius is `(2n)!·4/(2π)^{2n+1}·I_n·|w|^{−2n}` at the shifted
/// argument `w`, from `|x+w|² ≥ x²+|w|²` for `Re w ≥ 0`.
pub fn log_gamma(z: Complex64, n_terms: usize) -> Result<BoundedComplex> {
    check_terms(n_terms)?;
    check_pole(z)?;
    let k = shift_count(z, LOG_GAMMA_SHIFT_MIN)?;

    let mut shift_sum = Complex64::new(0.0, 0.0);
    let mut shift_mag = 0.0;
    for j in 0..k {
        let l = (z + j as f64).ln();
        shift_sum += l;
        shift_mag += l.norm();
    }
    let w = z + k as f64;

    let table = BernoulliTable::shared();
    let lnw = w.ln();
    let lead = (w - 0.5) * lnw - w + 0.5 * (2.0 * PI).ln();
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let mut pow = w_inv;
    let mut series = Complex64::new(0.0, 0.0);
    for r in 1..=n_terms {
        let rr = r as f64;
        series += table.b2k(r) / (2.0 * rr * (2.0 * rr - 1.0)) * pow;
        pow *= w_inv2;
    }
    let value = lead + series - shift_sum;

    let n = n_terms as u32;
    let trunc = factorial(2 * n) * periodic_bound(2 * n + 1) * stirling_kernel_integral(n)
        * w.norm().powi(-2 * n as i32);
    let rounding =
        ROUNDING * ((w - 0.5).norm() * lnw.norm() + w.norm() + shift_mag + series.norm() + 1.0);
    Ok(BoundedComplex::new(value, trunc + rounding))
}

/// Remainder bound for ψ after `n` Bernoulli terms at distance `abs_z`:
/// `(2n+1)!·4/(2π)^{2n+1}·(π/2)(2n−1)!!/(2n)!!·|z|^{−2n−1}`.
///
/// At `n = 1` this is `3/(4π²)·|z|^{−3}`.
pub fn digamma_remainder_bound(n_terms: usize, abs_z: f64) -> f64 {
    let n = n_terms as u32;
    factorial(2 * n + 1)
        * periodic_bound(2 * n + 1)
        * (PI / 2.0)
        * double_factorial_ratio(n)
        * abs_z.powi(-(2 * n as i32) - 1)
}

/// ψ(z) = Γ′(z)/Γ(z) by the asymptotic series through B₂ₙ.
///
/// Lower half-plane arguments are handled through ψ(z̄) = conj ψ(z); small or
/// left-half-plane arguments by ψ(z) = ψ(z+1) − 1/z.
pub fn digamma(z: Complex64, n_terms: usize) -> Result<BoundedComplex> {
    check_terms(n_terms)?;
    check_pole(z)?;
    if z.im < 0.0 {
        let r = digamma(z.conj(), n_terms)?;
        return Ok(BoundedComplex::new(r.value.conj(), r.radius));
    }
    let k = shift_count(z, DIGAMMA_SHIFT_MIN)?;
    let mut shift_sum = Complex64::new(0.0, 0.0);
    let mut shift_mag = 0.0;
    for j in 0..k {
        let inv = (z + j as f64).inv();
        shift_sum += inv;
        shift_mag += inv.norm();
    }
    let w = z + k as f64;

    let table = BernoulliTable::shared();
    let lnw = w.ln();
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let mut pow = w_inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for r in 1..=n_terms {
        series += table.b2k(r) / (2.0 * r as f64) * pow;
        pow *= w_inv2;
    }
    let value = lnw - 0.5 * w_inv - series - shift_sum;
    let trunc = digamma_remainder_bound(n_terms, w.norm());
    let rounding = ROUNDING * (lnw.norm() + w_inv.norm() + series.norm() + shift_mag);
    Ok(BoundedComplex::new(value, trunc + rounding))
}
