//! The Riemann–Siegel theta function
//! θ(t) = Im log Γ(1/4 + it/2) − (t/2)·log π and its derivatives.
//!
//! Two routes: the four-term asymptotic expansion with certified radii
//! (`theta_asym`, `theta_prime`, `theta_double_prime`) and the log Γ / ψ
//! reference (`theta_ref`, `theta_prime_ref`).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::calibration::Calibration;
use crate::dd::{Dd, LN_2PI};
use crate::error::{Error, Result};
use crate::special::{digamma, log_gamma, BernoulliTable, BoundedReal};

/// Lower limit of the asymptotic formulas for θ, θ′, θ″.
pub const ASYMPTOTIC_FROM: f64 = 6.0;
/// θ is strictly increasing from here on.
pub const MONOTONE_FROM: f64 = 6.5;
/// Production paths use the expansion at and above this abscissa.
pub const SWITCHOVER: f64 = 50.0;

/// |V₁(t)| ≤ 0.07 t⁻³ in θ′(t) = ½ log(t/2π) − 1/(48t²) + V₁(t).
pub const V1_CONSTANT: f64 = 0.07;
/// |V₂(t)| ≤ 0.46 t⁻³ in θ″(t) = 1/(2t) + V₂(t).
pub const V2_CONSTANT: f64 = 0.46;
/// |θ‴(t)| ≤ C3/t² for t ≥ 6.
pub const THETA3_ENVELOPE: f64 = 0.55;
/// |θ⁗(t)| ≤ C4/t³ for t ≥ 6.
pub const THETA4_ENVELOPE: f64 = 1.1;

const LOG_GAMMA_TERMS: usize = 12;
const DIGAMMA_TERMS: usize = 8;

fn check_asym(t: f64) -> Result<()> {
    if t.is_nan() || t < ASYMPTOTIC_FROM {
        return Err(Error::Range {
            what: "t >= 6 for the asymptotic theta formulas",
            value: t,
        });
    }
    Ok(())
}

/// Four-term expansion in double-double: the main term
/// `(t/2)(log t − log 2π − 1)` is where the cancellation sits.
pub(crate) fn theta_asym_dd(t: f64) -> Dd {
    let main = (Dd::ln(t) - LN_2PI - Dd::from_f64(1.0)).mul_f64(0.5 * t);
    let t_inv = 1.0 / t;
    let tail = -PI / 8.0 + t_inv / 48.0 + 7.0 / 5760.0 * t_inv * t_inv * t_inv;
    main + Dd::from_f64(tail)
}

/// θ(t) = (t/2)log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³), radius c₅·t⁻⁵
/// plus a rounding allowance.
pub fn theta_asym(t: f64) -> Result<BoundedReal> {
    check_asym(t)?;
    let v = theta_asym_dd(t).to_f64();
    let c5 = Calibration::committed().theta_c5;
    let radius = c5 * t.powi(-5) + f64::EPSILON * (v.abs() + t);
    Ok(BoundedReal::new(v, radius))
}

/// θ(t) from log Γ(1/4 + it/2); odd in t.
pub fn theta_ref(t: f64) -> Result<BoundedReal> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("non-finite t = {t}")));
    }
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t), LOG_GAMMA_TERMS)?;
    let tail = 0.5 * t * PI.ln();
    let v = lg.value.im - tail;
    Ok(BoundedReal::new(v, lg.radius + f64::EPSILON * tail.abs()))
}

/// θ(t) for any real t: the expansion for |t| ≥ 50, the reference below.
pub fn theta(t: f64) -> Result<BoundedReal> {
    if t.abs() >= SWITCHOVER {
        let r = theta_asym(t.abs())?;
        Ok(BoundedReal::new(t.signum() * r.value, r.radius))
    } else {
        theta_ref(t)
    }
}

/// θ(t) in double-double for t ≥ 50, the f64 reference below.
pub(crate) fn theta_dd(t: f64) -> Result<Dd> {
    if t >= SWITCHOVER {
        Ok(theta_asym_dd(t))
    } else {
        Ok(Dd::from_f64(theta_ref(t)?.value))
    }
}

/// θ(t) − πx without cancellation loss, for Gram-point residuals.
pub fn theta_offset(t: f64, x: f64) -> Result<f64> {
    let th = theta_dd(t)?;
    Ok((th - crate::dd::PI.mul_f64(x)).to_f64())
}

/// θ′(t) = ½ log(t/2π) − 1/(48t²), radius 0.07 t⁻³.
pub fn theta_prime(t: f64) -> Result<BoundedReal> {
    check_asym(t)?;
    let v = 0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t);
    Ok(BoundedReal::new(
        v,
        V1_CONSTANT * t.powi(-3) + 4.0 * f64::EPSILON * v.abs(),
    ))
}

/// θ″(t) = 1/(2t), radius 0.46 t⁻³.
pub fn theta_double_prime(t: f64) -> Result<BoundedReal> {
    check_asym(t)?;
    let v = 0.5 / t;
    Ok(BoundedReal::new(
        v,
        V2_CONSTANT * t.powi(-3) + f64::EPSILON * v,
    ))
}

/// θ′(t) = ½ Re ψ(1/4 + it/2) − ½ log π.
pub fn theta_prime_ref(t: f64) -> Result<BoundedReal> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("non-finite t = {t}")));
    }
    let psi = digamma(Complex64::new(0.25, 0.5 * t), DIGAMMA_TERMS)?;
    Ok(BoundedReal::new(
        0.5 * psi.value.re - 0.5 * PI.ln(),
        0.5 * psi.radius + f64::EPSILON,
    ))
}

/// θ′ for t > 0 from whichever route is valid: the expansion for t ≥ 50,
/// the ψ reference below.
pub fn theta_prime_any(t: f64) -> Result<BoundedReal> {
    if t >= SWITCHOVER {
        theta_prime(t)
    } else {
        theta_prime_ref(t)
    }
}

/// Envelope `C3/t²` (order 3) or `C4/t³` (order 4) for the higher derivatives.
pub fn theta_higher_bounds(t: f64, order: u8) -> Result<f64> {
    check_asym(t)?;
    match order {
        3 => Ok(THETA3_ENVELOPE / (t * t)),
        4 => Ok(THETA4_ENVELOPE / (t * t * t)),
        _ => Err(Error::Domain(format!(
            "envelope order must be 3 or 4, got {order}"
        ))),
    }
}

/// θ and its first four derivatives from the full Stirling-type expansion
/// `θ ~ (t/2)log(t/2π) − t/2 − π/8 + Σ a_k t^{1−2k}`,
/// `a_k = (1 − 2^{1−2k})|B₂ₖ|/(4k(2k−1))`, truncated at its smallest term.
///
/// Accurate to ~1e-15 for t ≥ 15 and ~1e-13 at t = 10; used where the derivative values
/// themselves matter (exponential-sum phases), not for enclosures.
pub fn theta_jet(t: f64) -> [f64; 5] {
    let table = BernoulliTable::shared();
    let lt = (t / (2.0 * PI)).ln();
    let mut out = [0.5 * t * lt - 0.5 * t - PI / 8.0, 0.5 * lt, 0.5 / t, -0.5 / (t * t), 1.0 / (t * t * t)];
    let mut prev = f64::INFINITY;
    for k in 1..=table.depth() {
        let kf = k as f64;
        let e = 2.0 * kf - 1.0;
        let a = (1.0 - 2f64.powf(1.0 - 2.0 * kf)) * table.b2k(k).abs() / (4.0 * kf * e);
        let p = a * t.powf(-e);
        if p.abs() >= prev || p.abs() < 1e-18 * out[0].abs().max(1.0) {
            break;
        }
        prev = p.abs();
        // d/dt of t^{-e}, repeatedly
        out[0] += p;
        out[1] += -e * p / t;
        out[2] += e * (e + 1.0) * p / (t * t);
        out[3] += -e * (e + 1.0) * (e + 2.0) * p / (t * t * t);
        out[4] += e * (e + 1.0) * (e + 2.0) * (e + 3.0) * p / (t * t * t * t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const G0: f64 = 17.845_599_540_410_86;
    const G1: f64 = 23.170_282_701_246_31;

    #[test]
    fn asym_at_gram_points() {
        let a = theta_asym(G0).unwrap();
        let r = theta_ref(G0).unwrap();
        assert!(a.value.abs() <= a.radius + r.radius + 1e-12);
        let a1 = theta_asym(G1).unwrap();
        assert!((a1.value - PI).abs() <= a1.radius + 1e-12);
    }

    #[test]
    fn asym_vs_ref_at_100() {
        let a = theta_asym(100.0).unwrap();
        let r = theta_ref(100.0).unwrap();
        assert!((a.value - r.value).abs() <= 1e-11);
        // mpmath.siegeltheta(100)
        assert!((r.value - 87.972_165_231_787_22).abs() < 1e-12);
    }

    #[test]
    fn asym_domain() {
        assert!(matches!(theta_asym(5.9), Err(Error::Range { .. })));
        assert!(theta_prime(1.0).is_err());
        assert!(theta_double_prime(f64::NAN).is_err());
    }

    #[test]
    fn ref_is_odd() {
        let a = theta_ref(25.0).unwrap();
        let b = theta_ref(-25.0).unwrap();
        assert_eq!(a.value, -b.value);
        assert!(theta_ref(G0).unwrap().value.abs() <= 1e-8);
        // minimum region: finite, and increasing from 6.5 on
        let v = theta_ref(6.5).unwrap().value;
        assert!((v - (-3.529_232_884_734_988)).abs() < 1e-12);
        assert!(theta_ref(6.6).unwrap().value > v);
    }

    #[test]
    fn theta_prime_examples() {
        let t = 2.0 * PI * std::f64::consts::E.powi(2);
        let p = theta_prime(t).unwrap();
        assert!((p.value - 1.0).abs() <= 1.0 / (48.0 * t * t) + 0.07 * t.powi(-3) + 1e-15);
        let p = theta_prime(2.0 * PI).unwrap();
        assert!((p.value + 1.0 / (48.0 * 4.0 * PI * PI)).abs() < 1e-15);
        assert!(p.radius >= 0.07 * (2.0 * PI).powi(-3));
        let r = theta_prime_ref(t).unwrap();
        assert!(p.radius > 0.0 && theta_prime(t).unwrap().overlaps(&r));
    }

    #[test]
    fn theta_double_prime_examples() {
        let d = theta_double_prime(100.0).unwrap();
        assert_eq!(d.value, 0.005);
        assert!((d.radius - 4.6e-7).abs() < 1e-12);
        for i in 0..200 {
            let t = 6.0 * 1.05f64.powi(i);
            assert!(theta_double_prime(t).unwrap().lower() > 0.0);
        }
    }

    #[test]
    fn higher_bounds() {
        assert!(theta_higher_bounds(100.0, 5).is_err());
        let e3 = theta_higher_bounds(100.0, 3).unwrap();
        let e3b = theta_higher_bounds(100.0 * 2f64.sqrt(), 3).unwrap();
        assert!((e3b / e3 - 0.5).abs() < 1e-12);
        let c: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&t| theta_higher_bounds(t, 4).unwrap() * t * t * t)
            .collect();
        assert!(c.windows(2).all(|w| (w[0] - w[1]).abs() < 1e-12 * w[0]));
    }

    #[test]
    fn jet_agrees_with_references() {
        for &t in &[10.0, 30.0, 200.0, 5000.0] {
            let j = theta_jet(t);
            let r = theta_ref(t).unwrap();
            assert!((j[0] - r.value).abs() <= r.radius + 1e-13 * t, "t={t}");
            let p = theta_prime_ref(t).unwrap();
            assert!((j[1] - p.value).abs() <= p.radius + 1e-13, "t={t}");
            let d = theta_double_prime(t).unwrap();
            assert!(d.contains(j[2]));
        }
    }

    #[test]
    fn offset_uses_extended_precision() {
        // θ(t) − πx for a large abscissa stays exact to well under 1e-9
        let t = 1.13e6;
        let th = theta_asym_dd(t);
        let x = (th.to_f64() / PI).floor();
        let off = theta_offset(t, x).unwrap();
        let naive = theta_asym(t).unwrap().value - PI * x;
        assert!(off > 0.0 && off < PI);
        assert!((off - naive).abs() < 1e-8);
    }
}
