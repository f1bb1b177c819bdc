use num_complex::Complex64;

use super::bernoulli::BernoulliTable;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::summation::ComplexNeumaier;

/// Largest |t| accepted by the reference evaluator.
pub const ZETA_T_CEILING: f64 = 5.0e4;

/// Smallest admissible cutoff for ordinate `t`.
pub fn min_cutoff(t: f64) -> usize {
    20usize.max(2 * t.abs().ceil() as usize)
}

/// ζ(1/2 + it) by Euler–Maclaurin summation with cutoff `m`.
///
/// Direct sum over n < m, the integral and half-endpoint corrections at m,
/// then Bernoulli tail terms until they drop below 1e-18.
pub fn zeta_euler_maclaurin(t: f64, m: usize) -> Result<Complex64> {
    if !t.is_finite() || t.abs() > ZETA_T_CEILING {
        return Err(Error::Range {
            what: "|t| <= 5e4 for the Euler-Maclaurin reference",
            value: t,
        });
    }
    if m < min_cutoff(t) {
        return Err(Error::Precondition(format!(
            "cutoff {m} below max(20, 2⌈|t|⌉) = {}",
            min_cutoff(t)
        )));
    }
    let s = Complex64::new(0.5, t);

    let mut acc = ComplexNeumaier::new();
    acc.add(Complex64::new(1.0, 0.0));
    for n in 2..m {
        let nf = n as f64;
        let phase = Dd::ln(nf).mul_f64(t).rem_two_pi();
        let amp = 1.0 / nf.sqrt();
        acc.add(Complex64::new(amp * phase.cos(), -amp * phase.sin()));
    }

    let mf = m as f64;
    let phase = Dd::ln(mf).mul_f64(t).rem_two_pi();
    // m^{-s}
    let m_pow = Complex64::from_polar(1.0 / mf.sqrt(), -phase);
    acc.add(m_pow * mf / (s - 1.0));
    acc.add(m_pow * 0.5);

    let table = BernoulliTable::shared();
    let inv_m2 = 1.0 / (mf * mf);
    // running value of s(s+1)…(s+2k−2) · m^{−s−2k+1} / (2k)!
    let mut r = s * m_pow / mf / 2.0;
    for k in 1..=table.depth() {
        let term = r * table.b2k(k);
        acc.add(term);
        if term.norm() < 1e-18 {
            break;
        }
        let kf = k as f64;
        r = r * (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf) * inv_m2
            / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
    }
    Ok(acc.value())
}
