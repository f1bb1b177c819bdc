//! Numerical traces of the quantities in the Gram-block argument.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::{gram_block, saddle_weight, stationary_points};
use crate::error::{Error, Result};
use crate::summation::Neumaier;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct W1Trace {
    pub m: u32,
    /// Saddle x₁ with f_m′(x₁) = 1.
    pub x1: f64,
    /// f_m(x₁) − x₁
    pub phase_offset: f64,
    pub numeric: Complex64,
    /// (1/√2) e^{−iπ/8} (−1)^m m log m
    pub closed_form: Complex64,
    /// |numeric − closed_form| / |closed_form|
    pub rel_err: f64,
}

/// W_m(1) from the transform machinery on the first block, against its
/// closed form.
pub fn proof_trace_w1(m: u32) -> Result<W1Trace> {
    if m < 3 {
        return Err(Error::Domain(format!("W_m(1) needs m >= 3, got {m}")));
    }
    let p = gram_block(m, 0)?;
    let &(_, x1) = stationary_points(&p)?
        .iter()
        .find(|(nu, _)| *nu == 1)
        .ok_or_else(|| Error::Precondition(format!("no saddle with nu = 1 for m = {m}")))?;
    let numeric = saddle_weight(&p, 1, x1, -1.0);
    let mf = m as f64;
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    let closed_form = Complex64::from_polar(FRAC_1_SQRT_2 * mf * mf.ln() * parity, -PI / 8.0);
    Ok(W1Trace {
        m,
        x1,
        phase_offset: p.f(x1, 0) - x1,
        numeric,
        closed_form,
        rel_err: (numeric - closed_form).norm() / closed_form.norm(),
    })
}

/// Σ_{m=1}^{l} (−1)^m √m log m.
pub fn alternating_sum(l: u64) -> f64 {
    let mut acc = Neumaier::new();
    for m in 2..=l {
        let mf = m as f64;
        let v = mf.sqrt() * mf.ln();
        acc.add(if m % 2 == 0 { v } else { -v });
    }
    acc.value()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlternatingTrace {
    pub l: u64,
    pub u: f64,
    /// ½(−1)^l √l log l
    pub asym: f64,
    pub diff: f64,
}

/// The alternating sum of length `l` against ½(−1)^l √l log l.
pub fn alternating_sum_trace(l: u64) -> Result<AlternatingTrace> {
    if l < 1 {
        return Err(Error::Domain("alternating sum needs l >= 1".into()));
    }
    let u = alternating_sum(l);
    let lf = l as f64;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    let asym = 0.5 * sign * lf.sqrt() * lf.ln();
    Ok(AlternatingTrace {
        l,
        u,
        asym,
        diff: u - asym,
    })
}

/// U = Σ_{m ≤ 2L} (−1)^m √m log m against ½√(2L) log 2L.
pub fn alternating_sum_u(big_l: u64) -> Result<AlternatingTrace> {
    if big_l < 1 {
        return Err(Error::Domain("alternating sum needs L >= 1".into()));
    }
    alternating_sum_trace(2 * big_l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w1_at_ten() {
        let tr = proof_trace_w1(10).unwrap();
        assert!((tr.x1 - 180.196).abs() < 0.05, "{}", tr.x1);
        assert!((tr.phase_offset - 50.0625).abs() < 0.03, "{}", tr.phase_offset);
        let expect = FRAC_1_SQRT_2 * 10.0 * 10f64.ln();
        assert!((tr.numeric.norm() / expect - 1.0).abs() < 0.05);
        for m in 5..=8 {
            let tr = proof_trace_w1(m).unwrap();
            let rot = tr.numeric * Complex64::from_polar(1.0, PI / 8.0);
            let want = if m % 2 == 0 { 0.0 } else { PI };
            let got = rot.arg().abs();
            assert!((got - want).abs() < 0.3, "m={m}: {}", rot.arg());
        }
        assert!(proof_trace_w1(2).is_err());
    }

    #[test]
    fn alternating_values() {
        let t = alternating_sum_u(1).unwrap();
        assert!((t.u - 2f64.sqrt() * 2f64.ln()).abs() < 1e-15);
        for l in [100, 1000, 10000] {
            assert!(alternating_sum_u(l).unwrap().diff.abs() < 1.0);
            assert!(alternating_sum_trace(2 * l + 1).unwrap().diff.abs() < 1.0);
        }
    }
}
