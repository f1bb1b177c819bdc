//! Concrete phase problems: synthetic families and the Gram-point blocks
//! S_m(M_j) = Σ ρ(m√(2π/g(2n))) e^{i g(2n) log m}.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{Jet, PhaseProblem};
use crate::error::{Error, Result};
use crate::gram::{gram_point, h_inverse, DEFAULT_TOL};
use crate::theta::theta_jet;
use crate::weight::SmoothWeight;

fn unit_amplitude() -> Jet {
    Arc::new(|_, k| if k == 0 { 1.0 } else { 0.0 })
}

/// f(x) = ±x²/(2A), φ = 1 on [a, b].
pub fn quadratic(a_scale: f64, a: f64, b: f64, sign: f64) -> Result<PhaseProblem> {
    let s = sign.signum();
    let phase: Jet = Arc::new(move |x, k| match k {
        0 => s * x * x / (2.0 * a_scale),
        1 => s * x / a_scale,
        2 => s / a_scale,
        _ => 0.0,
    });
    PhaseProblem::new(a, b, unit_amplitude(), phase, 1.0, b.abs().max(1.0), a_scale)
}

/// f(x) = slope·x, φ = 1 on [a, b].
pub fn linear(slope: f64, a: f64, b: f64) -> Result<PhaseProblem> {
    let phase: Jet = Arc::new(move |x, k| match k {
        0 => slope * x,
        1 => slope,
        _ => 0.0,
    });
    PhaseProblem::new(a, b, unit_amplitude(), phase, 1.0, (b - a).max(1.0), f64::MAX)
}

/// (M_j, h(M_j), h(32 M_j)) with M₀ = m²/4 and M_j = 32^j M₀.
pub fn gram_block_scales(m: u32, j: u32) -> Result<(f64, f64, f64)> {
    if m < 2 {
        return Err(Error::Domain(format!("block index m must be >= 2, got {m}")));
    }
    let mj = (m as f64).powi(2) / 4.0 * 32f64.powi(j as i32);
    Ok((mj, h_inverse(mj)?, h_inverse(32.0 * mj)?))
}

/// (δ₁, δ) = (2 log m / log(32 M_j), 2 log m / log(8 M_{j−1})) for j ≥ 1.
pub fn gram_block_deltas(m: u32, j: u32) -> Result<(f64, f64)> {
    if j == 0 {
        return Err(Error::Domain("block deltas need j >= 1".into()));
    }
    let (mj, _, _) = gram_block_scales(m, j)?;
    let l2 = 2.0 * (m as f64).ln();
    Ok((l2 / (32.0 * mj).ln(), l2 / (8.0 * mj / 32.0).ln()))
}

/// The block S_m(M_j): φ(x) = ρ(m√(2π/g(2x))), f(x) = g(2x) log m / 2π on
/// [h(M_j), h(32 M_j)], with H = 1, U = M log M, A = M log³M / log m.
pub fn gram_block(m: u32, j: u32) -> Result<PhaseProblem> {
    let (mj, a, b) = gram_block_scales(m, j)?;
    let lm = (m as f64).ln();
    let mf = m as f64;
    let abscissa = |x: f64| gram_point(2.0 * x, DEFAULT_TOL).map(|p| p.t).unwrap_or(f64::NAN);

    let phase: Jet = Arc::new(move |x, k| {
        let t = abscissa(x);
        if k == 0 {
            return t * lm / (2.0 * PI);
        }
        let [_, d1, d2, d3, d4] = theta_jet(t);
        // dt/dx
        let dd = 2.0 * PI / d1;
        match k {
            1 => lm / d1,
            2 => -2.0 * PI * lm * d2 / d1.powi(3),
            3 => -2.0 * PI * lm * dd * (d3 / d1.powi(3) - 3.0 * d2 * d2 / d1.powi(4)),
            4 => {
                let kp = d4 / d1.powi(4) - 10.0 * d2 * d3 / d1.powi(5) + 15.0 * d2.powi(3) / d1.powi(6);
                -4.0 * PI * PI * lm * kp * dd
            }
            _ => f64::NAN,
        }
    });

    let amplitude: Jet = Arc::new(move |x, k| {
        let w = SmoothWeight::shared();
        let t = abscissa(x);
        let v = mf * (2.0 * PI / t).sqrt();
        if k == 0 {
            return w.rho_fast(v);
        }
        let [_, d1, d2, _, _] = theta_jet(t);
        let dd = 2.0 * PI / d1;
        let v1 = -v * dd / (2.0 * t);
        match k {
            1 => w.rho_derivative(v, 1) * v1,
            2 => {
                let dd1 = -2.0 * PI * d2 / (d1 * d1) * dd;
                let v2 = -(v1 * dd + v * dd1) / (2.0 * t) + v * dd * dd / (2.0 * t * t);
                w.rho_derivative(v, 2) * v1 * v1 + w.rho_derivative(v, 1) * v2
            }
            _ => f64::NAN,
        }
    });

    let lmj = mj.ln();
    PhaseProblem::new(a, b, amplitude, phase, 1.0, mj * lmj, mj * lmj.powi(3) / lm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_phase_derivatives_match_differences() {
        let p = gram_block(7, 0).unwrap();
        let x = 0.5 * (p.a + p.b);
        let h = 1e-3;
        for k in 0..4 {
            let fd = (p.f(x + h, k) - p.f(x - h, k)) / (2.0 * h);
            let exact = p.f(x, k + 1);
            assert!((fd - exact).abs() <= 1e-5 * exact.abs().max(1e-6), "k={k}: {fd} vs {exact}");
        }
        let x = p.a + 3.0;
        for k in 0..2 {
            let fd = (p.amp(x + h, k) - p.amp(x - h, k)) / (2.0 * h);
            assert!((fd - p.amp(x, k + 1)).abs() < 1e-6, "amp k={k}");
        }
    }

    #[test]
    fn block_entry_slope() {
        for m in 5..=12 {
            let p = gram_block(m, 0).unwrap();
            let d = p.f(p.a, 1);
            assert!(d > 1.0 && d < 2.0, "m={m}: {d}");
        }
        for m in [3, 4] {
            let p = gram_block(m, 0).unwrap();
            assert!(p.f(p.a, 1) > 2.0);
        }
    }

    #[test]
    fn deltas_bracket_the_slope() {
        let (d1, d) = gram_block_deltas(5, 1).unwrap();
        let p = gram_block(5, 1).unwrap();
        let (lo, hi) = p.derivative_range();
        assert!(d1 <= lo + 1e-12 && hi <= d, "{d1} {lo} {hi} {d}");
        assert!(gram_block_deltas(5, 0).is_err());
        assert!(gram_block(1, 0).is_err());
    }
}
