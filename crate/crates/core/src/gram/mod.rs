//! The Gram function g(x), defined for real x ≥ −1 by θ(g(x)) = πx.

mod cache;

use std::f64::consts::{E, PI};

pub use cache::{GramCache, CACHE_MAGIC, CACHE_VERSION};

use crate::error::{Error, Result};
use crate::special::BoundedReal;
use crate::theta::{
    self, theta_double_prime, theta_higher_bounds, theta_offset, theta_prime, theta_prime_any,
};

/// Default residual tolerance in θ-space.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Left end of the safeguarding bracket; every g(x), x ≥ −1, exceeds it.
pub const BRACKET_LO: f64 = 7.0;
const MAX_ITER: usize = 100;

/// Seed abscissas for x < 2 from the classical Gram-point list.
const SEEDS: [(f64, f64); 4] = [(-1.0, 9.6), (0.0, 17.8), (1.0, 23.1), (2.0, 27.6)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramPoint {
    pub x: f64,
    pub t: f64,
    /// |θ(t) − πx|
    pub residual: f64,
}

/// Starting abscissa for the Newton solve.
///
/// For x ≥ 2 this inverts `θ ≈ (t/2)log(t/2πe) − π/8` exactly through the
/// Lambert W function, `t = 2π(x+1/8)/W((x+1/8)/e)`; below 2 it interpolates
/// the seed table.
pub fn gram_initial_guess(x: f64) -> f64 {
    if x < 2.0 {
        let x = x.max(-1.0);
        let i = ((x + 1.0).floor() as usize).min(SEEDS.len() - 2);
        let (x0, t0) = SEEDS[i];
        let (x1, t1) = SEEDS[i + 1];
        return t0 + (t1 - t0) * (x - x0) / (x1 - x0);
    }
    let y = (x + 0.125) / E;
    2.0 * PI * (x + 0.125) / lambert_w0(y)
}

/// `g(n) ≈ (2πn/log n)·(1 + (1 + log log n)/log n)`, for n > 1.
pub fn two_term_asymptotic(n: f64) -> f64 {
    let l = n.ln();
    2.0 * PI * n / l * (1.0 + (1.0 + l.ln()) / l)
}

/// Principal branch of W for y > 0 by Halley iteration.
fn lambert_w0(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    let mut w = if y < 1.0 { y * (1.0 - y) } else { y.ln() - y.ln().ln().max(0.0) };
    if w <= 0.0 {
        w = 0.5 * y;
    }
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - y;
        let w1 = w + 1.0;
        let step = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    w
}

/// Solve θ(t) = πx.
pub fn gram_point(x: f64, tol: f64) -> Result<GramPoint> {
    gram_point_from(x, gram_initial_guess(x), tol)
}

/// Solve θ(t) = πx starting from `guess`.
///
/// Newton on θ(t) − πx inside a bisection bracket. Stops at `tol` or when
/// the step is below one ulp of t, polishes with further Newton steps while
/// the residual shrinks, then takes the best of t and its two neighbouring
/// doubles, since below ½ulp(t)·θ′(t) the residual is set by the
/// representation of t rather than by the solver.
pub fn gram_point_from(x: f64, guess: f64, tol: f64) -> Result<GramPoint> {
    if !(x >= -1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Gram index must be >= -1, got {x}")));
    }
    let f = |t: f64| theta_offset(t, x);
    let mut lo = BRACKET_LO;
    let mut hi = guess.max(2.0 * BRACKET_LO);
    while f(hi)? < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut t = guess.clamp(lo, hi);
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let r = f(t)?;
        if r.abs() <= tol {
            converged = true;
            break;
        }
        if r < 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
        let d = theta_prime_any(t)?.value;
        let mut next = t - r / d;
        if !(next > lo && next < hi) || d <= 0.0 {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= t * f64::EPSILON {
            converged = true;
            t = next;
            break;
        }
        t = next;
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Gram point Newton iteration",
            iterations: MAX_ITER,
        });
    }
    // polish past the tolerance while Newton still helps
    let mut r = f(t)?;
    for _ in 0..4 {
        let next = t - r / theta_prime_any(t)?.value;
        let rn = f(next)?;
        if !(rn.abs() < r.abs()) {
            break;
        }
        t = next;
        r = rn;
    }
    let mut best = (r.abs(), t);
    for cand in [t.next_down(), t.next_up()] {
        let r = f(cand)?.abs();
        if r < best.0 {
            best = (r, cand);
        }
    }
    Ok(GramPoint {
        x,
        t: best.1,
        residual: best.0,
    })
}

/// x with θ(t) = πx, i.e. the exact inverse of the Gram function.
pub fn gram_inverse(t: f64) -> Result<f64> {
    if !(t >= BRACKET_LO) {
        return Err(Error::Range {
            what: "t >= 7 for the Gram inverse",
            value: t,
        });
    }
    Ok(crate::theta::theta_dd(t)?.to_f64() / PI)
}

/// h(y): the inverse of x ↦ g(2x)/2π, equal to θ(2πy)/2π.
pub fn h_inverse(y: f64) -> Result<f64> {
    Ok(0.5 * gram_inverse(2.0 * PI * y)?)
}

/// g⁽ᵏ⁾(x) for k = 1..4 from the implicit-differentiation formulas.
///
/// Orders 1 and 2 propagate the θ′, θ″ radii. Orders 3 and 4 use the leading
/// terms θ‴ ≈ −1/(2t²), θ⁗ ≈ 1/t³ and carry the full envelope contribution as
/// a coarse uncertainty.
pub fn gram_derivatives(x: f64, order: u8) -> Result<BoundedReal> {
    if !(1..=4).contains(&order) {
        return Err(Error::Domain(format!(
            "derivative order must be 1..=4, got {order}"
        )));
    }
    let t = gram_point(x, DEFAULT_TOL)?.t;
    let p1 = theta_prime(t)?;
    let p2 = theta_double_prime(t)?;
    let (d1, r1, d2, r2) = (p1.value, p1.radius, p2.value, p2.radius);
    let pi2 = PI * PI;
    match order {
        1 => Ok(BoundedReal::new(PI / d1, PI * r1 / (d1 * (d1 - r1)))),
        2 => {
            let v = -pi2 * d2 / d1.powi(3);
            let lo1 = d1 - r1;
            let r = pi2 * (r2 / lo1.powi(3) + 3.0 * (d2 + r2) * r1 / lo1.powi(4));
            Ok(BoundedReal::new(v, r))
        }
        3 => {
            let d3 = -0.5 / (t * t);
            let e3 = theta_higher_bounds(t, 3)?;
            let v = -PI.powi(3) * (d3 * d1 - 3.0 * d2 * d2) / d1.powi(5);
            let r = PI.powi(3) * (e3 * d1 / d1.powi(5) + (d3.abs() * r1 + 6.0 * d2 * r2) / d1.powi(5));
            Ok(BoundedReal::new(v, r))
        }
        _ => {
            let d3 = -0.5 / (t * t);
            let d4 = 1.0 / (t * t * t);
            let e3 = theta_higher_bounds(t, 3)?;
            let e4 = theta_higher_bounds(t, 4)?;
            let num = d4 * d1 * d1 - 10.0 * d3 * d2 * d1 + 15.0 * d2.powi(3);
            let v = -PI.powi(4) * num / d1.powi(7);
            let r = PI.powi(4) * (e4 * d1 * d1 + 10.0 * e3 * d2 * d1) / d1.powi(7);
            Ok(BoundedReal::new(v, r))
        }
    }
}

/// Spacing bound g(n+1) − g(n) < 1.2·2π/log(g(n)/2π).
pub fn spacing_envelope(t: f64) -> f64 {
    1.2 * 2.0 * PI / (t / (2.0 * PI)).ln()
}

/// Values of θ at an abscissa via the production switchover.
pub fn theta_at(t: f64) -> Result<f64> {
    Ok(theta::theta(t)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_points() {
        assert_eq!(format!("{:.1}", gram_point(-1.0, DEFAULT_TOL).unwrap().t - 0.05), "9.6");
        let g5 = gram_point(5.0, DEFAULT_TOL).unwrap();
        assert!((g5.t - 38.999_209_964_026_07).abs() < 1e-10);
        assert!(g5.residual <= DEFAULT_TOL);
    }

    #[test]
    fn guess_accuracy() {
        let g10 = gram_point(10.0, DEFAULT_TOL).unwrap().t;
        assert!((gram_initial_guess(10.0) / 54.7 - 1.0).abs() < 0.1);
        let g = gram_point(1e6, DEFAULT_TOL).unwrap().t;
        let ratio = gram_initial_guess(1e6) / g;
        assert!((0.97..=1.03).contains(&ratio), "{ratio}");
        assert!((gram_initial_guess(10.0) / g10 - 1.0).abs() < 0.01);
        // the two-term form is looser: ~10% at 10, ~4% at 1e6
        assert!((two_term_asymptotic(10.0) / g10 - 1.0).abs() < 0.11);
        assert!((two_term_asymptotic(1e6) / g - 1.0).abs() < 0.05);
    }

    #[test]
    fn guess_is_monotone() {
        let mut prev = 0.0;
        for i in 0..=500 {
            let x = 10f64 * 1e5f64.powf(i as f64 / 500.0);
            let g = gram_initial_guess(x);
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn inverse_round_trips() {
        let p = gram_point(123.5, DEFAULT_TOL).unwrap();
        assert!((gram_inverse(p.t).unwrap() - 123.5).abs() < 1e-8);
        assert!((gram_inverse(9.666_908_056_130_192).unwrap() + 1.0).abs() < 1e-6);
        let x = h_inverse(25.0).unwrap();
        let t = gram_point(2.0 * x, DEFAULT_TOL).unwrap().t;
        assert!((t / (2.0 * PI) - 25.0).abs() < 1e-9);
        assert!(gram_inverse(6.0).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(gram_point(-1.5, DEFAULT_TOL), Err(Error::Domain(_))));
        assert!(gram_derivatives(10.0, 0).is_err());
        assert!(gram_derivatives(10.0, 5).is_err());
    }

    #[test]
    fn derivative_signs_and_fd() {
        for &x in &[10.0, 100.0, 1e3, 1e5] {
            assert!(gram_derivatives(x, 1).unwrap().lower() > 0.0);
            assert!(gram_derivatives(x, 2).unwrap().upper() < 0.0);
        }
        let x = 1e4;
        let h = 0.5;
        let g = |x: f64| gram_point(x, 1e-12).unwrap().t;
        let fd = (g(x + h) - g(x - h)) / (2.0 * h);
        let d1 = gram_derivatives(x, 1).unwrap();
        assert!(((d1.value - fd) / fd).abs() < 1e-6);
        let fd2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        assert!(gram_derivatives(x, 2).unwrap().value * fd2 > 0.0);
    }
}
