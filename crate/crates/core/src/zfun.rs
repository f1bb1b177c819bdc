//! Evaluators of Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it).

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::calibration::Calibration;
use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::gram::{gram_point, GramCache, DEFAULT_TOL};
use crate::special::{min_cutoff, zeta_euler_maclaurin};
use crate::summation::Neumaier;
use crate::theta::theta_dd;
use crate::weight::SmoothWeight;

/// Largest t accepted by the reference evaluator.
pub const REFERENCE_CEILING: f64 = 2.0e4;
/// Smallest t accepted by the main-sum evaluators.
pub const MAIN_SUM_FLOOR: f64 = 20.0;
/// Largest t accepted by the main-sum evaluators.
pub const MAIN_SUM_CEILING: f64 = 1.0e7;
pub const REFERENCE_EST_ERROR: f64 = 1e-9;
/// Largest imaginary residue tolerated when rotating ζ onto the real line.
pub const REFERENCE_IMAG_TOL: f64 = 1e-8;
pub const MAX_RS_ORDER: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    RsMain,
    /// Main sum plus correction terms C₀..C_k.
    RsCorrected(u8),
    AfeSmooth,
    Reference,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::RsMain => "rs_main",
            Method::RsCorrected(_) => "rs_corrected",
            Method::AfeSmooth => "afe_smooth",
            Method::Reference => "reference",
        }
    }

    /// Parse a method tag; `order` applies to `rs_corrected`.
    pub fn parse(name: &str, order: u8) -> Result<Method> {
        match name {
            "rs_main" => Ok(Method::RsMain),
            "rs_corrected" if order <= MAX_RS_ORDER => Ok(Method::RsCorrected(order)),
            "rs_corrected" => Err(Error::Domain(format!(
                "correction order must be 0..={MAX_RS_ORDER}, got {order}"
            ))),
            "afe_smooth" => Ok(Method::AfeSmooth),
            "reference" => Ok(Method::Reference),
            _ => Err(Error::Domain(format!("unknown method '{name}'"))),
        }
    }

    /// Envelope for |Z_method(t) − Z(t)|.
    pub fn est_error(self, t: f64) -> f64 {
        let c = Calibration::committed();
        match self {
            Method::RsMain => c.c_rs * t.powf(-0.25),
            Method::RsCorrected(k) => {
                c.c_rs_corr[k as usize] * t.powf(-(2.0 * k as f64 + 3.0) / 4.0)
            }
            Method::AfeSmooth => c.c_afe * t.powf(-5.0 / 6.0),
            Method::Reference => REFERENCE_EST_ERROR,
        }
    }
}

impl Default for Method {
    fn default() -> Self {
        Method::RsCorrected(1)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZSample {
    pub t: f64,
    pub z: f64,
    pub method: Method,
    pub est_error: f64,
}

fn check_main(t: f64) -> Result<()> {
    if !(MAIN_SUM_FLOOR..=MAIN_SUM_CEILING).contains(&t) {
        return Err(Error::Range {
            what: "20 <= t <= 1e7 for main-sum evaluators",
            value: t,
        });
    }
    Ok(())
}

/// √(t/2π)
pub fn rs_tau(t: f64) -> f64 {
    (t / (2.0 * PI)).sqrt()
}

/// cos(θ − t log m) with the phase reduced in double-double.
#[inline]
fn term_cos(t: f64, theta: Dd, m: usize) -> f64 {
    if m == 1 {
        return theta.rem_two_pi().cos();
    }
    (theta - Dd::ln(m as f64).mul_f64(t)).rem_two_pi().cos()
}

/// 2 Σ_{m ≤ √(t/2π)} m^{−1/2} cos(θ − t log m).
fn rs_main_sum(t: f64, theta: Dd) -> f64 {
    let n = rs_tau(t).floor() as usize;
    let mut acc = Neumaier::new();
    for m in 1..=n {
        acc.add(term_cos(t, theta, m) / (m as f64).sqrt());
    }
    2.0 * acc.value()
}

/// Taylor coefficients of Ψ(½ + u) = cos(2π(p² − p − 1/16))/cos(2πp) about u = 0,
/// by a discrete Cauchy integral on |u| = 1.
struct PsiSeries {
    coeffs: Vec<f64>,
}

const PSI_SAMPLES: usize = 256;
const PSI_TERMS: usize = 120;

impl PsiSeries {
    fn shared() -> &'static PsiSeries {
        static S: OnceLock<PsiSeries> = OnceLock::new();
        S.get_or_init(|| {
            let psi = |u: Complex64| {
                let two_pi = 2.0 * PI;
                -(u * u * two_pi - 5.0 * PI / 8.0).cos() / (u * two_pi).cos()
            };
            let samples: Vec<Complex64> = (0..PSI_SAMPLES)
                .map(|j| psi(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / PSI_SAMPLES as f64)))
                .collect();
            let coeffs = (0..PSI_TERMS)
                .map(|k| {
                    let mut acc = Neumaier::new();
                    for (j, s) in samples.iter().enumerate() {
                        let w = Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % PSI_SAMPLES) as f64 / PSI_SAMPLES as f64);
                        acc.add((s * w).re);
                    }
                    acc.value() / PSI_SAMPLES as f64
                })
                .collect();
            PsiSeries { coeffs }
        })
    }

    /// Ψ⁽ᵏ⁾ at p = ½ + u.
    fn derivative(&self, u: f64, k: usize) -> f64 {
        let mut acc = 0.0;
        for j in (k..self.coeffs.len()).rev() {
            let falling: f64 = ((j - k + 1)..=j).map(|i| i as f64).product();
            acc = acc * u + self.coeffs[j] * falling;
        }
        acc
    }
}

/// Σ_{k ≤ order} C_k τ^{−k} at fractional part p.
fn rs_correction(p: f64, tau: f64, order: u8) -> f64 {
    let s = PsiSeries::shared();
    let u = p - 0.5;
    let pi2 = PI * PI;
    let mut c = s.derivative(u, 0);
    if order >= 1 {
        c += -s.derivative(u, 3) / (96.0 * pi2) / tau;
    }
    if order >= 2 {
        let c2 = s.derivative(u, 2) / (64.0 * pi2) + s.derivative(u, 6) / (18432.0 * pi2 * pi2);
        c += c2 / (tau * tau);
    }
    c
}

fn rs_corrected_with_theta(t: f64, theta: Dd, order: u8) -> f64 {
    let tau = rs_tau(t);
    let n = tau.floor();
    let p = tau - n;
    let sign = if (n as u64) % 2 == 1 { 1.0 } else { -1.0 };
    rs_main_sum(t, theta) + sign * rs_correction(p, tau, order) / tau.sqrt()
}

/// 2 Σ m^{−1/2} ρ(m/√(t/2π)) cos(θ − t log m), over the m where ρ ≠ 0.
fn afe_with_theta(t: f64, theta: Dd) -> f64 {
    let w = SmoothWeight::shared();
    let tau = rs_tau(t);
    let m_max = (2.0 * tau).ceil() as usize;
    let mut acc = Neumaier::new();
    for m in 1..=m_max {
        let r = w.rho_fast(m as f64 / tau);
        if r == 0.0 {
            continue;
        }
        acc.add(r * term_cos(t, theta, m) / (m as f64).sqrt());
    }
    2.0 * acc.value()
}

/// Number of m with ρ(m/√(t/2π)) ≠ 0.
pub fn afe_term_count(t: f64) -> usize {
    let w = SmoothWeight::shared();
    let tau = rs_tau(t);
    (1..=(2.0 * tau).ceil() as usize)
        .filter(|&m| w.rho_fast(m as f64 / tau) != 0.0)
        .count()
}

fn reference_with_theta(t: f64, theta: f64) -> Result<f64> {
    let zeta = zeta_euler_maclaurin(t, min_cutoff(t))?;
    let z = Complex64::from_polar(1.0, theta) * zeta;
    if z.im.abs() > REFERENCE_IMAG_TOL {
        return Err(Error::NoConvergence {
            what: "rotation of zeta onto the real axis (imaginary residue above 1e-8)",
            iterations: min_cutoff(t),
        });
    }
    Ok(z.re)
}

fn sample(t: f64, z: f64, method: Method) -> ZSample {
    ZSample {
        t,
        z,
        method,
        est_error: method.est_error(t),
    }
}

/// Re(e^{iθ(t)} ζ(1/2 + it)) for |t| ≤ 2·10⁴; even in t.
pub fn z_reference(t: f64) -> Result<ZSample> {
    if !t.is_finite() || t.abs() > REFERENCE_CEILING {
        return Err(Error::Range {
            what: "|t| <= 2e4 for the reference evaluator",
            value: t,
        });
    }
    let a = t.abs();
    // Z(−t) = conj(e^{iθ(t)}ζ(1/2+it)), so evaluate at |t|.
    let theta = theta_dd(a)?.rem_two_pi();
    let z = reference_with_theta(a, theta)?;
    Ok(sample(t, z, Method::Reference))
}

/// 2 Σ_{m ≤ √(t/2π)} m^{−1/2} cos(θ(t) − t log m).
pub fn z_rs_main(t: f64) -> Result<ZSample> {
    check_main(t)?;
    Ok(sample(t, rs_main_sum(t, theta_dd(t)?), Method::RsMain))
}

/// Main sum plus Riemann–Siegel correction terms through `order` (0..=2).
pub fn z_rs_corrected(t: f64, order: u8) -> Result<ZSample> {
    check_main(t)?;
    if order > MAX_RS_ORDER {
        return Err(Error::Domain(format!(
            "correction order must be 0..={MAX_RS_ORDER}, got {order}"
        )));
    }
    let z = rs_corrected_with_theta(t, theta_dd(t)?, order);
    Ok(sample(t, z, Method::RsCorrected(order)))
}

/// Smoothed sum 2 Σ m^{−1/2} ρ(m√(2π/t)) cos(θ(t) − t log m).
pub fn z_afe_smooth(t: f64) -> Result<ZSample> {
    check_main(t)?;
    Ok(sample(t, afe_with_theta(t, theta_dd(t)?), Method::AfeSmooth))
}

pub fn evaluate(t: f64, method: Method) -> Result<ZSample> {
    match method {
        Method::RsMain => z_rs_main(t),
        Method::RsCorrected(k) => z_rs_corrected(t, k),
        Method::AfeSmooth => z_afe_smooth(t),
        Method::Reference => z_reference(t),
    }
}

/// Z at abscissa `t` known to satisfy θ(t) = πn, with the phase taken as πn
/// exactly.
pub fn z_at_gram_abscissa(n: i64, t: f64, method: Method) -> Result<ZSample> {
    let theta = dd::PI.mul_f64(n as f64);
    let z = match method {
        Method::Reference => {
            if t > REFERENCE_CEILING {
                return Err(Error::Range {
                    what: "|t| <= 2e4 for the reference evaluator",
                    value: t,
                });
            }
            reference_with_theta(t, theta.rem_two_pi())?
        }
        Method::RsMain => {
            check_main(t)?;
            rs_main_sum(t, theta)
        }
        Method::RsCorrected(k) => {
            check_main(t)?;
            if k > MAX_RS_ORDER {
                return Err(Error::Domain(format!("correction order {k} > {MAX_RS_ORDER}")));
            }
            rs_corrected_with_theta(t, theta, k)
        }
        Method::AfeSmooth => {
            check_main(t)?;
            afe_with_theta(t, theta)
        }
    };
    Ok(sample(t, z, method))
}

/// Z(g(n)), taking g(n) from `cache` when it covers n.
pub fn z_at_gram(n: i64, method: Method, cache: Option<&GramCache>) -> Result<ZSample> {
    if n < -1 {
        return Err(Error::Domain(format!("Gram index must be >= -1, got {n}")));
    }
    let t = match cache.and_then(|c| c.index_of(n as f64).map(|i| c.t_at(i))) {
        Some(t) => t,
        None => gram_point(n as f64, DEFAULT_TOL)?.t,
    };
    z_at_gram_abscissa(n, t, method)
}

/// Im ζ(1/2 + i g(n)), which vanishes since e^{iθ(g(n))} = (−1)ⁿ.
pub fn zeta_imag_at_gram(n: i64) -> Result<f64> {
    let t = gram_point(n as f64, DEFAULT_TOL)?.t;
    Ok(zeta_euler_maclaurin(t, min_cutoff(t))?.im)
}
