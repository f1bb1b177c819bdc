//! The smooth cutoff: a normalized C^∞ bump φ on (−½, ½), its window
//! integral f, and the weight ρ(x) = ½(1 + f(x) − f(1/x)).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quad::integrate;

/// ∫_{−½}^{½} exp(1/(u² − ¼)) du.
pub const NORMALIZATION_REFERENCE: f64 = 0.007_029_858_406_609_656;

pub const DEFAULT_QUAD_TOL: f64 = 1e-12;
/// Lookup table covers [TABLE_LO, TABLE_HI] with this many intervals.
pub const TABLE_LO: f64 = 0.45;
pub const TABLE_HI: f64 = 2.05;
pub const TABLE_INTERVALS: usize = 4096;

fn bump(u: f64) -> f64 {
    let d = u * u - 0.25;
    if d >= 0.0 {
        0.0
    } else {
        (1.0 / d).exp()
    }
}

#[derive(Clone, Debug)]
struct Table {
    h: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SmoothWeight {
    /// Reciprocal of the unnormalized bump integral.
    normalization: f64,
    quad_tol: f64,
    table: Option<Table>,
}

impl SmoothWeight {
    /// Quadrature-only weight.
    pub fn new(quad_tol: f64) -> Self {
        let q = integrate(bump, -0.5, 0.5, quad_tol * NORMALIZATION_REFERENCE, 400);
        SmoothWeight {
            normalization: 1.0 / q.value,
            quad_tol,
            table: None,
        }
    }

    /// Weight with the cubic Hermite lookup table on [0.45, 2.05].
    pub fn with_table(quad_tol: f64) -> Self {
        let mut w = Self::new(quad_tol);
        let n = TABLE_INTERVALS;
        let h = (TABLE_HI - TABLE_LO) / n as f64;
        let mut values = Vec::with_capacity(n + 1);
        let mut slopes = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = TABLE_LO + h * i as f64;
            values.push(w.rho_direct(x));
            slopes.push(w.rho_derivative(x, 1));
        }
        w.table = Some(Table { h, values, slopes });
        w
    }

    /// Process-wide tabulated weight at the default tolerance.
    pub fn shared() -> &'static SmoothWeight {
        static W: OnceLock<SmoothWeight> = OnceLock::new();
        W.get_or_init(|| SmoothWeight::with_table(DEFAULT_QUAD_TOL))
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn phi(&self, t: f64) -> f64 {
        self.normalization * bump(t)
    }

    /// φ′(t) = φ(t)·(−2t/(t² − ¼)²).
    pub fn phi_prime(&self, t: f64) -> f64 {
        let d = t * t - 0.25;
        if d >= 0.0 {
            return 0.0;
        }
        self.phi(t) * (-2.0 * t / (d * d))
    }

    /// ∫_u^{½} φ.
    fn tail(&self, u: f64) -> f64 {
        if u >= 0.5 {
            return 0.0;
        }
        if u <= -0.5 {
            return 1.0;
        }
        // integrate the shorter side for accuracy near the ends
        if u >= 0.0 {
            integrate(|s| self.phi(s), u, 0.5, self.quad_tol, 400).value
        } else {
            1.0 - integrate(|s| self.phi(s), -0.5, u, self.quad_tol, 400).value
        }
    }

    /// f(x) = ∫_{x−3/2}^{x+3/2} φ.
    pub fn f_window(&self, x: f64) -> f64 {
        let a = x.abs();
        if a >= 2.0 {
            0.0
        } else if a <= 1.0 {
            1.0
        } else {
            self.tail(a - 1.5)
        }
    }

    fn rho_direct(&self, x: f64) -> f64 {
        if x >= 2.0 {
            0.0
        } else if x <= 0.5 {
            1.0
        } else if x >= 1.0 {
            0.5 * self.f_window(x)
        } else {
            1.0 - 0.5 * self.f_window(1.0 / x)
        }
    }

    /// ρ(x) by quadrature.
    pub fn rho(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("rho requires x > 0, got {x}")));
        }
        Ok(self.rho_direct(x))
    }

    /// ρ(x) from the lookup table when present; exact 0 and 1 outside
    /// (½, 2). Falls back to quadrature without a table.
    pub fn rho_fast(&self, x: f64) -> f64 {
        if x >= 2.0 {
            return 0.0;
        }
        if x <= 0.5 {
            return 1.0;
        }
        let Some(tab) = &self.table else {
            return self.rho_direct(x);
        };
        let s = (x - TABLE_LO) / tab.h;
        let i = (s.floor() as usize).min(TABLE_INTERVALS - 1);
        let u = s - i as f64;
        let (y0, y1) = (tab.values[i], tab.values[i + 1]);
        let (m0, m1) = (tab.slopes[i] * tab.h, tab.slopes[i + 1] * tab.h);
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * m1
    }

    /// ρ⁽ᵏ⁾(x) for k = 0, 1, 2 (closed forms in φ, φ′ for k ≥ 1).
    pub fn rho_derivative(&self, x: f64, k: usize) -> f64 {
        if k == 0 {
            return if x > 0.0 { self.rho_direct(x) } else { 1.0 };
        }
        if x >= 2.0 || x <= 0.5 {
            return 0.0;
        }
        if x >= 1.0 {
            let u = x - 1.5;
            match k {
                1 => -0.5 * self.phi(u),
                _ => -0.5 * self.phi_prime(u),
            }
        } else {
            let y = 1.0 / x - 1.5;
            let x2 = x * x;
            match k {
                1 => -0.5 * self.phi(y) / x2,
                _ => 0.5 * self.phi_prime(y) / (x2 * x2) + self.phi(y) / (x2 * x),
            }
        }
    }

    /// (ε, |ρ(1+ε) − ½|) for each ε.
    pub fn rho_flatness_profile(&self, eps: &[f64]) -> Result<Vec<(f64, f64)>> {
        eps.iter()
            .map(|&e| {
                if !(e.abs() < 0.4) || e == 0.0 {
                    return Err(Error::Domain(format!(
                        "flatness offsets must lie in (-0.4, 0.4) without 0, got {e}"
                    )));
                }
                Ok((e, (self.rho_direct(1.0 + e) - 0.5).abs()))
            })
            .collect()
    }
}
