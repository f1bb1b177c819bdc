//! Exponential sums Σ φ(n) e^{2πi f(n)}: direct evaluation, comparison with
//! the integral when |f′| < 1, and the stationary-phase transform.

mod problems;
mod traces;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

pub use problems::{gram_block, gram_block_deltas, gram_block_scales, linear, quadratic};
pub use traces::{alternating_sum, alternating_sum_trace, alternating_sum_u, proof_trace_w1, AlternatingTrace, W1Trace};

use crate::dd::two_prod;
use crate::error::{Error, Result};
use crate::quad::integrate_pieces_par;
use crate::summation::{ComplexNeumaier, CHUNK};

/// `jet(x, k)` is the k-th derivative at x.
pub type Jet = Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>;

/// Largest interval length accepted by [`direct_sum`].
pub const DIRECT_SUM_MAX_LEN: f64 = 1e8;
/// Samples used for every condition check.
pub const CONDITION_SAMPLES: usize = 1024;
/// ‖f′(μ)‖ at or below this counts as an integer.
pub const ENDPOINT_TIE: f64 = 1e-9;
/// Target |f′(x_ν) − ν| for the saddle solver.
pub const SADDLE_TOL: f64 = 1e-12;
pub const FDT_QUAD_TOL: f64 = 1e-10;

#[derive(Clone)]
pub struct PhaseProblem {
    pub a: f64,
    pub b: f64,
    pub amplitude: Jet,
    pub phase: Jet,
    /// Amplitude scale.
    pub h: f64,
    /// Length scale of the derivatives.
    pub u: f64,
    /// Curvature scale: |f″| ≍ 1/A.
    pub a_scale: f64,
}

impl std::fmt::Debug for PhaseProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhaseProblem")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("h", &self.h)
            .field("u", &self.u)
            .field("a_scale", &self.a_scale)
            .finish_non_exhaustive()
    }
}

/// Sampled ratios against the nominal scales; every entry is the constant c
/// for which the corresponding condition holds on the samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionReport {
    /// max |φ| / H
    pub amp: f64,
    /// max |φ′| U / H
    pub amp1: f64,
    /// max |φ″| U² / H
    pub amp2: f64,
    /// min |f″| A
    pub curv_min: f64,
    /// max |f″| A
    pub curv_max: f64,
    /// max |f‴| A U
    pub phase3: f64,
    /// max |f⁗| A U²
    pub phase4: f64,
    /// +1 or −1 when f″ keeps one sign on the samples, 0 otherwise.
    pub curvature_sign: i8,
}

impl ConditionReport {
    /// Smallest c for which all derivative conditions hold.
    pub fn constant(&self) -> f64 {
        [self.amp1, self.amp2, 1.0 / self.curv_min, self.curv_max, self.phase3, self.phase4]
            .into_iter()
            .fold(1.0, f64::max)
    }

    pub fn holds(&self, c: f64) -> bool {
        self.amp <= 1.0 + 1e-12 && self.curvature_sign != 0 && self.constant() <= c
    }
}

impl PhaseProblem {
    pub fn new(a: f64, b: f64, amplitude: Jet, phase: Jet, h: f64, u: f64, a_scale: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Precondition(format!("need a < b, got [{a}, {b}]")));
        }
        if !(h > 0.0 && u > 0.0 && a_scale > 0.0) {
            return Err(Error::Precondition("scales H, U, A must be positive".into()));
        }
        Ok(PhaseProblem {
            a,
            b,
            amplitude,
            phase,
            h,
            u,
            a_scale,
        })
    }

    pub fn amp(&self, x: f64, k: usize) -> f64 {
        (self.amplitude)(x, k)
    }

    pub fn f(&self, x: f64, k: usize) -> f64 {
        (self.phase)(x, k)
    }

    fn samples(&self) -> impl Iterator<Item = f64> + '_ {
        let n = CONDITION_SAMPLES - 1;
        (0..=n).map(move |i| {
            if i == n {
                self.b
            } else {
                self.a + (self.b - self.a) * i as f64 / n as f64
            }
        })
    }

    pub fn conditions(&self) -> ConditionReport {
        let (h, u, a) = (self.h, self.u, self.a_scale);
        let mut r = ConditionReport {
            amp: 0.0,
            amp1: 0.0,
            amp2: 0.0,
            curv_min: f64::INFINITY,
            curv_max: 0.0,
            phase3: 0.0,
            phase4: 0.0,
            curvature_sign: 0,
        };
        let (mut pos, mut neg) = (false, false);
        for x in self.samples() {
            r.amp = r.amp.max(self.amp(x, 0).abs() / h);
            r.amp1 = r.amp1.max(self.amp(x, 1).abs() * u / h);
            r.amp2 = r.amp2.max(self.amp(x, 2).abs() * u * u / h);
            let c = self.f(x, 2);
            pos |= c > 0.0;
            neg |= c <= 0.0;
            r.curv_min = r.curv_min.min(c.abs() * a);
            r.curv_max = r.curv_max.max(c.abs() * a);
            r.phase3 = r.phase3.max(self.f(x, 3).abs() * a * u);
            r.phase4 = r.phase4.max(self.f(x, 4).abs() * a * u * u);
        }
        r.curvature_sign = match (pos, neg) {
            (true, false) => 1,
            (false, true) if r.curv_min > 0.0 => -1,
            _ => 0,
        };
        r
    }

    /// Sampled range of f′ as (min, max).
    pub fn derivative_range(&self) -> (f64, f64) {
        self.samples()
            .map(|x| self.f(x, 1))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)))
    }
}

/// e^{2πi y} with y reduced mod 1 first.
#[inline]
fn unit(y: f64) -> Complex64 {
    let r = y - y.round();
    Complex64::from_polar(1.0, 2.0 * PI * r)
}

/// Σ_{a < n ≤ b} φ(n) e^{2πi f(n)} by compensated summation over fixed
/// chunks combined in order.
pub fn direct_sum(p: &PhaseProblem) -> Result<Complex64> {
    if p.b - p.a > DIRECT_SUM_MAX_LEN {
        return Err(Error::CostGuard(format!(
            "direct sum over {} integers exceeds 1e8",
            p.b - p.a
        )));
    }
    let first = p.a.floor() as i64 + 1;
    let last = p.b.floor() as i64;
    if last < first {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let len = (last - first + 1) as usize;
    let parts: Vec<ComplexNeumaier> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = ComplexNeumaier::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                let n = (first + i as i64) as f64;
                acc.add(unit(p.f(n, 0)) * p.amp(n, 0));
            }
            acc
        })
        .collect();
    let mut total = ComplexNeumaier::new();
    for part in &parts {
        total.merge(part);
    }
    Ok(total.value())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdtComparison {
    pub sum: Complex64,
    pub integral: Complex64,
    pub diff: f64,
    /// H/(1−δ)
    pub bound: f64,
}

fn check_small_derivative(p: &PhaseProblem, lo: f64, delta: f64) -> Result<()> {
    if !(delta < 1.0) || !(delta > 0.0) {
        return Err(Error::Precondition(format!("need 0 < delta < 1, got {delta}")));
    }
    let (dmin, dmax) = p.derivative_range();
    let slack = SADDLE_TOL;
    if dmax > delta + slack || dmin < lo - slack {
        return Err(Error::Precondition(format!(
            "sampled f' in [{dmin}, {dmax}] leaves [{lo}, {delta}]"
        )));
    }
    Ok(())
}

/// Sum against ∫_a^b φ(x) e^{2πi f(x)} dx when |f′| ≤ δ < 1.
pub fn fdt_compare(p: &PhaseProblem, delta: f64) -> Result<FdtComparison> {
    check_small_derivative(p, -delta, delta)?;
    let sum = direct_sum(p)?;
    // the reduced phase carries the rounding of f itself
    let fmax = p.f(p.a, 0).abs().max(p.f(p.b, 0).abs());
    let noise = 16.0 * PI * f64::EPSILON * fmax * p.h;
    let integral = integrate_pieces_par(
        |x| unit(p.f(x, 0)) * p.amp(x, 0),
        p.a,
        p.b,
        1.0,
        FDT_QUAD_TOL,
        noise,
    )
    .value;
    Ok(FdtComparison {
        sum,
        integral,
        diff: (sum - integral).norm(),
        bound: p.h / (1.0 - delta),
    })
}

/// H/δ₁ + H/(1−δ), valid when 0 < δ₁ ≤ f′ ≤ δ < 1.
pub fn fdt_bound(p: &PhaseProblem, delta1: f64, delta: f64) -> Result<f64> {
    if !(delta1 > 0.0) || delta1 > delta {
        return Err(Error::Precondition(format!(
            "need 0 < delta1 <= delta, got {delta1}, {delta}"
        )));
    }
    check_small_derivative(p, delta1, delta)?;
    Ok(p.h / delta1 + p.h / (1.0 - delta))
}

fn curvature_sign(p: &PhaseProblem) -> Result<f64> {
    match p.conditions().curvature_sign {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(Error::Precondition(
            "f'' changes sign or vanishes on the sampled interval".into(),
        )),
    }
}

/// Distance to the nearest integer.
pub fn dist_to_int(y: f64) -> f64 {
    (y - y.round()).abs()
}

/// Solve f′(x) = ν on [a, b] by Newton's method inside a bisection bracket.
fn solve_saddle(p: &PhaseProblem, nu: f64, sign: f64) -> Result<f64> {
    let g = |x: f64| p.f(x, 1) - nu;
    // f′ is increasing iff sign > 0; keep lo on the side where g·sign < 0
    let (mut lo, mut hi) = (p.a, p.b);
    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    for _ in 0..200 {
        let gx = g(x);
        if gx.abs() < best.0 {
            best = (gx.abs(), x);
        }
        if gx.abs() <= SADDLE_TOL {
            return Ok(x);
        }
        if gx * sign < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            return Ok(best.1);
        }
        let mut next = x - gx / p.f(x, 2);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what: "saddle point solver",
        iterations: 200,
    })
}

/// All (ν, x_ν) with f′(x_ν) = ν, ν integer in the range of f′ on [a, b].
pub fn stationary_points(p: &PhaseProblem) -> Result<Vec<(i64, f64)>> {
    let sign = curvature_sign(p)?;
    let (da, db) = (p.f(p.a, 1), p.f(p.b, 1));
    let (lo, hi) = (da.min(db), da.max(db));
    let first = (lo - ENDPOINT_TIE).ceil() as i64;
    let last = (hi + ENDPOINT_TIE).floor() as i64;
    let mut out = Vec::new();
    for nu in first..=last {
        let nf = nu as f64;
        let x = if (da - nf).abs() <= ENDPOINT_TIE {
            p.a
        } else if (db - nf).abs() <= ENDPOINT_TIE {
            p.b
        } else {
            solve_saddle(p, nf, sign)?
        };
        out.push((nu, x));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleTerm {
    pub nu: i64,
    pub x: f64,
    /// ½ at an endpoint with integer f′, else 1.
    pub c: f64,
    pub w: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformOutput {
    pub saddle_terms: Vec<SaddleTerm>,
    pub r_bound: f64,
    pub lhs_direct: Complex64,
    pub rhs_main: Complex64,
}

impl TransformOutput {
    pub fn residual(&self) -> f64 {
        (self.lhs_direct - self.rhs_main).norm()
    }

    /// |lhs − rhs| / R.
    pub fn ratio(&self) -> f64 {
        self.residual() / self.r_bound
    }
}

/// W(ν) = ((1 ± i)/√2) φ(x)/√|f″(x)| e^{2πi(f(x) − νx)}, sign following f″.
pub fn saddle_weight(p: &PhaseProblem, nu: i64, x: f64, sign: f64) -> Complex64 {
    let (prod, err) = two_prod(nu as f64, x);
    let fx = p.f(x, 0);
    let arg = ((fx - fx.round()) - (prod - prod.round())) - err;
    let rot = Complex64::new(FRAC_1_SQRT_2, sign * FRAC_1_SQRT_2);
    rot * (p.amp(x, 0) / p.f(x, 2).abs().sqrt()) * unit(arg)
}

/// T_μ = 0 when f′(μ) is an integer, else min(1/‖f′(μ)‖, √A).
pub fn endpoint_term(p: &PhaseProblem, mu: f64) -> f64 {
    let d = dist_to_int(p.f(mu, 1));
    if d <= ENDPOINT_TIE {
        0.0
    } else {
        (1.0 / d).min(p.a_scale.sqrt())
    }
}

/// H(A/(b−a) + T_a + T_b + log(|f′(b) − f′(a)| + 2)).
pub fn remainder_bound(p: &PhaseProblem) -> f64 {
    let span = (p.f(p.b, 1) - p.f(p.a, 1)).abs();
    p.h * (p.a_scale / (p.b - p.a) + endpoint_term(p, p.a) + endpoint_term(p, p.b) + (span + 2.0).ln())
}

/// Stationary-phase transform of the sum over (a, b].
pub fn vdc_transform(p: &PhaseProblem) -> Result<TransformOutput> {
    let sign = curvature_sign(p)?;
    let (da, db) = (p.f(p.a, 1), p.f(p.b, 1));
    let mut terms = Vec::new();
    let mut rhs = Complex64::new(0.0, 0.0);
    for (nu, x) in stationary_points(p)? {
        let nf = nu as f64;
        let at_end = (x == p.a && (da - nf).abs() <= ENDPOINT_TIE)
            || (x == p.b && (db - nf).abs() <= ENDPOINT_TIE);
        let c = if at_end { 0.5 } else { 1.0 };
        let w = saddle_weight(p, nu, x, sign);
        rhs += w * c;
        terms.push(SaddleTerm { nu, x, c, w });
    }
    Ok(TransformOutput {
        saddle_terms: terms,
        r_bound: remainder_bound(p),
        lhs_direct: direct_sum(p)?,
        rhs_main: rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(v: f64) -> Jet {
        Arc::new(move |_, k| if k == 0 { v } else { 0.0 })
    }

    fn linear_phase(s: f64) -> Jet {
        Arc::new(move |x, k| match k {
            0 => s * x,
            1 => s,
            _ => 0.0,
        })
    }

    #[test]
    fn trivial_direct_sums() {
        let p = PhaseProblem::new(0.0, 10.0, constant(1.0), constant(0.0), 1.0, 1.0, 1.0).unwrap();
        assert_eq!(direct_sum(&p).unwrap(), Complex64::new(10.0, 0.0));
        let p = PhaseProblem::new(0.0, 3.0, constant(1.0), linear_phase(1.0 / 3.0), 1.0, 1.0, 1.0).unwrap();
        assert!(direct_sum(&p).unwrap().norm() < 1e-14);
        let p = PhaseProblem::new(0.0, 2e8, constant(1.0), constant(0.0), 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(direct_sum(&p), Err(Error::CostGuard(_))));
    }

    #[test]
    fn gauss_type_sum_matches_loop() {
        let p = quadratic(100.0, 0.0, 100.0, 1.0).unwrap();
        let mut re = 0.0;
        let mut im = 0.0;
        for n in 1..=100 {
            let y = (n * n) as f64 / 200.0;
            re += (2.0 * PI * y).cos();
            im += (2.0 * PI * y).sin();
        }
        let d = direct_sum(&p).unwrap();
        assert!((d.re - re).abs() < 1e-12 && (d.im - im).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(PhaseProblem::new(1.0, 1.0, constant(1.0), constant(0.0), 1.0, 1.0, 1.0).is_err());
        assert!(PhaseProblem::new(0.0, 1.0, constant(1.0), constant(0.0), 0.0, 1.0, 1.0).is_err());
        let flat = PhaseProblem::new(0.0, 10.0, constant(1.0), linear_phase(0.3), 1.0, 1.0, 1.0).unwrap();
        assert!(stationary_points(&flat).is_err());
        assert!(fdt_compare(&flat, 0.2).is_err());
        assert!(fdt_compare(&flat, 1.0).is_err());
    }

    #[test]
    fn linear_fdt() {
        let p = linear(0.5, 0.0, 200.0).unwrap();
        let c = fdt_compare(&p, 0.5).unwrap();
        assert!(c.diff <= 2.0 * c.bound, "{c:?}");
        let b = fdt_bound(&p, 0.5, 0.5).unwrap();
        assert_eq!(b, 4.0);
        assert!(direct_sum(&p).unwrap().norm() <= 2.0 + 1e-12);
        let zero = linear(0.0, 0.0, 50.5).unwrap();
        let z = fdt_compare(&zero, 0.5).unwrap();
        assert!((z.sum.re - 50.0).abs() < 1e-12 && (z.integral.re - 50.5).abs() < 1e-10);
        assert!(z.diff <= 1.0);
    }

    #[test]
    fn quadratic_saddles_and_transform() {
        let p = quadratic(100.0, 0.0, 100.0, 1.0).unwrap();
        let s = stationary_points(&p).unwrap();
        assert_eq!(s, vec![(0, 0.0), (1, 100.0)]);
        let t = vdc_transform(&p).unwrap();
        assert!(t.saddle_terms.iter().all(|s| s.c == 0.5));
        let q = quadratic(100.0, 5.0, 95.0, 1.0).unwrap();
        let t = vdc_transform(&q).unwrap();
        assert!(t.saddle_terms.is_empty());
        assert!(t.ratio() < 1.0);
        for &a in &[100.0, 1000.0, 10000.0] {
            for sign in [1.0, -1.0] {
                let q = quadratic(a, 0.05 * a, 3.7 * a, sign).unwrap();
                let t = vdc_transform(&q).unwrap();
                assert_eq!(t.saddle_terms.len(), 3);
                for st in &t.saddle_terms {
                    assert!((q.f(st.x, 1) - st.nu as f64).abs() <= SADDLE_TOL);
                    assert_eq!(st.c, 1.0);
                }
                assert!(t.ratio() < 1.0, "A={a} sign={sign}: {}", t.ratio());
            }
        }
    }

    #[test]
    fn endpoint_weights() {
        // f′(b) = 2 exactly, then nudged below
        let p = quadratic(100.0, 50.0, 200.0, 1.0).unwrap();
        let t = vdc_transform(&p).unwrap();
        let last = t.saddle_terms.last().unwrap();
        assert_eq!((last.nu, last.c), (2, 0.5));
        assert_eq!(endpoint_term(&p, p.b), 0.0);
        let p = quadratic(100.0, 50.0, 199.9, 1.0).unwrap();
        let t = vdc_transform(&p).unwrap();
        assert_eq!(t.saddle_terms.len(), 1);
        assert_eq!(t.saddle_terms[0].c, 1.0);
    }

    #[test]
    fn negative_curvature_variant() {
        let p = quadratic(1000.0, 100.0, 2500.0, -1.0).unwrap();
        let t = vdc_transform(&p).unwrap();
        let nus: Vec<i64> = t.saddle_terms.iter().map(|s| s.nu).collect();
        assert_eq!(nus, vec![-2, -1]);
        let w = t.saddle_terms[0].w;
        let pos = quadratic(1000.0, 100.0, 2500.0, 1.0).unwrap();
        let wp = vdc_transform(&pos).unwrap().saddle_terms[1].w;
        assert!((w - wp.conj()).norm() < 1e-9);
    }
}
