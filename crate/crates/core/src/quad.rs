//! Adaptive Gauss–Kronrod (7/15) quadrature.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values that can be integrated: a vector space over f64 with a norm.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn norm(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One G7K15 panel: (Kronrod estimate, error estimate). The error uses the
/// QUADPACK scaling of |K − G| against the mean deviation, floored at the
/// rounding level of the panel.
pub fn gk15<T: Integrand, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut vals = [(T::zero(), T::zero()); 7];
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x), f(c + x));
        vals[j] = (f1, f2);
        k = k + (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g = g + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = k * 0.5;
    let mut resasc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        resasc += ((vals[j].0 - mean).norm() + (vals[j].1 - mean).norm()) * WGK[j];
    }
    let hh = h.abs();
    let (resabs, resasc) = (resabs * hh, resasc * hh);
    let mut err = (k - g).norm() * hh;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (k * h, err)
}

/// Result of [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`, bisecting the
/// worst panel until the summed error estimate is below `tol` or the panel
/// budget runs out.
pub fn integrate<T: Integrand, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Quadrature<T> {
    if a == b {
        return Quadrature {
            value: T::zero(),
            error: 0.0,
            panels: 0,
        };
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if err <= tol || panels.len() >= max_panels {
            let mut sorted = panels;
            sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
            let value = sorted.iter().fold(T::zero(), |acc, p| acc + p.2);
            return Quadrature {
                value,
                error: err,
                panels: sorted.len(),
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (pa, pb, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&mut f, pa, mid);
        let (v2, e2) = gk15(&mut f, mid, pb);
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
}

/// Per-unit-length floor on the tolerance of one piece in [`integrate_pieces`].
pub const PIECE_TOL_FLOOR: f64 = 1e-14;

/// [`integrate`] after splitting [a, b] into pieces no longer than `piece`.
pub fn integrate_pieces<T: Integrand, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    piece: f64,
    tol: f64,
) -> Quadrature<T> {
    let n = (((b - a).abs() / piece).ceil() as usize).max(1);
    let step = (b - a) / n as f64;
    let mut value = T::zero();
    let mut error = 0.0;
    let mut panels = 0;
    for i in 0..n {
        let lo = a + step * i as f64;
        let hi = if i + 1 == n { b } else { lo + step };
        let q = integrate(&mut f, lo, hi, (tol / n as f64).max(PIECE_TOL_FLOOR * (hi - lo).abs()), 200);
        value = value + q.value;
        error += q.error;
        panels += q.panels;
    }
    Quadrature {
        value,
        error,
        panels,
    }
}

/// [`integrate_pieces`] with the pieces evaluated in parallel and summed in
/// order, so the result does not depend on scheduling. `unit_floor` is the
/// smallest tolerance per unit length worth asking of a piece (the noise
/// level of the integrand).
pub fn integrate_pieces_par<T, F>(
    f: F,
    a: f64,
    b: f64,
    piece: f64,
    tol: f64,
    unit_floor: f64,
) -> Quadrature<T>
where
    T: Integrand + Send,
    F: Fn(f64) -> T + Sync,
{
    use rayon::prelude::*;
    let n = (((b - a).abs() / piece).ceil() as usize).max(1);
    let step = (b - a) / n as f64;
    let parts: Vec<Quadrature<T>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let lo = a + step * i as f64;
            let hi = if i + 1 == n { b } else { lo + step };
            let floor = PIECE_TOL_FLOOR.max(unit_floor) * (hi - lo).abs();
            integrate(&f, lo, hi, (tol / n as f64).max(floor), 200)
        })
        .collect();
    parts.into_iter().fold(
        Quadrature {
            value: T::zero(),
            error: 0.0,
            panels: 0,
        },
        |acc, q| Quadrature {
            value: acc.value + q.value,
            error: acc.error + q.error,
            panels: acc.panels + q.panels,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        for deg in 0..=21 {
            let (v, _) = gk15(&mut |x: f64| x.powi(deg), 0.0, 1.0);
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_smooth() {
        let q = integrate(|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-13, 100);
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let q = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, 200);
        assert!((q.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn complex_oscillatory() {
        let q = integrate_pieces(|x: f64| Complex64::new(0.0, x).exp(), 0.0, 100.0, 1.0, 1e-12);
        let exact = (Complex64::new(0.0, 100.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((q.value - exact).norm() < 1e-11);
    }
}
