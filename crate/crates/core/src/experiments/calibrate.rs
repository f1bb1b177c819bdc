//! Regeneration of the calibration record. Every empirical constant is the
//! worst case over a fixed suite times [`HEADROOM`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{error_scan, moser_fourth, titchmarsh_cosine_sum, Context, Parity};
use crate::calibration::Calibration;
use crate::error::Result;
use crate::expsum::{
    alternating_sum_trace, direct_sum, fdt_bound, fdt_compare, gram_block, gram_block_deltas, linear,
    proof_trace_w1, quadratic, vdc_transform,
};
use crate::theta::{theta_asym_dd, theta_ref};
use crate::zfun::{z_afe_smooth, z_reference, z_rs_corrected, z_rs_main, Method};

pub const HEADROOM: f64 = 2.0;

/// Seeds for the random t samples; the acceptance suite uses different ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CalibrationSeeds {
    pub evaluators: u64,
    pub corrected: u64,
}

impl Default for CalibrationSeeds {
    fn default() -> Self {
        CalibrationSeeds {
            evaluators: 0xC0FF_EE01,
            corrected: 0xC0FF_EE02,
        }
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|_| (rng.gen_range(lo.ln()..hi.ln())).exp()).collect()
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

/// Run every calibration suite; `log` receives one line per constant.
pub fn calibrate(seeds: CalibrationSeeds, mut log: impl FnMut(&str)) -> Result<Calibration> {
    let mut note = |k: &str, v: f64| log(&format!("{k} = {v:.6e}"));

    let theta_c5 = HEADROOM
        * worst((0..=240).map(|i| {
            let t = 6.0 + 0.1 * i as f64;
            let r = theta_ref(t).map(|r| r.value).unwrap_or(f64::NAN);
            (theta_asym_dd(t).to_f64() - r).abs() * t.powi(5)
        }));
    note("theta_c5", theta_c5);

    let mut rng = ChaCha8Rng::seed_from_u64(seeds.evaluators);
    let ts = log_uniform(&mut rng, 100.0, 1e4, 200);
    let (mut c_rs, mut c_afe) = (0.0f64, 0.0f64);
    for &t in &ts {
        let r = z_reference(t)?.z;
        c_rs = c_rs.max((z_rs_main(t)?.z - r).abs() * t.powf(0.25));
        c_afe = c_afe.max((z_afe_smooth(t)?.z - r).abs() * t.powf(5.0 / 6.0));
    }
    let (c_rs, c_afe) = (HEADROOM * c_rs, HEADROOM * c_afe);
    note("c_rs", c_rs);
    note("c_afe", c_afe);

    let mut rng = ChaCha8Rng::seed_from_u64(seeds.corrected);
    let ts = log_uniform(&mut rng, 20.0, 2e4, 200);
    let mut c_rs_corr = [0.0f64; 3];
    for &t in &ts {
        let r = z_reference(t)?.z;
        for (k, c) in c_rs_corr.iter_mut().enumerate() {
            let e = (z_rs_corrected(t, k as u8)?.z - r).abs();
            *c = c.max(e * t.powf((2.0 * k as f64 + 3.0) / 4.0));
        }
    }
    for (k, c) in c_rs_corr.iter_mut().enumerate() {
        *c *= HEADROOM;
        note(&format!("c_rs_corr_{k}"), *c);
    }

    let mut k_vdc = 0.0f64;
    for a in [1e2, 1e3, 1e4] {
        for (lo, hi) in [(0.05, 3.7), (0.3, 10.2)] {
            for sign in [1.0, -1.0] {
                k_vdc = k_vdc.max(vdc_transform(&quadratic(a, lo * a, hi * a, sign)?)?.ratio());
            }
        }
    }
    for m in [3, 4, 5, 7, 10, 16] {
        k_vdc = k_vdc.max(vdc_transform(&gram_block(m, 0)?)?.ratio());
    }
    let k_vdc = HEADROOM * k_vdc;
    note("k_vdc", k_vdc);

    let mut k_fdt = 0.0f64;
    for d in [0.1, 0.5, 0.9] {
        let c = fdt_compare(&linear(d, 0.0, 200.0)?, d)?;
        k_fdt = k_fdt.max(c.diff / c.bound);
    }
    let c = fdt_compare(&linear(0.0, 0.0, 50.5)?, 0.5)?;
    k_fdt = k_fdt.max(c.diff / c.bound);
    let mut k_fdt_bound = 0.0f64;
    let p = linear(0.5, 0.0, 1000.0)?;
    k_fdt_bound = k_fdt_bound.max(direct_sum(&p)?.norm() / fdt_bound(&p, 0.5, 0.5)?);
    for (m, j) in [(3, 1), (3, 2), (5, 1)] {
        let p = gram_block(m, j)?;
        let (d1, d) = gram_block_deltas(m, j)?;
        let c = fdt_compare(&p, d)?;
        k_fdt = k_fdt.max(c.diff / c.bound);
        k_fdt_bound = k_fdt_bound.max(c.sum.norm() / fdt_bound(&p, d1, d)?);
    }
    let (k_fdt, k_fdt_bound) = (HEADROOM * k_fdt, HEADROOM * k_fdt_bound);
    note("k_fdt", k_fdt);
    note("k_fdt_bound", k_fdt_bound);

    let mut k_u = 0.0f64;
    for l in [100u64, 1000, 10000] {
        k_u = k_u.max(alternating_sum_trace(2 * l)?.diff.abs());
        k_u = k_u.max(alternating_sum_trace(2 * l + 1)?.diff.abs());
    }
    let k_u = HEADROOM * k_u;
    note("k_u", k_u);

    let mut k_w = 0.0f64;
    for m in [3u32, 4, 5, 6, 7, 8, 10, 12, 16, 24, 32] {
        k_w = k_w.max(proof_trace_w1(m)?.rel_err * (m * m) as f64);
    }
    let k_w = HEADROOM * k_w;
    note("k_w", k_w);

    let ctx = Context::from_env();
    let grid: Vec<u64> = (7..=17).map(|k| 1u64 << k).collect();
    let scan = error_scan(&grid, &[Parity::Even, Parity::Odd], Method::default(), &ctx)?;
    let cap = |p: Parity| HEADROOM * worst(scan.iter().filter(|r| r.parity == p).map(|r| r.norm_new));
    let (cap_norm_new_even, cap_norm_new_odd) = (cap(Parity::Even), cap(Parity::Odd));
    note("cap_norm_new_even", cap_norm_new_even);
    note("cap_norm_new_odd", cap_norm_new_odd);

    let mut cap_cosine = 0.0f64;
    for n in [100, 1000, 10000] {
        cap_cosine = cap_cosine.max(titchmarsh_cosine_sum(n, &ctx)?.norm);
    }
    let cap_cosine = HEADROOM * cap_cosine;
    note("cap_cosine", cap_cosine);

    let moser_stat_n1e4 = moser_fourth(10_000, Method::default(), &ctx)?;
    note("moser_stat_n1e4", moser_stat_n1e4);

    Ok(Calibration {
        theta_c5,
        c_rs,
        c_afe,
        c_rs_corr,
        k_vdc,
        k_fdt,
        k_fdt_bound,
        k_u,
        k_w,
        cap_norm_new_even,
        cap_norm_new_odd,
        cap_cosine,
        moser_stat_n1e4,
    })
}
