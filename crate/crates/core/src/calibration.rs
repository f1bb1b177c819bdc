//! The calibration record: empirical constants that turn the asymptotic
//! `O(·)` statements into assertable inequalities.
//!
//! The committed record is compiled in; `hardyz calibrate` regenerates it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const COMMITTED: &str = include_str!("../calibration.kv");

/// Every key a record must define.
pub const KEYS: &[&str] = &[
    "theta_c5",
    "c_rs",
    "c_afe",
    "c_rs_corr_0",
    "c_rs_corr_1",
    "c_rs_corr_2",
    "k_vdc",
    "k_fdt",
    "k_fdt_bound",
    "k_u",
    "k_w",
    "cap_norm_new_even",
    "cap_norm_new_odd",
    "cap_cosine",
    "moser_stat_n1e4",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    /// O(t⁻⁵) constant of the four-term θ expansion.
    pub theta_c5: f64,
    /// Main Riemann–Siegel sum: error ≤ c_rs·t^{−1/4}.
    pub c_rs: f64,
    /// Smoothed approximate functional equation: error ≤ c_afe·t^{−5/6}.
    pub c_afe: f64,
    /// Corrected Riemann–Siegel, order k: error ≤ c_k·t^{−(2k+3)/4}.
    pub c_rs_corr: [f64; 3],
    pub k_vdc: f64,
    pub k_fdt: f64,
    pub k_fdt_bound: f64,
    pub k_u: f64,
    pub k_w: f64,
    pub cap_norm_new_even: f64,
    pub cap_norm_new_odd: f64,
    pub cap_cosine: f64,
    pub moser_stat_n1e4: f64,
}

impl Calibration {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::format(origin, format!("line {}: expected key=value", lineno + 1))
            })?;
            let v: f64 = v.trim().parse().map_err(|_| {
                Error::format(origin, format!("line {}: bad number {:?}", lineno + 1, v))
            })?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::format(
                    origin,
                    format!("line {}: {} must be finite and non-negative", lineno + 1, k),
                ));
            }
            map.insert(k.trim().to_string(), v);
        }
        let get = |k: &str| {
            map.get(k)
                .copied()
                .ok_or_else(|| Error::format(origin, format!("missing key {k}")))
        };
        Ok(Calibration {
            theta_c5: get("theta_c5")?,
            c_rs: get("c_rs")?,
            c_afe: get("c_afe")?,
            c_rs_corr: [get("c_rs_corr_0")?, get("c_rs_corr_1")?, get("c_rs_corr_2")?],
            k_vdc: get("k_vdc")?,
            k_fdt: get("k_fdt")?,
            k_fdt_bound: get("k_fdt_bound")?,
            k_u: get("k_u")?,
            k_w: get("k_w")?,
            cap_norm_new_even: get("cap_norm_new_even")?,
            cap_norm_new_odd: get("cap_norm_new_odd")?,
            cap_cosine: get("cap_cosine")?,
            moser_stat_n1e4: get("moser_stat_n1e4")?,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    /// The record compiled into the crate.
    pub fn committed() -> &'static Calibration {
        static CAL: OnceLock<Calibration> = OnceLock::new();
        CAL.get_or_init(|| {
            Calibration::parse(COMMITTED, Path::new("calibration.kv"))
                .expect("committed calibration record is well formed")
        })
    }

    pub fn pairs(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("theta_c5", self.theta_c5),
            ("c_rs", self.c_rs),
            ("c_afe", self.c_afe),
            ("c_rs_corr_0", self.c_rs_corr[0]),
            ("c_rs_corr_1", self.c_rs_corr[1]),
            ("c_rs_corr_2", self.c_rs_corr[2]),
            ("k_vdc", self.k_vdc),
            ("k_fdt", self.k_fdt),
            ("k_fdt_bound", self.k_fdt_bound),
            ("k_u", self.k_u),
            ("k_w", self.k_w),
            ("cap_norm_new_even", self.cap_norm_new_even),
            ("cap_norm_new_odd", self.cap_norm_new_odd),
            ("cap_cosine", self.cap_cosine),
            ("moser_stat_n1e4", self.moser_stat_n1e4),
        ]
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        out.push_str("# hardyz calibration record (key=value, natural logs)\n");
        out.push_str("# regenerate with `hardyz calibrate --output crates/core/calibration.kv`\n");
        for (k, v) in self.pairs() {
            let _ = writeln!(out, "{k}={v:.6e}");
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_kv()).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn committed_record_has_every_key() {
        let cal = Calibration::committed();
        let keys: Vec<_> = cal.pairs().into_iter().map(|(k, _)| k).collect();
        assert_eq!(keys, KEYS);
    }

    #[test]
    fn kv_round_trip() {
        let cal = Calibration::committed().clone();
        let back = Calibration::parse(&cal.to_kv(), Path::new("mem")).unwrap();
        for ((k, a), (_, b)) in cal.pairs().into_iter().zip(back.pairs()) {
            assert!((a - b).abs() <= 1e-6 * a.abs(), "{k}");
        }
    }

    #[test]
    fn missing_key_rejected() {
        let err = Calibration::parse("theta_c5=0.01\n", Path::new("x")).unwrap_err();
        assert!(err.to_string().contains("missing key"));
        assert!(Calibration::parse("c_rs=abc\n", Path::new("x")).is_err());
    }
}
