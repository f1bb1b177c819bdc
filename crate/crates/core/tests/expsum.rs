use hardyz::expsum::{
    direct_sum, fdt_bound, fdt_compare, gram_block, gram_block_deltas, linear, quadratic,
    stationary_points, vdc_transform,
};
use hardyz::Calibration;

#[test]
fn fdt_on_linear_phases() {
    let k = Calibration::committed().k_fdt;
    for delta in [0.1, 0.5, 0.9] {
        let p = linear(delta, 0.0, 50.5).unwrap();
        let c = fdt_compare(&p, delta).unwrap();
        assert!(c.diff <= k * c.bound, "delta {delta}: {} > {}", c.diff, k * c.bound);
    }
}

#[test]
fn fdt_on_gram_block_m3_j2() {
    let p = gram_block(3, 2).unwrap();
    let (_, delta) = gram_block_deltas(3, 2).unwrap();
    let c = fdt_compare(&p, delta).unwrap();
    assert!(c.diff <= Calibration::committed().k_fdt * c.bound, "{c:?}");
}

#[test]
fn fdt_bound_on_gram_block_m5_j1() {
    let p = gram_block(5, 1).unwrap();
    let (d1, d) = gram_block_deltas(5, 1).unwrap();
    let bound = fdt_bound(&p, d1, d).unwrap();
    let s = direct_sum(&p).unwrap().norm();
    assert!(s <= Calibration::committed().k_fdt_bound * bound, "{s} vs {bound}");
}

#[test]
fn fdt_rejects_large_derivative() {
    let p = quadratic(100.0, 5.0, 370.0, 1.0).unwrap();
    assert!(fdt_compare(&p, 0.5).is_err());
}

#[test]
fn transform_on_quadratics_and_blocks() {
    let k = Calibration::committed().k_vdc;
    for a in [1e2, 1e3] {
        for sign in [1.0, -1.0] {
            let out = vdc_transform(&quadratic(a, 0.05 * a, 3.7 * a, sign).unwrap()).unwrap();
            assert!(out.ratio() <= k, "A {a} sign {sign}: {}", out.ratio());
        }
    }
    for m in [3, 4, 5, 8] {
        let p = gram_block(m, 0).unwrap();
        let out = vdc_transform(&p).unwrap();
        assert_eq!(out.saddle_terms.len(), stationary_points(&p).unwrap().len());
        assert!(out.ratio() <= k, "m {m}: {}", out.ratio());
    }
}
