use proptest::prelude::*;

use hardyz::gram::{gram_point, DEFAULT_TOL};
use hardyz::special::Bounded;
use hardyz::summation::{compensated_sum, Neumaier};
use hardyz::theta::theta_ref;
use hardyz::weight::SmoothWeight;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bounded_arithmetic_encloses(a in -1e3f64..1e3, b in -1e3f64..1e3,
                                   ra in 0.0f64..1.0, rb in 0.0f64..1.0,
                                   da in -1.0f64..1.0, db in -1.0f64..1.0) {
        let x = Bounded::new(a, ra);
        let y = Bounded::new(b, rb);
        let (pa, pb) = (a + da * ra, b + db * rb);
        prop_assert!((x + y).contains(pa + pb));
        prop_assert!((x - y).contains(pa - pb));
        prop_assert!((x * y).contains(pa * pb));
        prop_assert!((-x).contains(-pa));
    }

    #[test]
    fn rho_partition(x in 0.3f64..3.5) {
        let w = SmoothWeight::shared();
        let s = w.rho(x).unwrap() + w.rho(1.0 / x).unwrap();
        prop_assert!((s - 1.0).abs() <= 1e-11);
        let r = w.rho(x).unwrap();
        prop_assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn gram_points_increase(x in -1.0f64..1e6) {
        let a = gram_point(x, DEFAULT_TOL).unwrap();
        let b = gram_point(x + 1.0, DEFAULT_TOL).unwrap();
        prop_assert!(b.t > a.t);
        prop_assert!(a.residual <= 1e-9);
    }

    #[test]
    fn neumaier_order_insensitive(mut v in prop::collection::vec(-1e12f64..1e12, 1..200)) {
        let forward = compensated_sum(v.iter().copied());
        v.reverse();
        let backward: Neumaier = v.iter().copied().collect();
        let scale: f64 = v.iter().map(|x| x.abs()).sum();
        prop_assert!((forward - backward.value()).abs() <= 4.0 * f64::EPSILON * scale.max(1.0) * 1e-3 + 1e-300);
    }

    #[test]
    fn theta_is_odd(t in 0.5f64..1e4) {
        let p = theta_ref(t).unwrap();
        let m = theta_ref(-t).unwrap();
        prop_assert!((p.value + m.value).abs() <= p.radius + m.radius);
    }
}
