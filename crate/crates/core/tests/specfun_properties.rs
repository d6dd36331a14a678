use bandharvest_core::specfun::{erf, erfi, erfi_complex, gauss_erfi, sine_integral, spherical_bessel_j1};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn odd_functions(x in -26.0f64..26.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert_eq!(erfi(-x).unwrap(), -erfi(x).unwrap());
        prop_assert_eq!(sine_integral(-x), -sine_integral(x));
        prop_assert_eq!(spherical_bessel_j1(-x), -spherical_bessel_j1(x));
    }

    #[test]
    fn conjugate_symmetry(x in -20.0f64..20.0, y in -20.0f64..20.0) {
        let z = Complex64::new(x, y);
        let a = erfi_complex(z.conj()).unwrap();
        let b = erfi_complex(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-15 * b.norm());
    }

    #[test]
    fn fused_kernel_agrees_with_plain_erfi(x in -20.0f64..20.0, y in -8.0f64..8.0) {
        let fused = gauss_erfi(x, y, 0.0).unwrap();
        let plain = erfi_complex(Complex64::new(x, y)).unwrap();
        prop_assert!((fused - plain).norm() <= 1e-9 * plain.norm());
    }

    #[test]
    fn erfi_series_switchover_is_continuous(angle in 0.0f64..std::f64::consts::TAU) {
        let (s, c) = angle.sin_cos();
        let inside = Complex64::new(c, s);
        let outside = inside * (1.0 + 4.0 * f64::EPSILON);
        let a = erfi_complex(inside).unwrap();
        let b = erfi_complex(outside).unwrap();
        prop_assert!((a - b).norm() < 1e-11, "{} vs {}", a, b);
    }

    #[test]
    fn sine_integral_bounded_before_first_extremum(x in 0.0f64..std::f64::consts::PI) {
        let v = sine_integral(x);
        prop_assert!(v >= 0.0 && v <= sine_integral(std::f64::consts::PI));
    }
}

#[test]
fn faddeeva_region_boundaries_are_continuous() {
    // Walk across the power-series ellipse and the unit circle |x/6.3|^2 +
    // |y/4.4|^2 = 1 of the Faddeeva evaluation along a few rays.
    for angle in [0.1f64, 0.5, 0.9, 1.3] {
        for r in [0.292, 1.0] {
            let (s, c) = angle.sin_cos();
            let at = |scale: f64| {
                let x = 6.3 * r * c * scale;
                let y = 4.4 * r * s * scale;
                gauss_erfi(x, y, -(x * x)).unwrap()
            };
            let a = at(1.0 - 1e-12);
            let b = at(1.0 + 1e-12);
            assert!((a - b).norm() < 1e-11 * a.norm().max(1.0), "angle {angle} r {r}: {a} vs {b}");
        }
    }
}
