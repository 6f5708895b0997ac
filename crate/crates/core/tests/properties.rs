use krawx_core::bikraw::{evaluate, index_pairs, polynomial_table, Route};
use krawx_core::oracles::gauss_hermite;
use krawx_core::oscrep::unitary_matrix;
use krawx_core::overlaps::{polar_labels, polar_spherical, spherical_labels};
use krawx_core::rotations::{euler_to_rotation, wigner_block, wigner_small_d, EulerAngles};
use krawx_core::su11cg::{cg_block, explicit_vs_recurrence, Su11Rep};
use krawx_core::EulerAngles64;
use proptest::prelude::*;

fn angles() -> impl Strategy<Value = EulerAngles64> {
    (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b, c)| EulerAngles::new(a, b, c))
}

/// Every entry the polynomial routes divide by is at least 0.05 in magnitude.
fn generic(a: &EulerAngles64) -> bool {
    let r = euler_to_rotation(a);
    [(1, 3), (2, 3), (3, 3), (3, 1), (3, 2), (1, 1), (1, 2), (2, 1), (2, 2)].iter().all(|&(i, j)| r.at(i, j).abs() >= 0.05)
}

/// `nu` in `{1/4, 3/4} U {(1 + |m|)/2 : |m| <= 6}`.
fn nu() -> impl Strategy<Value = Su11Rep> {
    prop_oneof![Just((1, 4)), Just((3, 4)), (0i64..=6).prop_map(|m| (1 + m, 2))]
        .prop_map(|(p, q)| Su11Rep::from_ratio(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rotations_are_proper(a in angles()) {
        let r = euler_to_rotation(&a);
        prop_assert!(r.orthogonality_defect() < 1e-12);
        prop_assert!((r.determinant() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn small_d_transposition(ell in 0u32..=6, beta in 0.0f64..std::f64::consts::PI) {
        let l = ell as i32;
        for mp in -l..=l {
            for m in -l..=l {
                let sign = if (m - mp) % 2 == 0 { 1.0 } else { -1.0 };
                let (lhs, rhs) = (wigner_small_d(ell, mp, m, beta), sign * wigner_small_d(ell, m, mp, beta));
                prop_assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_blocks_compose(ell in 0u32..=10, b1 in -3.0f64..3.0, b2 in -3.0f64..3.0) {
        let w = |b: f64| wigner_block(ell, &EulerAngles::new(0.0, b, 0.0));
        prop_assert!((&w(b1) * &w(b2)).max_abs_diff(&w(b1 + b2)) < 1e-9);
    }

    #[test]
    fn wigner_blocks_are_unitary(ell in 0u32..=10, a in angles()) {
        prop_assert!(wigner_block(ell, &a).unitarity_defect() < 1e-10);
    }

    #[test]
    fn oscillator_representation_is_homomorphic(n in 0u32..=5, b1 in -3.0f64..3.0, b2 in -3.0f64..3.0) {
        let u = |b: f64| unitary_matrix(n, &EulerAngles::new(0.0, b, 0.0));
        prop_assert!((&u(b1) * &u(b2)).max_abs_diff(&u(b1 + b2)) < 1e-10);
    }

    #[test]
    fn cg_blocks_are_orthogonal(a in nu(), b in nu(), n in 0u32..=20) {
        let block = cg_block::<f64>(a, b, n);
        prop_assert!(block.row_defect() < 1e-10);
        prop_assert!(block.column_defect() < 1e-10);
    }

    #[test]
    fn cg_routes_agree(a in nu(), b in nu(), n in 0u32..=20) {
        prop_assert!(explicit_vs_recurrence::<f64>(a, b, n, f64::MIN_POSITIVE) < 1e-8);
    }

    #[test]
    fn polar_spherical_conserves_m(n in 0u32..=6) {
        for p in polar_labels(n) {
            for s in spherical_labels(n) {
                if p.m != s.m {
                    prop_assert_eq!(polar_spherical::<f64>(&p, &s).norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn lowest_polynomial_is_one(a in angles(), n in 0u32..=6) {
        prop_assume!(generic(&a));
        for (i, k) in index_pairs(n) {
            prop_assert_eq!(evaluate(0, 0, i, k, n, &a, Route::Genfun).unwrap(), 1.0);
        }
    }

    #[test]
    fn routes_agree(a in angles(), n in 0u32..=4) {
        prop_assume!(generic(&a));
        let reference = polynomial_table(n, &a, Route::Genfun).unwrap();
        for route in Route::ALL {
            let table = polynomial_table(n, &a, route).unwrap();
            for (x, y) in table.iter().zip(&reference) {
                prop_assert!((x.value - y.value).abs() <= 1e-8 * y.value.abs().max(1.0), "{:?} {:?}: {} vs {}", route, (x.r, x.s, x.i, x.k), x.value, y.value);
            }
        }
    }

    #[test]
    fn gauss_hermite_is_exact(order in 1usize..=16, k in 0u32..16) {
        prop_assume!(2 * k < 2 * order as u32);
        let rule = gauss_hermite::<f64>(order).unwrap();
        // Integral of x^{2k} e^{-x^2} is (2k-1)!! sqrt(pi) / 2^k.
        let exact = (1..=k).fold(std::f64::consts::PI.sqrt(), |acc, j| acc * (2 * j - 1) as f64 / 2.0);
        let got = rule.integrate(|x| x.powi(2 * k as i32));
        prop_assert!((got - exact).abs() <= 1e-12 * exact);
        let odd = rule.integrate(|x| x.powi(2 * k as i32 + 1));
        prop_assert!(odd.abs() <= 1e-12 * exact.max(1.0));
    }
}
