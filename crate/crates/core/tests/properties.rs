use proptest::prelude::*;

use isocs::fock::{FockSpace, Generator, OperatorMatrix, Sector};
use isocs::kernels::canonical_kernel;
use isocs::specfun::{hyp1f1, hyp1f1_parity_parts, ln_gamma};
use isocs::states::{coherent_state, evolve, overlap, Family, NormMode, StateLabel};
use isocs::thermal::{density, husimi_q, thermal_moment, ThermalParams};
use isocs::C64;

fn space(g: f64) -> FockSpace {
    FockSpace::new(g, 64, Sector::Full).unwrap()
}

fn label(family: Family, r: f64, angle: f64) -> StateLabel {
    StateLabel::from_polar(family, r * r, angle)
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::BgcsEven), Just(Family::BgcsOdd), Just(Family::Gkcs)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_parts_add_up(b in 1.2f64..6.0, x in 0.0f64..50.0) {
        let (e, o) = hyp1f1_parity_parts(b, x).unwrap();
        let f = hyp1f1(1.0, b, x).unwrap();
        prop_assert!(((e + o) - f).abs() <= 1e-12 * f);
    }

    #[test]
    fn kummer_shift_recurrence(b in prop::sample::select(vec![1.5, 2.0, 2.5, 5.0]), x in 0.0f64..50.0) {
        let lhs = hyp1f1(1.0, b, x).unwrap();
        let rhs = 1.0 + x / b * hyp1f1(1.0, b + 1.0, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }

    #[test]
    fn log_gamma_recurrence(x in 0.05f64..60.0) {
        let d = ln_gamma(x + 1.0).unwrap() - ln_gamma(x).unwrap() - x.ln();
        prop_assert!(d.abs() < 1e-12 * ln_gamma(x + 1.0).unwrap().abs().max(1.0));
    }

    #[test]
    fn canonical_states_are_unit_vectors(fam in family(), r in 0.05f64..4.0, th in -3.2f64..3.2, g in 1.2f64..4.0) {
        let s = coherent_state(label(fam, r, th), space(g), NormMode::Canonical).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let o = overlap(&s, &s).unwrap();
        prop_assert!((o.re - 1.0).abs() < 1e-12 && o.im.abs() < 1e-15);
    }

    #[test]
    fn evolution_keeps_moduli(fam in family(), r in 0.1f64..3.0, t in -10.0f64..10.0) {
        let s = coherent_state(label(fam, r, 0.3), space(2.0), NormMode::Canonical).unwrap();
        let e = evolve(&s, t);
        for (a, b) in s.coeffs.iter().zip(e.coeffs.iter()) {
            prop_assert!((a.norm() - b.norm()).abs() <= 1e-15 * a.norm().max(1e-300));
        }
    }

    #[test]
    fn conjugate_label_conjugates_coefficients(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = C64::new(re, im);
        let a = coherent_state(StateLabel::BgcsEven { z }, space(2.0), NormMode::Canonical).unwrap();
        let b = coherent_state(StateLabel::BgcsEven { z: z.conj() }, space(2.0), NormMode::Canonical).unwrap();
        for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
            prop_assert!((x.conj() - y).norm() < 1e-14);
        }
    }

    #[test]
    fn kernels_are_bounded_and_hermitian(
        fam in family(),
        r1 in 0.1f64..3.0, t1 in -3.0f64..3.0,
        r2 in 0.1f64..3.0, t2 in -3.0f64..3.0,
        g in 1.2f64..3.5,
    ) {
        let (l1, l2) = (label(fam, r1, t1), label(fam, r2, t2));
        let k12 = canonical_kernel(&l1, &l2, g).unwrap();
        let k21 = canonical_kernel(&l2, &l1, g).unwrap();
        prop_assert!(k12.norm() <= 1.0 + 1e-12);
        prop_assert!((k12 - k21.conj()).norm() < 1e-14);
        prop_assert!((canonical_kernel(&l1, &l1, g).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn gk_overlap_modulus_is_quarter_period_invariant(j1 in 0.1f64..6.0, j2 in 0.1f64..6.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let g = 2.0;
        let k = |a: f64, b: f64| {
            canonical_kernel(&StateLabel::Gkcs { j: j1, alpha: a }, &StateLabel::Gkcs { j: j2, alpha: b }, g).unwrap().norm()
        };
        let q = std::f64::consts::FRAC_PI_2;
        prop_assert!((k(a, b) - k(a + q, b + q)).abs() < 1e-12);
    }

    #[test]
    fn density_is_a_normalized_positive_diagonal(fam in family(), beta in 0.05f64..5.0, g in 1.2f64..4.0) {
        let p = ThermalParams::new(beta, g).unwrap();
        let rho = density(fam, p, &space(g)).unwrap();
        prop_assert!(rho.diag_weights.iter().all(|&w| w >= 0.0));
        prop_assert!((rho.trace() - 1.0).abs() < 1e-14);
        let m = rho.to_matrix();
        prop_assert_eq!(&m.entries, &m.adjoint().entries);
    }

    #[test]
    fn first_moment_matches_matrix_trace(fam in prop::sample::select(vec![Family::BgcsEven, Family::BgcsOdd, Family::Gkcs]), beta in 0.2f64..3.0) {
        let g = 2.0;
        let s = space(g);
        let p = ThermalParams::new(beta, g).unwrap();
        let km = OperatorMatrix::generator(s, Generator::Lower);
        let kp = OperatorMatrix::generator(s, Generator::Raise);
        let prod = km.mul(&kp).unwrap();
        let rho = density(fam, p, &s).unwrap();
        let via_trace = rho.to_matrix().mul(&prod).unwrap().trace().re;
        let direct = thermal_moment(fam, p, 1, &s).unwrap();
        prop_assert!((via_trace - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn colder_husimi_near_the_vacuum_grows(fam in prop::sample::select(vec![Family::BgcsEven, Family::Gkcs]), b1 in 0.05f64..3.0, db in 0.01f64..3.0) {
        let l = label(fam, 0.1, 0.0);
        let q1 = husimi_q(fam, ThermalParams::new(b1, 2.0).unwrap(), &l).unwrap();
        let q2 = husimi_q(fam, ThermalParams::new(b1 + db, 2.0).unwrap(), &l).unwrap();
        prop_assert!(q2 >= q1 - 1e-12);
    }
}
