use num_complex::Complex;
use num_rational::Rational64;
use proptest::prelude::*;
use spectral_nil::cliff::{build_clifford_rep, gamma_of_two_form, volume_element};
use spectral_nil::liealg::{
    check_automorphism, christoffel, gornet_algebra, gornet_automorphism, heisenberg_metric_algebra,
};
use spectral_nil::{CMatrix, CliffordRep, Error, Matrix};

#[test]
fn clifford_relations_all_dimensions() {
    for n in 2..=8 {
        let rep: CliffordRep = build_clifford_rep(n).unwrap();
        assert_eq!(rep.gammas().len(), n);
        assert_eq!(rep.spinor_dim(), 1 << (n / 2));
        assert!(rep.relation_defect() <= 1e-14, "n = {n}");
        for g in rep.gammas() {
            assert!(g.trace().norm() <= 1e-14);
        }
    }
}

#[test]
fn omega_seven_is_minus_identity() {
    let rep: CliffordRep = build_clifford_rep(7).unwrap();
    let w = volume_element(&rep, false).unwrap();
    assert_eq!(w.max_abs_diff(&CMatrix::identity(8).scale_real(-1.0)), 0.0);
}

#[test]
fn unsupported_dimensions() {
    for n in [0, 1, 9, 12] {
        assert!(matches!(build_clifford_rep::<f64>(n), Err(Error::UnsupportedDimension(_))));
    }
}

#[test]
fn two_form_rejects_asymmetric_input() {
    let rep: CliffordRep = build_clifford_rep(3).unwrap();
    let mut c = vec![vec![0.0; 3]; 3];
    c[0][1] = 1.0;
    c[1][0] = 1.0;
    assert!(matches!(gamma_of_two_form(&rep, &c), Err(Error::Precondition(_))));
}

#[test]
fn heisenberg_christoffel_rational() {
    let d = Rational64::new(2, 3);
    let t = Rational64::new(9, 5);
    let alg = heisenberg_metric_algebra(d, t).unwrap();
    assert_eq!(alg.structure_constant(0, 1, 2), d * d * t);
    let g = christoffel(&alg);
    assert_eq!(g.get(0, 1, 2), d * d * t / 2);
    assert_eq!(g.get(1, 0, 2), -d * d * t / 2);
    assert_eq!(g.metric_defect(), Rational64::from_integer(0));
    assert_eq!(g.torsion_defect(&alg), Rational64::from_integer(0));
}

#[test]
fn perturbed_automorphism_detected() {
    let alg = gornet_algebra::<f64>();
    let mut phi = gornet_automorphism(1.0);
    phi[(4, 0)] += 1e-3;
    phi[(2, 6)] -= 1e-3;
    let chk = check_automorphism(&alg, &phi, 1e-12).unwrap();
    assert!(chk.defect > 1e-4);
    assert!(!chk.within_tolerance);
}

fn complex_matrix_from(m: &Matrix) -> CMatrix {
    CMatrix::from_real(m)
}

proptest! {
    #[test]
    fn automorphism_group_law(s1 in -4.0f64..4.0, s2 in -4.0f64..4.0) {
        let prod = &gornet_automorphism(s1) * &gornet_automorphism(s2);
        prop_assert!(prod.max_abs_diff(&gornet_automorphism(s1 + s2)) <= 1e-12);
    }

    #[test]
    fn automorphism_unimodular(s in -10.0f64..10.0) {
        let det = gornet_automorphism(s).determinant().unwrap();
        prop_assert!((det - 1.0).abs() <= 1e-12);
        let cdet = complex_matrix_from(&gornet_automorphism(s)).determinant().unwrap();
        prop_assert!((cdet - Complex::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn automorphism_defect_small(s in -6.3f64..6.3) {
        let chk = check_automorphism(&gornet_algebra::<f64>(), &gornet_automorphism(s), 1e-12).unwrap();
        prop_assert!(chk.within_tolerance);
    }

    #[test]
    fn christoffel_trace_vanishes(d in 0.1f64..5.0, t in 0.1f64..5.0) {
        let g = christoffel(&heisenberg_metric_algebra(d, t).unwrap());
        for i in 0..3 {
            let tr: f64 = (0..3).map(|k| g.get(i, k, k)).sum();
            prop_assert_eq!(tr, 0.0);
        }
        let expected = d * d * t / 2.0;
        prop_assert!((g.get(0, 1, 2) - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn two_form_skew_hermitian(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let rep: CliffordRep = build_clifford_rep(3).unwrap();
        let coeffs = vec![vec![0.0, a, b], vec![-a, 0.0, c], vec![-b, -c, 0.0]];
        let m = gamma_of_two_form(&rep, &coeffs).unwrap();
        prop_assert!(m.anti_hermitian_defect() <= 1e-14);
    }
}
