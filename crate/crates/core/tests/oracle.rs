use std::f64::consts::PI;

use num_complex::Complex;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_nil::oracle::audit::{spectrum_completeness_audit, spectrum_completeness_audit_scaled, Generator};
use spectral_nil::oracle::eigen::{hermitian_eigen, max_residual};
use spectral_nil::oracle::fiber::{analytic_block_eigenvalues, fiber_block_matrix, fiber_operator_fd, FdOperator};
use spectral_nil::oracle::hermite::hermite_samples;
use spectral_nil::{CMatrix, HeisenbergGeometry};

fn fd_reference() -> Vec<f64> {
    let mut v = vec![-2.0 * PI - 0.25];
    for k in [1.0, 2.0] {
        let r = 2.0 * (PI * PI + k * PI).sqrt();
        v.push(-0.25 + r);
        v.push(-0.25 - r);
    }
    v.sort_by(|a: &f64, b| a.abs().partial_cmp(&b.abs()).unwrap());
    v
}

fn fd_max_rel_error(n: usize) -> f64 {
    let ev = fiber_operator_fd(1.0, 1.0, 1.0, n, 6.0).unwrap();
    fd_reference().iter().zip(&ev).map(|(r, e)| ((e - r) / r).abs()).fold(0.0, f64::max)
}

#[test]
fn block_grid_matches_closed_form() {
    let mut taus: Vec<Rational64> = (1..=10).flat_map(|t| [Rational64::from_integer(t), Rational64::from_integer(-t)]).collect();
    taus.extend((0..10).map(|t| Rational64::new(2 * t + 1, 2)));
    let params = [0.5f64, 1.0, 2.0];
    let mut worst = 0.0f64;
    for &tau in &taus {
        for k in 1..=20u64 {
            for &d in &params {
                for &t in &params {
                    let block = fiber_block_matrix(tau, k, d, t).unwrap();
                    assert!(block.max_imaginary_part() == 0.0);
                    let num = block.real_eigenvalues();
                    let ana = analytic_block_eigenvalues(tau, k, d, t);
                    for (a, b) in num.iter().zip(&ana) {
                        worst = worst.max((a - b).abs());
                    }
                }
            }
        }
    }
    assert!(worst <= 1e-12, "{worst:e}");
}

#[test]
fn fd_converges() {
    let e800 = fd_max_rel_error(800);
    let e1600 = fd_max_rel_error(1600);
    assert!(e800 <= 2e-2, "{e800:e}");
    assert!(e1600 <= 1e-2, "{e1600:e}");
    assert!(e1600 < e800);
}

#[test]
fn fd_monotone_in_n() {
    let reference = fd_reference();
    let mut prev = vec![f64::INFINITY; 5];
    for n in [200, 400, 800] {
        let ev = fiber_operator_fd(1.0, 1.0, 1.0, n, 6.0).unwrap();
        for i in 0..5 {
            let err = (ev[i] - reference[i]).abs();
            assert!(err < prev[i], "N = {n}, mode {i}");
            prev[i] = err;
        }
    }
}

#[test]
fn fd_hermitian_by_construction() {
    let op = FdOperator::new(1.0, 1.0, 1.0, 150, 6.0).unwrap();
    assert!(op.to_dense_complex().hermitian_defect() <= 1e-14);
    let dense = op.to_dense();
    assert_eq!(dense.max_abs_diff(&dense.transpose()), 0.0);
}

#[test]
fn hermite_recurrences() {
    let grid: Vec<f64> = (0..801).map(|i| -4.0 + 8.0 * i as f64 / 800.0).collect();
    let r = hermite_samples(1.0, 8, &grid, 1e-4).unwrap();
    assert!(r.three_term[0] <= 1e-8);
    assert!(r.max_relative_derivative(1.0) <= 1e-6);
    let neg = hermite_samples(-1.0, 8, &grid, 1e-4).unwrap();
    assert_eq!(r, neg);
}

#[test]
fn audits_all_generators() {
    let gens = [
        (Generator::Heisenberg { geometry: HeisenbergGeometry::new(1, 1.0, 1.0).unwrap(), delta: "+++".parse().unwrap() }, 20.0),
        (Generator::Heisenberg { geometry: HeisenbergGeometry::new(2, 1.0, 0.01).unwrap(), delta: "++-".parse().unwrap() }, 314.5),
        (Generator::Torus { r: 1, d: 1.0, delta: "++".parse().unwrap() }, 10.0),
        (Generator::Berger { m: 3, ell: 0.5 }, 15.0),
        (Generator::Berger { m: 1, ell: 1.0 }, 6.0),
        (Generator::Cpm { m: 3 }, 30.0),
    ];
    for (g, lam) in &gens {
        let r = spectrum_completeness_audit(g, *lam, 2.0).unwrap();
        assert!(r.complete, "{g:?}");
    }
}

#[test]
fn truncated_fixture_fails_audit() {
    let g = Generator::Heisenberg { geometry: HeisenbergGeometry::new(1, 1.0, 1.0).unwrap(), delta: "+++".parse().unwrap() };
    let r = spectrum_completeness_audit_scaled(&g, 20.0, 2.0, 0.5).unwrap();
    assert!(!r.complete);
    assert!(r.reference_entries > r.entries);
}

fn random_hermitian(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = CMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex::new(rng.gen_range(-2.0..2.0), 0.0);
        for j in (i + 1)..n {
            let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hermitian_residuals(n in 1usize..40, seed in any::<u64>()) {
        let h = random_hermitian(n, seed);
        let eig = hermitian_eigen(&h).unwrap();
        let norm = h.max_abs() * n as f64;
        prop_assert!(max_residual(&h, &eig) <= 1e-10 * norm.max(1.0));
    }

    #[test]
    fn block_eigenvalues_real(tau_n in -20i64..20, half in any::<bool>(), k in 0u64..30, d in 0.1f64..3.0, t in 0.1f64..3.0) {
        prop_assume!(tau_n != 0);
        let tau = if half { Rational64::new(2 * tau_n - tau_n.signum(), 2) } else { Rational64::from_integer(tau_n) };
        let b = fiber_block_matrix(tau, k, d, t).unwrap();
        prop_assert_eq!(b.max_imaginary_part(), 0.0);
        let ana = analytic_block_eigenvalues(tau, k, d, t);
        for (x, y) in b.real_eigenvalues().iter().zip(&ana) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()));
        }
    }
}
