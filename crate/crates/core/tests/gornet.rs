use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_nil::cliff::build_clifford_rep;
use spectral_nil::gornet::delta_tau_poly;
use spectral_nil::{CMatrix, CotangentSample, GornetFamily};

fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex<f64>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex<f64>> =
            (0..n).map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            for c in &cols {
                let p: Complex<f64> = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= p * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = CMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

#[test]
fn unitary_is_unitary() {
    let u = random_unitary(8, 3);
    assert!((&u.adjoint() * &u).max_abs_diff(&CMatrix::identity(8)) <= 1e-13);
}

#[test]
fn determinant_independent_of_representation() {
    let fam = GornetFamily::new().unwrap();
    let taus = [[1, 1, 0, 0], [1, 2, 0, 1], [2, 1, -1, 1], [0, 1, 1, 2]];
    for seed in 0..4 {
        let rep = build_clifford_rep(7).unwrap().conjugated(&random_unitary(8, seed));
        let other = GornetFamily::with_rep(rep).unwrap();
        for t in taus {
            let tau = CotangentSample::from_ints(t);
            for s in [0.0, 0.37, -1.2] {
                let a = fam.determinant_at(&tau, s).unwrap();
                let b = other.determinant_at(&tau, s).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{t:?} s = {s}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn numeric_derivative_agrees_on_lattice() {
    let fam = GornetFamily::new().unwrap();
    let mut checked = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    let tau = CotangentSample::from_ints([a, b, c, d]);
                    let poly = delta_tau_poly(&tau);
                    if poly.abs() <= 1.0 {
                        continue;
                    }
                    let num = fam.delta_tau_numeric(&tau, 1e-4).unwrap();
                    assert!(((num - poly) / poly).abs() <= 1e-6, "{:?}: {num} vs {poly}", [a, b, c, d]);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn diagonal_ray_scaling() {
    let fam = GornetFamily::new().unwrap();
    for t in [1i64, 2, 3] {
        let tau = CotangentSample::from_ints([t, t, 0, 0]);
        let poly = delta_tau_poly(&tau);
        assert!(poly > 0.0);
        let num = fam.delta_tau_numeric(&tau, 1e-4).unwrap();
        assert!(((num - poly) / poly).abs() <= 1e-6, "t = {t}");
    }
}

#[test]
fn witnesses_move_the_determinant() {
    let fam = GornetFamily::new().unwrap();
    let ws = fam.deformation_scan(1, 0.5, 1e-6, None).unwrap();
    assert!(!ws.is_empty());
    for w in &ws {
        assert!(w.delta_poly != 0.0);
        assert!(w.displacement > 1e-6);
        let scale = w.det_at_zero.abs().max(1.0);
        assert!((w.det_at_probe - w.det_at_zero).abs() > 1e-6 * scale, "{:?}", w.lattice_point);
    }
    let again = fam.deformation_scan(1, 0.5, 1e-6, None).unwrap();
    assert_eq!(ws, again);
}

#[test]
fn kernel_of_the_polynomial_is_skipped() {
    let fam = GornetFamily::new().unwrap();
    let ws = fam.deformation_scan(1, 0.5, 1e-6, None).unwrap();
    for w in &ws {
        let [a, b, c, d] = w.lattice_point;
        assert_ne!(a * b, c * d);
    }
    assert!(fam.deformation_scan(0, 0.5, 1e-6, None).is_err());
    assert!(fam.deformation_scan(1, 0.0, 1e-6, None).is_err());
}

#[test]
fn reference_operator_comparison() {
    let fam = GornetFamily::new().unwrap();
    let cmp = fam.compare_reference(1e-10).unwrap();
    assert!(cmp.matches_negated);
    assert!(!cmp.matches);
}

#[test]
fn difference_step_validated() {
    let fam = GornetFamily::new().unwrap();
    let tau = CotangentSample::from_ints([1, 1, 0, 0]);
    assert!(fam.delta_tau_numeric(&tau, 1e-2).is_err());
    assert!(fam.delta_tau_numeric(&tau, 1e-8).is_err());
}
