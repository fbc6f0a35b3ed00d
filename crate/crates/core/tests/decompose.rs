mod support;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use sunff_core::algebra::{exact_unitary, AngleSet, HermitianGenerator};
use sunff_core::combinatorics::IrrepShape;
use sunff_core::decompose::*;
use support::{c, expm_taylor, spectral_norm, CMatrix};

#[test]
fn fundamental_matches_taylor() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let a = AngleSet::random(3, &mut rng);
    let u = fundamental_matrix(3, &a).unwrap();
    let x = a.exponent(IrrepShape::new(3, 1).unwrap()).unwrap().to_dense() * c(0.0, 1.0);
    assert!(spectral_norm(&(&u - expm_taylor(&x))) < 1e-13);
    assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn single_rotation_is_recovered() {
    let mut a = AngleSet::zeros(3);
    a.set(HermitianGenerator::Symmetric { j: 1, k: 3 }, 0.9).unwrap();
    let u = fundamental_matrix(3, &a).unwrap();
    let seq = euler_decompose(&u, 1e-12).unwrap();
    assert!(seq.reconstruction_error <= 1e-12);
    let active: Vec<_> = seq.factors.iter().filter(|f| f.angle.abs() > 1e-12 && (f.angle - 4.0 * std::f64::consts::PI).abs() > 1e-12).collect();
    // A real rotation in the (1,3) plane needs at most its S/A pair.
    assert!(active.len() <= 2, "{active:?}");
    assert!(active.iter().all(|f| matches!(
        f.generator,
        HermitianGenerator::Symmetric { j: 1, k: 3 } | HermitianGenerator::Antisymmetric { j: 1, k: 3 }
    )));
}

#[test]
fn random_su3_seed_3() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let a = AngleSet::random(3, &mut rng);
    let u = fundamental_matrix(3, &a).unwrap();
    let seq = euler_decompose(&u, 1e-10).unwrap();
    assert!(seq.reconstruction_error <= 1e-10);
    assert!(seq.len() <= 8);

    // Lifting through the irrep reproduces the exact unitary.
    let shape = IrrepShape::new(3, 2).unwrap();
    let lifted = lift_sequence(&seq, shape).unwrap();
    assert!(spectral_norm(&(lifted - exact_unitary(shape, &a).unwrap())) <= 1e-8);
}

#[test]
fn empty_sequence_lifts_to_identity() {
    let shape = IrrepShape::new(3, 3).unwrap();
    let u = lift_sequence(&EulerSequence::empty(3), shape).unwrap();
    assert_eq!(u, CMatrix::identity(10, 10));
}

#[test]
fn homomorphism_across_seeds() {
    for seed in 0..20u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for n in 2..=3 {
            let a = AngleSet::random(n, &mut rng);
            let u = fundamental_matrix(n, &a).unwrap();
            for m in 1..=4 {
                let shape = IrrepShape::new(n, m).unwrap();
                let tol = 1e-10 / shape.dim() as f64;
                let seq = euler_decompose(&u, tol).unwrap();
                let err = spectral_norm(&(lift_sequence(&seq, shape).unwrap() - exact_unitary(shape, &a).unwrap()));
                // The irrep norm of the generators grows like M.
                assert!(err <= 100.0 * tol * m as f64, "seed={seed} n={n} M={m}: {err:e}");
            }
        }
    }
}

#[test]
fn convergence_error_carries_residual() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let u = fundamental_matrix(3, &AngleSet::random(3, &mut rng)).unwrap();
    match euler_decompose(&u, 0.0) {
        Err(sunff_core::Error::Convergence { residual, .. }) => assert!(residual > 0.0),
        Ok(seq) => assert_eq!(seq.reconstruction_error, 0.0),
        Err(e) => panic!("unexpected {e}"),
    }
}

proptest! {
    #[test]
    fn reconstructs_random_elements(seed in 0u64..5000, n in 2usize..6) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = fundamental_matrix(n, &AngleSet::random(n, &mut rng)).unwrap();
        let seq = euler_decompose(&u, 1e-10).unwrap();
        prop_assert_eq!(seq.len(), n * n - 1);
        prop_assert!(seq.reconstruction_error <= 1e-10);
    }
}
