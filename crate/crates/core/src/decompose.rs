//! Factor an `SU(n)` element into `n^2 - 1` one-parameter exponentials
//! `exp(i theta_b O_b)` with `O_b` in `{H_i, S_jk, A_jk}`.
//!
//! Elimination order: columns left to right; within column `c`, rows
//! `r = c+1, ..., n` top to bottom. Each entry `u[r][c]` is zeroed by
//! `W = exp(i theta S_{c,r}) exp(i phi A_{c,r})` acting on rows `c, r`.
//! What remains is a diagonal phase matrix, written as commuting `H_i`
//! exponentials. With rotations `W_1, ..., W_m` in the order applied,
//!
//! `u = W_1^† ... W_m^† exp(i sum sigma_i H_i)`,
//!
//! and the factor list is this product read left to right.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{exact_unitary, generator_exponential, AngleSet, HermitianGenerator};
use crate::combinatorics::IrrepShape;
use crate::error::{domain, Error, Result};
use crate::linalg::{reduce_angle, spectral_norm, unitarity_defect, CMatrix};

/// One factor `exp(i angle O)`; `angle` is kept in `[0, 4 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerFactor {
    pub generator: HermitianGenerator,
    pub angle: f64,
}

impl EulerFactor {
    pub fn new(generator: HermitianGenerator, angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(domain(format!("non-finite angle for {generator}")));
        }
        Ok(Self { generator, angle: reduce_angle(angle) })
    }
}

/// Ordered factors whose left-to-right product is the decomposed unitary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerSequence {
    pub n: usize,
    pub factors: Vec<EulerFactor>,
    /// Spectral-norm reconstruction error in the fundamental representation.
    pub reconstruction_error: f64,
}

impl EulerSequence {
    pub fn empty(n: usize) -> Self {
        Self { n, factors: Vec::new(), reconstruction_error: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// `exp(i (sum sigma H + theta S + phi A))` in the `n`-dimensional defining representation.
pub fn fundamental_matrix(n: usize, angles: &AngleSet) -> Result<CMatrix> {
    if angles.n() != n {
        return Err(domain(format!("angle set is for n={}, asked for n={n}", angles.n())));
    }
    exact_unitary(IrrepShape::new(n, 1)?, angles)
}

/// Angles `(theta, phi)` with `exp(i theta sigma_x/2) exp(-i phi sigma_y/2) (a, b)^T ~ (*, 0)`.
fn givens_angles(a: Complex64, b: Complex64) -> (f64, f64) {
    let norm2 = a.norm_sqr() + b.norm_sqr();
    if norm2 == 0.0 || b == Complex64::new(0.0, 0.0) {
        return (0.0, 0.0);
    }
    let ab = a.conj() * b;
    let nx = 2.0 * ab.re / norm2;
    let ny = 2.0 * ab.im / norm2;
    let nz = (a.norm_sqr() - b.norm_sqr()) / norm2;
    let theta = -ny.clamp(-1.0, 1.0).asin();
    let phi = f64::atan2(-nx, nz);
    (theta, phi)
}

/// The 2x2 block of `exp(i theta S) exp(i phi A)` on modes `(j, k)`, `j < k`.
fn givens_block(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let (cp, sp) = ((phi / 2.0).cos(), (phi / 2.0).sin());
    let ex = [
        [Complex64::new(ct, 0.0), Complex64::new(0.0, st)],
        [Complex64::new(0.0, st), Complex64::new(ct, 0.0)],
    ];
    let ey = [
        [Complex64::new(cp, 0.0), Complex64::new(-sp, 0.0)],
        [Complex64::new(sp, 0.0), Complex64::new(cp, 0.0)],
    ];
    let mut w = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            w[r][c] = ex[r][0] * ey[0][c] + ex[r][1] * ey[1][c];
        }
    }
    w
}

/// Jacobi-style decomposition of an `SU(n)` matrix.
///
/// Always emits exactly `n^2 - 1` factors (zero angles where an entry is
/// already eliminated) so that the sequence layout depends only on `n`.
pub fn euler_decompose(u: &CMatrix, tol: f64) -> Result<EulerSequence> {
    let n = u.nrows();
    if n < 2 || u.ncols() != n {
        return Err(domain(format!("expected a square matrix with n >= 2, got {}x{}", n, u.ncols())));
    }
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(domain(format!("input is not unitary: ||u^+ u - I|| = {defect:e}")));
    }
    let det_err = (u.determinant() - Complex64::new(1.0, 0.0)).norm();
    if det_err > 1e-10 {
        return Err(domain(format!("input is not special: |det u - 1| = {det_err:e}")));
    }

    let mut w = u.clone();
    let mut factors = Vec::with_capacity(n * n - 1);
    for c in 0..n - 1 {
        for r in c + 1..n {
            let (theta, phi) = givens_angles(w[(c, c)], w[(r, c)]);
            let g = givens_block(theta, phi);
            for col in 0..n {
                let (x, y) = (w[(c, col)], w[(r, col)]);
                w[(c, col)] = g[0][0] * x + g[0][1] * y;
                w[(r, col)] = g[1][0] * x + g[1][1] * y;
            }
            let (j, k) = (c + 1, r + 1);
            // W^† = exp(-i phi A) exp(-i theta S).
            factors.push(EulerFactor::new(HermitianGenerator::Antisymmetric { j, k }, -phi)?);
            factors.push(EulerFactor::new(HermitianGenerator::Symmetric { j, k }, -theta)?);
        }
    }

    // w is now diagonal up to rounding; sigma_i = 2 sum_{k <= i} chi_k.
    let mut acc = 0.0;
    for i in 1..n {
        acc += w[(i - 1, i - 1)].arg();
        factors.push(EulerFactor::new(HermitianGenerator::Diagonal(i), 2.0 * acc)?);
    }

    let mut seq = EulerSequence { n, factors, reconstruction_error: 0.0 };
    let rebuilt = lift_sequence(&seq, IrrepShape::new(n, 1)?)?;
    seq.reconstruction_error = spectral_norm(&(rebuilt - u));
    if seq.reconstruction_error.is_nan() || seq.reconstruction_error > tol {
        return Err(Error::Convergence {
            what: "euler_decompose",
            residual: seq.reconstruction_error,
            tolerance: tol,
        });
    }
    Ok(seq)
}

/// The product of the sequence's exponentials in the irrep `shape`.
pub fn lift_sequence(seq: &EulerSequence, shape: IrrepShape) -> Result<CMatrix> {
    lift_sequence_capped(seq, shape, crate::algebra::DEFAULT_DENSE_CAP)
}

pub fn lift_sequence_capped(seq: &EulerSequence, shape: IrrepShape, cap: usize) -> Result<CMatrix> {
    if seq.n != shape.n() {
        return Err(domain(format!("sequence is for n={}, irrep has n={}", seq.n, shape.n())));
    }
    crate::linalg::check_dense_cap("lift_sequence", shape.dim(), cap)?;
    let dim = shape.dim();
    let mut acc: CMatrix = DMatrix::identity(dim, dim);
    for f in &seq.factors {
        if f.angle == 0.0 {
            continue;
        }
        acc *= generator_exponential(shape, f.generator, f.angle, cap)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    #[test]
    fn pauli_x_exponential() {
        let mut a = AngleSet::zeros(2);
        a.set(HermitianGenerator::Symmetric { j: 1, k: 2 }, PI).unwrap();
        let u = fundamental_matrix(2, &a).unwrap();
        assert!(u[(0, 0)].norm() < 1e-15);
        assert!((u[(0, 1)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((u[(1, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_gives_zero_angles() {
        let u = CMatrix::identity(3, 3);
        let seq = euler_decompose(&u, 1e-12).unwrap();
        assert_eq!(seq.len(), 8);
        assert!(seq.factors.iter().all(|f| f.angle == 0.0));
        assert_eq!(seq.reconstruction_error, 0.0);
    }

    #[test]
    fn givens_block_zeroes_lower_entry() {
        let a = Complex64::new(0.3, -0.4);
        let b = Complex64::new(-0.2, 0.7);
        let (t, p) = givens_angles(a, b);
        let g = givens_block(t, p);
        let lower = g[1][0] * a + g[1][1] * b;
        assert!(lower.norm() < 1e-15);
    }

    #[test]
    fn random_su3_reconstructs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = AngleSet::random(3, &mut rng);
            let u = fundamental_matrix(3, &a).unwrap();
            let seq = euler_decompose(&u, 1e-10).unwrap();
            assert_eq!(seq.len(), 8);
            assert!(seq.factors.iter().all(|f| (0.0..4.0 * PI).contains(&f.angle)));
        }
    }

    #[test]
    fn rejects_non_unitary_and_non_special() {
        let mut u = CMatrix::identity(2, 2);
        u[(0, 0)] = Complex64::new(2.0, 0.0);
        assert!(matches!(euler_decompose(&u, 1e-10), Err(Error::Domain(_))));
        let mut u = CMatrix::identity(2, 2);
        u[(0, 0)] = Complex64::new(0.0, 1.0);
        u[(1, 1)] = Complex64::new(0.0, 1.0);
        assert!(matches!(euler_decompose(&u, 1e-10), Err(Error::Domain(_))));
    }

    #[test]
    fn lift_of_single_cartan_factor() {
        let seq = EulerSequence {
            n: 2,
            factors: vec![EulerFactor::new(HermitianGenerator::Diagonal(1), PI).unwrap()],
            reconstruction_error: 0.0,
        };
        let u = lift_sequence(&seq, IrrepShape::new(2, 2).unwrap()).unwrap();
        assert!((u[(0, 0)] + 1.0).norm() < 1e-15);
        assert!((u[(1, 1)] - 1.0).norm() < 1e-15);
        assert!((u[(2, 2)] + 1.0).norm() < 1e-15);
    }
}
