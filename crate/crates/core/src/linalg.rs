//! Dense complex helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `exp(i * scale * h)` for Hermitian `h`, through its eigendecomposition
/// `h = V diag(lambda) V^†`. The result is unitary up to rounding.
pub fn hermitian_expi(h: &CMatrix, scale: f64) -> CMatrix {
    let n = h.nrows();
    // Symmetrize so the eigensolver sees an exactly Hermitian input.
    let hs = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = hs.symmetric_eigen();
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, scale * lam);
        for r in 0..n {
            scaled[(r, k)] *= phase;
        }
    }
    scaled * v.adjoint()
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().max()
}

/// `||u^† u - I||_2`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    spectral_norm(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Guard for dense `dim x dim` work.
pub fn check_dense_cap(what: &'static str, dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        return Err(Error::Resource {
            what,
            requested: dim as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Reduce an angle into `[0, 4 pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let period = 4.0 * std::f64::consts::PI;
    let r = theta.rem_euclid(period);
    // rem_euclid can round up to the period itself.
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Map an angle from `[0, 4 pi)` (or anywhere) to the symmetric window `(-2 pi, 2 pi]`.
pub fn symmetric_angle(theta: f64) -> f64 {
    let r = reduce_angle(theta);
    if r > 2.0 * std::f64::consts::PI {
        r - 4.0 * std::f64::consts::PI
    } else {
        r
    }
}
