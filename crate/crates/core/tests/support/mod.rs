//! Independent reference implementations used only by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

pub type CMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Every weak composition of `m` into `n` parts, sorted descending-lexicographically.
pub fn compositions_brute(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = (m + 1).pow(n as u32);
    for code in 0..total {
        let mut parts = Vec::with_capacity(n);
        let mut x = code;
        for _ in 0..n {
            parts.push(x % (m + 1));
            x /= m + 1;
        }
        if parts.iter().sum::<usize>() == m {
            out.push(parts);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// `exp(a)` by scaling and squaring a truncated Taylor series.
pub fn expm_taylor(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let norm: f64 = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let s = (norm.log2().ceil() as i32 + 1).max(0);
    let scaled = a / c(2f64.powi(s), 0.0);
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..40 {
        term = &term * &scaled / c(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

pub fn spectral_norm(a: &CMatrix) -> f64 {
    a.singular_values().max()
}

/// Hermite function from the explicit physicists' polynomial, for `m <= 10`.
pub fn hermite_explicit(m: usize, x: f64) -> f64 {
    // Integer coefficients of H_m via H_{k+1} = 2x H_k - 2k H_{k-1}.
    let mut prev: Vec<i64> = vec![1];
    let mut cur: Vec<i64> = vec![0, 2];
    let coeffs = if m == 0 {
        prev
    } else {
        for k in 1..m {
            let mut next = vec![0i64; k + 2];
            for (i, &v) in cur.iter().enumerate() {
                next[i + 1] += 2 * v;
            }
            for (i, &v) in prev.iter().enumerate() {
                next[i] -= 2 * k as i64 * v;
            }
            prev = cur;
            cur = next;
        }
        cur
    };
    let h: f64 = coeffs.iter().enumerate().map(|(i, &v)| v as f64 * x.powi(i as i32)).sum();
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    let norm = (2f64.powi(m as i32) * fact * PI.sqrt()).sqrt();
    h * (-0.5 * x * x).exp() / norm
}

/// Dense centered DFT straight from its matrix elements.
pub fn dense_dft(l: usize) -> CMatrix {
    let h = (l / 2) as f64;
    DMatrix::from_fn(l, l, |a, b| {
        let (j, k) = (a as f64 - h, b as f64 - h);
        Complex64::from_polar(1.0 / (l as f64).sqrt(), -2.0 * PI * j * k / l as f64)
    })
}

/// Discrete position grid.
pub fn grid(l: usize) -> Vec<f64> {
    let s = (2.0 * PI / l as f64).sqrt();
    (0..l).map(|a| (a as f64 - (l / 2) as f64) * s).collect()
}

/// Discrete Hermite state of the grid, from the explicit polynomial (`m <= 10`).
pub fn discrete_state_explicit(l: usize, m: usize) -> Vec<f64> {
    let s = (2.0 * PI / l as f64).sqrt().sqrt();
    grid(l).iter().map(|&x| s * hermite_explicit(m, x)).collect()
}

/// Truncated Fock-space position and momentum.
pub fn fock_xp(dim: usize) -> (CMatrix, CMatrix) {
    let mut a = CMatrix::zeros(dim, dim);
    for m in 1..dim {
        a[(m - 1, m)] = c((m as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let x = (&a + &ad) / c(2f64.sqrt(), 0.0);
    let p = (&ad - &a) * c(0.0, 1.0 / 2f64.sqrt());
    (x, p)
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    DMatrix::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

/// `f(A)` for Hermitian `A` via its eigendecomposition, returning `(V, lambda)`.
pub fn eigh(a: &CMatrix) -> (CMatrix, Vec<f64>) {
    let e = ((a + a.adjoint()) * c(0.5, 0.0)).symmetric_eigen();
    (e.eigenvectors, e.eigenvalues.iter().copied().collect())
}

/// `exp(i theta A (x) B)` for commuting Hermitian factors on two modes.
pub fn exp_i_product(a: &CMatrix, b: &CMatrix, theta: f64) -> CMatrix {
    let (va, la) = eigh(a);
    let (vb, lb) = eigh(b);
    let v = kron(&va, &vb);
    let d = la.len() * lb.len();
    let mut diag = CMatrix::zeros(d, d);
    for (i, &x) in la.iter().enumerate() {
        for (j, &y) in lb.iter().enumerate() {
            diag[(i * lb.len() + j, i * lb.len() + j)] = Complex64::from_polar(1.0, theta * x * y);
        }
    }
    &v * diag * v.adjoint()
}

/// `exp(i theta A)` for Hermitian `A`.
pub fn exp_i(a: &CMatrix, theta: f64) -> CMatrix {
    let (v, l) = eigh(a);
    let mut d = CMatrix::zeros(l.len(), l.len());
    for (i, &x) in l.iter().enumerate() {
        d[(i, i)] = Complex64::from_polar(1.0, theta * x);
    }
    &v * d * v.adjoint()
}

/// All integer solutions of `a0^2 + a1^2 + a2^2 + a3^2 = p`.
pub fn quaternions_brute(p: i64) -> Vec<[i64; 4]> {
    let b = (p as f64).sqrt().ceil() as i64;
    let mut out = Vec::new();
    for a0 in -b..=b {
        for a1 in -b..=b {
            for a2 in -b..=b {
                for a3 in -b..=b {
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p {
                        out.push([a0, a1, a2, a3]);
                    }
                }
            }
        }
    }
    out
}

/// Dense `N^2 x N^2` superoperator of `X -> (1/D) sum U X U^†` (column-major vec).
pub fn dense_superoperator(kraus: &[CMatrix]) -> CMatrix {
    let n = kraus[0].nrows();
    let mut s = CMatrix::zeros(n * n, n * n);
    for u in kraus {
        // vec(U X U^†) = (conj(U) (x) U) vec(X) for column-major vec.
        s += kron(&u.map(|z| z.conj()), u);
    }
    s / c(kraus.len() as f64, 0.0)
}

/// Largest singular value of the superoperator on traceless matrices.
pub fn dense_lambda(kraus: &[CMatrix]) -> f64 {
    let n = kraus[0].nrows();
    let s = dense_superoperator(kraus);
    // Orthonormal basis of the traceless subspace: project out vec(I)/sqrt(N).
    let mut id = CMatrix::zeros(n * n, 1);
    for i in 0..n {
        id[(i * n + i, 0)] = c(1.0 / (n as f64).sqrt(), 0.0);
    }
    let proj = CMatrix::identity(n * n, n * n) - &id * id.adjoint();
    spectral_norm(&(&proj * s * &proj))
}

/// `exp(i theta A (x) B)` applied to a two-mode state stored as the matrix
/// `X[(a1, a2)]`: `V_A [(V_A^† X conj(V_B)) o Phi] V_B^T`.
pub fn apply_exp_product(a: &CMatrix, b: &CMatrix, theta: f64, x: &CMatrix) -> CMatrix {
    let (va, la) = eigh(a);
    let (vb, lb) = eigh(b);
    let mut y = va.adjoint() * x * vb.map(|z| z.conj());
    for (i, &p) in la.iter().enumerate() {
        for (j, &q) in lb.iter().enumerate() {
            y[(i, j)] *= Complex64::from_polar(1.0, theta * p * q);
        }
    }
    va * y * vb.transpose()
}

/// Standard spin-`M/2` matrices `(J_x, J_y, J_z)` in the basis `m_z = M/2, ..., -M/2`.
pub fn spin_matrices(bosons: usize) -> (CMatrix, CMatrix, CMatrix) {
    let d = bosons + 1;
    let j = bosons as f64 / 2.0;
    let mut raise = CMatrix::zeros(d, d);
    let mut jz = CMatrix::zeros(d, d);
    for r in 0..d {
        let m = j - r as f64;
        jz[(r, r)] = c(m, 0.0);
        if r > 0 {
            // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row up.
            raise[(r - 1, r)] = c((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let lower = raise.adjoint();
    let jx = (&raise + &lower) * c(0.5, 0.0);
    let jy = (&raise - &lower) * c(0.0, -0.5);
    (jx, jy, jz)
}
