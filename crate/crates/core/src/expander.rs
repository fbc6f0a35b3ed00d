//! LPS-style quantum expanders from `SU(2)` rotations in the `(M+1)`-dimensional irrep.
//!
//! Each integer solution of `a_0^2 + a_1^2 + a_2^2 + a_3^2 = p` gives the rotation
//! `U = exp(-i theta (n_x J_x + n_y J_y + n_z J_z))` with
//! `theta = 2 arccos(a_0 / sqrt p)` and `n = (a_1, a_2, a_3) / sqrt(p - a_0^2)`,
//! where `J_x = S_{1,2}`, `J_y = A_{1,2}`, `J_z = H_1`.  In the usual spin
//! matrices `A_{1,2} = -J_y`; the solution sets used here are closed under
//! `a_2 -> -a_2`, so the channel does not depend on that sign.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{hermitian_generator, AngleSet, HermitianGenerator, DEFAULT_DENSE_CAP};
use crate::combinatorics::IrrepShape;
use crate::error::{domain, Error, Result};
use crate::linalg::{check_dense_cap, hermitian_expi, CMatrix};
use crate::pipeline::{simulate_with, PipelineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuaternionSolution {
    pub a: [i64; 4],
    pub p: u64,
}

impl QuaternionSolution {
    /// Rotation angle `2 arccos(a_0 / sqrt p)` and unit axis.
    pub fn rotation(&self) -> (f64, [f64; 3]) {
        let p = self.p as f64;
        let a0 = self.a[0] as f64;
        let theta = 2.0 * (a0 / p.sqrt()).clamp(-1.0, 1.0).acos();
        let r = (p - a0 * a0).sqrt();
        let axis = [self.a[1] as f64 / r, self.a[2] as f64 / r, self.a[3] as f64 / r];
        (theta, axis)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The `p + 1` representatives used for the channel.
///
/// For `p = 1 mod 4`, exactly one entry of each solution is odd; the
/// representatives are those with `a_0` odd and positive. For `p = 3`,
/// `a_0 = 0` and the entries are `+-1`; one of each `+-` pair is kept, namely
/// those with at most one negative entry.
pub fn distinct_solutions(p: u64) -> Result<Vec<QuaternionSolution>> {
    if !is_prime(p) {
        return Err(domain(format!("p = {p} is not prime")));
    }
    if p != 3 && p % 4 != 1 {
        return Err(domain(format!("p = {p}: only p = 3 and primes p = 1 mod 4 are supported")));
    }
    let bound = (p as f64).sqrt().ceil() as i64;
    let mut out = Vec::new();
    for a0 in -bound..=bound {
        for a1 in -bound..=bound {
            for a2 in -bound..=bound {
                for a3 in -bound..=bound {
                    let a = [a0, a1, a2, a3];
                    if a.iter().map(|x| x * x).sum::<i64>() != p as i64 {
                        continue;
                    }
                    let keep = if p == 3 {
                        a0 == 0 && a[1..].iter().filter(|&&x| x < 0).count() <= 1
                    } else {
                        a0 > 0 && a0 % 2 == 1
                    };
                    if keep {
                        out.push(QuaternionSolution { a, p });
                    }
                }
            }
        }
    }
    if out.len() != (p + 1) as usize {
        return Err(domain(format!("found {} representatives for p = {p}, expected {}", out.len(), p + 1)));
    }
    Ok(out)
}

/// Degree, rotations and irrep of one expander channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpanderParams {
    pub degree: usize,
    pub rotations: Vec<(f64, [f64; 3])>,
    pub shape: IrrepShape,
}

impl ExpanderParams {
    /// The channel for prime `p` on the `dim`-dimensional irrep (`M = dim - 1`).
    pub fn new(p: u64, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(domain(format!("dimension N must be >= 2, got {dim}")));
        }
        let solutions = distinct_solutions(p)?;
        Ok(Self {
            degree: solutions.len(),
            rotations: solutions.iter().map(|s| s.rotation()).collect(),
            shape: IrrepShape::new(2, dim - 1)?,
        })
    }

    /// Ramanujan bound `2 sqrt(D - 1) / D`.
    pub fn bound(&self) -> f64 {
        ramanujan_bound(self.degree)
    }

    /// Each rotation as `exp(i (sigma H_1 + theta S_12 + phi A_12))`.
    pub fn angle_sets(&self) -> Result<Vec<AngleSet>> {
        self.rotations
            .iter()
            .map(|&(theta, n)| AngleSet::new(2, vec![-theta * n[2]], vec![-theta * n[0]], vec![-theta * n[1]]))
            .collect()
    }
}

pub fn ramanujan_bound(degree: usize) -> f64 {
    2.0 * ((degree - 1) as f64).sqrt() / degree as f64
}

/// The `D` Kraus unitaries, by dense exponentiation.
pub fn build_channel(params: &ExpanderParams) -> Result<Vec<CMatrix>> {
    check_dense_cap("build_channel", params.shape.dim(), DEFAULT_DENSE_CAP)?;
    let jx = hermitian_generator(params.shape, HermitianGenerator::Symmetric { j: 1, k: 2 })?.to_dense();
    let jy = hermitian_generator(params.shape, HermitianGenerator::Antisymmetric { j: 1, k: 2 })?.to_dense();
    let jz = hermitian_generator(params.shape, HermitianGenerator::Diagonal(1))?.to_dense();
    Ok(params
        .rotations
        .iter()
        .map(|&(theta, n)| {
            let h = &jx * Complex64::new(n[0], 0.0) + &jy * Complex64::new(n[1], 0.0) + &jz * Complex64::new(n[2], 0.0);
            hermitian_expi(&h, -theta)
        })
        .collect())
}

/// The `D` Kraus unitaries, each produced by the grid emulation at size `L`.
/// Also returns the largest spectral error among them.
pub fn build_channel_via_pipeline(
    params: &ExpanderParams,
    l: usize,
    config: &PipelineConfig,
) -> Result<(Vec<CMatrix>, f64)> {
    let mut out = Vec::with_capacity(params.degree);
    let mut worst: f64 = 0.0;
    for angles in params.angle_sets()? {
        let res = simulate_with(params.shape, &angles, l, config)?;
        worst = worst.max(res.spectral_error);
        out.push(res.sim_unitary);
    }
    Ok((out, worst))
}

fn pairwise_sum(mut items: Vec<CMatrix>) -> CMatrix {
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        let mut it = items.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        items = next;
    }
    items.pop().expect("at least one term")
}

/// `eps(X) = (1/D) sum_d U_d X U_d^†`.
pub fn apply_channel(kraus: &[CMatrix], x: &CMatrix) -> CMatrix {
    let terms: Vec<CMatrix> = kraus.par_iter().map(|u| u * x * u.adjoint()).collect();
    pairwise_sum(terms) / Complex64::new(kraus.len() as f64, 0.0)
}

/// `eps^†(X) = (1/D) sum_d U_d^† X U_d`.
pub fn apply_channel_adjoint(kraus: &[CMatrix], x: &CMatrix) -> CMatrix {
    let terms: Vec<CMatrix> = kraus.par_iter().map(|u| u.adjoint() * x * u).collect();
    pairwise_sum(terms) / Complex64::new(kraus.len() as f64, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelSpectrum {
    pub dim: usize,
    /// Leading singular values on the traceless subspace, descending.
    pub singular_values: Vec<f64>,
    pub lambda: f64,
    pub bound: f64,
    /// Residual `||A v - theta v||` of the top Ritz pair of `eps^† eps`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    pub tolerance: f64,
    pub max_krylov: usize,
    pub max_restarts: usize,
    pub seed: u64,
    /// How many leading singular values to report.
    pub report: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_krylov: 200, max_restarts: 20, seed: 0x5eed, report: 6 }
    }
}

fn remove_trace(x: &mut CMatrix) {
    let n = x.nrows();
    let t = x.trace() / Complex64::new(n as f64, 0.0);
    for i in 0..n {
        x[(i, i)] -= t;
    }
}

fn dot(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn frob(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of `eps` restricted to traceless matrices.
pub fn spectral_gap(kraus: &[CMatrix]) -> Result<ChannelSpectrum> {
    spectral_gap_with(kraus, &LanczosOptions::default())
}

/// Lanczos with full reorthogonalization on `eps^† eps` over the traceless
/// subspace, restarted from the best Ritz vector until the residual of the
/// top pair is below `tolerance`.
pub fn spectral_gap_with(kraus: &[CMatrix], opts: &LanczosOptions) -> Result<ChannelSpectrum> {
    if kraus.len() < 2 {
        return Err(domain(format!("need at least 2 Kraus unitaries, got {}", kraus.len())));
    }
    let n = kraus[0].nrows();
    if n < 2 || kraus.iter().any(|u| u.nrows() != n || u.ncols() != n) {
        return Err(domain("Kraus operators must be square, equal-sized and N >= 2"));
    }
    let degree = kraus.len();
    let space = n * n - 1;
    let op = |x: &CMatrix| {
        let mut y = apply_channel_adjoint(kraus, &apply_channel(kraus, x));
        remove_trace(&mut y);
        y
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    remove_trace(&mut start);

    let krylov = opts.max_krylov.min(space).max(1);
    let mut best = (0.0, f64::INFINITY, Vec::new());
    for _ in 0..=opts.max_restarts {
        let s = frob(&start);
        let mut basis: Vec<CMatrix> = vec![start.clone() / Complex64::new(s, 0.0)];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut last_beta = 0.0;
        for k in 0..krylov {
            let mut w = op(&basis[k]);
            let a = dot(&basis[k], &w).re;
            alpha.push(a);
            // Full reorthogonalization, twice for stability.
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    w -= q * c;
                }
            }
            let b = frob(&w);
            last_beta = b;
            if k + 1 == krylov || b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w / Complex64::new(b, 0.0));
        }
        let m = alpha.len();
        let t = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let eig = t.symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let top = order[0];
        let theta = eig.eigenvalues[top];
        let residual = (last_beta * eig.eigenvectors[(m - 1, top)]).abs();
        let values: Vec<f64> = order
            .iter()
            .take(opts.report)
            .map(|&i| eig.eigenvalues[i].max(0.0).sqrt())
            .collect();
        if residual < best.1 {
            best = (theta, residual, values);
        }
        if residual <= opts.tolerance {
            break;
        }
        // Restart from the top Ritz vector.
        let mut ritz = CMatrix::zeros(n, n);
        for (i, q) in basis.iter().enumerate().take(m) {
            ritz += q * Complex64::new(eig.eigenvectors[(i, top)], 0.0);
        }
        remove_trace(&mut ritz);
        start = ritz;
    }
    let (theta, residual, values) = best;
    if residual > opts.tolerance {
        return Err(Error::Convergence { what: "spectral_gap", residual, tolerance: opts.tolerance });
    }
    Ok(ChannelSpectrum {
        dim: n,
        singular_values: values,
        lambda: theta.max(0.0).sqrt(),
        bound: ramanujan_bound(degree),
        residual,
    })
}
