//! Totally symmetric irrep matrices of `su(n)` in the descending-lexicographic
//! Fock basis, and the exact `N`-dimensional unitary they exponentiate to.
//!
//! Mode indices are 1-based throughout (`1 <= i <= n`), matching the usual
//! labelling of the Cartan-Weyl generators:
//!
//! * `E_{j,k} = a_j^† a_k` (ladder), 1-sparse per column,
//! * `H_i = (E_{i,i} - E_{i+1,i+1}) / 2`,
//! * `S_{j,k} = (E_{j,k} + E_{k,j}) / 2`, `A_{j,k} = i (E_{j,k} - E_{k,j}) / 2` for `j < k`.
//!
//! Matrices store `(row, col)` as output/input: `E_{j,k} |ell> = sqrt((m_j+1) m_k) |ell'>`
//! is an entry at `(ell', ell)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::combinatorics::{compositions_desc, rank_desc, IrrepShape};
use crate::error::{domain, Result};
use crate::linalg::{check_dense_cap, hermitian_expi, reduce_angle, CMatrix};

/// Default cap on `N` for dense `N x N` work.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// One of the `n^2 - 1` Hermitian basis elements `{H_i, S_{j,k}, A_{j,k}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HermitianGenerator {
    Diagonal(usize),
    Symmetric { j: usize, k: usize },
    Antisymmetric { j: usize, k: usize },
}

impl HermitianGenerator {
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            HermitianGenerator::Diagonal(i) => {
                if i == 0 || i >= n {
                    return Err(domain(format!("H_{i} needs 1 <= i <= n-1 = {}", n - 1)));
                }
            }
            HermitianGenerator::Symmetric { j, k } | HermitianGenerator::Antisymmetric { j, k } => {
                if j == 0 || j >= k || k > n {
                    return Err(domain(format!(
                        "S/A_({j},{k}) needs 1 <= j < k <= n = {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Short label used in CSV files: `H`, `S` or `A`.
    pub fn letter(&self) -> char {
        match self {
            HermitianGenerator::Diagonal(_) => 'H',
            HermitianGenerator::Symmetric { .. } => 'S',
            HermitianGenerator::Antisymmetric { .. } => 'A',
        }
    }

    /// The two mode indices the generator touches (`(i, i+1)` for `H_i`).
    pub fn modes(&self) -> (usize, usize) {
        match *self {
            HermitianGenerator::Diagonal(i) => (i, i + 1),
            HermitianGenerator::Symmetric { j, k } | HermitianGenerator::Antisymmetric { j, k } => {
                (j, k)
            }
        }
    }
}

impl std::fmt::Display for HermitianGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            HermitianGenerator::Diagonal(i) => write!(f, "H_{i}"),
            HermitianGenerator::Symmetric { j, k } => write!(f, "S_{j},{k}"),
            HermitianGenerator::Antisymmetric { j, k } => write!(f, "A_{j},{k}"),
        }
    }
}

/// Which generator an [`AlgebraMatrix`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    Ladder { j: usize, k: usize },
    Diagonal(usize),
    Symmetric { j: usize, k: usize },
    Antisymmetric { j: usize, k: usize },
}

impl From<HermitianGenerator> for GeneratorKind {
    fn from(g: HermitianGenerator) -> Self {
        match g {
            HermitianGenerator::Diagonal(i) => GeneratorKind::Diagonal(i),
            HermitianGenerator::Symmetric { j, k } => GeneratorKind::Symmetric { j, k },
            HermitianGenerator::Antisymmetric { j, k } => GeneratorKind::Antisymmetric { j, k },
        }
    }
}

/// Square complex matrix stored as `(row, col, value)` triplets sorted by
/// column, then row. Duplicates are merged and exact zeros dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseMatrix {
    pub fn new(dim: usize, mut entries: Vec<(usize, usize, Complex64)>) -> Self {
        entries.sort_by_key(|&(r, c, _)| (c, r));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            debug_assert!(r < dim && c < dim);
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Self { dim, entries: merged }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by_key(&(col, row), |&(r, c, _)| (c, r))
            .map(|idx| self.entries[idx].2)
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.dim,
            self.entries.iter().map(|&(r, c, v)| (c, r, v.conj())).collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(
            self.dim,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * s)).collect(),
        )
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SparseMatrix, s: Complex64) -> Self {
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().map(|&(r, c, v)| (r, c, v * s)));
        Self::new(self.dim, e)
    }

    pub fn mul(&self, other: &SparseMatrix) -> Self {
        // (A B)[:, c] = sum_t A[:, t] * B[t, c]; A's columns are contiguous.
        let starts = self.column_starts();
        let mut out = Vec::new();
        for &(t, c, vb) in &other.entries {
            for &(r, _, va) in &self.entries[starts[t]..starts[t + 1]] {
                out.push((r, c, va * vb));
            }
        }
        Self::new(self.dim, out)
    }

    pub fn commutator(&self, other: &SparseMatrix) -> Self {
        self.mul(other).add_scaled(&other.mul(self), Complex64::new(-1.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max)
    }

    fn column_starts(&self) -> Vec<usize> {
        let mut starts = vec![0usize; self.dim + 1];
        for &(_, c, _) in &self.entries {
            starts[c + 1] += 1;
        }
        for c in 0..self.dim {
            starts[c + 1] += starts[c];
        }
        starts
    }
}

/// A generator of the totally symmetric irrep.
#[derive(Debug, Clone)]
pub struct AlgebraMatrix {
    pub kind: GeneratorKind,
    pub shape: IrrepShape,
    pub matrix: SparseMatrix,
}

fn ladder_entries(
    shape: IrrepShape,
    basis: &[Vec<usize>],
    j: usize,
    k: usize,
) -> Result<Vec<(usize, usize, f64)>> {
    let (j0, k0) = (j - 1, k - 1);
    let mut out = Vec::new();
    for (col, parts) in basis.iter().enumerate() {
        if parts[k0] == 0 {
            continue;
        }
        let value = (((parts[j0] + 1) * parts[k0]) as f64).sqrt();
        let mut raised = parts.clone();
        raised[j0] += 1;
        raised[k0] -= 1;
        out.push((rank_desc(&raised, shape)?, col, value));
    }
    Ok(out)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `E_{i,i}`, the number operator of mode `i`.
pub fn number_operator(shape: IrrepShape, i: usize) -> Result<SparseMatrix> {
    if i == 0 || i > shape.n() {
        return Err(domain(format!("E_({i},{i}) needs 1 <= i <= n = {}", shape.n())));
    }
    let basis = compositions_desc(shape)?;
    Ok(SparseMatrix::new(
        shape.dim(),
        basis
            .iter()
            .enumerate()
            .map(|(l, p)| (l, l, real(p[i - 1] as f64)))
            .collect(),
    ))
}

/// Sparse representation of one Cartan-Weyl generator.
pub fn build_generator(shape: IrrepShape, kind: GeneratorKind) -> Result<AlgebraMatrix> {
    let n = shape.n();
    let basis = compositions_desc(shape)?;
    let dim = shape.dim();
    let matrix = match kind {
        GeneratorKind::Ladder { j, k } => {
            if j == 0 || k == 0 || j > n || k > n || j == k {
                return Err(domain(format!(
                    "E_({j},{k}) needs 1 <= j, k <= n = {n} and j != k"
                )));
            }
            let e = ladder_entries(shape, &basis, j, k)?;
            SparseMatrix::new(dim, e.into_iter().map(|(r, c, v)| (r, c, real(v))).collect())
        }
        GeneratorKind::Diagonal(i) => {
            HermitianGenerator::Diagonal(i).validate(n)?;
            SparseMatrix::new(
                dim,
                basis
                    .iter()
                    .enumerate()
                    .map(|(l, p)| (l, l, real(0.5 * (p[i - 1] as f64 - p[i] as f64))))
                    .collect(),
            )
        }
        GeneratorKind::Symmetric { j, k } => {
            HermitianGenerator::Symmetric { j, k }.validate(n)?;
            let e = ladder_entries(shape, &basis, j, k)?;
            let mut t = Vec::with_capacity(2 * e.len());
            for (r, c, v) in e {
                t.push((r, c, real(0.5 * v)));
                t.push((c, r, real(0.5 * v)));
            }
            SparseMatrix::new(dim, t)
        }
        GeneratorKind::Antisymmetric { j, k } => {
            HermitianGenerator::Antisymmetric { j, k }.validate(n)?;
            let e = ladder_entries(shape, &basis, j, k)?;
            let mut t = Vec::with_capacity(2 * e.len());
            for (r, c, v) in e {
                t.push((r, c, Complex64::new(0.0, 0.5 * v)));
                t.push((c, r, Complex64::new(0.0, -0.5 * v)));
            }
            SparseMatrix::new(dim, t)
        }
    };
    Ok(AlgebraMatrix { kind, shape, matrix })
}

/// Sparse Hermitian generator, shorthand for `build_generator(..).matrix`.
pub fn hermitian_generator(shape: IrrepShape, g: HermitianGenerator) -> Result<SparseMatrix> {
    Ok(build_generator(shape, g.into())?.matrix)
}

/// Every `j < k` pair in lexicographic order; this is the layout of the
/// `theta` and `phi` vectors of an [`AngleSet`].
pub fn mode_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..=n {
        for k in j + 1..=n {
            out.push((j, k));
        }
    }
    out
}

/// The `n^2 - 1` coefficients of `sum sigma_i H_i + sum theta_jk S_jk + phi_jk A_jk`,
/// each stored reduced into `[0, 4 pi)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleSet {
    n: usize,
    sigma: Vec<f64>,
    theta: Vec<f64>,
    phi: Vec<f64>,
}

fn reduce_logged(label: &str, x: f64) -> f64 {
    let r = reduce_angle(x);
    if r != x {
        log::debug!("angle {label} = {x} reduced to {r} (mod 4 pi)");
    }
    r
}

impl AngleSet {
    pub fn zeros(n: usize) -> Self {
        let pairs = n * (n - 1) / 2;
        Self {
            n,
            sigma: vec![0.0; n - 1],
            theta: vec![0.0; pairs],
            phi: vec![0.0; pairs],
        }
    }

    pub fn new(n: usize, sigma: Vec<f64>, theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        let pairs = n * (n - 1) / 2;
        if n < 2 || sigma.len() != n - 1 || theta.len() != pairs || phi.len() != pairs {
            return Err(domain(format!(
                "angle set for n={n} needs {} sigma and {pairs} theta/phi values",
                n.saturating_sub(1)
            )));
        }
        if sigma.iter().chain(&theta).chain(&phi).any(|x| !x.is_finite()) {
            return Err(domain("angles must be finite"));
        }
        let mut s = Self::zeros(n);
        for (i, x) in sigma.into_iter().enumerate() {
            s.sigma[i] = reduce_logged("sigma", x);
        }
        for (p, x) in theta.into_iter().enumerate() {
            s.theta[p] = reduce_logged("theta", x);
        }
        for (p, x) in phi.into_iter().enumerate() {
            s.phi[p] = reduce_logged("phi", x);
        }
        Ok(s)
    }

    /// Uniform angles in `[0, 4 pi)`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let period = 4.0 * std::f64::consts::PI;
        let mut s = Self::zeros(n);
        for x in s.sigma.iter_mut().chain(s.theta.iter_mut()).chain(s.phi.iter_mut()) {
            *x = reduce_angle(rng.random::<f64>() * period);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.sigma.len() + self.theta.len() + self.phi.len()
    }

    fn pair_index(&self, j: usize, k: usize) -> Result<usize> {
        HermitianGenerator::Symmetric { j, k }.validate(self.n)?;
        // Pairs (j', k') with j' < j come first.
        let before: usize = (1..j).map(|jj| self.n - jj).sum();
        Ok(before + (k - j - 1))
    }

    pub fn get(&self, g: HermitianGenerator) -> Result<f64> {
        g.validate(self.n)?;
        Ok(match g {
            HermitianGenerator::Diagonal(i) => self.sigma[i - 1],
            HermitianGenerator::Symmetric { j, k } => self.theta[self.pair_index(j, k)?],
            HermitianGenerator::Antisymmetric { j, k } => self.phi[self.pair_index(j, k)?],
        })
    }

    pub fn set(&mut self, g: HermitianGenerator, value: f64) -> Result<()> {
        g.validate(self.n)?;
        if !value.is_finite() {
            return Err(domain("angles must be finite"));
        }
        let v = reduce_logged(&g.to_string(), value);
        match g {
            HermitianGenerator::Diagonal(i) => self.sigma[i - 1] = v,
            HermitianGenerator::Symmetric { j, k } => {
                let p = self.pair_index(j, k)?;
                self.theta[p] = v
            }
            HermitianGenerator::Antisymmetric { j, k } => {
                let p = self.pair_index(j, k)?;
                self.phi[p] = v
            }
        }
        Ok(())
    }

    /// `(generator, angle)` for all `n^2 - 1` terms: `H_i` first, then `S`, then `A`.
    pub fn terms(&self) -> Vec<(HermitianGenerator, f64)> {
        let mut out = Vec::with_capacity(self.count());
        for (i, &s) in self.sigma.iter().enumerate() {
            out.push((HermitianGenerator::Diagonal(i + 1), s));
        }
        let pairs = mode_pairs(self.n);
        for (p, &(j, k)) in pairs.iter().enumerate() {
            out.push((HermitianGenerator::Symmetric { j, k }, self.theta[p]));
        }
        for (p, &(j, k)) in pairs.iter().enumerate() {
            out.push((HermitianGenerator::Antisymmetric { j, k }, self.phi[p]));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.sigma.iter().chain(&self.theta).chain(&self.phi).all(|&x| x == 0.0)
    }

    /// The sparse Hermitian exponent `sum_a theta_a T_a` in the given irrep.
    pub fn exponent(&self, shape: IrrepShape) -> Result<SparseMatrix> {
        if shape.n() != self.n {
            return Err(domain(format!(
                "angle set is for n={}, irrep has n={}",
                self.n,
                shape.n()
            )));
        }
        let mut acc = SparseMatrix::zeros(shape.dim());
        for (g, angle) in self.terms() {
            if angle != 0.0 {
                acc = acc.add_scaled(&hermitian_generator(shape, g)?, real(angle));
            }
        }
        Ok(acc)
    }
}

/// `U = exp(i (sum sigma_i H_i + sum theta_jk S_jk + phi_jk A_jk))` in the `N`-dimensional irrep.
pub fn exact_unitary(shape: IrrepShape, angles: &AngleSet) -> Result<CMatrix> {
    exact_unitary_capped(shape, angles, DEFAULT_DENSE_CAP)
}

pub fn exact_unitary_capped(shape: IrrepShape, angles: &AngleSet, cap: usize) -> Result<CMatrix> {
    check_dense_cap("exact_unitary", shape.dim(), cap)?;
    let x = angles.exponent(shape)?.to_dense();
    Ok(hermitian_expi(&x, 1.0))
}

/// `exp(i angle G)` for a single Hermitian generator, dense.
pub fn generator_exponential(
    shape: IrrepShape,
    g: HermitianGenerator,
    angle: f64,
    cap: usize,
) -> Result<CMatrix> {
    check_dense_cap("generator_exponential", shape.dim(), cap)?;
    let h = hermitian_generator(shape, g)?;
    if let HermitianGenerator::Diagonal(_) = g {
        let mut u = CMatrix::identity(shape.dim(), shape.dim());
        for &(r, _, v) in h.entries() {
            u[(r, r)] = Complex64::from_polar(1.0, angle * v.re);
        }
        return Ok(u);
    }
    Ok(hermitian_expi(&h.to_dense(), angle))
}

/// Largest entry-wise deviation from the Cartan-Weyl commutation relations
///
/// `[E_jk, E_lm] = delta_kl E_jm - delta_jm E_lk` (all `j, k, l, m`, number
/// operators included), `[H_i, H_i'] = 0`, and the `[E_jk, H_i]` relation that
/// follows from `H_i = (E_ii - E_{i+1,i+1}) / 2`.
pub fn commutator_residual(shape: IrrepShape) -> Result<f64> {
    let n = shape.n();
    let mut e: Vec<Vec<SparseMatrix>> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut row = Vec::with_capacity(n);
        for k in 1..=n {
            row.push(if j == k {
                number_operator(shape, j)?
            } else {
                build_generator(shape, GeneratorKind::Ladder { j, k })?.matrix
            });
        }
        e.push(row);
    }
    let ee = |a: usize, b: usize| &e[a - 1][b - 1];
    let zero = SparseMatrix::zeros(shape.dim());
    let one = real(1.0);
    let mut worst: f64 = 0.0;

    for j in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                for m in 1..=n {
                    let mut expected = zero.clone();
                    if k == l {
                        expected = expected.add_scaled(ee(j, m), one);
                    }
                    if j == m {
                        expected = expected.add_scaled(ee(l, k), -one);
                    }
                    let got = ee(j, k).commutator(ee(l, m));
                    worst = worst.max(got.add_scaled(&expected, -one).max_abs());
                }
            }
        }
    }

    let h: Vec<SparseMatrix> = (1..n)
        .map(|i| hermitian_generator(shape, HermitianGenerator::Diagonal(i)))
        .collect::<Result<_>>()?;
    for a in &h {
        for b in &h {
            worst = worst.max(a.commutator(b).max_abs());
        }
    }
    let half = real(0.5);
    for j in 1..=n {
        for k in 1..=n {
            for i in 1..n {
                let mut expected = zero.clone();
                if k == i {
                    expected = expected.add_scaled(ee(j, i), half);
                }
                if j == i {
                    expected = expected.add_scaled(ee(i, k), -half);
                }
                if k == i + 1 {
                    expected = expected.add_scaled(ee(j, i + 1), -half);
                }
                if j == i + 1 {
                    expected = expected.add_scaled(ee(i + 1, k), half);
                }
                let got = ee(j, k).commutator(&h[i - 1]);
                worst = worst.max(got.add_scaled(&expected, -one).max_abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spectral_norm, unitarity_defect};
    use std::f64::consts::{PI, SQRT_2};

    fn shape(n: usize, m: usize) -> IrrepShape {
        IrrepShape::new(n, m).unwrap()
    }

    #[test]
    fn su3_ladder_matches_worked_example() {
        let e = build_generator(shape(3, 2), GeneratorKind::Ladder { j: 1, k: 2 }).unwrap();
        let nz: Vec<_> = e.matrix.entries().iter().map(|&(r, c, v)| (r, c, v.re)).collect();
        assert_eq!(nz.len(), 3);
        assert_eq!((nz[0].0, nz[0].1), (0, 1));
        assert_eq!((nz[1].0, nz[1].1), (1, 3));
        assert_eq!((nz[2].0, nz[2].1), (2, 4));
        assert!((nz[0].2 - SQRT_2).abs() < 1e-15);
        assert!((nz[1].2 - SQRT_2).abs() < 1e-15);
        assert_eq!(nz[2].2, 1.0);
    }

    #[test]
    fn su3_cartan_matches_worked_example() {
        let h = build_generator(shape(3, 2), GeneratorKind::Diagonal(1)).unwrap().matrix;
        let d = h.to_dense();
        let want = [1.0, 0.0, 0.5, -1.0, -0.5, 0.0];
        for (l, w) in want.iter().enumerate() {
            assert_eq!(d[(l, l)].re, *w);
        }
    }

    #[test]
    fn su2_ladder_entries() {
        let e = build_generator(shape(2, 2), GeneratorKind::Ladder { j: 1, k: 2 }).unwrap();
        let d = e.matrix.to_dense();
        assert!((d[(0, 1)].re - SQRT_2).abs() < 1e-15);
        assert!((d[(1, 2)].re - SQRT_2).abs() < 1e-15);
        assert_eq!(e.matrix.entries().len(), 2);
    }

    #[test]
    fn general_su2_ladder_ends_with_sqrt_m() {
        // (E_12)_{N-2, N-1} = sqrt((0 + 1) * M).
        let m = 7;
        let e = build_generator(shape(2, m), GeneratorKind::Ladder { j: 1, k: 2 }).unwrap();
        assert!((e.matrix.get(m - 1, m).re - (m as f64).sqrt()).abs() < 1e-14);
        assert!((e.matrix.get(0, 1).re - (m as f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn invalid_indices() {
        let s = shape(3, 2);
        assert!(build_generator(s, GeneratorKind::Ladder { j: 2, k: 2 }).is_err());
        assert!(build_generator(s, GeneratorKind::Ladder { j: 0, k: 2 }).is_err());
        assert!(build_generator(s, GeneratorKind::Diagonal(3)).is_err());
        assert!(build_generator(s, GeneratorKind::Symmetric { j: 2, k: 1 }).is_err());
        assert!(build_generator(s, GeneratorKind::Antisymmetric { j: 1, k: 4 }).is_err());
    }

    #[test]
    fn hermitian_by_construction() {
        let s = shape(3, 3);
        for (j, k) in mode_pairs(3) {
            for kind in [GeneratorKind::Symmetric { j, k }, GeneratorKind::Antisymmetric { j, k }] {
                let g = build_generator(s, kind).unwrap().matrix;
                assert_eq!(g.to_dense(), g.to_dense().adjoint());
            }
        }
    }

    #[test]
    fn ladder_is_one_sparse_per_column() {
        let s = shape(4, 3);
        for j in 1..=4 {
            for k in 1..=4 {
                if j == k {
                    continue;
                }
                let g = build_generator(s, GeneratorKind::Ladder { j, k }).unwrap().matrix;
                let mut cols: Vec<usize> = g.entries().iter().map(|e| e.1).collect();
                let before = cols.len();
                cols.dedup();
                assert_eq!(before, cols.len());
            }
        }
    }

    #[test]
    fn su2_cartan_norm_is_half_m() {
        for m in 0..12 {
            let h = build_generator(shape(2, m), GeneratorKind::Diagonal(1)).unwrap().matrix;
            assert_eq!(h.max_abs(), m as f64 / 2.0);
        }
    }

    #[test]
    fn commutators_small() {
        assert!(commutator_residual(shape(2, 1)).unwrap() < 1e-13);
        assert!(commutator_residual(shape(3, 2)).unwrap() <= 1e-12);
        assert!(commutator_residual(shape(4, 3)).unwrap() <= 1e-12);
    }

    #[test]
    fn exact_unitary_trivial_cases() {
        let s = shape(3, 2);
        let u = exact_unitary(s, &AngleSet::zeros(3)).unwrap();
        assert!(spectral_norm(&(u - CMatrix::identity(6, 6))) < 1e-14);

        let s = shape(2, 1);
        let mut a = AngleSet::zeros(2);
        a.set(HermitianGenerator::Diagonal(1), PI).unwrap();
        let u = exact_unitary(s, &a).unwrap();
        assert!((u[(0, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((u[(1, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn exact_unitary_is_special_unitary() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for (n, m) in [(2, 5), (3, 3), (4, 2)] {
            let s = shape(n, m);
            let a = AngleSet::random(n, &mut rng);
            let u = exact_unitary(s, &a).unwrap();
            assert!(unitarity_defect(&u) <= 1e-12);
            assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn dense_cap_is_enforced() {
        let s = shape(3, 4);
        let err = exact_unitary_capped(s, &AngleSet::zeros(3), 10).unwrap_err();
        assert!(matches!(err, crate::Error::Resource { .. }));
    }

    #[test]
    fn angle_set_layout_and_reduction() {
        let mut a = AngleSet::zeros(4);
        assert_eq!(a.count(), 15);
        a.set(HermitianGenerator::Symmetric { j: 2, k: 4 }, 1.5).unwrap();
        a.set(HermitianGenerator::Antisymmetric { j: 3, k: 4 }, -1.0).unwrap();
        assert_eq!(a.get(HermitianGenerator::Symmetric { j: 2, k: 4 }).unwrap(), 1.5);
        let phi = a.get(HermitianGenerator::Antisymmetric { j: 3, k: 4 }).unwrap();
        assert!((phi - (4.0 * PI - 1.0)).abs() < 1e-14);
        let terms = a.terms();
        assert_eq!(terms.len(), 15);
        assert_eq!(terms[3 + 4], (HermitianGenerator::Symmetric { j: 2, k: 4 }, 1.5));
        assert!(AngleSet::new(3, vec![0.0], vec![0.0; 3], vec![0.0; 3]).is_err());
    }
}
