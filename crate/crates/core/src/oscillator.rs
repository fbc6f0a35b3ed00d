//! Discrete quantum harmonic oscillator on an `L`-point grid.
//!
//! Grid points are `x_j = j sqrt(2 pi / L)` for `j = -L/2, ..., L/2 - 1`.
//! The centered DFT is
//!
//! `F_{jk} = exp(-2 pi i j k / L) / sqrt(L)`, with `j, k` in the same range,
//!
//! and the discrete momentum is `p = F^{-1} x F`, which approximates `-i d/dx`.
//! With this sign, `F psi_m ~ (-i)^m psi_m` (equivalently `F^{-1} psi_m ~ i^m psi_m`).

use std::f64::consts::{LN_2, PI};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::linalg::CMatrix;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Grid, position operator and centered DFT for one oscillator.
#[derive(Clone)]
pub struct DiscreteOscillator {
    l: usize,
    spacing: f64,
    grid: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for DiscreteOscillator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiscreteOscillator").field("l", &self.l).finish()
    }
}

impl DiscreteOscillator {
    /// Any even `L >= 2`; powers of two take the fastest transform path.
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 || !l.is_multiple_of(2) {
            return Err(domain(format!("grid size L must be even and >= 2, got {l}")));
        }
        if !l.is_power_of_two() {
            log::debug!("L = {l} is not a power of two; using a mixed-radix transform");
        }
        let spacing = (2.0 * PI / l as f64).sqrt();
        let half = (l / 2) as f64;
        let grid = (0..l).map(|a| (a as f64 - half) * spacing).collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            l,
            spacing,
            grid,
            forward: planner.plan_fft_forward(l),
            inverse: planner.plan_fft_inverse(l),
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `sqrt(2 pi / L)`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Diagonal of the discrete position operator.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    fn transform(&self, fft: &Arc<dyn Fft<f64>>, data: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        assert!(data.len().is_multiple_of(self.l), "buffer length must be a multiple of L");
        // F = (-1)^{L/2} D FFT D / sqrt(L) with D = diag((-1)^a).
        let sign = if (self.l / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let norm = sign / (self.l as f64).sqrt();
        for chunk in data.chunks_exact_mut(self.l) {
            for v in chunk.iter_mut().skip(1).step_by(2) {
                *v = -*v;
            }
        }
        scratch.resize(fft.get_inplace_scratch_len(), ZERO);
        fft.process_with_scratch(data, scratch);
        for chunk in data.chunks_exact_mut(self.l) {
            for (a, v) in chunk.iter_mut().enumerate() {
                *v *= if a % 2 == 0 { norm } else { -norm };
            }
        }
    }

    /// In-place centered DFT of each consecutive length-`L` chunk.
    pub fn dft(&self, data: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        self.transform(&self.forward, data, scratch);
    }

    /// In-place inverse centered DFT of each consecutive length-`L` chunk.
    pub fn idft(&self, data: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        self.transform(&self.inverse, data, scratch);
    }

    /// `x^a psi`.
    pub fn apply_position_power(&self, psi: &mut [Complex64], a: u32) {
        for (v, &x) in psi.iter_mut().zip(&self.grid) {
            *v *= x.powi(a as i32);
        }
    }

    /// `p^b psi = F^{-1} x^b F psi`.
    pub fn apply_momentum_power(&self, psi: &mut [Complex64], b: u32) {
        if b == 0 {
            return;
        }
        let mut scratch = Vec::new();
        self.dft(psi, &mut scratch);
        self.apply_position_power(psi, b);
        self.idft(psi, &mut scratch);
    }

    /// Dense centered DFT matrix, for small `L` only.
    pub fn dft_matrix(&self) -> CMatrix {
        let l = self.l;
        let h = (l / 2) as i64;
        let norm = 1.0 / (l as f64).sqrt();
        DMatrix::from_fn(l, l, |a, b| {
            let (j, k) = (a as i64 - h, b as i64 - h);
            let phase = -2.0 * PI * ((j * k).rem_euclid(l as i64)) as f64 / l as f64;
            Complex64::from_polar(norm, phase)
        })
    }

    /// Discrete Hamiltonian `(x^2 + p^2) / 2` applied to `psi`.
    pub fn apply_hamiltonian(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut xx = psi.to_vec();
        self.apply_position_power(&mut xx, 2);
        let mut pp = psi.to_vec();
        self.apply_momentum_power(&mut pp, 2);
        xx.iter().zip(&pp).map(|(a, b)| 0.5 * (a + b)).collect()
    }
}

/// `2^k v` without intermediate overflow or underflow.
fn ldexp(mut v: f64, mut k: i64) -> f64 {
    const BIG: f64 = 1.0715086071862673e301; // 2^1000
    const SMALL: f64 = 9.332636185032189e-302; // 2^-1000
    while k > 1000 {
        if v == 0.0 || v.is_infinite() {
            return v;
        }
        v *= BIG;
        k -= 1000;
    }
    while k < -1000 {
        if v == 0.0 {
            return v;
        }
        v *= SMALL;
        k += 1000;
    }
    v * 2f64.powi(k as i32)
}

const RESCALE_AT: f64 = 3.273390607896142e150; // 2^500
const RESCALE_BY: f64 = 3.054_936_363_499_605e-151; // 2^-500

/// Scaled pair for the normalized recurrence: value = mantissa * 2^exp.
struct HermiteRecurrence {
    x: f64,
    prev: f64,
    cur: f64,
    exp: i64,
    m: usize,
}

impl HermiteRecurrence {
    fn new(x: f64) -> Self {
        // psi_0 = pi^{-1/4} exp(-x^2 / 2), with the exponent split off in base 2.
        let log2 = -0.5 * x * x / LN_2;
        let whole = log2.floor();
        let frac = log2 - whole;
        let cur = PI.powf(-0.25) * frac.exp2();
        Self { x, prev: 0.0, cur, exp: whole as i64, m: 0 }
    }

    fn value(&self) -> f64 {
        ldexp(self.cur, self.exp)
    }

    fn step(&mut self) {
        let k = (self.m + 1) as f64;
        let next = self.x * (2.0 / k).sqrt() * self.cur - ((k - 1.0) / k).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.m += 1;
        if self.cur.abs() > RESCALE_AT || self.prev.abs() > RESCALE_AT {
            self.cur *= RESCALE_BY;
            self.prev *= RESCALE_BY;
            self.exp += 500;
        }
    }
}

/// Normalized Hermite function `psi_m(x) = exp(-x^2/2) H_m(x) / sqrt(2^m m! sqrt(pi))`.
///
/// Evaluated by the normalized three-term recurrence with a separate base-2
/// exponent, so it neither overflows nor flushes early for `m` up to `10^6`.
pub fn hermite_function(m: usize, x: f64) -> f64 {
    let mut r = HermiteRecurrence::new(x);
    for _ in 0..m {
        r.step();
    }
    r.value()
}

/// `psi_0(x), ..., psi_{m_max}(x)` at every point of `xs`; indexed `[m][point]`.
pub fn hermite_table(m_max: usize, xs: &[f64]) -> Vec<Vec<f64>> {
    let mut table = vec![vec![0.0; xs.len()]; m_max + 1];
    for (p, &x) in xs.iter().enumerate() {
        let mut r = HermiteRecurrence::new(x);
        table[0][p] = r.value();
        for row in table.iter_mut().skip(1) {
            r.step();
            row[p] = r.value();
        }
    }
    table
}

/// Grid-sampled Hermite function `(2 pi / L)^{1/4} psi_m(x_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteState {
    pub m: usize,
    pub l: usize,
    pub amplitudes: Vec<Complex64>,
}

impl HermiteState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Real amplitudes of all discrete Hermite states `m <= m_max`; indexed `[m][j]`.
pub fn hermite_state_table(osc: &DiscreteOscillator, m_max: usize) -> Result<Vec<Vec<f64>>> {
    if m_max >= osc.l() {
        return Err(domain(format!("m = {m_max} must be <= L - 1 = {}", osc.l() - 1)));
    }
    let scale = osc.spacing().sqrt();
    let mut t = hermite_table(m_max, osc.grid());
    for row in &mut t {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    Ok(t)
}

/// The discrete Hermite state `|psi_m>` (not renormalized).
pub fn hermite_state(osc: &DiscreteOscillator, m: usize) -> Result<HermiteState> {
    if m >= osc.l() {
        return Err(domain(format!("m = {m} must be <= L - 1 = {}", osc.l() - 1)));
    }
    let scale = osc.spacing().sqrt();
    let amplitudes = osc
        .grid()
        .iter()
        .map(|&x| Complex64::new(scale * hermite_function(m, x), 0.0))
        .collect();
    Ok(HermiteState { m, l: osc.l(), amplitudes })
}

/// Largest `m` for which the low-energy estimates are expected to apply.
pub fn low_energy_limit(l: usize) -> usize {
    3 * l / 4
}

/// States up to `L - 1` are defined; past `0.75 L` the residuals are not
/// expected to be small, so those requests are computed but logged.
fn check_low_energy(osc: &DiscreteOscillator, m: usize) -> Result<()> {
    if m >= osc.l() {
        return Err(domain(format!("m = {m} must be <= L - 1 = {}", osc.l() - 1)));
    }
    let limit = low_energy_limit(osc.l());
    if m > limit {
        log::warn!("m = {m} is above 0.75 L = {limit}; residual is outside the low-energy regime");
    }
    Ok(())
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `||(H - (m + 1/2)) |psi_m>||` with `H = (x^2 + F^{-1} x^2 F) / 2`.
pub fn eigen_residual(osc: &DiscreteOscillator, m: usize) -> Result<f64> {
    check_low_energy(osc, m)?;
    let psi = hermite_state(osc, m)?.amplitudes;
    let h = osc.apply_hamiltonian(&psi);
    let e = m as f64 + 0.5;
    let diff: Vec<Complex64> = h.iter().zip(&psi).map(|(a, b)| a - e * b).collect();
    Ok(norm(&diff))
}

/// `(-i)^m`, the eigenphase of `psi_m` under the centered DFT.
pub fn fourier_phase(m: usize) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `||F |psi_m> - (-i)^m |psi_m>||`.
pub fn fourier_eigen_residual(osc: &DiscreteOscillator, m: usize) -> Result<f64> {
    check_low_energy(osc, m)?;
    let psi = hermite_state(osc, m)?.amplitudes;
    let mut f = psi.clone();
    osc.dft(&mut f, &mut Vec::new());
    let phase = fourier_phase(m);
    let diff: Vec<Complex64> = f.iter().zip(&psi).map(|(a, b)| a - phase * b).collect();
    Ok(norm(&diff))
}

/// Truncated Fock-space `x = (a + a^†) / sqrt 2` of dimension `dim`.
pub fn fock_position(dim: usize) -> CMatrix {
    let mut x = CMatrix::zeros(dim, dim);
    for m in 1..dim {
        let v = Complex64::new((m as f64 / 2.0).sqrt(), 0.0);
        x[(m - 1, m)] = v;
        x[(m, m - 1)] = v;
    }
    x
}

/// Truncated Fock-space `p = i (a^† - a) / sqrt 2` of dimension `dim`.
pub fn fock_momentum(dim: usize) -> CMatrix {
    let mut p = CMatrix::zeros(dim, dim);
    for m in 1..dim {
        let v = (m as f64 / 2.0).sqrt();
        // a^† has (m, m-1) = sqrt(m); a has (m-1, m) = sqrt(m).
        p[(m, m - 1)] = Complex64::new(0.0, v);
        p[(m - 1, m)] = Complex64::new(0.0, -v);
    }
    p
}

/// Continuum `<psi_{m'}| x^a p^b |psi_m>` from the ladder algebra.
///
/// The truncation `max(m, m') + a + b + 1` is large enough for the result to be exact.
pub fn continuum_matrix_element(m: usize, m_prime: usize, a: u32, b: u32) -> Complex64 {
    let dim = m.max(m_prime) + (a + b) as usize + 1;
    let x = fock_position(dim);
    let p = fock_momentum(dim);
    let mut v = CMatrix::zeros(dim, 1);
    v[(m, 0)] = Complex64::new(1.0, 0.0);
    for _ in 0..b {
        v = &p * v;
    }
    for _ in 0..a {
        v = &x * v;
    }
    v[(m_prime, 0)]
}

/// `|<psi_{m'}| x^a p^b |psi_m>_discrete - continuum value|`.
pub fn matrix_element_residual(
    osc: &DiscreteOscillator,
    m: usize,
    m_prime: usize,
    a: u32,
    b: u32,
) -> Result<f64> {
    if a > 4 || b > 4 {
        return Err(domain(format!("powers a = {a}, b = {b} must be <= 4")));
    }
    check_low_energy(osc, m)?;
    check_low_energy(osc, m_prime)?;
    let mut v = hermite_state(osc, m)?.amplitudes;
    osc.apply_momentum_power(&mut v, b);
    osc.apply_position_power(&mut v, a);
    let bra = hermite_state(osc, m_prime)?.amplitudes;
    let discrete: Complex64 = bra.iter().zip(&v).map(|(l, r)| l.conj() * r).sum();
    Ok((discrete - continuum_matrix_element(m, m_prime, a, b)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn psi1_closed_form(x: f64) -> f64 {
        SQRT_2 * x * PI.powf(-0.25) * (-0.5 * x * x).exp()
    }

    #[test]
    fn hermite_basics() {
        assert!((hermite_function(0, 0.0) - 0.7511255444649425).abs() < 1e-15);
        assert_eq!(hermite_function(1, 0.0), 0.0);
        assert!((hermite_function(1, 0.8) - psi1_closed_form(0.8)).abs() < 1e-15);
        assert_eq!(hermite_function(3, 80.0), 0.0);
    }

    #[test]
    fn hermite_high_order_is_finite_and_bounded() {
        // |psi_m(x)| <= pi^{-1/4} for all m, x.
        for &x in &[0.0, 1.0, 500.0, 1400.0, 1414.2] {
            let v = hermite_function(1_000_000, x);
            assert!(v.is_finite());
            assert!(v.abs() <= 0.7512);
        }
        assert!(hermite_function(1_000_000, 1413.0).abs() > 1e-6);
    }

    #[test]
    fn table_matches_pointwise() {
        let xs = [-3.0, -0.2, 0.0, 1.7, 6.0];
        let t = hermite_table(12, &xs);
        for (m, row) in t.iter().enumerate() {
            for (p, &x) in xs.iter().enumerate() {
                assert_eq!(row[p], hermite_function(m, x));
            }
        }
    }

    #[test]
    fn grid_values() {
        let osc = DiscreteOscillator::new(8).unwrap();
        let h = (2.0 * PI / 8.0).sqrt();
        assert_eq!(osc.grid()[0], -4.0 * h);
        assert_eq!(osc.grid()[4], 0.0);
        assert!(DiscreteOscillator::new(7).is_err());
        assert!(DiscreteOscillator::new(0).is_err());
    }

    #[test]
    fn fft_matches_dense_dft() {
        for l in [2, 4, 6, 8, 12, 16] {
            let osc = DiscreteOscillator::new(l).unwrap();
            let f = osc.dft_matrix();
            let v: Vec<Complex64> =
                (0..l).map(|a| Complex64::new((a as f64).sin(), (a * a) as f64 * 0.1)).collect();
            let dense = &f * CMatrix::from_column_slice(l, 1, &v);
            let mut fast = v.clone();
            osc.dft(&mut fast, &mut Vec::new());
            for a in 0..l {
                assert!((fast[a] - dense[(a, 0)]).norm() < 1e-13, "L={l}");
            }
            let mut back = fast;
            osc.idft(&mut back, &mut Vec::new());
            for a in 0..l {
                assert!((back[a] - v[a]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn small_residuals() {
        let osc = DiscreteOscillator::new(64).unwrap();
        assert!(eigen_residual(&osc, 0).unwrap() <= 1e-8);
        assert!(fourier_eigen_residual(&osc, 0).unwrap() <= 1e-8);
        assert!(fourier_eigen_residual(&osc, 1).unwrap() <= 1e-7);
        assert!(eigen_residual(&osc, 60).unwrap().is_finite());
        assert!(eigen_residual(&osc, 64).is_err());
    }

    #[test]
    fn matrix_elements() {
        let osc = DiscreteOscillator::new(64).unwrap();
        assert!(matrix_element_residual(&osc, 0, 0, 2, 0).unwrap() <= 1e-8);
        assert!((continuum_matrix_element(0, 0, 2, 0).re - 0.5).abs() < 1e-15);
        assert!((continuum_matrix_element(0, 2, 2, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((continuum_matrix_element(1, 1, 0, 2).re - 1.5).abs() < 1e-15);
        assert!(matrix_element_residual(&osc, 0, 2, 2, 0).unwrap() <= 1e-8);
        assert!(matrix_element_residual(&osc, 1, 1, 0, 2).unwrap() <= 1e-8);
        assert!(matrix_element_residual(&osc, 1, 1, 5, 0).is_err());
    }
}
