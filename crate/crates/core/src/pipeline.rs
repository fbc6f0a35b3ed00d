//! Classical emulation of the oscillator circuit: embed each irrep basis
//! vector as a product of discrete Hermite states on an `L^n` grid, apply the
//! split monomial plan with axis-wise DFTs and diagonal phases, and read the
//! result back in the embedded basis.
//!
//! Grid vectors are flat with axis 1 slowest: the point `(a_1, ..., a_n)`
//! sits at `sum_i a_i L^{n-i}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{exact_unitary_capped, AngleSet, HermitianGenerator, DEFAULT_DENSE_CAP};
use crate::combinatorics::{compositions_desc, IrrepShape};
use crate::decompose::{euler_decompose, fundamental_matrix, EulerFactor, EulerSequence};
use crate::error::{domain, Error, Result};
use crate::fastforward::{build_plan, expand_sequence, FactorTerm, FactorizationPlan, Monomial};
use crate::fit::{fit_log_linear, ErrorFitResult};
use crate::linalg::{max_abs, spectral_norm, CMatrix};
use crate::oscillator::{hermite_state_table, DiscreteOscillator};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest `M / L` for which the embedded columns are near-orthonormal.
pub const MAX_FILLING: f64 = 0.375;

/// Gram deviation above which projections use the inverse Gram matrix.
pub const GRAM_CORRECTION_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineConfig {
    /// Cap on `L^n`, in complex entries.
    pub memory_cap: usize,
    /// Cap on `N` for dense `N x N` work.
    pub dense_cap: usize,
    /// Columns leaking more than this are flagged.
    pub leakage_threshold: f64,
    /// Fundamental-representation decomposition tolerance before the `1/N` tightening.
    pub decompose_tol: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            memory_cap: 1 << 26,
            dense_cap: DEFAULT_DENSE_CAP,
            leakage_threshold: 1e-6,
            decompose_tol: 1e-10,
        }
    }
}

/// Checks `L` even, `M <= 0.375 L` and `L^n <= cap`; returns `L^n`.
pub fn check_grid(shape: IrrepShape, l: usize, memory_cap: usize) -> Result<usize> {
    if l < 2 || !l.is_multiple_of(2) {
        return Err(domain(format!("L must be even and >= 2, got {l}")));
    }
    if shape.bosons() as f64 > MAX_FILLING * l as f64 {
        return Err(domain(format!(
            "M = {} exceeds 0.375 L = {} for L = {l}",
            shape.bosons(),
            MAX_FILLING * l as f64
        )));
    }
    let mut total: u128 = 1;
    for _ in 0..shape.n() {
        total = total.saturating_mul(l as u128);
    }
    if total > memory_cap as u128 {
        return Err(Error::Resource { what: "grid state L^n", requested: total, cap: memory_cap as u128 });
    }
    Ok(total as usize)
}

/// The asymptotic grid-size scale `M^{2.25} / eps^{3.25}` of the complexity
/// bound. The constant in front is unknown, so this only orders choices.
pub fn asymptotic_grid_scale(bosons: usize, eps: f64) -> f64 {
    (bosons as f64).powf(2.25) / eps.powf(3.25)
}

/// Scratch buffers for grid operations.
#[derive(Default)]
pub struct Workspace {
    lines: Vec<Complex64>,
    fft: Vec<Complex64>,
    phase: Vec<Complex64>,
}

fn axis_stride(l: usize, n: usize, axis: usize) -> usize {
    l.pow((n - axis) as u32)
}

/// Centered DFT (or its inverse) along one 1-based axis.
pub fn axis_transform(
    osc: &DiscreteOscillator,
    state: &mut [Complex64],
    n: usize,
    axis: usize,
    inverse: bool,
    ws: &mut Workspace,
) {
    let l = osc.l();
    let stride = axis_stride(l, n, axis);
    let run = |data: &mut [Complex64], fft: &mut Vec<Complex64>| {
        if inverse {
            osc.idft(data, fft)
        } else {
            osc.dft(data, fft)
        }
    };
    if stride == 1 {
        run(state, &mut ws.fft);
        return;
    }
    let block = l * stride;
    ws.lines.resize(block, ZERO);
    for chunk in state.chunks_exact_mut(block) {
        for a in 0..l {
            for t in 0..stride {
                ws.lines[t * l + a] = chunk[a * stride + t];
            }
        }
        run(&mut ws.lines, &mut ws.fft);
        for a in 0..l {
            for t in 0..stride {
                chunk[a * stride + t] = ws.lines[t * l + a];
            }
        }
    }
}

fn check_axes(m: &Monomial, n: usize) -> Result<()> {
    m.validate(n)
}

/// Multiply by `exp(i angle f(a_j) g(a_k))` where `(a_j, a_k)` are the grid
/// indices on axes `j`, `k` (or `exp(i angle f(a_j)^2)` when `j == k`).
#[allow(clippy::too_many_arguments)]
fn two_axis_phase(state: &mut [Complex64], l: usize, n: usize, j: usize, k: usize, angle: f64, grid: &[f64], ws: &mut Workspace) {
    let (sj, sk) = (axis_stride(l, n, j), axis_stride(l, n, k));
    if j == k {
        ws.phase.clear();
        ws.phase.extend(grid.iter().map(|&x| Complex64::from_polar(1.0, angle * x * x)));
        for (idx, v) in state.iter_mut().enumerate() {
            *v *= ws.phase[(idx / sj) % l];
        }
        return;
    }
    ws.phase.clear();
    for &xj in grid {
        ws.phase.extend(grid.iter().map(|&xk| Complex64::from_polar(1.0, angle * xj * xk)));
    }
    for (idx, v) in state.iter_mut().enumerate() {
        *v *= ws.phase[((idx / sj) % l) * l + (idx / sk) % l];
    }
}

/// Apply `exp(i angle O)` for one monomial term to an `L^n` grid state.
///
/// Position monomials are diagonal phases. Each momentum factor is made
/// diagonal by a centered DFT on its own axis, since `p = F^{-1} x F`.
pub fn apply_factor_with(
    state: &mut [Complex64],
    term: &FactorTerm,
    osc: &DiscreteOscillator,
    n: usize,
    ws: &mut Workspace,
) -> Result<()> {
    check_axes(&term.monomial, n)?;
    let l = osc.l();
    if state.len() != l.pow(n as u32) {
        return Err(domain(format!("state length {} is not L^n = {}^{n}", state.len(), l)));
    }
    if term.angle == 0.0 {
        return Ok(());
    }
    let grid = osc.grid();
    let angle = term.angle;
    match term.monomial {
        Monomial::X2(i) => two_axis_phase(state, l, n, i, i, angle, grid, ws),
        Monomial::XX { j, k } => two_axis_phase(state, l, n, j, k, angle, grid, ws),
        Monomial::P2(i) => {
            axis_transform(osc, state, n, i, false, ws);
            two_axis_phase(state, l, n, i, i, angle, grid, ws);
            axis_transform(osc, state, n, i, true, ws);
        }
        Monomial::PP { j, k } => {
            axis_transform(osc, state, n, j, false, ws);
            axis_transform(osc, state, n, k, false, ws);
            two_axis_phase(state, l, n, j, k, angle, grid, ws);
            axis_transform(osc, state, n, j, true, ws);
            axis_transform(osc, state, n, k, true, ws);
        }
        Monomial::XP { j, k, transposed } => {
            // x_j p_k: momentum lives on axis k; p_j x_k: on axis j.
            let p_axis = if transposed { j } else { k };
            axis_transform(osc, state, n, p_axis, false, ws);
            two_axis_phase(state, l, n, j, k, angle, grid, ws);
            axis_transform(osc, state, n, p_axis, true, ws);
        }
    }
    Ok(())
}

/// [`apply_factor_with`] using fresh scratch space.
pub fn apply_factor(
    state: &mut [Complex64],
    term: &FactorTerm,
    osc: &DiscreteOscillator,
    n: usize,
) -> Result<()> {
    apply_factor_with(state, term, osc, n, &mut Workspace::default())
}

/// Apply a whole plan, whose product `T_1 T_2 ... T_r` acts right to left.
pub fn apply_plan(
    state: &mut [Complex64],
    terms: &[FactorTerm],
    osc: &DiscreteOscillator,
    n: usize,
    ws: &mut Workspace,
) -> Result<()> {
    for term in terms.iter().rev() {
        apply_factor_with(state, term, osc, n, ws)?;
    }
    Ok(())
}

/// Irrep basis vector `ell` as the product state `psi_{m_1} x ... x psi_{m_n}`.
#[derive(Debug, Clone)]
pub struct Embedding {
    shape: IrrepShape,
    osc: DiscreteOscillator,
    basis: Vec<Vec<usize>>,
    /// `table[m][a]`: discrete Hermite state `m` at grid index `a`.
    table: Vec<Vec<f64>>,
    gram: CMatrix,
    gram_inverse: Option<CMatrix>,
}

impl Embedding {
    pub fn new(shape: IrrepShape, l: usize, config: &PipelineConfig) -> Result<Self> {
        check_grid(shape, l, config.memory_cap)?;
        crate::linalg::check_dense_cap("embedding Gram matrix", shape.dim(), config.dense_cap)?;
        let osc = DiscreteOscillator::new(l)?;
        let table = hermite_state_table(&osc, shape.bosons())?;
        let basis = compositions_desc(shape)?;
        let m1 = shape.bosons() + 1;
        let overlaps = DMatrix::from_fn(m1, m1, |a, b| {
            table[a].iter().zip(&table[b]).map(|(x, y)| x * y).sum::<f64>()
        });
        let dim = shape.dim();
        let gram = DMatrix::from_fn(dim, dim, |r, c| {
            let v: f64 = basis[r].iter().zip(&basis[c]).map(|(&a, &b)| overlaps[(a, b)]).product();
            Complex64::new(v, 0.0)
        });
        let deviation = max_abs(&(&gram - CMatrix::identity(dim, dim)));
        let gram_inverse = if deviation > GRAM_CORRECTION_THRESHOLD {
            log::debug!("Gram deviation {deviation:e} at L = {l}; using corrected projector");
            Some(gram.clone().try_inverse().ok_or_else(|| domain("embedded columns are linearly dependent"))?)
        } else {
            None
        };
        Ok(Self { shape, osc, basis, table, gram, gram_inverse })
    }

    pub fn shape(&self) -> IrrepShape {
        self.shape
    }

    pub fn oscillator(&self) -> &DiscreteOscillator {
        &self.osc
    }

    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    pub fn is_gram_corrected(&self) -> bool {
        self.gram_inverse.is_some()
    }

    fn coefficient_radix(&self) -> usize {
        self.shape.bosons() + 1
    }

    fn coefficient_index(&self, parts: &[usize]) -> usize {
        parts.iter().fold(0, |acc, &m| acc * self.coefficient_radix() + m)
    }

    /// `sum_ell c_ell |E_ell>` on the grid.
    pub fn embed(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let (n, l, r) = (self.shape.n(), self.osc.l(), self.coefficient_radix());
        let mut cur = vec![ZERO; r.pow(n as u32)];
        for (parts, &c) in self.basis.iter().zip(coeffs) {
            cur[self.coefficient_index(parts)] += c;
        }
        // Replace one coefficient axis at a time by a grid axis.
        for axis in 1..=n {
            let outer = l.pow((axis - 1) as u32);
            let inner = r.pow((n - axis) as u32);
            let mut next = vec![ZERO; outer * l * inner];
            for o in 0..outer {
                for m in 0..r {
                    let src = &cur[(o * r + m) * inner..(o * r + m + 1) * inner];
                    if src.iter().all(|z| *z == ZERO) {
                        continue;
                    }
                    for (a, &psi) in self.table[m].iter().enumerate() {
                        if psi == 0.0 {
                            continue;
                        }
                        let dst = &mut next[(o * l + a) * inner..(o * l + a + 1) * inner];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += psi * s;
                        }
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// The unnormalized overlaps `<E_ell | v>`.
    pub fn project(&self, v: &[Complex64]) -> Vec<Complex64> {
        let (n, l, r) = (self.shape.n(), self.osc.l(), self.coefficient_radix());
        let mut cur = v.to_vec();
        // Contract the last grid axis first.
        for axis in (1..=n).rev() {
            let outer = l.pow((axis - 1) as u32);
            let inner = r.pow((n - axis) as u32);
            let mut next = vec![ZERO; outer * r * inner];
            for o in 0..outer {
                for a in 0..l {
                    let src = &cur[(o * l + a) * inner..(o * l + a + 1) * inner];
                    for m in 0..r {
                        let psi = self.table[m][a];
                        if psi == 0.0 {
                            continue;
                        }
                        let dst = &mut next[(o * r + m) * inner..(o * r + m + 1) * inner];
                        for (d, s) in dst.iter_mut().zip(src) {
                            *d += psi * s;
                        }
                    }
                }
            }
            cur = next;
        }
        self.basis.iter().map(|p| cur[self.coefficient_index(p)]).collect()
    }

    /// Coefficients of the projection of `v` onto the embedded span, and the
    /// leaked fraction `1 - ||P v||^2 / ||v||^2`.
    pub fn coefficients(&self, v: &[Complex64]) -> (Vec<Complex64>, f64) {
        let c = self.project(v);
        let cv = CMatrix::from_column_slice(c.len(), 1, &c);
        let coeffs = match &self.gram_inverse {
            Some(gi) => gi * &cv,
            None => cv.clone(),
        };
        let kept: f64 = cv.iter().zip(coeffs.iter()).map(|(a, b)| (a.conj() * b).re).sum();
        let total: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let leakage = if total > 0.0 { 1.0 - kept / total } else { 0.0 };
        (coeffs.iter().copied().collect(), leakage)
    }

    /// Push every basis column through the plan; returns the projected matrix
    /// and the per-column leakage.
    pub fn transport(&self, terms: &[FactorTerm]) -> Result<(CMatrix, Vec<f64>)> {
        let dim = self.shape.dim();
        let n = self.shape.n();
        let cols: Vec<Result<(Vec<Complex64>, f64)>> = (0..dim)
            .into_par_iter()
            .map(|ell| {
                let mut e = vec![ZERO; dim];
                e[ell] = Complex64::new(1.0, 0.0);
                let mut v = self.embed(&e);
                let mut ws = Workspace::default();
                apply_plan(&mut v, terms, &self.osc, n, &mut ws)?;
                Ok(self.coefficients(&v))
            })
            .collect();
        let mut u = CMatrix::zeros(dim, dim);
        let mut leakage = Vec::with_capacity(dim);
        for (ell, col) in cols.into_iter().enumerate() {
            let (c, leak) = col?;
            for (r, z) in c.into_iter().enumerate() {
                u[(r, ell)] = z;
            }
            leakage.push(leak);
        }
        Ok((u, leakage))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanStats {
    /// Terms after expansion, before phase splitting.
    pub r: usize,
    /// Terms actually applied.
    pub split_terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineResult {
    #[serde(skip)]
    pub sim_unitary: CMatrix,
    pub spectral_error: f64,
    pub l_used: usize,
    pub plan_stats: PlanStats,
    pub leakage: Vec<f64>,
    pub leakage_max: f64,
    /// Some column leaked more than the configured threshold.
    pub leakage_flagged: bool,
    pub gram_corrected: bool,
}

/// Decompose, expand and split the element with the given angles.
pub fn plan_for(n: usize, angles: &AngleSet, bosons_dim: usize, config: &PipelineConfig) -> Result<(FactorizationPlan, usize)> {
    let u = fundamental_matrix(n, angles)?;
    let seq = euler_decompose(&u, config.decompose_tol / bosons_dim as f64)?;
    let r = expand_sequence(&seq)?.r;
    Ok((build_plan(&seq)?, r))
}

/// Emulate the fast-forwarded circuit for `U(angles)` at grid size `L`.
pub fn simulate(shape: IrrepShape, angles: &AngleSet, l: usize) -> Result<PipelineResult> {
    simulate_with(shape, angles, l, &PipelineConfig::default())
}

pub fn simulate_with(
    shape: IrrepShape,
    angles: &AngleSet,
    l: usize,
    config: &PipelineConfig,
) -> Result<PipelineResult> {
    if angles.n() != shape.n() {
        return Err(domain(format!("angle set is for n={}, irrep has n={}", angles.n(), shape.n())));
    }
    let embedding = Embedding::new(shape, l, config)?;
    let (plan, r) = plan_for(shape.n(), angles, shape.dim(), config)?;
    let exact = exact_unitary_capped(shape, angles, config.dense_cap)?;
    finish(&embedding, &plan, r, &exact, config)
}

/// Emulate an explicit Euler sequence, comparing with its exact lift.
pub fn simulate_sequence(
    shape: IrrepShape,
    seq: &EulerSequence,
    l: usize,
    config: &PipelineConfig,
) -> Result<PipelineResult> {
    let embedding = Embedding::new(shape, l, config)?;
    let plan = build_plan(seq)?;
    let r = expand_sequence(seq)?.r;
    let exact = crate::decompose::lift_sequence_capped(seq, shape, config.dense_cap)?;
    finish(&embedding, &plan, r, &exact, config)
}

fn finish(
    embedding: &Embedding,
    plan: &FactorizationPlan,
    r: usize,
    exact: &CMatrix,
    config: &PipelineConfig,
) -> Result<PipelineResult> {
    let (sim, leakage) = embedding.transport(&plan.terms)?;
    let spectral_error = spectral_norm(&(&sim - exact));
    let leakage_max = leakage.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let leakage_flagged = leakage_max > config.leakage_threshold;
    if leakage_flagged {
        log::warn!("leakage {leakage_max:e} exceeds threshold {:e}", config.leakage_threshold);
    }
    Ok(PipelineResult {
        sim_unitary: sim,
        spectral_error,
        l_used: embedding.oscillator().l(),
        plan_stats: PlanStats { r, split_terms: plan.r },
        leakage,
        leakage_max,
        leakage_flagged,
        gram_corrected: embedding.is_gram_corrected(),
    })
}

/// Spectral error at each admissible `L`, and the log-linear fit.
pub fn error_sweep(shape: IrrepShape, angles: &AngleSet, l_list: &[usize]) -> Result<ErrorFitResult> {
    error_sweep_with(shape, angles, l_list, &PipelineConfig::default())
}

pub fn error_sweep_with(
    shape: IrrepShape,
    angles: &AngleSet,
    l_list: &[usize],
    config: &PipelineConfig,
) -> Result<ErrorFitResult> {
    let admissible: Vec<usize> = l_list
        .iter()
        .copied()
        .filter(|&l| match check_grid(shape, l, config.memory_cap) {
            Ok(_) => true,
            Err(e) => {
                log::info!("skipping L = {l}: {e}");
                false
            }
        })
        .collect();
    if admissible.len() < 3 {
        return Err(domain(format!(
            "need at least 3 admissible grid sizes, got {} of {:?}",
            admissible.len(),
            l_list
        )));
    }
    let mut points = Vec::with_capacity(admissible.len());
    for l in admissible {
        let res = simulate_with(shape, angles, l, config)?;
        points.push((l, res.spectral_error));
    }
    fit_log_linear(&points)
}

/// Snapshots of the kicked-top iteration `V = exp(-i beta J_z^2) exp(-i gamma J_y)`.
#[derive(Debug, Clone, Serialize)]
pub struct KickedTopRun {
    /// `states[t]` after `t` steps; `states[0]` is `|ell = 0>`.
    pub states: Vec<Vec<Complex64>>,
    /// Leaked fraction at each step.
    pub leakage: Vec<f64>,
}

/// Iterate the kicked top for `n = 2`: the `J_y` rotation goes through the
/// grid emulation, and the `J_z^2` kick is an exact diagonal phase.
pub fn kicked_top_demo(
    shape: IrrepShape,
    gamma: f64,
    beta: f64,
    steps: usize,
    l: usize,
) -> Result<KickedTopRun> {
    kicked_top_demo_with(shape, gamma, beta, steps, l, &PipelineConfig::default())
}

pub fn kicked_top_demo_with(
    shape: IrrepShape,
    gamma: f64,
    beta: f64,
    steps: usize,
    l: usize,
    config: &PipelineConfig,
) -> Result<KickedTopRun> {
    if shape.n() != 2 {
        return Err(domain(format!("the kicked top needs n = 2, got n = {}", shape.n())));
    }
    if !gamma.is_finite() || !beta.is_finite() {
        return Err(domain("gamma and beta must be finite"));
    }
    let embedding = Embedding::new(shape, l, config)?;
    let rotation = EulerSequence {
        n: 2,
        factors: vec![EulerFactor::new(HermitianGenerator::Antisymmetric { j: 1, k: 2 }, -gamma)?],
        reconstruction_error: 0.0,
    };
    let plan = build_plan(&rotation)?;
    let basis = compositions_desc(shape)?;
    let kick: Vec<Complex64> = basis
        .iter()
        .map(|p| {
            let jz = 0.5 * (p[0] as f64 - p[1] as f64);
            Complex64::from_polar(1.0, -beta * jz * jz)
        })
        .collect();

    let mut psi = vec![ZERO; shape.dim()];
    psi[0] = Complex64::new(1.0, 0.0);
    let mut states = vec![psi.clone()];
    let mut leakage = Vec::with_capacity(steps);
    let mut ws = Workspace::default();
    for _ in 0..steps {
        let mut v = embedding.embed(&psi);
        apply_plan(&mut v, &plan.terms, embedding.oscillator(), 2, &mut ws)?;
        let (c, leak) = embedding.coefficients(&v);
        psi = c.iter().zip(&kick).map(|(a, k)| a * k).collect();
        leakage.push(leak);
        states.push(psi.clone());
    }
    Ok(KickedTopRun { states, leakage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_defect;

    #[test]
    fn zero_angles_give_identity() {
        let shape = IrrepShape::new(2, 3).unwrap();
        let res = simulate(shape, &AngleSet::zeros(2), 64).unwrap();
        assert!(res.spectral_error <= 1e-9);
        assert!(unitarity_defect(&res.sim_unitary) <= 1e-9);
    }

    #[test]
    fn single_cartan_angle() {
        let shape = IrrepShape::new(2, 1).unwrap();
        let mut a = AngleSet::zeros(2);
        a.set(HermitianGenerator::Diagonal(1), 0.7).unwrap();
        let res = simulate(shape, &a, 64).unwrap();
        let want0 = Complex64::from_polar(1.0, 0.35);
        assert!((res.sim_unitary[(0, 0)] - want0).norm() < 1e-9);
        assert!((res.sim_unitary[(1, 1)] - want0.conj()).norm() < 1e-9);
        assert!(res.spectral_error < 1e-9);
    }

    #[test]
    fn grid_preconditions() {
        let shape = IrrepShape::new(2, 30).unwrap();
        assert!(matches!(check_grid(shape, 64, 1 << 26), Err(Error::Domain(_))));
        assert!(check_grid(shape, 63, 1 << 26).is_err());
        let shape = IrrepShape::new(3, 2).unwrap();
        assert!(matches!(check_grid(shape, 512, 1 << 26), Err(Error::Resource { .. })));
    }

    #[test]
    fn embed_and_project_roundtrip() {
        let shape = IrrepShape::new(3, 2).unwrap();
        let emb = Embedding::new(shape, 32, &PipelineConfig::default()).unwrap();
        let coeffs: Vec<Complex64> = (0..6).map(|k| Complex64::new(k as f64, 1.0 - k as f64)).collect();
        let v = emb.embed(&coeffs);
        let (back, leak) = emb.coefficients(&v);
        for (a, b) in back.iter().zip(&coeffs) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!(leak.abs() < 1e-10);
    }

    #[test]
    fn axis_transform_roundtrip() {
        let osc = DiscreteOscillator::new(8).unwrap();
        let mut ws = Workspace::default();
        let v: Vec<Complex64> = (0..512).map(|k| Complex64::new((k as f64).cos(), 0.3 * k as f64)).collect();
        for axis in 1..=3 {
            let mut w = v.clone();
            axis_transform(&osc, &mut w, 3, axis, false, &mut ws);
            axis_transform(&osc, &mut w, 3, axis, true, &mut ws);
            for (a, b) in w.iter().zip(&v) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
