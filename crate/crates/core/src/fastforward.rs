//! Exact rewriting of each `exp(i theta O)`, `O in {H_i, S_jk, A_jk}`, as a
//! product of exponentials of single quadratic monomials in `x_j`, `p_j`.
//!
//! In position/momentum form (`x = (a^† + a)/sqrt 2`, `p = i (a^† - a)/sqrt 2`)
//!
//! * `H_i = (x_i^2 + p_i^2 - x_{i+1}^2 - p_{i+1}^2) / 4` (up to a constant that cancels),
//! * `S_jk = (x_j x_k + p_j p_k) / 2`,
//! * `A_jk = (p_j x_k - x_j p_k) / 2`,
//!
//! and each exponential is a three-term product of the form in [`three_term_angles`].
//! Every term can also be replayed as a `2n x 2n` real symplectic matrix,
//! which is how plans are checked against their source factors.

use std::f64::consts::{E, FRAC_PI_2, SQRT_2};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::HermitianGenerator;
use crate::decompose::{EulerFactor, EulerSequence};
use crate::error::{domain, Result};
use crate::linalg::symmetric_angle;

/// Largest PP / XP angle left after [`split_phases`].
pub const SPLIT_BOUND: f64 = 1.0 / (2.0 * E);

/// A quadratic monomial; mode indices are 1-based.
///
/// `XP { j, k, transposed: false }` is `x_j p_k`; `transposed: true` is `p_j x_k`.
/// Both are stored with `j < k` so the two orientations never alias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Monomial {
    XX { j: usize, k: usize },
    PP { j: usize, k: usize },
    XP { j: usize, k: usize, transposed: bool },
    X2(usize),
    P2(usize),
}

impl Monomial {
    /// Name used in plan CSV files.
    pub fn name(&self) -> &'static str {
        match self {
            Monomial::XX { .. } => "XX",
            Monomial::PP { .. } => "PP",
            Monomial::XP { transposed: false, .. } => "XP",
            Monomial::XP { transposed: true, .. } => "PX",
            Monomial::X2(_) => "X2",
            Monomial::P2(_) => "P2",
        }
    }

    /// `(j, k)`, with `k = j` for the single-mode squares.
    pub fn modes(&self) -> (usize, usize) {
        match *self {
            Monomial::XX { j, k } | Monomial::PP { j, k } | Monomial::XP { j, k, .. } => (j, k),
            Monomial::X2(i) | Monomial::P2(i) => (i, i),
        }
    }

    /// Terms that must obey [`SPLIT_BOUND`].
    pub fn needs_split(&self) -> bool {
        matches!(self, Monomial::PP { .. } | Monomial::XP { .. })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let (j, k) = self.modes();
        let ok = match self {
            Monomial::X2(_) | Monomial::P2(_) => j >= 1 && j <= n,
            _ => j >= 1 && j < k && k <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!("monomial {} ({j},{k}) invalid for n={n}", self.name())))
        }
    }
}

/// One exponential `exp(i angle O)` of a quadratic monomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorTerm {
    pub monomial: Monomial,
    pub angle: f64,
    /// Index of this copy within a split group (0 when unsplit).
    pub repetition: usize,
}

impl FactorTerm {
    pub fn new(monomial: Monomial, angle: f64) -> Self {
        Self { monomial, angle, repetition: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationPlan {
    pub terms: Vec<FactorTerm>,
    pub source: EulerSequence,
    pub r: usize,
}

impl FactorizationPlan {
    fn from_terms(terms: Vec<FactorTerm>, source: EulerSequence) -> Self {
        let r = terms.len();
        Self { terms, source, r }
    }
}

/// Coefficients of `exp((K1 + K2) t) = exp(alpha K2) exp(beta K1) exp(alpha K2)`
/// for `[K1, K2] = -2 K3`, `[K3, K1] = 2 K1`, `[K3, K2] = -2 K2`.
pub fn three_term_angles(t: f64) -> Result<(f64, f64)> {
    let half = t / SQRT_2;
    if !t.is_finite() || half.abs() >= FRAC_PI_2 - 1e-9 {
        return Err(domain(format!(
            "t = {t} is at or beyond the tangent pole |t| = pi/sqrt(2); split the phase first"
        )));
    }
    Ok((half.tan() / SQRT_2, (SQRT_2 * t).sin() / SQRT_2))
}

fn check_hypothesis(generator: HermitianGenerator, angle: f64) -> Result<()> {
    if !angle.is_finite() || angle.abs() > FRAC_PI_2 * (1.0 + 1e-12) {
        return Err(domain(format!(
            "angle {angle} of {generator} must lie in [-pi/2, pi/2] before expansion"
        )));
    }
    Ok(())
}

/// Monomial terms for one factor whose angle is already in `[-pi/2, pi/2]`.
///
/// `Diagonal(i)` gives six terms, three on mode `i` followed by three on
/// mode `i+1` (with opposite signs); `Symmetric` and `Antisymmetric` give three.
pub fn expand_terms(generator: HermitianGenerator, angle: f64) -> Result<Vec<FactorTerm>> {
    check_hypothesis(generator, angle)?;
    Ok(match generator {
        HermitianGenerator::Diagonal(i) => {
            // exp(i tau (x^2 + p^2) / 2) with tau = +-angle / 2 on each mode.
            let a = (angle / 4.0).tan() / 2.0;
            let b = (angle / 2.0).sin() / 2.0;
            vec![
                FactorTerm::new(Monomial::P2(i), a),
                FactorTerm::new(Monomial::X2(i), b),
                FactorTerm::new(Monomial::P2(i), a),
                FactorTerm::new(Monomial::P2(i + 1), -a),
                FactorTerm::new(Monomial::X2(i + 1), -b),
                FactorTerm::new(Monomial::P2(i + 1), -a),
            ]
        }
        HermitianGenerator::Symmetric { j, k } => {
            let a = (angle / 4.0).tan();
            let b = (angle / 2.0).sin();
            vec![
                FactorTerm::new(Monomial::PP { j, k }, a),
                FactorTerm::new(Monomial::XX { j, k }, b),
                FactorTerm::new(Monomial::PP { j, k }, a),
            ]
        }
        HermitianGenerator::Antisymmetric { j, k } => {
            let a = (angle / 4.0).tan();
            let b = (angle / 2.0).sin();
            let xp = Monomial::XP { j, k, transposed: false };
            let px = Monomial::XP { j, k, transposed: true };
            vec![
                FactorTerm::new(xp, -a),
                FactorTerm::new(px, b),
                FactorTerm::new(xp, -a),
            ]
        }
    })
}

/// Expand one factor with angle in `[-pi/2, pi/2]` (angles stored in
/// `[0, 4 pi)` are first mapped to `(-2 pi, 2 pi]`).
pub fn expand_factor(f: &EulerFactor) -> Result<Vec<FactorTerm>> {
    expand_terms(f.generator, symmetric_angle(f.angle))
}

/// Pieces needed to bring an angle in `(-2 pi, 2 pi]` into `[-pi/2, pi/2]`.
fn hypothesis_pieces(angle: f64) -> usize {
    ((angle.abs() / FRAC_PI_2).ceil() as usize).max(1)
}

/// Expand a whole sequence into monomial terms, first splitting each factor
/// into equal pieces that satisfy the expansion hypothesis.
pub fn expand_sequence(seq: &EulerSequence) -> Result<FactorizationPlan> {
    let mut terms = Vec::with_capacity(6 * seq.factors.len());
    for f in &seq.factors {
        f.generator.validate(seq.n)?;
        let angle = symmetric_angle(f.angle);
        let pieces = hypothesis_pieces(angle);
        let piece = angle / pieces as f64;
        for _ in 0..pieces {
            terms.extend(expand_terms(f.generator, piece)?);
        }
    }
    Ok(FactorizationPlan::from_terms(terms, seq.clone()))
}

/// Replace each PP / XP term of angle `theta` with `|theta| > 1/(2e)` by
/// `ceil(2e |theta|)` copies of `theta / t`. Other terms pass through.
pub fn split_phases(plan: &FactorizationPlan) -> FactorizationPlan {
    let mut terms = Vec::with_capacity(plan.terms.len());
    for term in &plan.terms {
        if !term.monomial.needs_split() || term.angle.abs() <= SPLIT_BOUND {
            terms.push(*term);
            continue;
        }
        let t = ((2.0 * E * term.angle.abs()).ceil() as usize).max(1);
        let piece = term.angle / t as f64;
        for rep in 0..t {
            terms.push(FactorTerm { monomial: term.monomial, angle: piece, repetition: rep });
        }
    }
    FactorizationPlan::from_terms(terms, plan.source.clone())
}

/// `expand_sequence` followed by `split_phases`.
pub fn build_plan(seq: &EulerSequence) -> Result<FactorizationPlan> {
    Ok(split_phases(&expand_sequence(seq)?))
}

/// Symmetric `K` with `O = r^T K r / 2` (plus a constant), `r = (x_1..x_n, p_1..p_n)`.
pub fn monomial_quadratic_form(m: Monomial, n: usize) -> Result<DMatrix<f64>> {
    m.validate(n)?;
    let mut k = DMatrix::zeros(2 * n, 2 * n);
    let x = |i: usize| i - 1;
    let p = |i: usize| n + i - 1;
    let mut put = |a: usize, b: usize, v: f64| {
        k[(a, b)] += v;
        k[(b, a)] += v;
    };
    match m {
        Monomial::XX { j, k: kk } => put(x(j), x(kk), 1.0),
        Monomial::PP { j, k: kk } => put(p(j), p(kk), 1.0),
        Monomial::XP { j, k: kk, transposed: false } => put(x(j), p(kk), 1.0),
        Monomial::XP { j, k: kk, transposed: true } => put(p(j), x(kk), 1.0),
        Monomial::X2(i) => put(x(i), x(i), 1.0),
        Monomial::P2(i) => put(p(i), p(i), 1.0),
    }
    Ok(k)
}

/// Quadratic form of a Cartan-Weyl generator, in the same convention.
pub fn generator_quadratic_form(g: HermitianGenerator, n: usize) -> Result<DMatrix<f64>> {
    g.validate(n)?;
    let mut k = DMatrix::zeros(2 * n, 2 * n);
    let x = |i: usize| i - 1;
    let p = |i: usize| n + i - 1;
    match g {
        HermitianGenerator::Diagonal(i) => {
            k[(x(i), x(i))] = 0.5;
            k[(p(i), p(i))] = 0.5;
            k[(x(i + 1), x(i + 1))] = -0.5;
            k[(p(i + 1), p(i + 1))] = -0.5;
        }
        HermitianGenerator::Symmetric { j, k: kk } => {
            for (a, b) in [(x(j), x(kk)), (p(j), p(kk))] {
                k[(a, b)] = 0.5;
                k[(b, a)] = 0.5;
            }
        }
        HermitianGenerator::Antisymmetric { j, k: kk } => {
            k[(p(j), x(kk))] = 0.5;
            k[(x(kk), p(j))] = 0.5;
            k[(x(j), p(kk))] = -0.5;
            k[(p(kk), x(j))] = -0.5;
        }
    }
    Ok(k)
}

/// Symplectic matrix `exp(angle * Omega K)` of `exp(i angle r^T K r / 2)`,
/// with `Omega = [[0, I], [-I, 0]]`. The map from unitaries to these matrices
/// is a homomorphism, so products of terms replay as matrix products.
pub fn symplectic_of(k: &DMatrix<f64>, angle: f64) -> DMatrix<f64> {
    let two_n = k.nrows();
    let n = two_n / 2;
    let mut omega = DMatrix::zeros(two_n, two_n);
    for i in 0..n {
        omega[(i, n + i)] = 1.0;
        omega[(n + i, i)] = -1.0;
    }
    ((omega * k) * angle).exp()
}

/// Symplectic image of the ordered product of plan terms.
pub fn replay_terms(terms: &[FactorTerm], n: usize) -> Result<DMatrix<f64>> {
    let mut acc = DMatrix::identity(2 * n, 2 * n);
    for t in terms {
        acc *= symplectic_of(&monomial_quadratic_form(t.monomial, n)?, t.angle);
    }
    Ok(acc)
}

/// Symplectic image of the ordered product of Euler factors.
pub fn replay_sequence(seq: &EulerSequence) -> Result<DMatrix<f64>> {
    let n = seq.n;
    let mut acc = DMatrix::identity(2 * n, 2 * n);
    for f in &seq.factors {
        acc *= symplectic_of(&generator_quadratic_form(f.generator, n)?, f.angle);
    }
    Ok(acc)
}

/// Largest entry of `replay(plan) - replay(source)`.
pub fn replay_residual(plan: &FactorizationPlan) -> Result<f64> {
    let a = replay_terms(&plan.terms, plan.source.n)?;
    let b = replay_sequence(&plan.source)?;
    Ok((a - b).abs().max())
}
