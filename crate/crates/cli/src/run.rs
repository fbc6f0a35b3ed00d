use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use serde::Serialize;
use sunff_core::algebra::{build_generator, AngleSet, GeneratorKind};
use sunff_core::combinatorics::{compositions_desc, rank_desc, unrank, IrrepShape};
use sunff_core::decompose::{euler_decompose, fundamental_matrix};
use sunff_core::expander::{build_channel, build_channel_via_pipeline, distinct_solutions, spectral_gap, ExpanderParams};
use sunff_core::fastforward::{build_plan, replay_residual};
use sunff_core::linalg::{check_dense_cap, CMatrix};
use sunff_core::oscillator::{eigen_residual, fourier_eigen_residual, matrix_element_residual, DiscreteOscillator};
use sunff_core::pipeline::{check_grid, error_sweep_with, kicked_top_demo_with, simulate_with, PipelineConfig};

use crate::args::*;
use crate::io::*;

#[derive(Serialize)]
struct Provenance<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a Command,
    #[serde(flatten)]
    body: T,
}

fn provenance<'a, T: Serialize>(config: &'a Command, body: T) -> Provenance<'a, T> {
    Provenance { tool: "sunff", version: env!("CARGO_PKG_VERSION"), config, body }
}

#[derive(Serialize)]
struct DryRun {
    dry_run: bool,
    plan: String,
}

/// Everything below is validated before this point, so a dry run stops here.
fn dry_run(cmd: &Command, plan: String) -> CliResult<()> {
    write_json(None, &provenance(cmd, DryRun { dry_run: true, plan }))
}

pub fn run(cmd: &Command, dry: bool) -> CliResult<()> {
    match cmd {
        Command::Rank(a) => rank(cmd, a, dry),
        Command::Unrank(a) => unrank_cmd(cmd, a, dry),
        Command::Irrep(a) => irrep(cmd, a, dry),
        Command::Decompose(a) => decompose(cmd, a, dry),
        Command::Plan(a) => plan(cmd, a, dry),
        Command::QhoResiduals(a) => qho(cmd, a, dry),
        Command::Simulate(a) => simulate(cmd, a, dry),
        Command::Sweep(a) => sweep(cmd, a, dry),
        Command::Expander(a) => expander(cmd, a, dry),
        Command::KickedTop(a) => kicked_top(cmd, a, dry),
    }
}

fn shape_of(s: &ShapeArgs) -> CliResult<IrrepShape> {
    Ok(IrrepShape::new(s.n, s.bosons)?)
}

fn angles_of(src: &AngleSource, n: usize) -> CliResult<AngleSet> {
    match &src.angles_file {
        Some(path) => read_angles(path, n),
        None => Ok(AngleSet::random(n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(src.seed))),
    }
}

fn pipeline_config(caps: &CapArgs) -> CliResult<PipelineConfig> {
    if caps.leakage_threshold.is_nan() || caps.leakage_threshold <= 0.0 {
        return Err(CliError::Input(format!("leakage threshold must be positive, got {}", caps.leakage_threshold)));
    }
    Ok(PipelineConfig {
        memory_cap: caps.memory_cap,
        dense_cap: caps.dense_cap,
        leakage_threshold: caps.leakage_threshold,
        ..PipelineConfig::default()
    })
}

fn rank(cmd: &Command, a: &RankArgs, dry: bool) -> CliResult<()> {
    let shape = shape_of(&a.shape)?;
    let r = rank_desc(&a.parts, shape)?;
    if dry {
        return dry_run(cmd, format!("rank of {:?} in {shape}", a.parts));
    }
    let mut out = sink(None)?;
    writeln!(out, "{r}")?;
    out.flush()?;
    Ok(())
}

fn unrank_cmd(cmd: &Command, a: &UnrankArgs, dry: bool) -> CliResult<()> {
    let shape = shape_of(&a.shape)?;
    let c = unrank(shape, a.ell)?;
    if dry {
        return dry_run(cmd, format!("composition of rank {} in {shape}", a.ell));
    }
    let parts: Vec<String> = c.parts.iter().map(|m| m.to_string()).collect();
    let mut out = sink(None)?;
    writeln!(out, "{}", parts.join(","))?;
    out.flush()?;
    Ok(())
}

/// `E1,2`, `H1`, `S1,2` or `A1,2`.
fn parse_generator_label(label: &str) -> CliResult<GeneratorKind> {
    let bad = || CliError::Input(format!("generator {label:?}: expected E<j>,<k>, H<i>, S<j>,<k> or A<j>,<k>"));
    let mut chars = label.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let idx: Vec<usize> = chars
        .as_str()
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    Ok(match (letter, idx.as_slice()) {
        ('E', &[j, k]) => GeneratorKind::Ladder { j, k },
        ('H', &[i]) => GeneratorKind::Diagonal(i),
        ('S', &[j, k]) => GeneratorKind::Symmetric { j, k },
        ('A', &[j, k]) => GeneratorKind::Antisymmetric { j, k },
        _ => return Err(bad()),
    })
}

#[derive(Serialize)]
struct EntryRow {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

fn irrep(cmd: &Command, a: &IrrepArgs, dry: bool) -> CliResult<()> {
    let shape = shape_of(&a.shape)?;
    let kind = a.generator.as_deref().map(parse_generator_label).transpose()?;
    if dry {
        return dry_run(cmd, format!("{shape}: {}", if kind.is_some() { "generator entries" } else { "basis" }));
    }
    let mut w = csv_writer(a.out.as_deref())?;
    match kind {
        Some(kind) => {
            let g = build_generator(shape, kind)?;
            for &(row, col, z) in g.matrix.entries() {
                w.serialize(EntryRow { row, col, re: z.re, im: z.im })?;
            }
        }
        None => {
            let mut header = vec!["rank".to_string()];
            header.extend((1..=shape.n()).map(|i| format!("m{i}")));
            w.write_record(&header)?;
            for (ell, parts) in compositions_desc(shape)?.iter().enumerate() {
                let mut rec = vec![ell.to_string()];
                rec.extend(parts.iter().map(|m| m.to_string()));
                w.write_record(&rec)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn decompose(cmd: &Command, a: &DecomposeArgs, dry: bool) -> CliResult<()> {
    if a.n < 2 {
        return Err(CliError::Input(format!("n must be >= 2, got {}", a.n)));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", a.tol)));
    }
    let angles = angles_of(&a.angles, a.n)?;
    if dry {
        return dry_run(cmd, format!("decompose a {0}x{0} unitary into {1} factors", a.n, a.n * a.n - 1));
    }
    let seq = euler_decompose(&fundamental_matrix(a.n, &angles)?, a.tol)?;
    log::info!("reconstruction error {:e}", seq.reconstruction_error);
    let mut w = csv_writer(a.out.as_deref())?;
    for row in factor_rows(&seq) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct PlanRow {
    monomial: &'static str,
    j: usize,
    k: usize,
    angle: f64,
    repetition: usize,
}

fn plan(cmd: &Command, a: &PlanArgs, dry: bool) -> CliResult<()> {
    if a.n < 2 {
        return Err(CliError::Input(format!("n must be >= 2, got {}", a.n)));
    }
    let seq = read_sequence(&a.input, a.n)?;
    if dry {
        return dry_run(cmd, format!("expand and split {} factors", seq.len()));
    }
    let plan = build_plan(&seq)?;
    log::info!("{} terms, replay residual {:e}", plan.r, replay_residual(&plan)?);
    let mut w = csv_writer(a.out.as_deref())?;
    for t in &plan.terms {
        let (j, k) = t.monomial.modes();
        w.serialize(PlanRow { monomial: t.monomial.name(), j, k, angle: t.angle, repetition: t.repetition })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct QhoRow {
    #[serde(rename = "L")]
    l: usize,
    m: usize,
    m_prime: Option<usize>,
    a: Option<u32>,
    b: Option<u32>,
    residual: f64,
}

fn qho(cmd: &Command, a: &QhoArgs, dry: bool) -> CliResult<()> {
    let oscs = a.l_list.iter().map(|&l| DiscreteOscillator::new(l)).collect::<Result<Vec<_>, _>>()?;
    let primes = if a.m_prime_list.is_empty() { &a.m_list } else { &a.m_prime_list };
    let max_m = a.m_list.iter().chain(primes).copied().max().unwrap_or(0);
    if let Some(l) = a.l_list.iter().find(|&&l| max_m >= l) {
        return Err(CliError::Input(format!("m = {max_m} needs L > m, got L = {l}")));
    }
    if a.quantity == Quantity::Matelem && (a.a > 4 || a.b > 4) {
        return Err(CliError::Input(format!("powers a = {}, b = {} must be <= 4", a.a, a.b)));
    }
    if dry {
        return dry_run(cmd, format!("{:?} residuals for {} grids", a.quantity, oscs.len()));
    }
    let mut w = csv_writer(a.out.as_deref())?;
    for (&l, osc) in a.l_list.iter().zip(&oscs) {
        for &m in &a.m_list {
            match a.quantity {
                Quantity::Eigen | Quantity::Fourier => {
                    let residual = if a.quantity == Quantity::Eigen {
                        eigen_residual(osc, m)?
                    } else {
                        fourier_eigen_residual(osc, m)?
                    };
                    w.serialize(QhoRow { l, m, m_prime: None, a: None, b: None, residual })?;
                }
                Quantity::Matelem => {
                    for &mp in primes {
                        let residual = matrix_element_residual(osc, m, mp, a.a, a.b)?;
                        w.serialize(QhoRow { l, m, m_prime: Some(mp), a: Some(a.a), b: Some(a.b), residual })?;
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct UnitaryRow {
    ell: usize,
    ell_prime: usize,
    re: f64,
    im: f64,
}

fn write_unitary(path: Option<&std::path::Path>, u: &CMatrix) -> CliResult<()> {
    let mut w = csv_writer(path)?;
    for ell in 0..u.ncols() {
        for ell_prime in 0..u.nrows() {
            let z = u[(ell_prime, ell)];
            w.serialize(UnitaryRow { ell, ell_prime, re: z.re, im: z.im })?;
        }
    }
    w.flush()?;
    Ok(())
}

fn simulate(cmd: &Command, a: &SimulateArgs, dry: bool) -> CliResult<()> {
    let shape = shape_of(&a.shape)?;
    let config = pipeline_config(&a.caps)?;
    let grid = check_grid(shape, a.l, config.memory_cap)?;
    check_dense_cap("simulate", shape.dim(), config.dense_cap)?;
    let angles = angles_of(&a.angles, shape.n())?;
    if dry {
        return dry_run(cmd, format!("{} embedded columns on a grid of {grid} points", shape.dim()));
    }
    let res = simulate_with(shape, &angles, a.l, &config)?;
    if a.out.is_some() {
        write_unitary(a.out.as_deref(), &res.sim_unitary)?;
    }
    write_json(a.summary.as_deref(), &provenance(cmd, &res))
}

fn sweep(cmd: &Command, a: &SweepArgs, dry: bool) -> CliResult<()> {
    let shape = shape_of(&a.shape)?;
    let config = pipeline_config(&a.caps)?;
    check_dense_cap("sweep", shape.dim(), config.dense_cap)?;
    let admissible: Vec<usize> =
        a.l_list.iter().copied().filter(|&l| check_grid(shape, l, config.memory_cap).is_ok()).collect();
    let angles = angles_of(&a.angles, shape.n())?;
    if dry {
        if admissible.len() < 3 {
            return Err(CliError::Input(format!("only {} admissible grid sizes in {:?}", admissible.len(), a.l_list)));
        }
        return dry_run(cmd, format!("simulate {shape} at L in {admissible:?}"));
    }
    let fit = error_sweep_with(shape, &angles, &a.l_list, &config)?;
    write_json(a.out.as_deref(), &provenance(cmd, &fit))
}

/// `10,20,...,60` expands to the arithmetic range; plain lists pass through.
pub fn expand_list(items: &[String]) -> CliResult<Vec<usize>> {
    let bad = |s: &str| CliError::Input(format!("malformed list entry {s:?}"));
    let mut out: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let item = items[i].trim();
        if item == "..." {
            let (a, b) = match out.as_slice() {
                [.., a, b] if b > a => (*a, *b),
                _ => return Err(CliError::Input("`...` needs two increasing entries before it".into())),
            };
            let end: usize = items.get(i + 1).ok_or_else(|| bad("..."))?.trim().parse().map_err(|_| bad(&items[i + 1]))?;
            let mut v = b + (b - a);
            while v <= end {
                out.push(v);
                v += b - a;
            }
            if out.last() != Some(&end) {
                return Err(CliError::Input(format!("range {a},{b},...,{end} does not land on {end}")));
            }
            i += 2;
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
            i += 1;
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct GapRow {
    #[serde(rename = "N")]
    dim: usize,
    lambda: f64,
    bound: f64,
    margin: f64,
}

#[derive(Serialize)]
struct KrausRow {
    #[serde(rename = "N")]
    dim: usize,
    d: usize,
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

fn expander(cmd: &Command, a: &ExpanderArgs, dry: bool) -> CliResult<()> {
    distinct_solutions(a.p)?;
    let dims = expand_list(&a.n_list)?;
    let params_list = dims.iter().map(|&n| ExpanderParams::new(a.p, n)).collect::<Result<Vec<_>, _>>()?;
    let config = PipelineConfig::default();
    if let Some(l) = a.pipeline_l {
        for s in &params_list {
            check_grid(s.shape, l, config.memory_cap)?;
        }
    }
    if dry {
        return dry_run(cmd, format!("degree-{} channels for N in {dims:?}", a.p + 1));
    }
    let mut gaps = csv_writer(a.out.as_deref())?;
    let mut kraus_out = a.emit_unitaries.as_deref().map(|p| csv_writer(Some(p))).transpose()?;
    for params in &params_list {
        let kraus = match a.pipeline_l {
            Some(l) => {
                let (k, err) = build_channel_via_pipeline(params, l, &config)?;
                log::info!("N = {}: worst pipeline spectral error {err:e}", params.shape.dim());
                k
            }
            None => build_channel(params)?,
        };
        let s = spectral_gap(&kraus)?;
        gaps.serialize(GapRow { dim: s.dim, lambda: s.lambda, bound: s.bound, margin: s.bound - s.lambda })?;
        if let Some(w) = kraus_out.as_mut() {
            for (d, u) in kraus.iter().enumerate() {
                for col in 0..u.ncols() {
                    for row in 0..u.nrows() {
                        let z: Complex64 = u[(row, col)];
                        w.serialize(KrausRow { dim: s.dim, d, row, col, re: z.re, im: z.im })?;
                    }
                }
            }
        }
    }
    gaps.flush()?;
    if let Some(mut w) = kraus_out {
        w.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct StateRow {
    step: usize,
    ell: usize,
    re: f64,
    im: f64,
}

fn kicked_top(cmd: &Command, a: &KickedTopArgs, dry: bool) -> CliResult<()> {
    let shape = IrrepShape::new(2, a.bosons)?;
    let config = PipelineConfig::default();
    check_grid(shape, a.l, config.memory_cap)?;
    if !a.gamma.is_finite() || !a.beta.is_finite() {
        return Err(CliError::Input("gamma and beta must be finite".into()));
    }
    if dry {
        return dry_run(cmd, format!("{} Floquet steps on {shape}", a.steps));
    }
    let run = kicked_top_demo_with(shape, a.gamma, a.beta, a.steps, a.l, &config)?;
    if let Some(worst) = run.leakage.iter().copied().reduce(f64::max) {
        log::info!("worst per-step leakage {worst:e}");
    }
    let mut w = csv_writer(a.out.as_deref())?;
    for (step, psi) in run.states.iter().enumerate() {
        for (ell, z) in psi.iter().enumerate() {
            w.serialize(StateRow { step, ell, re: z.re, im: z.im })?;
        }
    }
    w.flush()?;
    Ok(())
}
