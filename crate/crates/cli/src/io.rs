use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sunff_core::algebra::{AngleSet, HermitianGenerator};
use sunff_core::decompose::{EulerFactor, EulerSequence};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sunff_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Input(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("stdout: {0}")]
    Stdout(#[from] io::Error),
}

impl CliError {
    /// 2 for numerical non-convergence, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(sunff_core::Error::Convergence { .. }) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Buffered writer to a file, or to stdout when no path is given.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(path: Option<&Path>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(sink(path)?))
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn parse_generator(kind: &str, j: usize, k: usize, n: usize) -> CliResult<HermitianGenerator> {
    let g = match kind {
        "H" => {
            if k != j + 1 {
                return Err(CliError::Input(format!("H {j} {k}: H_i acts on modes (i, i+1)")));
            }
            HermitianGenerator::Diagonal(j)
        }
        "S" => HermitianGenerator::Symmetric { j, k },
        "A" => HermitianGenerator::Antisymmetric { j, k },
        other => return Err(CliError::Input(format!("unknown generator kind {other:?}; expected H, S or A"))),
    };
    g.validate(n)?;
    Ok(g)
}

/// Angles file: one `kind j k value` line per angle; `#` starts a comment.
/// Unlisted angles are zero.
pub fn parse_angles(text: &str, n: usize) -> CliResult<AngleSet> {
    let mut angles = AngleSet::zeros(n);
    let mut seen = std::collections::HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::Input(format!("angles line {}: {what}: {raw:?}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(bad("expected `kind j k value`"));
        }
        let j: usize = fields[1].parse().map_err(|_| bad("malformed j"))?;
        let k: usize = fields[2].parse().map_err(|_| bad("malformed k"))?;
        let value: f64 = fields[3].parse().map_err(|_| bad("malformed value"))?;
        let g = parse_generator(fields[0], j, k, n)?;
        if !seen.insert(g) {
            return Err(bad("duplicate generator"));
        }
        angles.set(g, value)?;
    }
    Ok(angles)
}

pub fn read_angles(path: &Path, n: usize) -> CliResult<AngleSet> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_angles(&text, n)
}

/// One decomposition CSV row.
#[derive(Debug, Serialize, Deserialize)]
pub struct FactorRow {
    pub index: usize,
    pub kind: String,
    pub j: usize,
    pub k: usize,
    pub angle: f64,
}

pub fn factor_rows(seq: &EulerSequence) -> Vec<FactorRow> {
    seq.factors
        .iter()
        .enumerate()
        .map(|(index, f)| {
            let (j, k) = f.generator.modes();
            FactorRow { index, kind: f.generator.letter().to_string(), j, k, angle: f.angle }
        })
        .collect()
}

pub fn read_sequence(path: &Path, n: usize) -> CliResult<EulerSequence> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut rows: Vec<FactorRow> = csv::Reader::from_reader(file).deserialize().collect::<Result<_, _>>()?;
    rows.sort_by_key(|r| r.index);
    if rows.iter().enumerate().any(|(i, r)| r.index != i) {
        return Err(CliError::Input(format!("{}: factor indices must be 0..len", path.display())));
    }
    let factors = rows
        .iter()
        .map(|r| Ok(EulerFactor::new(parse_generator(&r.kind, r.j, r.k, n)?, r.angle)?))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(EulerSequence { n, factors, reconstruction_error: 0.0 })
}
