//! Library side of the `spectral-ellipse` command: matrix input, the analysis
//! pipeline, reports, plots and verification campaigns.

pub mod input;
pub mod pipeline;
pub mod report;
pub mod svg;
pub mod tightness;
pub mod verify;

use input::{read_matrix, InputFormat};
use pipeline::{analyze_matrix, AnalysisOptions};
use report::{to_json, AnalysisReport, BoundReport};
use spectral_ellipse::Error;
use std::path::Path;
use thiserror::Error as ThisError;
use verify::{run_verify, write_csv, VerifyConfig, VerifySummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NON_SQUARE: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_MOMENT_MISMATCH: i32 = 4;
/// A verification campaign or table check found a failing case.
pub const EXIT_CHECK_FAILED: i32 = 5;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not square: {0}")]
    NonSquare(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Usage, I/O and other input problems share the parse-error code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NonSquare(_) => EXIT_NON_SQUARE,
            CliError::Core(Error::NonConvergence { .. }) => EXIT_NON_CONVERGENCE,
            CliError::Core(Error::MomentMismatch { .. }) => EXIT_MOMENT_MISMATCH,
            _ => EXIT_PARSE,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOutputs<'a> {
    pub json: Option<&'a Path>,
    pub svg: Option<&'a Path>,
}

/// Runs the full pipeline on a matrix file. Returns the report and its JSON
/// text, after writing any requested files.
pub fn cmd_analyze(
    path: &Path,
    format: Option<InputFormat>,
    opts: &AnalysisOptions,
    out: &AnalyzeOutputs,
) -> Result<(AnalysisReport, String), CliError> {
    let a = read_matrix(path, format)?;
    let analysis = analyze_matrix(&a, opts)?;
    let report = AnalysisReport::from_analysis(&analysis);
    let json = to_json(&report);
    if let Some(p) = out.json {
        write_file(p, &json)?;
    }
    if let Some(p) = out.svg {
        let plot = svg::render(
            &analysis.spectrum.values,
            &analysis.hull,
            analysis.ellipse.as_ref().map(|e| &e.ellipse),
        );
        write_file(p, &plot)?;
    }
    Ok((report, json))
}

pub fn cmd_verify(cfg: &VerifyConfig, csv: Option<&Path>) -> Result<VerifySummary, CliError> {
    let (rows, summary) = run_verify(cfg)?;
    if let Some(p) = csv {
        let file =
            std::fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        write_csv(&rows, std::io::BufWriter::new(file))?;
    }
    Ok(summary)
}

/// Returns the table text and whether its checks held.
pub fn cmd_tightness(n_max: usize, csv: Option<&Path>) -> Result<(String, bool), CliError> {
    let rows = tightness::tightness_table(n_max)?;
    if let Some(p) = csv {
        let mut w = csv::Writer::from_path(p).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &rows {
            w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok((
        tightness::format_table(&rows),
        tightness::TightnessChecks::of(&rows).passed(),
    ))
}

/// The eigensolver-free bound; needs `n ≥ 2`.
pub fn cmd_bound(
    path: &Path,
    format: Option<InputFormat>,
    json_out: Option<&Path>,
) -> Result<(BoundReport, String), CliError> {
    let a = read_matrix(path, format)?;
    let report = BoundReport::from_matrix(&a)?;
    let json = to_json(&report);
    if let Some(p) = json_out {
        write_file(p, &json)?;
    }
    Ok((report, json))
}
