//! Matrix file readers: Matrix Market (`array`/`coordinate`, `real`/`complex`,
//! `general`) and dense JSON `{"n": N, "entries": [[re, im], ...]}`.

use crate::CliError;
use num_complex::Complex64;
use serde::Deserialize;
use spectral_ellipse::ComplexMatrix;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    MatrixMarket,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(InputFormat::Json),
            "mtx" | "mm" | "matrix-market" => Ok(InputFormat::MatrixMarket),
            _ => Err(format!("unknown format '{s}' (expected json or mtx)")),
        }
    }
}

impl InputFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(InputFormat::Json),
            "mtx" => Some(InputFormat::MatrixMarket),
            _ => None,
        }
    }
}

pub fn read_matrix(path: &Path, format: Option<InputFormat>) -> Result<ComplexMatrix, CliError> {
    let format = format
        .or_else(|| InputFormat::from_path(path))
        .ok_or_else(|| {
            CliError::Parse(format!(
                "cannot infer the format of {}; use --format json|mtx",
                path.display()
            ))
        })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text, format)
}

pub fn parse_matrix(text: &str, format: InputFormat) -> Result<ComplexMatrix, CliError> {
    match format {
        InputFormat::Json => parse_json(text),
        InputFormat::MatrixMarket => parse_matrix_market(text),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DenseJson {
    n: usize,
    entries: Vec<[f64; 2]>,
}

pub fn parse_json(text: &str) -> Result<ComplexMatrix, CliError> {
    let dense: DenseJson = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("invalid JSON matrix: {e}")))?;
    if dense.n == 0 {
        return Err(CliError::Parse("n must be at least 1".into()));
    }
    if dense.entries.len() != dense.n * dense.n {
        return Err(CliError::NonSquare(format!(
            "n = {} needs {} entries, found {}",
            dense.n,
            dense.n * dense.n,
            dense.entries.len()
        )));
    }
    let entries = dense
        .entries
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::new(dense.n, entries).map_err(|e| CliError::Parse(e.to_string()))
}

/// Writes the dense JSON input format.
pub fn to_json(m: &ComplexMatrix) -> String {
    let entries: Vec<[f64; 2]> = m.entries().iter().map(|z| [z.re, z.im]).collect();
    serde_json::json!({ "n": m.dim(), "entries": entries }).to_string()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    Array,
    Coordinate,
}

fn parse_number(tok: Option<&str>, what: &str, line: usize) -> Result<f64, CliError> {
    let tok = tok.ok_or_else(|| CliError::Parse(format!("line {line}: missing {what}")))?;
    tok.parse::<f64>()
        .map_err(|_| CliError::Parse(format!("line {line}: cannot parse {what} '{tok}'")))
}

fn parse_index(tok: Option<&str>, what: &str, line: usize) -> Result<usize, CliError> {
    let tok = tok.ok_or_else(|| CliError::Parse(format!("line {line}: missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| CliError::Parse(format!("line {line}: cannot parse {what} '{tok}'")))
}

pub fn parse_matrix_market(text: &str) -> Result<ComplexMatrix, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty Matrix Market file".into()))?;
    let words: Vec<String> = header
        .split_whitespace()
        .map(|w| w.to_ascii_lowercase())
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(CliError::Parse(
            "header must be '%%MatrixMarket matrix <layout> <field> <symmetry>'".into(),
        ));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(CliError::Parse(format!("unsupported layout '{other}'"))),
    };
    let complex = match words[3].as_str() {
        "real" => false,
        "complex" => true,
        other => return Err(CliError::Parse(format!("unsupported field '{other}'"))),
    };
    if words[4] != "general" {
        return Err(CliError::Parse(format!(
            "unsupported symmetry '{}'",
            words[4]
        )));
    }

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = data
        .next()
        .ok_or_else(|| CliError::Parse("missing size line".into()))?;
    let mut toks = size.split_whitespace();
    let rows = parse_index(toks.next(), "row count", size_line)?;
    let cols = parse_index(toks.next(), "column count", size_line)?;
    let nnz = match layout {
        Layout::Coordinate => Some(parse_index(toks.next(), "entry count", size_line)?),
        Layout::Array => None,
    };
    if toks.next().is_some() {
        return Err(CliError::Parse(format!(
            "line {size_line}: trailing tokens on size line"
        )));
    }
    if rows != cols {
        return Err(CliError::NonSquare(format!("matrix is {rows}×{cols}")));
    }
    let n = rows;
    if n == 0 {
        return Err(CliError::Parse(
            "matrix dimension must be at least 1".into(),
        ));
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let expected = nnz.unwrap_or(n * n);
    let mut count = 0;
    for (line, text) in data {
        if count == expected {
            return Err(CliError::Parse(format!(
                "line {line}: more entries than declared"
            )));
        }
        let mut toks = text.split_whitespace();
        let (i, j) = match layout {
            // Array entries are listed column by column.
            Layout::Array => (count % n, count / n),
            Layout::Coordinate => {
                let i = parse_index(toks.next(), "row index", line)?;
                let j = parse_index(toks.next(), "column index", line)?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(CliError::Parse(format!(
                        "line {line}: index ({i}, {j}) out of range"
                    )));
                }
                (i - 1, j - 1)
            }
        };
        let re = parse_number(toks.next(), "real part", line)?;
        let im = if complex {
            parse_number(toks.next(), "imaginary part", line)?
        } else {
            0.0
        };
        if toks.next().is_some() {
            return Err(CliError::Parse(format!("line {line}: trailing tokens")));
        }
        // Repeated coordinates accumulate.
        entries[i * n + j] += Complex64::new(re, im);
        count += 1;
    }
    if count != expected {
        return Err(CliError::Parse(format!(
            "expected {expected} entries, found {count}"
        )));
    }
    ComplexMatrix::new(n, entries).map_err(|e| CliError::Parse(e.to_string()))
}

/// Writes a matrix as Matrix Market `array complex general`.
pub fn to_matrix_market(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut out = format!("%%MatrixMarket matrix array complex general\n{n} {n}\n");
    for j in 0..n {
        for i in 0..n {
            let z = m[(i, j)];
            out.push_str(&format!("{:e} {:e}\n", z.re, z.im));
        }
    }
    out
}
