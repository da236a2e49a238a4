//! The extremal family with `n − 1` eigenvalues at `−1` and one at `n − 1`:
//! its ellipse is a segment whose left end approaches the hull edge at `−1`
//! only as `1/√2`, which is why the `n − 1` denominator cannot be improved.

use crate::CliError;
use serde::{Deserialize, Serialize};
use spectral_ellipse::ensembles::reference_spectrum;
use spectral_ellipse::{
    contains_ellipse, convex_hull, principal_sqrt, shifted_ellipse, ComplexMatrix, EnsembleKind,
    EnsembleSpec, Spectrum,
};
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write;

/// Slack for the exact diagonal spectra used here.
const TABLE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub n: usize,
    pub sqrt_q: f64,
    pub semimajor: f64,
    pub semiminor: f64,
    pub hull_left: f64,
    pub hull_right: f64,
    pub left_margin: f64,
    pub verdict: String,
}

/// Rows for `n = 2..=n_max`, each computed through the ellipse pipeline on
/// the diagonal matrix with the exact spectrum.
pub fn tightness_table(n_max: usize) -> Result<Vec<TightnessRow>, CliError> {
    if n_max < 2 {
        return Err(CliError::Usage(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    (2..=n_max).map(row).collect()
}

fn row(n: usize) -> Result<TightnessRow, CliError> {
    let values = reference_spectrum(&EnsembleSpec::new(EnsembleKind::RemarkExtremal, n, 0))
        .expect("the extremal family has a reference spectrum for n ≥ 2");
    let a = ComplexMatrix::from_diagonal(&values);
    let d = a.decompose();
    let spectrum = Spectrum {
        values,
        sum_residual: 0.0,
        q_residual: 0.0,
    };
    let e = shifted_ellipse(&d, &spectrum)?;
    let hull = convex_hull(&spectrum.values);
    let report = contains_ellipse(&hull, &e, TABLE_SLACK);
    let re = hull.vertices.iter().map(|z| z.re);
    Ok(TightnessRow {
        n,
        sqrt_q: principal_sqrt(d.q_total).re,
        semimajor: e.semimajor,
        semiminor: e.semiminor,
        hull_left: re.clone().fold(f64::INFINITY, f64::min),
        hull_right: re.fold(f64::NEG_INFINITY, f64::max),
        left_margin: report.min_margin,
        verdict: report.verdict.as_str().to_string(),
    })
}

/// The table's claims: `a ≤ 1`, strictly decreasing, and bounded below by
/// `1/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightnessChecks {
    pub all_contained: bool,
    pub at_most_one: bool,
    pub decreasing: bool,
    pub above_limit: bool,
}

impl TightnessChecks {
    pub fn of(rows: &[TightnessRow]) -> Self {
        TightnessChecks {
            all_contained: rows.iter().all(|r| r.verdict == "Contained"),
            at_most_one: rows.iter().all(|r| r.semimajor <= 1.0),
            decreasing: rows.windows(2).all(|w| w[1].semimajor < w[0].semimajor),
            above_limit: rows.iter().all(|r| r.semimajor >= FRAC_1_SQRT_2 - 1e-12),
        }
    }

    pub fn passed(&self) -> bool {
        self.all_contained && self.at_most_one && self.decreasing && self.above_limit
    }
}

pub fn format_table(rows: &[TightnessRow]) -> String {
    let mut s = format!(
        "{:>4} {:>20} {:>20} {:>10} {:>20} {:>10}\n",
        "n", "sqrt_q", "semimajor", "hull", "left_margin", "verdict"
    );
    for r in rows {
        writeln!(
            s,
            "{:>4} {:>20.15} {:>20.15} {:>10} {:>20.15} {:>10}",
            r.n,
            r.sqrt_q,
            r.semimajor,
            format!("[{}, {}]", r.hull_left, r.hull_right),
            r.left_margin,
            r.verdict
        )
        .unwrap();
    }
    s
}
