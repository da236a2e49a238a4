//! Eigenvalues as roots of the characteristic polynomial, validated against
//! the first two power sums `tr A` and `Q(A)`.

use crate::matrix::ComplexMatrix;
use crate::numerics::{DEFAULT_MAX_ITER, DEFAULT_ROOT_TOL};
use crate::{Error, Result};
use num_complex::Complex64;

pub const DEFAULT_MOMENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    /// `|Σλᵢ − tr A|`
    pub sum_residual: f64,
    /// `|Σλᵢ² − Q(A)|`
    pub q_residual: f64,
}

impl Spectrum {
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `tol·(1 + ‖A‖_F)²`
pub fn moment_tol(a: &ComplexMatrix, tol: f64) -> f64 {
    let f = 1.0 + a.frobenius_norm();
    tol * f * f
}

/// Power sum `Σλᵢᵏ` for `k ∈ {1, 2}`.
pub fn moment(values: &[Complex64], k: u32) -> Result<Complex64> {
    match k {
        1 => Ok(values.iter().sum()),
        2 => Ok(values.iter().map(|z| z * z).sum()),
        _ => Err(Error::UnsupportedMoment(k)),
    }
}

/// Eigenvalues of `a`, counted with multiplicity.
///
/// The matrix is first scaled by a power of two so that `‖A‖_F ≤ 1`; the
/// roots of the scaled characteristic polynomial then sit in the unit disk
/// where the root finder's residual test is well calibrated.
pub fn eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    let n = a.dim();
    let norm = a.frobenius_norm();
    let values = if norm == 0.0 {
        vec![Complex64::new(0.0, 0.0); n]
    } else {
        let scale = norm.log2().ceil().exp2();
        let scaled = a.scale(Complex64::new(1.0 / scale, 0.0));
        scaled
            .char_poly()
            .find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER)?
            .into_iter()
            .map(|z| z * scale)
            .collect()
    };

    let sum_residual = (moment(&values, 1)? - a.trace()).norm();
    let q_residual = (moment(&values, 2)? - a.q_form()).norm();
    let tolerance = moment_tol(a, tol);
    if sum_residual > tolerance || q_residual > tolerance {
        return Err(Error::MomentMismatch {
            sum_residual,
            q_residual,
            tolerance,
        });
    }
    Ok(Spectrum {
        values,
        sum_residual,
        q_residual,
    })
}
