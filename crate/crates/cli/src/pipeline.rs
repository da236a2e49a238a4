//! The per-matrix pipeline shared by `analyze` and `verify`.

use crate::CliError;
use num_complex::Complex64;
use spectral_ellipse::numerics::sort_lex;
use spectral_ellipse::{
    axis_sums, contains_ellipse, convex_hull, eigenvalues, moment, normalize_mu, shifted_ellipse,
    sweep_margins, trace_only_bound, ComplexMatrix, ContainmentReport, Decomposition, HullPolygon,
    SpectralEllipse, Spectrum, Verdict,
};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SLACK: f64 = 1e-8;
pub const DEFAULT_SWEEP_K: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Moment validation tolerance, scaled by `(1 + ‖A‖_F)²`.
    pub tol: f64,
    /// Containment slack, scaled by `1 + max|λ|` (and `1 + max|μ|` for the sweep).
    pub slack: f64,
    pub sweep_k: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            slack: DEFAULT_SLACK,
            sweep_k: DEFAULT_SWEEP_K,
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        if !(self.slack.is_finite() && self.slack >= 0.0) {
            return Err(CliError::Usage(format!(
                "--slack must be nonnegative, got {}",
                self.slack
            )));
        }
        if self.sweep_k < 4 {
            return Err(CliError::Usage(format!(
                "--sweep-k must be at least 4, got {}",
                self.sweep_k
            )));
        }
        Ok(())
    }
}

/// Ellipse-dependent results; absent for 1×1 input.
#[derive(Debug, Clone)]
pub struct EllipseAnalysis {
    pub ellipse: SpectralEllipse,
    pub containment: ContainmentReport,
    /// `|Q(A₀)|` as seen by the spectrum.
    pub q_abs: f64,
    pub sweep_min: f64,
    pub sweep_slack: f64,
    pub trace_only_lower: f64,
}

impl EllipseAnalysis {
    /// Contained only if both the support-function test and the directional
    /// sweep agree.
    pub fn verdict(&self) -> Verdict {
        match self.containment.verdict {
            Verdict::Contained if !self.sweep_min.is_finite() => Verdict::Degenerate,
            Verdict::Contained if self.sweep_min < -self.sweep_slack => Verdict::Violated,
            v => v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub decomposition: Decomposition,
    /// Eigenvalues sorted lexicographically.
    pub spectrum: Spectrum,
    pub hull: HullPolygon,
    pub slack: f64,
    pub ellipse: Option<EllipseAnalysis>,
}

impl Analysis {
    pub fn observed_spectral_radius(&self) -> f64 {
        self.spectrum.spectral_radius()
    }
}

pub fn analyze_matrix(a: &ComplexMatrix, opts: &AnalysisOptions) -> Result<Analysis, CliError> {
    opts.validate()?;
    let decomposition = a.decompose();
    let mut spectrum = eigenvalues(a, opts.tol)?;
    sort_lex(&mut spectrum.values);
    let hull = convex_hull(&spectrum.values);
    let slack = opts.slack * (1.0 + spectrum.spectral_radius());
    let n = a.dim();
    let ellipse = if n < 2 {
        None
    } else {
        let ellipse = shifted_ellipse(&decomposition, &spectrum)?;
        let containment = contains_ellipse(&hull, &ellipse, slack);
        let centered: Vec<Complex64> = spectrum
            .values
            .iter()
            .map(|z| z - decomposition.gamma)
            .collect();
        let q0 = moment(&centered, 2)?;
        let ns = normalize_mu(&centered, q0)?;
        let ax = axis_sums(&ns);
        let sweep_min = sweep_margins(&ns, &ax, n, opts.sweep_k)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let mu_max = ns.mu.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let trace_only_lower = trace_only_bound(a.trace(), decomposition.q_total, n)?;
        Some(EllipseAnalysis {
            ellipse,
            containment,
            q_abs: ns.q_abs,
            sweep_min,
            sweep_slack: opts.slack * (1.0 + mu_max),
            trace_only_lower,
        })
    };
    Ok(Analysis {
        decomposition,
        spectrum,
        hull,
        slack,
        ellipse,
    })
}
