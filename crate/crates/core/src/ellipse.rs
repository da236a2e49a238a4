//! The inscribed spectral ellipse.
//!
//! For a traceless spectrum `λ₁,…,λₙ` with `Q = Σλᵢ²`, rotate by a unit `u`
//! with `u² = |Q|/Q` so that `μᵢ = u·λᵢ` has real second power sum `|Q|`.
//! With `R = √Σ(Re μᵢ)²` and `I = √Σ(Im μᵢ)²`, the ellipse with semiaxes
//! `R/(√2(n−1))` and `I/(√2(n−1))` along the real and imaginary axes of the
//! μ-plane, rotated back by `ū`, lies inside the convex hull of the `λᵢ`.
//! Its foci are `±√Q/(√2(n−1))`.

use crate::matrix::Decomposition;
use crate::numerics::{is_finite, principal_sqrt};
use crate::spectrum::{moment, Spectrum};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::SQRT_2;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `|Q| ≤ Q_ZERO_REL·(1 + Σ|λᵢ|²)` selects the `Q = 0` branch.
pub const Q_ZERO_REL: f64 = 1e-12;

const MOMENT_CONSISTENCY_REL: f64 = 1e-9;

/// Which square root of `|Q|/Q` to rotate by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Principal,
    Negated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSpectrum {
    pub mu: Vec<Complex64>,
    /// Unit factor `u` with `μᵢ = u·λᵢ`; exactly one on the `Q = 0` branch.
    pub phase_factor: Complex64,
    pub q_abs: f64,
    /// True when `Q` was classified as zero and no rotation was applied.
    pub q_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSums {
    pub r: f64,
    pub i: f64,
}

/// A nonzero direction `(α, β)` in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    alpha: f64,
    beta: f64,
}

impl Direction {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite("direction"));
        }
        if alpha == 0.0 && beta == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { alpha, beta })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            alpha: theta.cos(),
            beta: theta.sin(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn angle(&self) -> f64 {
        self.beta.atan2(self.alpha)
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }

    /// `α·Re z + β·Im z`
    pub fn dot(&self, z: Complex64) -> f64 {
        self.alpha * z.re + self.beta * z.im
    }

    pub fn normalized(&self) -> Self {
        let r = self.alpha.hypot(self.beta);
        Self {
            alpha: self.alpha / r,
            beta: self.beta / r,
        }
    }
}

/// A closed ellipse; segments (`b = 0`) and points (`a = b = 0`) included.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEllipse {
    pub center: Complex64,
    pub semimajor: f64,
    pub semiminor: f64,
    /// Unit vector along the major axis.
    pub major_dir: Complex64,
    pub foci: [Complex64; 2],
    /// The `n` of the `1/(√2(n−1))` factor.
    pub order_n: usize,
}

impl SpectralEllipse {
    /// Support function `max over ζ in the ellipse of α·Re ζ + β·Im ζ`.
    pub fn support(&self, d: Direction) -> f64 {
        let rel = d.as_complex() * self.major_dir.conj();
        let (p, q) = (rel.re, rel.im);
        let a = self.semimajor;
        let b = self.semiminor;
        d.dot(self.center) + (a * a * p * p + b * b * q * q).sqrt()
    }

    /// Center-to-focus distance `√(a² − b²)`.
    pub fn focal_distance(&self) -> f64 {
        (self.semimajor * self.semimajor - self.semiminor * self.semiminor)
            .max(0.0)
            .sqrt()
    }

    pub fn major_dir_angle(&self) -> f64 {
        self.major_dir.arg()
    }

    /// Boundary point at parameter `t`.
    pub fn point_at(&self, t: f64) -> Complex64 {
        let local = Complex64::new(self.semimajor * t.cos(), self.semiminor * t.sin());
        self.center + local * self.major_dir
    }

    pub fn translate(mut self, by: Complex64) -> Self {
        self.center += by;
        self.foci[0] += by;
        self.foci[1] += by;
        self
    }

    /// Flips `major_dir` into the half-plane `Re > 0` (ties toward `Im ≥ 0`).
    pub fn canonical(mut self) -> Self {
        let d = self.major_dir;
        if d.re < 0.0 || (d.re == 0.0 && d.im < 0.0) {
            self.major_dir = -d;
        }
        self
    }
}

fn axis_factor(n: usize) -> f64 {
    1.0 / (SQRT_2 * (n - 1) as f64)
}

fn check_moments(lambdas: &[Complex64], q0: Complex64) -> Result<()> {
    if !is_finite(q0) || lambdas.iter().any(|z| !is_finite(*z)) {
        return Err(Error::NonFinite("spectrum"));
    }
    let abs_sum: f64 = lambdas.iter().map(|z| z.norm()).sum();
    let power: f64 = lambdas.iter().map(|z| z.norm_sqr()).sum();
    let sum = moment(lambdas, 1)?;
    if sum.norm() > MOMENT_CONSISTENCY_REL * (1.0 + abs_sum) {
        return Err(Error::InconsistentMoments(format!(
            "eigenvalues sum to {sum}, expected 0"
        )));
    }
    let q = moment(lambdas, 2)?;
    if (q - q0).norm() > MOMENT_CONSISTENCY_REL * (1.0 + power) {
        return Err(Error::InconsistentMoments(format!(
            "sum of squares {q} differs from Q = {q0}"
        )));
    }
    Ok(())
}

pub fn normalize_mu(lambdas: &[Complex64], q0: Complex64) -> Result<NormalizedSpectrum> {
    normalize_mu_on_branch(lambdas, q0, Branch::Principal)
}

pub fn normalize_mu_on_branch(
    lambdas: &[Complex64],
    q0: Complex64,
    branch: Branch,
) -> Result<NormalizedSpectrum> {
    check_moments(lambdas, q0)?;
    let power: f64 = lambdas.iter().map(|z| z.norm_sqr()).sum();
    let q_abs = q0.norm();
    if q_abs <= Q_ZERO_REL * (1.0 + power) {
        return Ok(NormalizedSpectrum {
            mu: lambdas.to_vec(),
            phase_factor: ONE,
            q_abs,
            q_zero: true,
        });
    }
    let mut u = principal_sqrt(q0.conj() / q_abs);
    u /= u.norm();
    if branch == Branch::Negated {
        u = -u;
    }
    Ok(NormalizedSpectrum {
        mu: lambdas.iter().map(|z| z * u).collect(),
        phase_factor: u,
        q_abs,
        q_zero: false,
    })
}

pub fn axis_sums(ns: &NormalizedSpectrum) -> AxisSums {
    let r = ns.mu.iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
    let i = ns.mu.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    AxisSums { r, i }
}

/// The ellipse for a traceless spectrum, centered at zero, with canonical
/// `major_dir`.
pub fn inscribed_ellipse(
    lambdas: &[Complex64],
    q0: Complex64,
    n: usize,
) -> Result<SpectralEllipse> {
    Ok(inscribed_ellipse_on_branch(lambdas, q0, n, Branch::Principal)?.canonical())
}

/// As [`inscribed_ellipse`] but without canonicalizing `major_dir`, so the
/// two square-root branches can be compared.
pub fn inscribed_ellipse_on_branch(
    lambdas: &[Complex64],
    q0: Complex64,
    n: usize,
    branch: Branch,
) -> Result<SpectralEllipse> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if lambdas.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: lambdas.len(),
        });
    }
    let ns = normalize_mu_on_branch(lambdas, q0, branch)?;
    let ax = axis_sums(&ns);
    let f = axis_factor(n);

    if ns.q_zero {
        let radius = ((ax.r * ax.r + ax.i * ax.i) * 0.5).sqrt() * f;
        return Ok(SpectralEllipse {
            center: ZERO,
            semimajor: radius,
            semiminor: radius,
            major_dir: ONE,
            foci: [ZERO, ZERO],
            order_n: n,
        });
    }

    let back = ns.phase_factor.conj();
    let (semimajor, semiminor, major_dir) = if ax.r >= ax.i {
        (ax.r * f, ax.i * f, back)
    } else {
        (ax.i * f, ax.r * f, back * Complex64::new(0.0, 1.0))
    };
    let focus = principal_sqrt(q0) * f;
    Ok(SpectralEllipse {
        center: ZERO,
        semimajor,
        semiminor,
        major_dir,
        foci: [focus, -focus],
        order_n: n,
    })
}

/// The ellipse of a general matrix: built from `λᵢ − γ` and centered at `γ`.
pub fn shifted_ellipse(d: &Decomposition, spec: &Spectrum) -> Result<SpectralEllipse> {
    if d.n < 2 {
        return Err(Error::DimensionTooSmall(d.n));
    }
    let centered: Vec<Complex64> = spec.values.iter().map(|z| z - d.gamma).collect();
    let q0 = moment(&centered, 2)?;
    Ok(inscribed_ellipse(&centered, q0, d.n)?.translate(d.gamma))
}

/// The ellipse of a sub-multiset of eigenvalues, such as the spectrum of the
/// restriction to an invariant subspace.
pub fn subset_ellipse(sub: &[Complex64]) -> Result<SpectralEllipse> {
    let m = sub.len();
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    let mean = moment(sub, 1)? / m as f64;
    let centered: Vec<Complex64> = sub.iter().map(|z| z - mean).collect();
    let q0 = moment(&centered, 2)?;
    Ok(inscribed_ellipse(&centered, q0, m)?.translate(mean))
}

/// Spectral-radius lower bound from `tr A` and `Q(A)` only: the modulus of
/// the farther focus.
pub fn trace_only_bound(tr_a: Complex64, q_a: Complex64, n: usize) -> Result<f64> {
    Ok(trace_only_foci(tr_a, q_a, n)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

/// Foci `γ ± √Q(A₀)/(√2(n−1))` from `tr A` and `Q(A)`.
pub fn trace_only_foci(tr_a: Complex64, q_a: Complex64, n: usize) -> Result<[Complex64; 2]> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let gamma = tr_a / n as f64;
    let q0 = q_a - n as f64 * gamma * gamma;
    let f = principal_sqrt(q0) * axis_factor(n);
    Ok([gamma + f, gamma - f])
}
