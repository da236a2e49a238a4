//! Inscribed spectral ellipses for square complex matrices.
//!
//! The traceless part `A₀ = A − γ·I` of a matrix determines, through the
//! quadratic form `Q(A₀) = tr(A₀²)`, an ellipse that always lies inside the
//! convex hull of the spectrum. This crate computes that ellipse, checks the
//! containment with two independent code paths, and derives a spectral-radius
//! lower bound from `tr A` and `tr A²` alone.

pub mod ellipse;
pub mod ensembles;
mod error;
pub mod hull;
pub mod matrix;
pub mod numerics;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use ellipse::{
    axis_sums, inscribed_ellipse, normalize_mu, shifted_ellipse, subset_ellipse, trace_only_bound,
    AxisSums, Direction, NormalizedSpectrum, SpectralEllipse,
};
pub use ensembles::{EnsembleKind, EnsembleSpec};
pub use hull::{
    contains_ellipse, convex_hull, directional_margin, sweep_margins, ContainmentReport,
    HullPolygon, Verdict,
};
pub use matrix::{ComplexMatrix, Decomposition};
pub use numerics::{principal_sqrt, ComplexScalar, Polynomial};
pub use spectrum::{eigenvalues, moment, Spectrum};
