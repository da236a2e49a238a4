//! Seeded random matrix ensembles.
//!
//! All randomness comes from [`counter_u64`], the SplitMix64 output function
//! evaluated at an explicit `(seed, index)` counter. It uses only wrapping
//! 64-bit integer arithmetic, so every ensemble matrix is reproducible across
//! platforms and languages. Gaussians are drawn by the Box–Muller transform.

use crate::matrix::ComplexMatrix;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Scale of the random perturbation `T = I + s·G` used for scrambling.
const SCRAMBLE_SCALE: f64 = 0.25;
const SCRAMBLE_ATTEMPTS: usize = 64;

/// Condition cap `‖T‖_F·‖T⁻¹‖_F ≤ max(50, 2n)`. The Frobenius estimate is at
/// least `n` even for the identity, so the cap grows past `n = 25`.
pub fn condition_cap(n: usize) -> f64 {
    50f64.max(2.0 * n as f64)
}

/// The `index`-th SplitMix64 output for state `seed`: the state advanced by
/// `(index + 1)` golden-gamma increments, then finalized.
pub fn counter_u64(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sequential reader over the counter generator.
#[derive(Debug, Clone)]
pub struct CounterStream {
    seed: u64,
    index: u64,
}

impl CounterStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, index: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let x = counter_u64(self.seed, self.index);
        self.index += 1;
        x
    }

    /// Uniform in the open interval (0, 1), 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal; consumes two uniforms.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }

    /// Complex normal with `E|z|² = 1`.
    pub fn next_complex_gaussian(&mut self) -> Complex64 {
        let re = self.next_gaussian();
        let im = self.next_gaussian();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Ginibre,
    RealGaussian,
    Nilpotent,
    PrescribedSpectrum,
    RemarkExtremal,
    QZero,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 6] = [
        EnsembleKind::Ginibre,
        EnsembleKind::RealGaussian,
        EnsembleKind::PrescribedSpectrum,
        EnsembleKind::QZero,
        EnsembleKind::Nilpotent,
        EnsembleKind::RemarkExtremal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::RealGaussian => "real-gaussian",
            EnsembleKind::Nilpotent => "nilpotent",
            EnsembleKind::PrescribedSpectrum => "prescribed",
            EnsembleKind::RemarkExtremal => "remark",
            EnsembleKind::QZero => "qzero",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        match key.as_str() {
            "ginibre" => Ok(EnsembleKind::Ginibre),
            "real-gaussian" | "realgaussian" => Ok(EnsembleKind::RealGaussian),
            "nilpotent" => Ok(EnsembleKind::Nilpotent),
            "prescribed" | "prescribed-spectrum" | "prescribedspectrum" => {
                Ok(EnsembleKind::PrescribedSpectrum)
            }
            "remark" | "remark-extremal" | "remarkextremal" => Ok(EnsembleKind::RemarkExtremal),
            "qzero" | "q-zero" => Ok(EnsembleKind::QZero),
            _ => Err(format!(
                "unknown ensemble '{s}' (expected ginibre, real-gaussian, nilpotent, prescribed, remark, qzero)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize, seed: u64) -> Self {
        Self { kind, n, seed }
    }

    fn check(&self) -> Result<()> {
        let min = match self.kind {
            EnsembleKind::RemarkExtremal | EnsembleKind::QZero => 2,
            _ => 1,
        };
        if self.n < min {
            return Err(Error::UnsupportedDimension {
                kind: self.kind.name(),
                n: self.n,
            });
        }
        Ok(())
    }
}

/// The ensemble matrix for `spec`; a pure function of `spec`.
pub fn generate(spec: &EnsembleSpec) -> Result<ComplexMatrix> {
    spec.check()?;
    let n = spec.n;
    let mut rng = CounterStream::new(spec.seed);
    match spec.kind {
        EnsembleKind::Ginibre => {
            let s = 1.0 / (n as f64).sqrt();
            let entries = (0..n * n)
                .map(|_| rng.next_complex_gaussian() * s)
                .collect();
            ComplexMatrix::new(n, entries)
        }
        EnsembleKind::RealGaussian => {
            let s = 1.0 / (n as f64).sqrt();
            let entries = (0..n * n)
                .map(|_| Complex64::new(rng.next_gaussian() * s, 0.0))
                .collect();
            ComplexMatrix::new(n, entries)
        }
        EnsembleKind::Nilpotent => {
            let mut m = ComplexMatrix::zeros(n);
            fill_strict_upper(&mut m, 0..n, &mut rng);
            scramble(&m, &mut rng)
        }
        EnsembleKind::PrescribedSpectrum => {
            let diag = sample_spectrum(n, &mut rng);
            scramble(&ComplexMatrix::from_diagonal(&diag), &mut rng)
        }
        EnsembleKind::RemarkExtremal => {
            scramble(&ComplexMatrix::from_diagonal(&remark_spectrum(n)), &mut rng)
        }
        EnsembleKind::QZero => {
            let diag = qzero_spectrum(n, &mut rng);
            let mut m = ComplexMatrix::from_diagonal(&diag);
            // The zero eigenvalues form one nilpotent block.
            let zeros_from = 4 * (n / 4);
            fill_strict_upper(&mut m, zeros_from..n, &mut rng);
            scramble(&m, &mut rng)
        }
    }
}

/// Matrix with the given spectrum on its diagonal, scrambled by a seeded
/// well-conditioned similarity.
pub fn prescribed(spectrum: &[Complex64], seed: u64) -> Result<ComplexMatrix> {
    if spectrum.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let mut rng = CounterStream::new(seed);
    scramble(&ComplexMatrix::from_diagonal(spectrum), &mut rng)
}

/// The exact intended spectrum, or `None` for the unstructured ensembles.
pub fn reference_spectrum(spec: &EnsembleSpec) -> Option<Vec<Complex64>> {
    spec.check().ok()?;
    let n = spec.n;
    let mut rng = CounterStream::new(spec.seed);
    match spec.kind {
        EnsembleKind::Ginibre | EnsembleKind::RealGaussian => None,
        EnsembleKind::Nilpotent => Some(vec![Complex64::new(0.0, 0.0); n]),
        EnsembleKind::PrescribedSpectrum => Some(sample_spectrum(n, &mut rng)),
        EnsembleKind::RemarkExtremal => Some(remark_spectrum(n)),
        EnsembleKind::QZero => Some(qzero_spectrum(n, &mut rng)),
    }
}

/// A random well-conditioned `T = I + s·G` with its condition estimate under
/// [`condition_cap`].
pub fn scrambler(n: usize, rng: &mut CounterStream) -> Result<ComplexMatrix> {
    let cap = condition_cap(n);
    let mut scale = SCRAMBLE_SCALE / (n as f64).sqrt();
    for _ in 0..SCRAMBLE_ATTEMPTS {
        let entries = (0..n * n)
            .map(|_| rng.next_complex_gaussian() * scale)
            .collect();
        let t = ComplexMatrix::new(n, entries)?.shift(Complex64::new(1.0, 0.0));
        if matches!(t.condition_estimate(), Ok(c) if c <= cap) {
            return Ok(t);
        }
        scale *= 0.8;
    }
    Err(Error::UnsupportedDimension {
        kind: "scrambler",
        n,
    })
}

fn scramble(m: &ComplexMatrix, rng: &mut CounterStream) -> Result<ComplexMatrix> {
    let t = scrambler(m.dim(), rng)?;
    m.similarity(&t)
}

fn fill_strict_upper(
    m: &mut ComplexMatrix,
    block: std::ops::Range<usize>,
    rng: &mut CounterStream,
) {
    let s = 1.0 / (m.dim() as f64).sqrt();
    for i in block.clone() {
        for j in (i + 1)..block.end {
            m[(i, j)] = rng.next_complex_gaussian() * s;
        }
    }
}

fn sample_spectrum(n: usize, rng: &mut CounterStream) -> Vec<Complex64> {
    (0..n).map(|_| rng.next_complex_gaussian()).collect()
}

fn remark_spectrum(n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(-1.0, 0.0); n - 1];
    v.push(Complex64::new((n - 1) as f64, 0.0));
    v
}

/// Blocks `r·e^{iφ}·{1, i, −1, −i}` followed by zeros; both power sums
/// vanish. The first block is the plain fourth roots of unity.
fn qzero_spectrum(n: usize, rng: &mut CounterStream) -> Vec<Complex64> {
    let blocks = n / 4;
    let mut v = Vec::with_capacity(n);
    for b in 0..blocks {
        let (r, phi) = if b == 0 {
            (1.0, 0.0)
        } else {
            (0.5 + rng.next_f64(), 2.0 * PI * rng.next_f64())
        };
        let base = Complex64::from_polar(r, phi);
        let mut z = base;
        for _ in 0..4 {
            v.push(z);
            z *= Complex64::new(0.0, 1.0);
        }
    }
    v.resize(n, Complex64::new(0.0, 0.0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_outputs() {
        // First outputs of the SplitMix64 reference implementation for seed 1234567.
        let want = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(counter_u64(1234567, i as u64), w);
        }
    }

    #[test]
    fn counter_golden_values() {
        assert_eq!(counter_u64(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(counter_u64(42, 0), 0xBDD7_3226_2FEB_6E95);
        assert_eq!(counter_u64(42, 1000), 0x5566_DBE8_93F1_B4AE);
    }

    #[test]
    fn uniforms_are_open_interval() {
        let mut rng = CounterStream::new(7);
        for _ in 0..10_000 {
            let u = rng.next_f64();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = CounterStream::new(99);
        let n = 40_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.next_gaussian()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "{mean}");
        assert!((var - 1.0).abs() < 0.03, "{var}");
    }

    #[test]
    fn parse_kinds() {
        for k in EnsembleKind::ALL {
            assert_eq!(k.name().parse::<EnsembleKind>().unwrap(), k);
        }
        assert!("wishart".parse::<EnsembleKind>().is_err());
    }

    #[test]
    fn dimension_checks() {
        let spec = EnsembleSpec::new(EnsembleKind::RemarkExtremal, 1, 0);
        assert!(matches!(
            generate(&spec),
            Err(Error::UnsupportedDimension { .. })
        ));
        let spec = EnsembleSpec::new(EnsembleKind::Ginibre, 0, 0);
        assert!(generate(&spec).is_err());
        assert!(generate(&EnsembleSpec::new(EnsembleKind::Ginibre, 1, 0)).is_ok());
    }

    #[test]
    fn remark_q_is_n_times_n_minus_one() {
        for seed in 0..5 {
            let a = generate(&EnsembleSpec::new(EnsembleKind::RemarkExtremal, 3, seed)).unwrap();
            assert!((a.q_form() - Complex64::new(6.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn nilpotent_q_vanishes() {
        let a = generate(&EnsembleSpec::new(EnsembleKind::Nilpotent, 4, 3)).unwrap();
        assert!(a.q_form().norm() < 1e-9);
        assert!(a.trace().norm() < 1e-9);
    }

    #[test]
    fn qzero_traceless_q_vanishes() {
        let a = generate(&EnsembleSpec::new(EnsembleKind::QZero, 4, 11)).unwrap();
        assert!(a.decompose().q_traceless.norm() < 1e-9);
        let r = reference_spectrum(&EnsembleSpec::new(EnsembleKind::QZero, 4, 11)).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (z, (re, im)) in r.iter().zip(want) {
            assert!((z - Complex64::new(re, im)).norm() < 1e-15);
        }
    }

    #[test]
    fn reference_spectrum_contract() {
        let r = reference_spectrum(&EnsembleSpec::new(EnsembleKind::RemarkExtremal, 3, 0)).unwrap();
        let want: Vec<Complex64> = [-1.0, -1.0, 2.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        assert_eq!(r, want);
        let r = reference_spectrum(&EnsembleSpec::new(EnsembleKind::Nilpotent, 5, 0)).unwrap();
        assert_eq!(r, vec![Complex64::new(0.0, 0.0); 5]);
        assert!(reference_spectrum(&EnsembleSpec::new(EnsembleKind::Ginibre, 8, 0)).is_none());
        assert!(reference_spectrum(&EnsembleSpec::new(EnsembleKind::RealGaussian, 8, 0)).is_none());
    }

    #[test]
    fn scrambler_respects_cap() {
        let mut rng = CounterStream::new(5);
        for n in [2, 8, 16, 32] {
            let t = scrambler(n, &mut rng).unwrap();
            assert!(t.condition_estimate().unwrap() <= condition_cap(n));
        }
    }

    #[test]
    fn generate_is_deterministic() {
        for kind in EnsembleKind::ALL {
            let spec = EnsembleSpec::new(kind, 6, 1234);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        }
    }
}
