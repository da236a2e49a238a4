//! Dense complex matrices, the quadratic form `Q(A) = tr(A²)`, the traceless
//! decomposition `A = γ·I + A₀` and the characteristic polynomial.

use crate::numerics::{is_finite, Polynomial};
use crate::{Error, Result};
use num_complex::Complex64;
use std::ops::{Index, IndexMut};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Condition estimate above which `similarity` logs a warning.
pub const CONDITION_WARNING: f64 = 1e8;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|z| !is_finite(*z)) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { n, data: entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![ONE; n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self + s·I`
    pub fn shift(&self, s: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += s;
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in matmul");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `Q(A) = tr(A²) = Σᵢⱼ Aᵢⱼ·Aⱼᵢ`, without forming `A²`.
    pub fn q_form(&self) -> Complex64 {
        let n = self.n;
        let mut q = ZERO;
        for i in 0..n {
            q += self[(i, i)] * self[(i, i)];
            for j in (i + 1)..n {
                q += 2.0 * self[(i, j)] * self[(j, i)];
            }
        }
        q
    }

    pub fn decompose(&self) -> Decomposition {
        let n = self.n;
        let gamma = self.trace() / n as f64;
        let traceless_part = self.shift(-gamma);
        Decomposition {
            gamma,
            q_total: self.q_form(),
            q_traceless: traceless_part.q_form(),
            traceless_part,
            n,
        }
    }

    /// `T⁻¹·A·T`, computed by solving `T·X = A·T`.
    pub fn similarity(&self, t: &Self) -> Result<Self> {
        assert_eq!(self.n, t.n, "dimension mismatch in similarity");
        let lu = Lu::factor(t)?;
        let cond = lu.condition_estimate(t);
        if cond > CONDITION_WARNING {
            log::warn!("similarity transform is ill-conditioned (estimate {cond:.3e})");
        }
        Ok(lu.solve(&self.matmul(t)))
    }

    /// `‖T‖_F·‖T⁻¹‖_F`
    pub fn condition_estimate(&self) -> Result<f64> {
        let lu = Lu::factor(self)?;
        Ok(lu.condition_estimate(self))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Lu::factor(self)?.solve(&Self::identity(self.n)))
    }

    /// Characteristic polynomial `det(x·I − A)` by the Faddeev–LeVerrier
    /// recursion `Mₖ = A·Mₖ₋₁ + c_{n−k+1}·I`, `c_{n−k} = −tr(A·Mₖ)/k`.
    pub fn char_poly(&self) -> Polynomial {
        let n = self.n;
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = ONE;
        let mut m = Self::zeros(n);
        for k in 1..=n {
            m = self.matmul(&m).shift(coeffs[n - k + 1]);
            let am_trace: Complex64 = (0..n)
                .map(|i| (0..n).map(|j| self[(i, j)] * m[(j, i)]).sum::<Complex64>())
                .sum();
            coeffs[n - k] = -am_trace / k as f64;
        }
        Polynomial::new(coeffs).expect("finite matrix yields finite coefficients")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// `A = γ·I + A₀` with `tr A₀ = 0`, and the quadratic form on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub gamma: Complex64,
    pub traceless_part: ComplexMatrix,
    pub q_total: Complex64,
    pub q_traceless: Complex64,
    pub n: usize,
}

impl Decomposition {
    /// `|Q(A) − n·γ² − Q(A₀)|`
    pub fn q_residual(&self) -> f64 {
        (self.q_total - self.n as f64 * self.gamma * self.gamma - self.q_traceless).norm()
    }
}

/// LU factorization with partial pivoting, `P·T = L·U`.
struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(t: &ComplexMatrix) -> Result<Self> {
        let n = t.n;
        let threshold = 1e-12 * t.frobenius_norm();
        let mut lu = t.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot <= threshold {
                return Err(Error::SingularTransform { pivot, threshold });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let inv = lu[k * n + k].inv();
            for i in (k + 1)..n {
                let f = lu[i * n + k] * inv;
                lu[i * n + k] = f;
                for j in (k + 1)..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    fn solve(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let mut x = ComplexMatrix::zeros(n);
        for (i, &p) in self.perm.iter().enumerate() {
            for j in 0..n {
                x.data[i * n + j] = rhs.data[p * n + j];
            }
        }
        for col in 0..n {
            for i in 0..n {
                let mut s = x.data[i * n + col];
                for k in 0..i {
                    s -= self.lu[i * n + k] * x.data[k * n + col];
                }
                x.data[i * n + col] = s;
            }
            for i in (0..n).rev() {
                let mut s = x.data[i * n + col];
                for k in (i + 1)..n {
                    s -= self.lu[i * n + k] * x.data[k * n + col];
                }
                x.data[i * n + col] = s / self.lu[i * n + i];
            }
        }
        x
    }

    fn condition_estimate(&self, t: &ComplexMatrix) -> f64 {
        let inv = self.solve(&ComplexMatrix::identity(self.n));
        t.frobenius_norm() * inv.frobenius_norm()
    }
}
