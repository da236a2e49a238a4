//! Complex scalar conventions, monic polynomials and a damped Aberth–Ehrlich
//! root finder.

use crate::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::f64::consts::PI;

pub type ComplexScalar = Complex64;

pub const DEFAULT_ROOT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 200;

/// Angular offset of the initial guesses, in radians. Irrational so that no
/// starting point lands on a symmetry axis of real or Gaussian-integer
/// polynomials.
const START_ANGLE: f64 = 0.4 * std::f64::consts::SQRT_2;

const MAX_HALVINGS: usize = 8;

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Principal square root with `arg(w) ∈ (−π/2, π/2]`.
///
/// Unlike `Complex64::sqrt`, a negative real input with a negative-zero
/// imaginary part still maps to the positive imaginary axis.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = z.re.hypot(z.im);
    if z.re >= 0.0 {
        let t = ((r + z.re) * 0.5).sqrt();
        Complex64::new(t, z.im / (2.0 * t))
    } else {
        let t = ((r - z.re) * 0.5).sqrt();
        let re = z.im.abs() / (2.0 * t);
        if z.im < 0.0 {
            Complex64::new(re, -t)
        } else {
            Complex64::new(re, t)
        }
    }
}

/// Lexicographic order on (re, im); NaN-free inputs assumed.
pub fn lex_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sort_lex(values: &mut [Complex64]) {
    values.sort_by(lex_cmp);
}

/// Polynomial with complex coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !is_finite(*c)) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1
            && coeffs
                .last()
                .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial `∏ (x − rᵢ)`.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Complex64::new(1.0, 0.0)
    }

    /// Divides through by the leading coefficient; the result has leading
    /// coefficient exactly one.
    pub fn normalize(&self) -> Result<Self> {
        let lead = self.leading();
        if lead == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroDegree);
        }
        let n = self.degree();
        let mut coeffs: Vec<Complex64> = self.coeffs.iter().map(|c| c / lead).collect();
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Residual bound a returned root must meet: `tol·(1 + max|cₖ|)`, scaled
    /// by `|r|ⁿ` for roots outside the unit disk so the test stays meaningful
    /// for large roots.
    pub fn residual_bound(&self, tol: f64, root: Complex64) -> f64 {
        let scale = root.norm().max(1.0).powi(self.degree() as i32);
        tol * (1.0 + self.max_coeff_norm()) * scale
    }

    /// All `degree` roots, counted with multiplicity, by damped
    /// Aberth–Ehrlich iteration.
    pub fn find_roots(&self, tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
        if self.degree() == 0 {
            return Err(Error::ZeroDegree);
        }
        let p = self.normalize()?;
        let n = p.degree();

        // Exact zero roots are peeled off; Aberth only converges linearly there.
        let zeros = p
            .coeffs
            .iter()
            .take_while(|c| **c == Complex64::new(0.0, 0.0))
            .count();
        let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
        if zeros == n {
            return Ok(roots);
        }
        let reduced = Polynomial {
            coeffs: p.coeffs[zeros..].to_vec(),
        };
        let (found, iterations) = reduced.aberth(max_iter);
        roots.extend(found);

        let residuals: Vec<f64> = roots.iter().map(|&r| p.evaluate(r).norm()).collect();
        let converged = roots
            .iter()
            .zip(&residuals)
            .all(|(&r, &res)| res <= p.residual_bound(tol, r));
        if converged {
            Ok(roots)
        } else {
            let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
            Err(Error::NonConvergence {
                iterations,
                residuals,
                max_residual,
            })
        }
    }

    /// Fujiwara's bound: every root satisfies `|z| ≤ 2·maxₖ |c_{n−k}|^{1/k}`
    /// (the constant term enters halved). Never larger than `1 + max|cₖ|`
    /// by more than a factor of two, and much tighter for clustered spectra.
    fn root_radius(&self) -> f64 {
        let n = self.degree();
        let mut bound: f64 = 0.0;
        for k in 1..=n {
            let mut c = self.coeffs[n - k].norm();
            if k == n {
                c *= 0.5;
            }
            bound = bound.max(c.powf(1.0 / k as f64));
        }
        let fujiwara = 2.0 * bound;
        let cauchy = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
        let r = fujiwara.min(cauchy);
        if r > 0.0 {
            r
        } else {
            1.0
        }
    }

    /// `Σ|cₖ|·|z|ᵏ`, the scale of rounding errors in evaluating at `z`.
    fn abs_eval(&self, z: Complex64) -> f64 {
        let az = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * az + c.norm())
    }

    fn derivative(&self) -> Polynomial {
        let coeffs = if self.degree() == 0 {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect()
        };
        Polynomial { coeffs }
    }

    fn aberth(&self, max_iter: usize) -> (Vec<Complex64>, usize) {
        let n = self.degree();
        let dp = self.derivative();
        let radius = self.root_radius();
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + START_ANGLE))
            .collect();
        let mut done = vec![false; n];
        // Noise floor of compensated evaluation relative to Σ|cₖ||z|ᵏ.
        let floor = 4.0 * (n as f64 + 1.0) * f64::EPSILON * f64::EPSILON;

        let mut iterations = 0;
        while iterations < max_iter && done.iter().any(|d| !d) {
            iterations += 1;
            for i in 0..n {
                if done[i] {
                    continue;
                }
                let pv = eft::horner(&self.coeffs, z[i]);
                let residual = pv.norm();
                if residual <= floor * self.abs_eval(z[i]) {
                    done[i] = true;
                    continue;
                }
                let dv = eft::horner(&dp.coeffs, z[i]);
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let d = z[i] - z[j];
                        if d == Complex64::new(0.0, 0.0) {
                            Complex64::new(0.0, 0.0)
                        } else {
                            d.inv()
                        }
                    })
                    .sum();
                let denom = dv / pv - repulsion;
                let full = if denom == Complex64::new(0.0, 0.0) || !is_finite(denom.inv()) {
                    // Stationary point: nudge off it.
                    Complex64::from_polar(radius * 1e-8, START_ANGLE * (i + 1) as f64)
                } else {
                    denom.inv()
                };

                let mut step = full;
                let mut halvings = 0;
                while halvings < MAX_HALVINGS
                    && eft::horner(&self.coeffs, z[i] - step).norm() >= residual
                {
                    step *= 0.5;
                    halvings += 1;
                }
                if halvings == MAX_HALVINGS {
                    // No shorter step reduced the residual; take the undamped update.
                    step = full;
                }
                z[i] -= step;
                if step.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                    done[i] = true;
                }
            }
        }
        (z, iterations)
    }
}

/// Compensated Horner evaluation built on error-free transformations; the
/// result is as accurate as plain Horner in twice the working precision.
mod eft {
    use num_complex::Complex64;

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let z = s - a;
        (s, (a - (s - z)) + (b - z))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    /// `x·y = p + e` exactly.
    fn two_prod_c(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let (p1, e1) = two_prod(x.re, y.re);
        let (p2, e2) = two_prod(x.im, y.im);
        let (p3, e3) = two_prod(x.re, y.im);
        let (p4, e4) = two_prod(x.im, y.re);
        let (re, e5) = two_sum(p1, -p2);
        let (im, e6) = two_sum(p3, p4);
        (
            Complex64::new(re, im),
            Complex64::new(e1 - e2 + e5, e3 + e4 + e6),
        )
    }

    fn two_sum_c(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let (re, er) = two_sum(x.re, y.re);
        let (im, ei) = two_sum(x.im, y.im);
        (Complex64::new(re, im), Complex64::new(er, ei))
    }

    pub(super) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        let mut err = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            let (p, pi) = two_prod_c(s, z);
            let (next, sigma) = two_sum_c(p, c);
            s = next;
            err = err * z + (pi + sigma);
        }
        s + err
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        sort_lex(&mut v);
        v
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(principal_sqrt(c(4.0, 0.0)), c(2.0, 0.0));
        assert_eq!(principal_sqrt(c(-1.0, 0.0)), c(0.0, 1.0));
        assert_eq!(principal_sqrt(c(-1.0, -0.0)), c(0.0, 1.0));
        let w = principal_sqrt(c(0.0, 2.0));
        assert!((w - c(1.0, 1.0)).norm() < 1e-15);
        assert_eq!(principal_sqrt(c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn sqrt_branch_lies_in_right_half_plane() {
        for &z in &[
            c(-4.0, 1e-300),
            c(-4.0, -1e-300),
            c(0.0, -3.0),
            c(-2.0, -2.0),
        ] {
            let w = principal_sqrt(z);
            // arg(w) ∈ (−π/2, π/2]: right half-plane, or the upper imaginary axis.
            assert!(w.re > 0.0 || (w.re == 0.0 && w.im >= 0.0), "{z} -> {w}");
            assert!((w * w - z).norm() <= 1e-14 * z.norm());
        }
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(c(2.0, 0.0)), c(3.0, 0.0));
        let cube = Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(cube.evaluate(c(0.0, 0.0)), c(0.0, 0.0));
        let q = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(q.evaluate(c(0.0, 1.0)), c(0.0, 0.0));
        let constant = Polynomial::from_real(&[7.5]).unwrap();
        assert_eq!(constant.evaluate(c(123.0, -4.0)), c(7.5, 0.0));
    }

    #[test]
    fn roots_of_simple_polynomials() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let r = sorted(p.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-13);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-13);

        let cube = Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = cube.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(r, vec![c(0.0, 0.0); 3]);

        let q = Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let r = sorted(q.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-13);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn multiple_roots_are_kept() {
        // (x - 2)^2 (x + 1)
        let p = Polynomial::from_roots(&[c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)]);
        let r = sorted(p.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap());
        assert_eq!(r.len(), 3);
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-6);
        assert!((r[2] - c(2.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn large_roots_converge() {
        let roots: Vec<Complex64> = (1..=12)
            .map(|k| c(k as f64 * 3.0, (k % 3) as f64))
            .collect();
        let p = Polynomial::from_roots(&roots);
        let r = p.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap();
        for want in roots {
            let best = r
                .iter()
                .map(|z| (z - want).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-6, "{want}: {best}");
        }
    }

    #[test]
    fn rejects_nan_and_constant() {
        assert!(matches!(
            Polynomial::from_real(&[f64::NAN, 1.0]),
            Err(Error::NonFinite(_))
        ));
        let p = Polynomial::from_real(&[3.0]).unwrap();
        assert_eq!(p.find_roots(1e-13, 200), Err(Error::ZeroDegree));
    }

    #[test]
    fn non_monic_input_is_normalized() {
        let p = Polynomial::from_real(&[-2.0, 0.0, 2.0]).unwrap();
        assert!(!p.is_monic());
        let m = p.normalize().unwrap();
        assert!(m.is_monic());
        let r = sorted(p.find_roots(DEFAULT_ROOT_TOL, DEFAULT_MAX_ITER).unwrap());
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_iterations_reports_non_convergence() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        match p.find_roots(1e-13, 0) {
            Err(Error::NonConvergence { residuals, .. }) => assert_eq!(residuals.len(), 2),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }
}
