//! Function representations: Taylor polynomials on the disk, trigonometric
//! polynomials on the circle, several-variable polynomials on the polydisk and
//! closed-form samplers (reproducing kernels and the Riesz test family).
//!
//! All fractional powers use the principal branch. For `|ζ| < 1` and
//! `|z| ≤ 1` the base `1 - ζ̄z` has positive real part, so the branch cut is
//! never crossed.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeff::binom_coeffs;
use crate::error::{ensure, LabError, Result};

/// Anything that can be evaluated on the closed unit disk.
pub trait DiskFunction {
    fn eval(&self, z: Complex64) -> Complex64;

    /// Moduli of the zeros inside the closed unit disk, when known. Quadrature
    /// uses them as panel breakpoints for `|f|^p` with non-even `p`.
    fn zero_moduli(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Anything that can be evaluated on the unit circle, parametrized by angle.
pub trait CircleFunction {
    fn at_angle(&self, t: f64) -> Complex64;
}

/// Finite Taylor polynomial `Σ a_k z^k`. Serializes as `[[re, im], ...]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn trimmed(&self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        Self::new(self.coeffs[..len].to_vec())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_many(&self, zs: &[Complex64]) -> Vec<Complex64> {
        zs.iter().map(|&z| self.eval(z)).collect()
    }

    /// `q_r(z) = q(rz)`.
    pub fn dilate(&self, r: f64) -> Result<Self> {
        ensure((0.0..=1.0).contains(&r), "r", format!("must lie in [0, 1], got {r}"))?;
        let mut scale = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * scale;
                scale *= r;
                out
            })
            .collect();
        Ok(Self::new(coeffs))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::constant(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// All complex zeros (Aberth–Ehrlich iteration). Empty for constants.
    pub fn roots(&self) -> Vec<Complex64> {
        let p = self.trimmed();
        let n = match p.degree() {
            Some(d) if d > 0 => d,
            _ => return Vec::new(),
        };
        let lead = p.coeffs[n];
        let monic: Vec<Complex64> = p.coeffs.iter().map(|&c| c / lead).collect();
        let monic = Polynomial::new(monic);
        let dmonic = monic.derivative();

        // Fujiwara-type bound for the initial circle
        let radius = (0..n)
            .map(|k| monic.coeffs[k].norm().powf(1.0 / (n - k) as f64))
            .fold(0.0_f64, f64::max)
            .max(1e-3);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
            .collect();

        for _ in 0..500 {
            let mut max_step = 0.0_f64;
            for i in 0..n {
                let f = monic.eval(z[i]);
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = f / dmonic.eval(z[i]);
                let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[i] -= step;
                    max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
                }
            }
            if max_step < 1e-15 {
                break;
            }
        }
        z
    }
}

impl DiskFunction for Polynomial {
    fn eval(&self, z: Complex64) -> Complex64 {
        Polynomial::eval(self, z)
    }

    fn zero_moduli(&self) -> Vec<f64> {
        self.roots()
            .into_iter()
            .map(|z| z.norm())
            .filter(|&m| m <= 1.0)
            .collect()
    }
}

impl CircleFunction for Polynomial {
    fn at_angle(&self, t: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, t))
    }
}

/// Two-sided trigonometric polynomial `Σ_{k=lo}^{hi} F̂(k) e^{ikt}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    min_freq: i64,
    coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    /// Coefficients for frequencies `min_freq, min_freq + 1, ...`.
    pub fn new(min_freq: i64, coeffs: Vec<Complex64>) -> Self {
        Self { min_freq, coeffs }
    }

    pub fn from_pairs(pairs: &[(i64, Complex64)]) -> Self {
        let Some(lo) = pairs.iter().map(|p| p.0).min() else {
            return Self::new(0, Vec::new());
        };
        let hi = pairs.iter().map(|p| p.0).max().unwrap_or(lo);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(k, c) in pairs {
            coeffs[(k - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    pub fn min_freq(&self) -> i64 {
        self.min_freq
    }

    pub fn max_freq(&self) -> i64 {
        self.min_freq + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let idx = k - self.min_freq;
        if idx < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(idx as usize).copied().unwrap_or_default()
    }

    /// `(frequency, coefficient)` pairs in increasing frequency.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.min_freq + i as i64, c))
    }

    /// Embeds an analytic polynomial as a trigonometric polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    /// True when every coefficient satisfies `F̂(-k) = conj(F̂(k))`.
    pub fn is_conjugate_symmetric(&self, tol: f64) -> bool {
        let hi = self.max_freq().max(-self.min_freq);
        (0..=hi).all(|k| (self.coeff(-k) - self.coeff(k).conj()).norm() <= tol)
    }
}

impl CircleFunction for TrigPolynomial {
    fn at_angle(&self, t: f64) -> Complex64 {
        // Horner in e^{it}, then shift by e^{i lo t}
        let w = Complex64::from_polar(1.0, t);
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
        acc * Complex64::from_polar(1.0, self.min_freq as f64 * t)
    }
}

/// Closed-form functions sampled pointwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyticSampler {
    /// `C (1-|ζ|²)^{(α+2)/p} / (1 - ζ̄z)^{2(α+2)/p}`, the extremals of the
    /// Bergman-to-Bergman contraction family.
    Kernel {
        p: f64,
        alpha: f64,
        zeta: Complex64,
        scale: Complex64,
    },
    /// Boundary function `(1 - ε e^{it}) / (1 - ε e^{-it})^{1-2/p'}`.
    RieszEps {
        p_prime: f64,
        eps: f64,
    },
    Poly(Polynomial),
}

impl AnalyticSampler {
    pub fn kernel(p: f64, alpha: f64, zeta: Complex64, scale: Complex64) -> Result<Self> {
        ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
        ensure(alpha >= -1.0, "alpha", format!("must be >= -1, got {alpha}"))?;
        ensure(zeta.norm() < 1.0, "zeta", "must lie in the open unit disk")?;
        Ok(Self::Kernel { p, alpha, zeta, scale })
    }

    pub fn riesz_eps(p_prime: f64, eps: f64) -> Result<Self> {
        ensure(
            p_prime > 1.0 && p_prime <= 2.0,
            "p_prime",
            format!("must lie in (1, 2], got {p_prime}"),
        )?;
        ensure(eps > 0.0 && eps < 1.0, "eps", format!("must lie in (0, 1), got {eps}"))?;
        Ok(Self::RieszEps { p_prime, eps })
    }

    /// Checked evaluation: rejects points where the kernel denominator vanishes.
    pub fn try_eval(&self, z: Complex64) -> Result<Complex64> {
        if let Self::Kernel { zeta, .. } = self {
            let base = Complex64::new(1.0, 0.0) - zeta.conj() * z;
            if base.norm() == 0.0 {
                return Err(LabError::SingularPoint { re: z.re, im: z.im });
            }
        }
        Ok(self.eval(z))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::Kernel { p, alpha, zeta, scale } => {
                let e = (alpha + 2.0) / p;
                let num = (1.0 - zeta.norm_sqr()).powf(e);
                *scale * num / (one - zeta.conj() * z).powf(2.0 * e)
            }
            Self::RieszEps { p_prime, eps } => {
                let gamma = 1.0 - 2.0 / p_prime;
                (one - *eps * z) / (one - *eps * z.conj()).powf(gamma)
            }
            Self::Poly(p) => p.eval(z),
        }
    }
}

impl DiskFunction for AnalyticSampler {
    fn eval(&self, z: Complex64) -> Complex64 {
        AnalyticSampler::eval(self, z)
    }

    fn zero_moduli(&self) -> Vec<f64> {
        match self {
            Self::Poly(p) => p.zero_moduli(),
            _ => Vec::new(),
        }
    }
}

impl CircleFunction for AnalyticSampler {
    fn at_angle(&self, t: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, t))
    }
}

/// Frequency cutoff for the `F_ε` series: `max(64, ceil(ln tol / ln ε))`.
pub fn riesz_truncation(eps: f64, tol: f64) -> usize {
    let k = (tol.ln() / eps.ln()).ceil();
    if k.is_finite() {
        (k as usize).max(64)
    } else {
        64
    }
}

/// The test function `F_ε` as a sampler, together with its Riesz projection
/// in closed form `(1 - γε²) - ε e^{it}`, `γ = 1 - 2/p'`.
pub fn riesz_test_function(p_prime: f64, eps: f64) -> Result<(AnalyticSampler, TrigPolynomial)> {
    let sampler = AnalyticSampler::riesz_eps(p_prime, eps)?;
    let gamma = 1.0 - 2.0 / p_prime;
    let projected = TrigPolynomial::new(
        0,
        vec![Complex64::new(1.0 - gamma * eps * eps, 0.0), Complex64::new(-eps, 0.0)],
    );
    Ok((sampler, projected))
}

/// Truncated two-sided Fourier series of `F_ε`, from expanding
/// `(1 - εe^{-it})^{-γ} = Σ c_γ(n) ε^n e^{-int}`.
pub fn riesz_test_series(p_prime: f64, eps: f64, tol: f64) -> Result<TrigPolynomial> {
    AnalyticSampler::riesz_eps(p_prime, eps)?;
    let gamma = 1.0 - 2.0 / p_prime;
    let k_max = riesz_truncation(eps, tol);
    let c = binom_coeffs(gamma, k_max + 1);
    // frequencies -k_max ..= 1
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k_max + 2];
    let mut eps_n = 1.0;
    for (n, &cn) in c.iter().enumerate().take(k_max + 1) {
        // c_γ(n) ε^n e^{-int}
        coeffs[k_max - n] += cn * eps_n;
        // -ε e^{it} · c_γ(n) ε^n e^{-int}
        coeffs[k_max + 1 - n] -= cn * eps_n * eps;
        eps_n *= eps;
    }
    Ok(TrigPolynomial::new(-(k_max as i64), coeffs))
}

/// Polynomial in `d` variables with nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiPolynomial {
    dims: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MultiPolynomial {
    pub fn new(dims: usize) -> Result<Self> {
        ensure(dims >= 1, "dims", "must be >= 1")?;
        Ok(Self {
            dims,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_terms(dims: usize, terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>) -> Result<Self> {
        let mut out = Self::new(dims)?;
        for (e, c) in terms {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) -> Result<()> {
        ensure(
            exponents.len() == self.dims,
            "exponents",
            format!("expected {} exponents, got {}", self.dims, exponents.len()),
        )?;
        *self.terms.entry(exponents).or_default() += c;
        Ok(())
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> Complex64 {
        self.terms.get(exponents).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, &c)| e.iter().zip(z).fold(c, |acc, (&k, &zj)| acc * zj.powu(k)))
            .sum()
    }

    /// Same polynomial with variables `i` and `j` swapped.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, c)
            })
            .collect();
        Self { dims: self.dims, terms }
    }

    pub fn coeff_l2(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluation_examples() {
        let p = Polynomial::from_real(&[1.0, 0.0, 2.0]);
        assert_eq!(p.eval(c(0.0, 0.0)), c(1.0, 0.0));
        let q = Polynomial::from_real(&[1.0, 1.0]);
        assert_eq!(q.eval(c(1.0, 0.0)), c(2.0, 0.0));
        let k = AnalyticSampler::kernel(3.0, 0.5, c(0.0, 0.0), c(5.0, 0.0)).unwrap();
        for z in [c(0.3, -0.2), c(0.9, 0.0), c(0.0, 1.0)] {
            assert!((k.eval(z) - c(5.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn kernel_rejects_singular_point() {
        let k = AnalyticSampler::kernel(2.0, 0.0, c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(k.try_eval(c(2.0, 0.0)), Err(LabError::SingularPoint { .. })));
        assert!(k.try_eval(c(1.0, 0.0)).is_ok());
        assert!(AnalyticSampler::kernel(2.0, 0.0, c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn dilate_and_derivative_examples() {
        let z2 = Polynomial::monomial(2, c(1.0, 0.0));
        assert_eq!(z2.dilate(0.5).unwrap(), Polynomial::monomial(2, c(0.25, 0.0)));
        let q = Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.1), c(0.0, 3.0)]);
        assert_eq!(q.dilate(1.0).unwrap(), q);
        assert!(q.dilate(1.5).is_err());
        assert!(q.dilate(-0.1).is_err());
        assert_eq!(q.dilate(0.0).unwrap().degree(), Some(0));

        assert_eq!(Polynomial::from_real(&[1.0]).derivative().degree(), None);
        let z3 = Polynomial::monomial(3, c(1.0, 0.0));
        assert_eq!(z3.derivative(), Polynomial::monomial(2, c(3.0, 0.0)));
    }

    #[test]
    fn degree_ignores_trailing_zeros() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_real(&[0.0, 0.0]).degree(), None);
        assert_eq!(Polynomial::default().degree(), None);
    }

    #[test]
    fn roots_of_known_polynomial() {
        // (z - 0.5)(z + 0.25i)(z - 2)
        let p = Polynomial::from_real(&[-0.5, 1.0])
            .mul(&Polynomial::new(vec![c(0.0, 0.25), c(1.0, 0.0)]))
            .mul(&Polynomial::from_real(&[-2.0, 1.0]));
        let mut roots = p.roots();
        roots.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((roots[0] - c(0.0, -0.25)).norm() < 1e-12);
        assert!((roots[1] - c(0.5, 0.0)).norm() < 1e-12);
        assert!((roots[2] - c(2.0, 0.0)).norm() < 1e-12);
        let mut moduli = p.zero_moduli();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(moduli.len(), 2);
    }

    #[test]
    fn polynomial_json_is_pairs() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.5, -2.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,0.0],[0.5,-2.0]]");
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn trig_polynomial_symmetry_and_evaluation() {
        let f = TrigPolynomial::from_pairs(&[(-1, c(1.0, 0.0)), (0, c(1.0, 0.0)), (1, c(1.0, 0.0))]);
        assert!(f.is_conjugate_symmetric(0.0));
        for t in [0.0, 0.7, 2.0] {
            let v = f.at_angle(t);
            assert!((v - c(1.0 + 2.0 * f64::cos(t), 0.0)).norm() < 1e-14);
        }
        let g = TrigPolynomial::from_pairs(&[(-1, c(0.0, 1.0)), (1, c(0.0, 1.0))]);
        assert!(!g.is_conjugate_symmetric(1e-12));
        assert!(g.at_angle(0.4).im.abs() > 1e-3);
    }

    #[test]
    fn riesz_closed_form_small_eps_and_p_prime_two() {
        let (s, proj) = riesz_test_function(4.0 / 3.0, 1e-9).unwrap();
        assert!((s.at_angle(1.0) - c(1.0, 0.0)).norm() < 1e-8);
        assert!((proj.coeff(0) - c(1.0, 0.0)).norm() < 1e-8);
        assert!(proj.coeff(1).norm() < 1e-8);

        let eps = 0.6;
        let (s, proj) = riesz_test_function(2.0, eps).unwrap();
        assert_eq!(proj.coeff(0), c(1.0, 0.0));
        assert_eq!(proj.coeff(1), c(-eps, 0.0));
        for t in [0.0, 1.0, 3.0] {
            let expect = c(1.0, 0.0) - Complex64::from_polar(eps, t);
            assert!((s.at_angle(t) - expect).norm() < 1e-15);
        }
        assert!(riesz_test_function(1.5, 1.0).is_err());
        assert!(riesz_test_function(2.5, 0.5).is_err());
    }

    #[test]
    fn riesz_series_matches_sampler() {
        let series = riesz_test_series(1.5, 0.7, 1e-17).unwrap();
        let (sampler, proj) = riesz_test_function(1.5, 0.7).unwrap();
        for t in [0.1, 1.3, 2.9, 5.0] {
            assert!((series.at_angle(t) - sampler.at_angle(t)).norm() < 1e-13);
        }
        assert!((series.coeff(0) - proj.coeff(0)).norm() < 1e-15);
        assert!((series.coeff(1) - proj.coeff(1)).norm() < 1e-15);
        assert_eq!(series.max_freq(), 1);
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(riesz_truncation(0.1, 1e-16), 64);
        assert_eq!(riesz_truncation(0.99, 1e-16), 3666);
    }

    #[test]
    fn multipolynomial_eval_and_swap() {
        let f = MultiPolynomial::from_terms(2, [(vec![0, 0], c(1.0, 0.0)), (vec![2, 1], c(0.0, 2.0))]).unwrap();
        let z = [c(0.5, 0.1), c(-0.3, 0.4)];
        let expect = c(1.0, 0.0) + c(0.0, 2.0) * z[0] * z[0] * z[1];
        assert!((f.eval(&z) - expect).norm() < 1e-15);
        let g = f.swap_vars(0, 1);
        assert!((g.eval(&[z[1], z[0]]) - expect).norm() < 1e-15);
        assert!(f.clone().add_term(vec![1], c(1.0, 0.0)).is_err());
        assert!(MultiPolynomial::new(0).is_err());
    }
}
