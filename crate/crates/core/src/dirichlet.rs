//! Dirichlet polynomials, the Bohr lift to the polydisk and Hardy norms on
//! the finite polytorus `T^d`, `d ≤ 3`.
//!
//! The mean `lim (1/2T) ∫_{-T}^{T} |Σ a_k k^{-it}|^p dt` is evaluated as the
//! `H^p(T^d)` norm of the Bohr lift. Direct averages over long intervals are
//! available only as a consistency probe.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeff::{factorize, primes_up_to, smallest_prime_factors, zeta_power_coeffs};
use crate::error::{ensure, LabError, Result};
use crate::extremal::InequalityCheck;
use crate::funcspace::MultiPolynomial;
use crate::par::map_indexed;
use crate::quadrature::{JacobiRule, NormReport, QuadratureSpec};

/// Largest supported torus dimension.
pub const MAX_TORUS_DIM: usize = 3;
/// Cap on tensor-grid points (`256³`).
pub const MAX_TORUS_POINTS: usize = 1 << 24;

/// `Σ_{k=1}^n a_k k^{-it}`. Serializes as `[[re, im], ...]` starting at `k = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirichletPolynomial {
    coeffs: Vec<Complex64>,
}

impl DirichletPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        ensure(!coeffs.is_empty(), "coeffs", "need at least one coefficient")?;
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient `a_k`, `k ≥ 1`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * Complex64::from_polar(1.0, -t * ((i + 1) as f64).ln()))
            .sum()
    }

    /// Number of primes up to `n`, i.e. the dimension of the lift.
    pub fn lift_dimension(&self) -> usize {
        primes_up_to(self.len()).len().max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BohrLift {
    pub primes: Vec<usize>,
    pub image: MultiPolynomial,
}

/// Sends `k^{-it}` with `k = ∏ p_j^{e_j}` to `z_1^{e_1} ··· z_d^{e_d}`.
pub fn bohr_lift(f: &DirichletPolynomial) -> BohrLift {
    let n = f.len();
    let primes = primes_up_to(n);
    let dims = primes.len().max(1);
    let spf = smallest_prime_factors(n);
    let mut image = MultiPolynomial::new(dims).expect("dims >= 1");
    for k in 1..=n {
        let mut exps = vec![0u32; dims];
        for (p, e) in factorize(k, &spf) {
            let j = primes.binary_search(&p).expect("prime factor of k <= n");
            exps[j] = e;
        }
        image.add_term(exps, f.coeff(k)).expect("matching dims");
    }
    BohrLift { primes, image }
}

fn abs_pow(v: Complex64, p: f64) -> f64 {
    let m2 = v.norm_sqr();
    if p == 2.0 {
        m2
    } else if p == 4.0 {
        m2 * m2
    } else if p == 1.0 {
        m2.sqrt()
    } else {
        m2.powf(0.5 * p)
    }
}

/// Terms of `f` with the first variable frozen at table row `row`.
fn freeze_first(terms: &[(Vec<u32>, Complex64)], row: &[Complex64]) -> Vec<(Vec<u32>, Complex64)> {
    let mut out: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
    for (e, c) in terms {
        *out.entry(e[1..].to_vec()).or_default() += c * row[e[0] as usize];
    }
    out.into_iter().collect()
}

/// Sum of `|f|^p` over the grid `(2π j / n)^d`, skipping points with all
/// indices even when `skip_even` is set.
fn grid_sum(
    terms: &[(Vec<u32>, Complex64)],
    table: &[Complex64],
    stride: usize,
    n: usize,
    p: f64,
    skip_even: bool,
) -> f64 {
    let d = terms.first().map_or(1, |(e, _)| e.len());
    if d == 1 {
        let mut dense = vec![Complex64::new(0.0, 0.0); stride];
        for (e, c) in terms {
            dense[e[0] as usize] += c;
        }
        let step = if skip_even { 2 } else { 1 };
        let start = if skip_even { 1 } else { 0 };
        return (start..n)
            .step_by(step)
            .map(|j| {
                let row = &table[j * stride..(j + 1) * stride];
                abs_pow(dense.iter().zip(row).map(|(a, e)| a * e).sum(), p)
            })
            .sum();
    }
    (0..n)
        .map(|j| {
            let frozen = freeze_first(terms, &table[j * stride..(j + 1) * stride]);
            grid_sum(&frozen, table, stride, n, p, skip_even && j % 2 == 0)
        })
        .sum()
}

/// `‖f‖_{H^p(T^d)}` by a tensor trapezoid rule with joint node doubling.
/// Each doubling reuses the previous level and only evaluates the new points.
pub fn hardy_norm_torus(f: &MultiPolynomial, p: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    quad.validate()?;
    let d = f.dims();
    if d > MAX_TORUS_DIM {
        return Err(LabError::DimensionTooLarge(d));
    }
    let terms: Vec<(Vec<u32>, Complex64)> = f.terms().map(|(e, c)| (e.to_vec(), c)).collect();
    if terms.is_empty() {
        return Ok(exact(0.0));
    }
    let stride = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize + 1;
    let axis_cap = (MAX_TORUS_POINTS as f64).powf(1.0 / d as f64).round() as usize;

    let level_sum = |n: usize, skip_even: bool| -> f64 {
        let table: Vec<Complex64> = (0..n)
            .flat_map(|j| {
                let s = 2.0 * PI * j as f64 / n as f64;
                (0..stride).map(move |k| Complex64::from_polar(1.0, k as f64 * s))
            })
            .collect();
        let slabs = map_indexed(n, |j| {
            if d == 1 {
                if skip_even && j % 2 == 0 {
                    return 0.0;
                }
                let v: Complex64 = terms.iter().map(|(e, c)| c * table[j * stride + e[0] as usize]).sum();
                return abs_pow(v, p);
            }
            let frozen = freeze_first(&terms, &table[j * stride..(j + 1) * stride]);
            grid_sum(&frozen, &table, stride, n, p, skip_even && j % 2 == 0)
        });
        slabs.iter().sum()
    };

    let mut n = quad.angular_nodes.min(axis_cap);
    let mut raw = level_sum(n, false);
    let mut value = raw / (n as f64).powi(d as i32);
    let mut diff = f64::INFINITY;
    let mut converged = false;
    for _ in 0..quad.max_doublings {
        if 2 * n > axis_cap {
            break;
        }
        n *= 2;
        raw += level_sum(n, true);
        let next = raw / (n as f64).powi(d as i32);
        diff = (next - value).abs();
        value = next;
        if diff <= quad.rel_tol * value.abs() {
            converged = true;
            break;
        }
    }
    Ok(NormReport {
        value,
        est_error: diff,
        angular_nodes: n,
        radial_nodes: 0,
        converged,
    }
    .pth_root(p))
}

/// `(Σ |a_k|² d_{p/2}(k))^{1/2}`.
pub fn dirichlet_series_rhs(f: &DirichletPolynomial, p: f64) -> Result<f64> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    let d = zeta_power_coeffs(p / 2.0, f.len())?;
    Ok(f.coeffs()
        .iter()
        .zip(&d.values)
        .map(|(a, w)| w * a.norm_sqr())
        .sum::<f64>()
        .sqrt())
}

fn lift_checked(f: &DirichletPolynomial) -> Result<BohrLift> {
    let lift = bohr_lift(f);
    if lift.primes.len() > MAX_TORUS_DIM {
        return Err(LabError::DimensionTooLarge(lift.primes.len()));
    }
    Ok(lift)
}

fn exact(value: f64) -> NormReport {
    NormReport {
        value,
        est_error: 0.0,
        angular_nodes: 0,
        radial_nodes: 0,
        converged: true,
    }
}

/// `‖f‖_{H^p}` of a Dirichlet polynomial (through its lift) against
/// `(Σ |a_k|² d_{p/2}(k))^{1/2}`.
pub fn verify_coro_dirichlet(f: &DirichletPolynomial, p: f64, quad: &QuadratureSpec) -> Result<InequalityCheck> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    let lift = lift_checked(f)?;
    let lhs = hardy_norm_torus(&lift.image, p, quad)?;
    let rhs = exact(dirichlet_series_rhs(f, p)?);
    Ok(InequalityCheck::new(lhs, rhs))
}

/// `(Σ |a_k|²/d_2(k))^{1/2} ≤ ‖f‖_{H^1}`.
pub fn helson_check(f: &DirichletPolynomial, quad: &QuadratureSpec) -> Result<InequalityCheck> {
    let lift = lift_checked(f)?;
    let d2 = zeta_power_coeffs(2.0, f.len())?;
    let lhs: f64 = f
        .coeffs()
        .iter()
        .zip(&d2.values)
        .map(|(a, w)| a.norm_sqr() / w)
        .sum::<f64>()
        .sqrt();
    let rhs = hardy_norm_torus(&lift.image, 1.0, quad)?;
    Ok(InequalityCheck::new(exact(lhs), rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub t: f64,
    /// `(1/2T) ∫_{-T}^{T} |f|^p dt`.
    pub partial_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesicovitchProbe {
    pub p: f64,
    pub ladder: Vec<LadderPoint>,
    /// `‖lift‖_{H^p(T^d)}^p`.
    pub torus_value: f64,
    /// `|last partial mean - torus value| / torus value`.
    pub relative_gap: f64,
    /// Gap within 5%; a miss is a warning, not an error.
    pub within_tolerance: bool,
}

/// Direct interval averages of `|f|^p` on `[-T, T]` along a doubling ladder ending at `t_max`.
pub fn besicovitch_probe(
    f: &DirichletPolynomial,
    p: f64,
    t_max: f64,
    steps: usize,
    quad: &QuadratureSpec,
) -> Result<BesicovitchProbe> {
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    ensure(t_max >= 1e3, "t_max", format!("must be >= 1000, got {t_max}"))?;
    ensure(steps >= 1, "steps", "must be >= 1")?;
    let lift = lift_checked(f)?;
    let torus_value = hardy_norm_torus(&lift.image, p, quad)?.value.powf(p);

    let rule = JacobiRule::legendre(10)?;
    let integrand = |t: f64| f.eval(t).norm().powf(p);
    let panel_integral = |a: f64, b: f64| -> f64 {
        let panels = ((b - a) / 0.5).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|i| {
                let lo = a + i as f64 * h;
                rule.nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(x, w)| w * integrand(lo + 0.5 * h * (1.0 + x)))
                    .sum::<f64>()
                    * 0.5
                    * h
            })
            .sum()
    };

    let mut ladder = Vec::with_capacity(steps);
    let mut t_prev = 0.0;
    let mut acc = 0.0;
    for j in 0..steps {
        let t = t_max / 2f64.powi((steps - 1 - j) as i32);
        acc += panel_integral(t_prev, t) + panel_integral(-t, -t_prev);
        ladder.push(LadderPoint {
            t,
            partial_mean: acc / (2.0 * t),
        });
        t_prev = t;
    }
    let last = ladder.last().map_or(0.0, |l| l.partial_mean);
    let relative_gap = if torus_value > 0.0 {
        (last - torus_value).abs() / torus_value
    } else {
        last.abs()
    };
    Ok(BesicovitchProbe {
        p,
        ladder,
        torus_value,
        relative_gap,
        within_tolerance: relative_gap <= 0.05,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lift_examples() {
        let f = DirichletPolynomial::new(vec![c(0.0, 0.0), c(2.5, 1.0)]).unwrap();
        let l = bohr_lift(&f);
        assert_eq!(l.primes, vec![2]);
        assert_eq!(l.image.coeff(&[1]), c(2.5, 1.0));

        let mut six = vec![c(0.0, 0.0); 6];
        six[5] = c(1.0, 0.0);
        let l = bohr_lift(&DirichletPolynomial::new(six).unwrap());
        assert_eq!(l.primes, vec![2, 3, 5]);
        assert_eq!(l.image.coeff(&[1, 1, 0]), c(1.0, 0.0));

        let f = DirichletPolynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let l = bohr_lift(&f);
        assert_eq!(l.image.coeff(&[0, 0]), c(1.0, 0.0));
        assert_eq!(l.image.coeff(&[1, 0]), c(2.0, 0.0));
        assert_eq!(l.image.coeff(&[0, 1]), c(3.0, 0.0));
        assert_eq!(l.image.coeff(&[2, 0]), c(4.0, 0.0));
        assert!(DirichletPolynomial::new(vec![]).is_err());
    }

    #[test]
    fn lift_evaluates_like_the_series() {
        // f(t) equals the lift at z_j = p_j^{-it}
        let f = DirichletPolynomial::new((1..=6).map(|k| c(k as f64, -0.5 * k as f64)).collect()).unwrap();
        let l = bohr_lift(&f);
        for t in [0.3, 2.0, -7.5] {
            let z: Vec<Complex64> = l
                .primes
                .iter()
                .map(|&p| Complex64::from_polar(1.0, -t * (p as f64).ln()))
                .collect();
            assert!((l.image.eval(&z) - f.eval(t)).norm() < 1e-12);
        }
    }

    #[test]
    fn torus_norm_examples() {
        let q = QuadratureSpec::default();
        let k = MultiPolynomial::from_terms(2, [(vec![0, 0], c(0.6, 0.8))]).unwrap();
        assert!((hardy_norm_torus(&k, 3.0, &q).unwrap().value - 1.0).abs() < 1e-14);
        let z1z2 = MultiPolynomial::from_terms(2, [(vec![1, 1], c(1.0, 0.0))]).unwrap();
        assert!((hardy_norm_torus(&z1z2, 2.5, &q).unwrap().value - 1.0).abs() < 1e-14);
        let f = MultiPolynomial::from_terms(2, [(vec![0, 0], c(1.0, 0.0)), (vec![1, 1], c(1.0, 0.0))]).unwrap();
        let v = hardy_norm_torus(&f, 4.0, &q).unwrap();
        assert!((v.value - 6f64.powf(0.25)).abs() < 1e-13);
        let big = MultiPolynomial::new(4).unwrap();
        assert!(matches!(
            hardy_norm_torus(&big, 2.0, &q),
            Err(LabError::DimensionTooLarge(4))
        ));
    }

    #[test]
    fn series_rhs_examples() {
        let a1 = DirichletPolynomial::new(vec![c(0.3, -0.4)]).unwrap();
        assert!((dirichlet_series_rhs(&a1, 3.0).unwrap() - 0.5).abs() < 1e-15);
        let mut six = vec![c(0.0, 0.0); 6];
        six[5] = c(1.0, 0.0);
        let f = DirichletPolynomial::new(six).unwrap();
        assert!((dirichlet_series_rhs(&f, 4.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(dirichlet_series_rhs(&f, 2.0).is_err());
    }

    #[test]
    fn reduction_case() {
        let q = QuadratureSpec::default();
        let f = DirichletPolynomial::from_real(&[1.0, 1.0]).unwrap();
        let r = verify_coro_dirichlet(&f, 4.0, &q).unwrap();
        assert!((r.lhs.value - 6f64.powf(0.25)).abs() < 1e-12);
        assert!((r.rhs.value - 3f64.sqrt()).abs() < 1e-15);
        assert!(r.ok);
    }

    #[test]
    fn rejects_large_dimension() {
        let f = DirichletPolynomial::from_real(&[1.0; 7]).unwrap();
        let q = QuadratureSpec::default();
        assert!(matches!(
            verify_coro_dirichlet(&f, 4.0, &q),
            Err(LabError::DimensionTooLarge(4))
        ));
        assert!(helson_check(&f, &q).is_err());
    }

    #[test]
    fn helson_single_terms() {
        let q = QuadratureSpec::with_tol(1e-10);
        let one = DirichletPolynomial::from_real(&[2.0]).unwrap();
        let r = helson_check(&one, &q).unwrap();
        assert!((r.lhs.value - 2.0).abs() < 1e-15 && (r.rhs.value - 2.0).abs() < 1e-14);
        let four = DirichletPolynomial::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = helson_check(&four, &q).unwrap();
        // d_2(4) = 3
        assert!((r.lhs.value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((r.rhs.value - 1.0).abs() < 1e-14);
        assert!(r.margin > 0.4);
    }

    #[test]
    fn besicovitch_constant_and_parseval() {
        let q = QuadratureSpec::default();
        let k = DirichletPolynomial::from_real(&[1.5]).unwrap();
        let probe = besicovitch_probe(&k, 3.0, 1000.0, 3, &q).unwrap();
        for pt in &probe.ladder {
            assert!((pt.partial_mean - 1.5f64.powi(3)).abs() < 1e-12);
        }
        let f = DirichletPolynomial::from_real(&[1.0, 1.0]).unwrap();
        let probe = besicovitch_probe(&f, 2.0, 4000.0, 4, &q).unwrap();
        assert_eq!(probe.ladder.len(), 4);
        assert!((probe.ladder[3].t - 4000.0).abs() < 1e-9);
        assert!((probe.torus_value - 2.0).abs() < 1e-13);
        assert!(probe.relative_gap < 1e-3);
        assert!(besicovitch_probe(&f, 2.0, 10.0, 2, &q).is_err());
    }
}
