//! The Riesz projection `P_+` and its contraction properties.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::funcspace::{riesz_test_function, CircleFunction, Polynomial, TrigPolynomial};
use crate::norms::bergman2_coeff_norm;
use crate::par::map_indexed;
use crate::quadrature::{circle_mean, NormReport, QuadratureSpec};
use crate::sampling::{case_rng, random_trig_polynomial};

/// Keeps the nonnegative frequencies.
pub fn project(f: &TrigPolynomial) -> Polynomial {
    let hi = f.max_freq();
    if hi < 0 {
        return Polynomial::default();
    }
    Polynomial::new((0..=hi).map(|k| f.coeff(k)).collect())
}

/// `‖F‖_{L^{p'}(T)}` by the doubling trapezoid rule.
pub fn lp_circle_norm(f: &dyn CircleFunction, p_prime: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure(p_prime >= 1.0, "p_prime", format!("must be >= 1, got {p_prime}"))?;
    quad.validate()?;
    let cm = circle_mean(
        |t| f.at_angle(t).norm().powf(p_prime),
        quad.angular_nodes,
        quad.rel_tol,
        quad.max_doublings,
    );
    Ok(NormReport {
        value: cm.value,
        est_error: cm.est_error,
        angular_nodes: cm.nodes,
        radial_nodes: 0,
        converged: cm.converged,
    }
    .pth_root(p_prime))
}

/// Fourier coefficients from `size` equispaced samples (frequencies
/// `-size/2 .. size/2 - 1`).
pub fn sampled_coefficients(f: &dyn CircleFunction, size: usize) -> Result<TrigPolynomial> {
    ensure(
        size >= 2 && size.is_power_of_two(),
        "size",
        "must be a power of two >= 2",
    )?;
    let mut buf: Vec<Complex64> = (0..size)
        .map(|j| f.at_angle(2.0 * PI * j as f64 / size as f64))
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    let half = size / 2;
    let scale = 1.0 / size as f64;
    // reorder to increasing frequency: indices half..size are negative
    let coeffs = buf[half..].iter().chain(&buf[..half]).map(|c| c * scale).collect();
    Ok(TrigPolynomial::new(-(half as i64), coeffs))
}

/// DFT size for a spectrum inside `[-k_max, k_max]`: `2 k_max + 1` rounded up to a power of two.
pub fn analysis_size(k_max: usize) -> usize {
    (2 * k_max + 1).next_power_of_two()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    /// `‖P_+F‖_{A²_α}`.
    pub lhs: f64,
    /// `‖F‖_{L^{p'}}`.
    pub rhs: f64,
    pub ratio: f64,
    pub rhs_err: f64,
    pub p: f64,
    pub p_prime: f64,
    pub alpha: f64,
    pub eps: Option<f64>,
}

pub fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

/// `‖P_+F‖_{A²_α} / ‖F‖_{L^{p'}}`.
pub fn contraction_check(f: &TrigPolynomial, p: f64, alpha: f64, quad: &QuadratureSpec) -> Result<ProjectionReport> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    ensure(alpha > -1.0, "alpha", format!("must be > -1, got {alpha}"))?;
    let p_prime = conjugate_exponent(p);
    let lhs = bergman2_coeff_norm(&project(f), alpha)?;
    let rhs = lp_circle_norm(f, p_prime, quad)?;
    Ok(ProjectionReport {
        lhs,
        rhs: rhs.value,
        ratio: lhs / rhs.value,
        rhs_err: rhs.est_error,
        p,
        p_prime,
        alpha,
        eps: None,
    })
}

/// `m` points `sin(πj / 2(m+1))`, `j = 1..=m`, accumulating at 1.
pub fn default_epsilon_grid(m: usize) -> Vec<f64> {
    (1..=m).map(|j| (0.5 * PI * j as f64 / (m + 1) as f64).sin()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonScan {
    pub p: f64,
    pub alpha: f64,
    pub points: Vec<ProjectionReport>,
    /// Smallest grid `ε` with ratio above one, if any.
    pub first_violation: Option<f64>,
}

/// Scans the test family `F_ε` for a violation of `‖P_+F_ε‖_{A²_α} ≤ ‖F_ε‖_{L^{p'}}`.
pub fn epsilon_scan(p: f64, alpha: f64, grid: &[f64], quad: &QuadratureSpec) -> Result<EpsilonScan> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    ensure(alpha > -1.0, "alpha", format!("must be > -1, got {alpha}"))?;
    ensure(
        grid.windows(2).all(|w| w[0] < w[1]),
        "eps_grid",
        "must be strictly increasing",
    )?;
    let p_prime = conjugate_exponent(p);
    let mut points = Vec::with_capacity(grid.len());
    let mut first_violation = None;
    for &eps in grid {
        let (sampler, projected) = riesz_test_function(p_prime, eps)?;
        let lhs = bergman2_coeff_norm(&project(&projected), alpha)?;
        let rhs = lp_circle_norm(&sampler, p_prime, quad)?;
        let ratio = lhs / rhs.value;
        if ratio > 1.0 && first_violation.is_none() {
            first_violation = Some(eps);
        }
        points.push(ProjectionReport {
            lhs,
            rhs: rhs.value,
            ratio,
            rhs_err: rhs.est_error,
            p,
            p_prime,
            alpha,
            eps: Some(eps),
        });
    }
    Ok(EpsilonScan {
        p,
        alpha,
        points,
        first_violation,
    })
}

/// Sharp `L^q` norm of the Riesz projection, `csc(π/q)`.
pub fn hv_constant(q: f64) -> f64 {
    1.0 / (PI / q).sin()
}

/// `(‖P_+G‖_{H^q} / ‖G‖_{L^q}, numerator, denominator)`.
pub fn hv_ratio(g: &TrigPolynomial, q: f64, quad: &QuadratureSpec) -> Result<(f64, NormReport, NormReport)> {
    ensure(q > 1.0, "q", format!("must be > 1, got {q}"))?;
    let projected = TrigPolynomial::new(0, project(g).coeffs().to_vec());
    let projected = if g.min_freq() == 0 { g.clone() } else { projected };
    let num = lp_circle_norm(&projected, q, quad)?;
    let den = lp_circle_norm(g, q, quad)?;
    Ok((num.value / den.value, num, den))
}

/// Fixed-grid evaluation of `log ‖P_+G‖_q - log ‖G‖_q` and its gradient.
struct HvObjective {
    q: f64,
    lo: i64,
    len: usize,
    table: Vec<Complex64>,
    nodes: usize,
}

impl HvObjective {
    fn new(q: f64, lo: i64, len: usize, nodes: usize) -> Self {
        let mut table = Vec::with_capacity(nodes * len);
        for j in 0..nodes {
            let t = 2.0 * PI * j as f64 / nodes as f64;
            for i in 0..len {
                table.push(Complex64::from_polar(1.0, (lo + i as i64) as f64 * t));
            }
        }
        Self {
            q,
            lo,
            len,
            table,
            nodes,
        }
    }

    fn eval(&self, g: &[Complex64]) -> (f64, Vec<Complex64>) {
        let first_nonneg = (-self.lo).max(0) as usize;
        let (mut a, mut b) = (0.0, 0.0);
        let mut ga = vec![Complex64::new(0.0, 0.0); self.len];
        let mut gb = vec![Complex64::new(0.0, 0.0); self.len];
        for row in self.table.chunks_exact(self.len) {
            let mut full = Complex64::new(0.0, 0.0);
            let mut plus = Complex64::new(0.0, 0.0);
            for (i, (e, c)) in row.iter().zip(g).enumerate() {
                let v = e * c;
                full += v;
                if i >= first_nonneg {
                    plus += v;
                }
            }
            let (mf, mp) = (full.norm_sqr(), plus.norm_sqr());
            let wf = if mf > 0.0 { mf.powf(0.5 * self.q - 1.0) } else { 0.0 };
            let wp = if mp > 0.0 { mp.powf(0.5 * self.q - 1.0) } else { 0.0 };
            b += wf * mf;
            a += wp * mp;
            for (i, e) in row.iter().enumerate() {
                gb[i] += full * wf * e.conj();
                if i >= first_nonneg {
                    ga[i] += plus * wp * e.conj();
                }
            }
        }
        let n = self.nodes as f64;
        let (a, b) = (a / n, b / n);
        let grad = ga.iter().zip(&gb).map(|(x, y)| x / (n * a) - y / (n * b)).collect();
        ((a.ln() - b.ln()) / self.q, grad)
    }
}

/// Local ascent of the projection ratio starting from `g`. Returns the
/// refined polynomial (unit coefficient norm).
pub fn refine_hv(g: &TrigPolynomial, q: f64, iters: usize) -> Result<TrigPolynomial> {
    ensure(q > 1.0, "q", format!("must be > 1, got {q}"))?;
    let len = (g.max_freq() - g.min_freq() + 1) as usize;
    let nodes = (8 * len).next_power_of_two().max(256);
    let obj = HvObjective::new(q, g.min_freq(), len, nodes);
    let normalize = |v: &mut Vec<Complex64>| {
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= n);
    };
    let mut x: Vec<Complex64> = g.iter().map(|(_, c)| c).collect();
    normalize(&mut x);
    let (mut value, mut grad) = obj.eval(&x);
    let mut step = 0.05;
    for _ in 0..iters {
        let gnorm2: f64 = grad.iter().map(|c| c.norm_sqr()).sum();
        if gnorm2 < 1e-24 {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let mut trial: Vec<Complex64> = x.iter().zip(&grad).map(|(a, d)| a + d * step).collect();
            normalize(&mut trial);
            let (tv, tg) = obj.eval(&trial);
            if tv.is_finite() && tv >= value + 1e-4 * step * gnorm2 {
                x = trial;
                value = tv;
                grad = tg;
                step *= 1.5;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Ok(TrigPolynomial::new(g.min_freq(), x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HvProbe {
    pub q: f64,
    pub bound: f64,
    pub trials: usize,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Best ratio after local ascent from the best corpus members.
    pub refined_ratio: f64,
    pub violations: usize,
}

/// Random-corpus probe of `‖P_+G‖_{H^q} ≤ csc(π/q) ‖G‖_{L^q}`.
pub fn hv_bound_probe(
    q: f64,
    trials: usize,
    max_freq: i64,
    seed: u64,
    refine_iters: usize,
    quad: &QuadratureSpec,
) -> Result<HvProbe> {
    ensure(q > 1.0 && q.is_finite(), "q", format!("must lie in (1, ∞), got {q}"))?;
    ensure(trials >= 1, "trials", "must be >= 1")?;
    let bound = hv_constant(q);
    let corpus: Vec<TrigPolynomial> = (0..trials)
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let k = rng.random_range(1..=max_freq.max(1));
            random_trig_polynomial(&mut rng, k)
        })
        .collect();
    let mut ratios = map_indexed(trials, |i| hv_ratio(&corpus[i], q, quad).map(|r| r.0))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);

    let mut refined_ratio = max_ratio;
    if refine_iters > 0 {
        let mut order: Vec<usize> = (0..trials).collect();
        order.sort_by(|&a, &b| ratios[b].total_cmp(&ratios[a]));
        for &i in order.iter().take(3) {
            // embed in the full band so the ascent can use every frequency
            let band = max_freq.max(1);
            let padded: Vec<Complex64> = (-band..=band).map(|k| corpus[i].coeff(k)).collect();
            let g = refine_hv(&TrigPolynomial::new(-band, padded), q, refine_iters)?;
            let (r, _, _) = hv_ratio(&g, q, quad)?;
            ratios.push(r);
            refined_ratio = refined_ratio.max(r);
        }
    }
    let violations = ratios.iter().filter(|&&r| r > bound * (1.0 + 1e-9)).count();
    Ok(HvProbe {
        q,
        bound,
        trials,
        ratios,
        max_ratio,
        refined_ratio,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::riesz_test_series;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn projection_examples() {
        let f = TrigPolynomial::from_pairs(&[(-1, c(1.0, 0.0)), (0, c(1.0, 0.0)), (1, c(1.0, 0.0))]);
        assert_eq!(project(&f), Polynomial::from_real(&[1.0, 1.0]));
        let g = TrigPolynomial::new(0, vec![c(0.5, 1.0), c(0.0, -2.0), c(3.0, 0.0)]);
        assert_eq!(project(&g).coeffs(), &[c(0.5, 1.0), c(0.0, -2.0), c(3.0, 0.0)]);
        let neg = TrigPolynomial::new(-3, vec![c(1.0, 0.0)]);
        assert_eq!(project(&neg).degree(), None);
    }

    #[test]
    fn sampled_projection_matches_closed_form() {
        for (p_prime, eps) in [(1.5, 0.3), (4.0 / 3.0, 0.7), (1.9, 0.9)] {
            let (sampler, closed) = riesz_test_function(p_prime, eps).unwrap();
            let spec = sampled_coefficients(&sampler, 4096).unwrap();
            let proj = project(&spec);
            assert!((proj.coeff(0) - closed.coeff(0)).norm() < 1e-10);
            assert!((proj.coeff(1) - closed.coeff(1)).norm() < 1e-10);
            for k in 2..50 {
                assert!(proj.coeff(k).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn lp_norm_examples() {
        let q = QuadratureSpec::default();
        let k = TrigPolynomial::new(0, vec![c(-3.0, 4.0)]);
        assert!((lp_circle_norm(&k, 1.3, &q).unwrap().value - 5.0).abs() < 1e-14);
        let e = TrigPolynomial::new(-5, vec![c(1.0, 0.0)]);
        assert!((lp_circle_norm(&e, 2.7, &q).unwrap().value - 1.0).abs() < 1e-14);
        assert!(lp_circle_norm(&e, 0.5, &q).is_err());
    }

    #[test]
    fn f_eps_l2_norm_by_parseval() {
        // p' = 2: F_ε = 1 - εe^{it}, ‖F_ε‖_2 = (1 + ε²)^{1/2}
        let q = QuadratureSpec::default();
        let (s, _) = riesz_test_function(2.0, 0.8).unwrap();
        let v = lp_circle_norm(&s, 2.0, &q).unwrap().value;
        assert!((v - (1.64f64).sqrt()).abs() < 1e-14);
        // general p': Parseval of the coefficient expansion for the L² norm
        let series = riesz_test_series(1.5, 0.8, 1e-17).unwrap();
        let parseval: f64 = series.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
        let (s, _) = riesz_test_function(1.5, 0.8).unwrap();
        let quad = lp_circle_norm(&s, 2.0, &q).unwrap().value;
        assert!((parseval - quad).abs() < 1e-12);
    }

    #[test]
    fn default_grid_shape() {
        let g = default_epsilon_grid(64);
        assert_eq!(g.len(), 64);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g[63] > 0.999 && g[63] < 1.0);
        assert!(g[0] > 0.0);
    }

    #[test]
    fn scan_rejects_bad_grid() {
        let q = QuadratureSpec::default();
        assert!(epsilon_scan(4.0, 0.0, &[0.5, 0.4], &q).is_err());
        assert!(epsilon_scan(2.0, 0.0, &[0.5], &q).is_err());
    }

    #[test]
    fn hv_analytic_ratio_is_one() {
        let q = QuadratureSpec::default();
        let g = TrigPolynomial::new(0, vec![c(1.0, 0.2), c(-0.4, 0.9), c(0.3, 0.0)]);
        for exp in [4.0 / 3.0, 2.0, 3.0] {
            assert_eq!(hv_ratio(&g, exp, &q).unwrap().0, 1.0);
        }
        assert!((hv_constant(2.0) - 1.0).abs() < 1e-15);
        assert!((hv_constant(4.0) - 2f64.sqrt()).abs() < 1e-15);
    }
}
