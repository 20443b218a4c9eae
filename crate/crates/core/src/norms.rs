//! Norm functionals on the disk and circle.
//!
//! Coefficient-side norms (`D_β`, `A²_α`) are exact finite sums. Quadrature
//! norms (`M_p`, `H^p`, `A^p_α`) report an error estimate and a convergence
//! flag. For `p < 1` the values are computed the same way even though they
//! are only quasi-norms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeff::binom_coeffs;
use crate::error::{ensure, Result};
use crate::funcspace::{DiskFunction, MultiPolynomial, Polynomial};
use crate::quadrature::{breakpoints_u, circle_mean, disk_mean, NormReport, QuadratureSpec};

/// `‖f‖_{D_β} = (Σ c_β(n)|a_n|²)^{1/2}`.
pub fn dirichlet_norm(f: &Polynomial, beta: f64) -> Result<f64> {
    ensure(beta > 0.0, "beta", format!("must be > 0, got {beta}"))?;
    let c = binom_coeffs(beta, f.coeffs().len());
    Ok(f.coeffs()
        .iter()
        .zip(&c)
        .map(|(a, w)| w * a.norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `D_β(D^d)` norm, with weight `c_β(k_1)···c_β(k_d)` on each monomial.
pub fn dirichlet_norm_multi(f: &MultiPolynomial, beta: f64) -> Result<f64> {
    ensure(beta > 0.0, "beta", format!("must be > 0, got {beta}"))?;
    let max_exp = f.terms().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let c = binom_coeffs(beta, max_exp);
    Ok(f.terms()
        .map(|(e, a)| e.iter().map(|&k| c[k as usize]).product::<f64>() * a.norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `‖f‖_{A²_α} = (Σ |a_n|² / c_{α+2}(n))^{1/2}`; `α = -1` is `H²`.
pub fn bergman2_coeff_norm(f: &Polynomial, alpha: f64) -> Result<f64> {
    ensure(alpha >= -1.0, "alpha", format!("must be >= -1, got {alpha}"))?;
    let c = binom_coeffs(alpha + 2.0, f.coeffs().len());
    Ok(f.coeffs()
        .iter()
        .zip(&c)
        .map(|(a, w)| a.norm_sqr() / w)
        .sum::<f64>()
        .sqrt())
}

/// Integral mean `M_p(r, f)`.
pub fn mean_p(f: &dyn DiskFunction, r: f64, p: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure((0.0..=1.0).contains(&r), "r", format!("must lie in [0, 1], got {r}"))?;
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    quad.validate()?;
    let cm = circle_mean(
        |t| f.eval(Complex64::from_polar(r, t)).norm().powf(p),
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
    .pth_root(p))
}

/// `‖f‖_{H^p}` from boundary values.
pub fn hardy_norm(f: &dyn DiskFunction, p: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    mean_p(f, 1.0, p, quad)
}

/// `‖f‖_{H^p}` for even `p` by Parseval applied to `f^{p/2}`.
pub fn hardy_norm_even_exact(f: &Polynomial, p: u32) -> Result<f64> {
    ensure(
        p >= 2 && p.is_multiple_of(2),
        "p",
        format!("must be a positive even integer, got {p}"),
    )?;
    let power = f.powi(p / 2);
    Ok(power.coeff_l2().powf(2.0 / p as f64))
}

/// `‖f‖_{A^p_α}`, `α > -1`, normalized so that constants have norm `|c|`.
pub fn bergman_norm(f: &dyn DiskFunction, p: f64, alpha: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    ensure(alpha > -1.0, "alpha", format!("must be > -1, got {alpha}"))?;
    let breaks = breakpoints_u(&f.zero_moduli(), 1.0);
    let integrand = |z: Complex64| f.eval(z).norm().powf(p);
    Ok(disk_mean(&integrand, 1.0, alpha, &breaks, quad)?.pth_root(p))
}

/// `A^p_α` norm with the convention `A^p_{-1} = H^p`.
pub fn weighted_norm(f: &dyn DiskFunction, p: f64, alpha: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure(alpha >= -1.0, "alpha", format!("must be >= -1, got {alpha}"))?;
    if alpha == -1.0 {
        hardy_norm(f, p, quad)
    } else {
        bergman_norm(f, p, alpha, quad)
    }
}

/// `∫_{RD} |f'|² |f|^{p-2} dA` with the normalized area measure `dA = r dr dt / π`.
pub fn gradient_energy(f: &Polynomial, p: f64, radius: f64, quad: &QuadratureSpec) -> Result<NormReport> {
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    ensure(
        radius > 0.0 && radius <= 1.0,
        "radius",
        format!("must lie in (0, 1], got {radius}"),
    )?;
    let df = f.derivative();
    let breaks = breakpoints_u(&f.zero_moduli(), radius);
    let integrand = |z: Complex64| {
        let d = df.eval(z).norm_sqr();
        if d == 0.0 {
            0.0
        } else {
            d * f.eval(z).norm().powf(p - 2.0)
        }
    };
    let r2 = radius * radius;
    let mut rep = disk_mean(&integrand, radius, 0.0, &breaks, quad)?;
    rep.value *= r2;
    rep.est_error *= r2;
    Ok(rep)
}

/// Both sides of the Hardy–Stein identity at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardySteinReport {
    /// Central difference of `M_p^p` at `r`.
    pub derivative: f64,
    /// `(p²/2r) ∫_{rD} |f'|²|f|^{p-2} dA`.
    pub area_term: f64,
    pub residual: f64,
    /// `residual / |derivative|` (or `residual` when the derivative vanishes).
    pub relative: f64,
    pub step: f64,
    pub converged: bool,
}

/// Residual of `d/dr M_p^p(r,f) = (p²/2r) ∫_{rD} |f'|²|f|^{p-2} dA`.
pub fn hardy_stein_residual(f: &Polynomial, p: f64, r: f64, quad: &QuadratureSpec) -> Result<HardySteinReport> {
    ensure(p > 0.0, "p", format!("must be > 0, got {p}"))?;
    ensure(r > 0.0 && r < 1.0, "r", format!("must lie in (0, 1), got {r}"))?;
    ensure(f.degree().is_some(), "f", "must be nonzero")?;
    quad.validate()?;

    let h = 1e-4 * r.min(1.0 - r);
    let tol = quad.rel_tol.min(1e-13);
    let mpp = |rho: f64| {
        circle_mean(
            |t| f.eval(Complex64::from_polar(rho, t)).norm().powf(p),
            quad.angular_nodes,
            tol,
            quad.max_doublings,
        )
    };
    let (plus, minus) = (mpp(r + h), mpp(r - h));
    let derivative = (plus.value - minus.value) / (2.0 * h);

    let energy = gradient_energy(f, p, r, quad)?;
    let area_term = p * p / (2.0 * r) * energy.value;

    // for p < 2 the integrand blows up at zeros inside rD
    let singular = p < 2.0 && f.zero_moduli().iter().any(|&m| m <= r);
    let residual = (derivative - area_term).abs();
    let relative = if derivative != 0.0 {
        residual / derivative.abs()
    } else {
        residual
    };
    Ok(HardySteinReport {
        derivative,
        area_term,
        residual,
        relative,
        step: h,
        converged: plus.converged && minus.converged && energy.converged && !singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::AnalyticSampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dirichlet_norm_examples() {
        let f = Polynomial::from_real(&[1.0, 1.0]);
        assert!((dirichlet_norm(&f, 2.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        let k = Polynomial::constant(c(0.6, -0.8));
        assert!((dirichlet_norm(&k, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!(dirichlet_norm(&f, 0.0).is_err());
        let z1z2 = MultiPolynomial::from_terms(2, [(vec![1, 1], c(1.0, 0.0))]).unwrap();
        assert!((dirichlet_norm_multi(&z1z2, 2.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bergman2_coeff_examples() {
        for n in 0..20 {
            let zn = Polynomial::monomial(n, c(1.0, 0.0));
            let v = bergman2_coeff_norm(&zn, 0.0).unwrap();
            assert!((v - 1.0 / ((n + 1) as f64).sqrt()).abs() < 1e-15);
        }
        let f = Polynomial::new(vec![c(0.3, 0.4), c(-1.0, 2.0), c(0.0, 0.5)]);
        assert!((bergman2_coeff_norm(&f, -1.0).unwrap() - f.coeff_l2()).abs() < 1e-15);
        let g = Polynomial::from_real(&[1.0, 1.0]);
        let v = bergman2_coeff_norm(&g, 2.0 / 4.0 - 1.0).unwrap();
        assert!((v - (1.0 + 2.0 / 3.0f64).sqrt()).abs() < 1e-15);
        assert!(bergman2_coeff_norm(&g, -1.5).is_err());
    }

    #[test]
    fn mean_p_examples() {
        let q = QuadratureSpec::default();
        let f = Polynomial::new(vec![c(0.5, -1.0), c(2.0, 0.0), c(0.0, 1.0)]);
        let m = mean_p(&f, 0.0, 3.3, &q).unwrap();
        assert!((m.value - f.coeff(0).norm()).abs() < 1e-14);
        let z = Polynomial::monomial(1, c(1.0, 0.0));
        for r in [0.2, 0.7, 1.0] {
            assert!((mean_p(&z, r, 2.7, &q).unwrap().value - r).abs() < 1e-14);
        }
        let one_plus_z = Polynomial::from_real(&[1.0, 1.0]);
        let h4 = mean_p(&one_plus_z, 1.0, 4.0, &q).unwrap();
        assert!((h4.value - 6f64.powf(0.25)).abs() < 1e-14);
        assert!(h4.converged);
        assert!(mean_p(&z, 1.2, 2.0, &q).is_err());
    }

    #[test]
    fn even_exact_matches_quadrature() {
        let f = Polynomial::new(vec![c(0.5, -1.0), c(2.0, 0.0), c(0.0, 1.0), c(0.3, 0.3)]);
        let q = QuadratureSpec::default();
        for p in [2u32, 4, 6] {
            let exact = hardy_norm_even_exact(&f, p).unwrap();
            let quad = hardy_norm(&f, p as f64, &q).unwrap().value;
            assert!((exact - quad).abs() < 1e-12 * exact);
        }
        assert!(hardy_norm_even_exact(&f, 3).is_err());
    }

    #[test]
    fn bergman_norm_constants_and_monomials() {
        let q = QuadratureSpec::default();
        let k = Polynomial::constant(c(-1.2, 0.5));
        for (p, alpha) in [(1.0, 0.0), (2.5, -0.4), (4.0, 3.0)] {
            let v = bergman_norm(&k, p, alpha, &q).unwrap();
            assert!((v.value - 1.3).abs() < 1e-13, "p={p} alpha={alpha} {}", v.value);
        }
        for n in [0usize, 3, 10] {
            let zn = Polynomial::monomial(n, c(1.0, 0.0));
            let v = bergman_norm(&zn, 2.0, 0.0, &q).unwrap();
            assert!((v.value - 1.0 / ((n + 1) as f64).sqrt()).abs() < 1e-13);
        }
        assert!(bergman_norm(&k, 2.0, -1.0, &q).is_err());
    }

    #[test]
    fn kernel_has_unit_bergman_norm() {
        // p = 2, α = 0: ‖K‖² = (1-|ζ|²)² Σ (n+1)|ζ|^{2n} = 1 by the geometric series
        let q = QuadratureSpec::default();
        let k = AnalyticSampler::kernel(2.0, 0.0, c(0.5, 0.2), c(1.0, 0.0)).unwrap();
        let v = bergman_norm(&k, 2.0, 0.0, &q).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
        let k = AnalyticSampler::kernel(3.0, 0.5, c(-0.3, 0.6), c(1.0, 0.0)).unwrap();
        let v = bergman_norm(&k, 3.0, 0.5, &q).unwrap();
        assert!((v.value - 1.0).abs() < 1e-11);
        let v = weighted_norm(
            &AnalyticSampler::kernel(3.0, -1.0, c(0.7, 0.0), c(1.0, 0.0)).unwrap(),
            3.0,
            -1.0,
            &q,
        )
        .unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hardy_stein_examples() {
        let q = QuadratureSpec::default();
        let k = Polynomial::constant(c(2.0, 1.0));
        let rep = hardy_stein_residual(&k, 3.0, 0.5, &q).unwrap();
        assert_eq!(rep.residual, 0.0);

        let z = Polynomial::monomial(1, c(1.0, 0.0));
        let rep = hardy_stein_residual(&z, 2.0, 0.5, &q).unwrap();
        assert!((rep.derivative - 1.0).abs() < 1e-9);
        assert!((rep.area_term - 1.0).abs() < 1e-13);

        assert!(hardy_stein_residual(&Polynomial::default(), 2.0, 0.5, &q).is_err());
        assert!(hardy_stein_residual(&z, 2.0, 1.0, &q).is_err());
    }

    #[test]
    fn hardy_stein_flags_singular_integrand() {
        let q = QuadratureSpec::default();
        // zero at 0.3 inside the disk of radius 0.5
        let f = Polynomial::from_real(&[-0.3, 1.0]);
        let rep = hardy_stein_residual(&f, 1.5, 0.5, &q).unwrap();
        assert!(!rep.converged);
    }
}
