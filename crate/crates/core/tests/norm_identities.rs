use contraction_core::funcspace::{AnalyticSampler, Polynomial};
use contraction_core::norms::{
    bergman2_coeff_norm, bergman_norm, hardy_norm, hardy_norm_even_exact, hardy_stein_residual, mean_p, weighted_norm,
};
use contraction_core::quadrature::QuadratureSpec;
use contraction_core::sampling::{case_rng, random_polynomial};
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn known_values() {
    let q = QuadratureSpec::default();
    let one_plus_z = Polynomial::from_real(&[1.0, 1.0]);
    let h4 = hardy_norm(&one_plus_z, 4.0, &q).unwrap();
    assert!((h4.value - 6f64.powf(0.25)).abs() < 1e-10);
    for n in 0..=50 {
        let zn = Polynomial::monomial(n, c(1.0, 0.0));
        let expected = 1.0 / ((n + 1) as f64).sqrt();
        assert!((bergman2_coeff_norm(&zn, 0.0).unwrap() - expected).abs() < 1e-10);
        let quad = bergman_norm(&zn, 2.0, 0.0, &q).unwrap();
        assert!((quad.value - expected).abs() < 1e-10, "n={n}: {}", quad.value);
    }
}

#[test]
fn quadrature_matches_coefficient_norm_for_p_two() {
    let q = QuadratureSpec::default();
    for i in 0..30 {
        let mut rng = case_rng(11, i);
        let degree = rng.random_range(0..12);
        let f = random_polynomial(&mut rng, degree);
        let alpha = -0.9 + 4.0 * rng.random::<f64>();
        let exact = bergman2_coeff_norm(&f, alpha).unwrap();
        let quad = bergman_norm(&f, 2.0, alpha, &q).unwrap();
        assert!((quad.value - exact).abs() < 1e-11 * exact, "alpha={alpha}");
        let hardy = hardy_norm(&f, 2.0, &q).unwrap().value;
        assert!((hardy - f.coeff_l2()).abs() < 1e-12 * hardy);
    }
}

#[test]
fn even_exponents_agree_with_parseval() {
    let q = QuadratureSpec::default();
    for i in 0..20 {
        let mut rng = case_rng(12, i);
        let degree = rng.random_range(1..9);
        let f = random_polynomial(&mut rng, degree);
        for p in [2u32, 4, 6, 8] {
            let exact = hardy_norm_even_exact(&f, p).unwrap();
            let quad = hardy_norm(&f, p as f64, &q).unwrap().value;
            assert!((exact - quad).abs() < 1e-12 * exact);
        }
    }
}

#[test]
fn norms_decrease_with_the_weight() {
    let q = QuadratureSpec::default();
    for i in 0..10 {
        let mut rng = case_rng(13, i);
        let degree = rng.random_range(1..7);
        let f = random_polynomial(&mut rng, degree);
        for p in [1.0, 2.5, 4.0] {
            let mut prev = weighted_norm(&f, p, -1.0, &q).unwrap().value;
            for alpha in [-0.5, 0.0, 1.0, 3.0] {
                let next = weighted_norm(&f, p, alpha, &q).unwrap().value;
                assert!(next <= prev * (1.0 + 1e-12), "p={p} alpha={alpha}");
                prev = next;
            }
        }
    }
}

#[test]
fn integral_means_grow_and_match_dilation() {
    let q = QuadratureSpec::default();
    let mut rng = case_rng(14, 0);
    let f = random_polynomial(&mut rng, 6);
    for p in [0.7, 2.0, 3.3] {
        let mut prev = 0.0;
        for r in [0.0, 0.2, 0.5, 0.8, 1.0] {
            let m = mean_p(&f, r, p, &q).unwrap().value;
            assert!(m >= prev * (1.0 - 1e-13));
            prev = m;
            let dilated = hardy_norm(&f.dilate(r).unwrap(), p, &q).unwrap().value;
            assert!((dilated - m).abs() < 1e-12 * m.max(1e-300));
        }
    }
}

#[test]
fn reproducing_kernels_have_unit_norm() {
    let q = QuadratureSpec::default();
    let zetas = [c(0.0, 0.0), c(0.4, 0.0), c(0.4, 0.3), c(-0.2, 0.7)];
    for (p, alpha) in [(2.0, -1.0), (3.0, -1.0), (2.0, 0.0), (4.0, 0.0), (6.0, 1.0), (1.5, 0.5)] {
        for zeta in zetas {
            let k = AnalyticSampler::kernel(p, alpha, zeta, c(1.0, 0.0)).unwrap();
            let v = weighted_norm(&k, p, alpha, &q).unwrap();
            assert!(
                (v.value - 1.0).abs() < 1e-9,
                "p={p} alpha={alpha} zeta={zeta}: {}",
                v.value
            );
        }
    }
}

#[test]
fn hardy_stein_on_random_polynomials() {
    let q = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for i in 0..12 {
        let mut rng = case_rng(15, i);
        let degree = rng.random_range(1..=8);
        let f = random_polynomial(&mut rng, degree);
        for p in [2.5, 3.0, 4.0] {
            for r in [0.3, 0.7, 0.95] {
                let rep = hardy_stein_residual(&f, p, r, &q).unwrap();
                worst = worst.max(rep.relative);
                assert!(rep.relative < 1e-6, "case {i} p={p} r={r}: {rep:?}");
            }
        }
    }
    println!("worst relative residual {worst:e}");
}
