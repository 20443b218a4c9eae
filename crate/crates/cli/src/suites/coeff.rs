use rand::Rng;
use serde_json::json;

use contraction_core::coeff::{binom_coeffs, monotone_sequence, zeta_power_coeffs};

use super::{par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::CaseRecord;

const N_MAX: usize = 10_000;
const K_MAX: usize = 1000;
const GAMMA_TOL: f64 = 1e-12;
const P_GRID: [f64; 6] = [2.1, 2.5, 3.0, 4.0, 10.0, 50.0];

/// Bernoulli tail of Stirling's series for ln Γ(y), accurate to rounding for y ≥ 20.
fn stirling_tail(y: f64) -> f64 {
    let y2 = y * y;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * y2)) / y2) / y2) / y2) / y
}

fn ln_gamma(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut y = x;
    while y < 20.0 {
        shift += y.ln();
        y += 1.0;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + stirling_tail(y) - shift
}

/// `ln Γ(x + a) - ln Γ(x)` without cancellation between two large logarithms.
fn ln_gamma_shift(x: f64, a: f64) -> f64 {
    let mut correction = 0.0;
    let mut y = x;
    while y < 20.0 || y + a < 20.0 {
        correction += (a / y).ln_1p();
        y += 1.0;
    }
    a * y.ln() + (y + a - 0.5) * (a / y).ln_1p() - a + stirling_tail(y + a) - stirling_tail(y) - correction
}

/// `Γ(n+β) / (Γ(β) n!)`.
pub(crate) fn gamma_ratio(beta: f64, n: usize) -> f64 {
    (ln_gamma_shift(n as f64 + 1.0, beta - 1.0) - ln_gamma(beta)).exp()
}

fn divisor_count(k: usize) -> usize {
    let mut count = 0;
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            count += if d * d == k { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

fn exact_sequence(id: &str, beta: f64, expected: impl Fn(usize) -> f64) -> CaseRecord {
    let c = binom_coeffs(beta, N_MAX);
    let mismatches = (0..=N_MAX).filter(|&n| c[n] != expected(n)).count();
    let worst = (0..=N_MAX).map(|n| (c[n] - expected(n)).abs()).fold(0.0, f64::max);
    CaseRecord::upper(id, json!({ "beta": beta, "n_max": N_MAX }), worst, 0.0, 0.0)
        .require(mismatches == 0, "inexact entries")
}

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Coeff, 1e-12);
    let mut cases = vec![
        exact_sequence("coeff/c2_is_n_plus_1", 2.0, |n| (n + 1) as f64),
        exact_sequence("coeff/c1_is_one", 1.0, |_| 1.0),
    ];

    // each case draws one β and compares the recurrence with Γ along a random sample of n
    let gamma = par_cases(cfg.cases_or(200), |i| {
        let mut rng = ctx.rng(0, i);
        let beta: f64 = cfg.beta.unwrap_or_else(|| 50.0 * (1.0 - rng.random::<f64>()));
        let c = binom_coeffs(beta, N_MAX);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let n = rng.random_range(0..=N_MAX);
            worst = worst.max((c[n] / gamma_ratio(beta, n) - 1.0).abs());
        }
        Ok(CaseRecord::upper(
            format!("coeff/gamma_ratio/{i}"),
            json!({ "beta": beta, "samples": 50 }),
            worst,
            GAMMA_TOL,
            0.0,
        ))
    })?;
    cases.extend(gamma);

    for p in cfg.p_list(&P_GRID) {
        let a: Vec<f64> = (1..=K_MAX + 1)
            .map(|k| monotone_sequence(p, k))
            .collect::<std::result::Result<_, _>>()?;
        let steps: Vec<f64> = a.windows(2).map(|w| w[1] / w[0] - 1.0).collect();
        let violations = a.windows(2).filter(|w| w[1] <= w[0]).count();
        let min_step = steps.iter().copied().fold(f64::INFINITY, f64::min);
        cases.push(
            CaseRecord::lower(
                format!("coeff/monotone/p={p}"),
                json!({ "p": p, "k_max": K_MAX }),
                min_step,
                0.0,
                0.0,
            )
            .require(violations == 0, "A_k not strictly increasing"),
        );

        let half = binom_coeffs(p / 2.0, K_MAX);
        let dual = binom_coeffs(2.0 / p + 1.0, K_MAX);
        let bound = |k: usize| p / 2.0 * k as f64 / dual[k - 1];
        let violations = (1..=K_MAX).filter(|&k| bound(k) > half[k]).count();
        let worst = (1..=K_MAX).map(|k| bound(k) / half[k]).fold(0.0, f64::max);
        cases.push(
            CaseRecord::upper(
                format!("coeff/weight_bound/p={p}"),
                json!({ "p": p, "k_max": K_MAX }),
                worst,
                1.0,
                0.0,
            )
            .require(violations == 0, "weight bound violated"),
        );
    }

    let d2 = zeta_power_coeffs(2.0, N_MAX)?;
    let mismatches = (1..=N_MAX).filter(|&k| d2.get(k) != divisor_count(k) as f64).count();
    cases.push(CaseRecord::upper(
        "coeff/d2_divisor_count",
        json!({ "k_max": N_MAX }),
        mismatches as f64,
        0.0,
        0.0,
    ));

    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_reproduces_small_values() {
        assert!((gamma_ratio(0.5, 3) - 0.3125).abs() < 1e-15);
        assert!((gamma_ratio(2.5, 3) - 6.5625).abs() < 1e-13);
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(36), 9);
        assert_eq!(divisor_count(97), 2);
    }
}
