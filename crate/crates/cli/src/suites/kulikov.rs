use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use contraction_core::extremal::verify_kulikov;
use contraction_core::funcspace::AnalyticSampler;
use contraction_core::sampling::random_polynomial;

use super::{close, from_check, par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::{invalid, Result};

/// `(p, α, q, β)` on the balanced line `(α+2)/p = (β+2)/q`.
pub const TUPLES: [(f64, f64, f64, f64); 3] = [(2.0, -1.0, 4.0, 0.0), (2.0, -1.0, 6.0, 1.0), (3.0, -1.0, 6.0, 0.0)];
pub const KERNEL_TOL: f64 = 1e-7;

fn zetas() -> [Complex64; 4] {
    [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.4, 0.0),
        Complex64::new(0.4, 0.3),
        Complex64::new(0.9, 0.0),
    ]
}

fn tuples(cfg: &RunConfig) -> Result<Vec<(f64, f64, f64, f64)>> {
    match (cfg.p, cfg.alpha, cfg.q, cfg.beta) {
        (None, None, None, None) => Ok(TUPLES.to_vec()),
        (Some(p), Some(alpha), Some(q), Some(beta)) => Ok(vec![(p, alpha, q, beta)]),
        _ => Err(invalid("p", "kulikov overrides need all of --p, --alpha, --q, --beta")),
    }
}

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Kulikov, 1e-12);
    let quad = ctx.quad;
    let mut cases = Vec::new();
    for (t, (p, alpha, q, beta)) in tuples(cfg)?.into_iter().enumerate() {
        let label = format!("p={p}/alpha={alpha}/q={q}/beta={beta}");
        let fuzz = par_cases(cfg.cases_or(1000), |i| {
            let mut rng = ctx.rng(t as u64, i);
            let degree = cfg.n.unwrap_or_else(|| rng.random_range(1..=8));
            let f = random_polynomial(&mut rng, degree);
            let check = verify_kulikov(&f, p, q, alpha, beta, &quad)?;
            Ok(from_check(
                format!("kulikov/{label}/{i}"),
                json!({ "p": p, "alpha": alpha, "q": q, "beta": beta, "case": i, "degree": degree }),
                &check,
            ))
        })?;
        cases.extend(fuzz);

        let kernels = par_cases(zetas().len(), |z| {
            let zeta = zetas()[z];
            let k = AnalyticSampler::kernel(p, alpha, zeta, Complex64::new(0.8, -0.6))?;
            let check = verify_kulikov(&k, p, q, alpha, beta, &quad)?;
            Ok(close(
                format!("kulikov/{label}/kernel/{z}"),
                json!({ "p": p, "alpha": alpha, "q": q, "beta": beta, "zeta": [zeta.re, zeta.im], "rhs": check.rhs.value }),
                check.lhs.value,
                check.rhs.value,
                KERNEL_TOL,
            ))
        })?;
        cases.extend(kernels);
    }
    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}
