use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use contraction_core::funcspace::Polynomial;
use contraction_core::norms::{bergman2_coeff_norm, bergman_norm, hardy_norm, hardy_stein_residual};
use contraction_core::sampling::random_polynomial;

use super::{close, par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::CaseRecord;

const KNOWN_TOL: f64 = 1e-10;
const STEIN_TOL: f64 = 1e-6;
const STEIN_P: [f64; 3] = [2.5, 3.0, 4.0];
const STEIN_R: [f64; 3] = [0.3, 0.7, 0.95];

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Norms, 1e-12);
    let quad = ctx.quad;
    let mut cases = Vec::new();

    let one_plus_z = Polynomial::from_real(&[1.0, 1.0]);
    let h4 = hardy_norm(&one_plus_z, 4.0, &quad)?;
    cases.push(close(
        "norms/known/h4_one_plus_z".into(),
        json!({ "f": "1+z", "p": 4 }),
        h4.value,
        6f64.powf(0.25),
        KNOWN_TOL,
    ));
    let monomials = par_cases(51, |n| {
        let zn = Polynomial::monomial(n, Complex64::new(1.0, 0.0));
        let expected = 1.0 / ((n + 1) as f64).sqrt();
        let inputs = json!({ "f": format!("z^{n}"), "p": 2, "alpha": 0 });
        Ok([
            close(
                format!("norms/known/a2_z{n}/coeff"),
                inputs.clone(),
                bergman2_coeff_norm(&zn, 0.0)?,
                expected,
                KNOWN_TOL,
            ),
            close(
                format!("norms/known/a2_z{n}/quad"),
                inputs,
                bergman_norm(&zn, 2.0, 0.0, &quad)?.value,
                expected,
                KNOWN_TOL,
            ),
        ])
    })?;
    cases.extend(monomials.into_iter().flatten());

    let p_list = cfg.p_list(&STEIN_P);
    let stein = par_cases(cfg.cases_or(100), |i| {
        let mut rng = ctx.rng(0, i);
        let degree = cfg.n.unwrap_or_else(|| rng.random_range(1..=8));
        let f = random_polynomial(&mut rng, degree);
        let mut out = Vec::with_capacity(p_list.len() * STEIN_R.len());
        for &p in &p_list {
            for r in STEIN_R {
                let rep = hardy_stein_residual(&f, p, r, &quad)?;
                let rec = CaseRecord::upper(
                    format!("norms/hardy_stein/{i}/p={p}/r={r}"),
                    json!({ "case": i, "degree": degree, "p": p, "r": r, "step": rep.step }),
                    rep.relative,
                    STEIN_TOL,
                    0.0,
                );
                out.push(if rep.converged {
                    rec
                } else {
                    rec.with_note("quadrature not converged")
                });
            }
        }
        Ok(out)
    })?;
    cases.extend(stein.into_iter().flatten());

    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}
