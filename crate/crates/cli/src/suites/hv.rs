use rand::Rng;
use serde_json::json;

use contraction_core::funcspace::TrigPolynomial;
use contraction_core::riesz::{hv_constant, hv_ratio};
use contraction_core::sampling::{complex_gaussian, random_trig_polynomial};

use super::{par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::CaseRecord;

pub const HV_Q: [f64; 4] = [4.0 / 3.0, 2.0, 3.0, 4.0];
pub const HV_SLACK: f64 = 1e-9;
const MAX_FREQ: i64 = 16;
const ANALYTIC_CASES: usize = 20;

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Hv, 1e-12);
    let quad = ctx.quad;
    let q_list = cfg.q.map_or_else(|| HV_Q.to_vec(), |q| vec![q]);
    let mut cases = Vec::new();
    for (qi, &q) in q_list.iter().enumerate() {
        let bound = hv_constant(q);
        let fuzz = par_cases(cfg.cases_or(1000), |i| {
            let mut rng = ctx.rng(qi as u64, i);
            let k = cfg.n.map_or_else(|| rng.random_range(1..=MAX_FREQ), |n| n as i64);
            let g = random_trig_polynomial(&mut rng, k);
            let (ratio, num, den) = hv_ratio(&g, q, &quad)?;
            Ok(CaseRecord::upper(
                format!("hv/q={q}/{i}"),
                json!({ "q": q, "case": i, "max_freq": k, "bound": bound }),
                ratio,
                bound + HV_SLACK,
                ratio * (num.est_error / num.value + den.est_error / den.value),
            ))
        })?;
        cases.extend(fuzz);
    }

    // analytic symbols are fixed by the projection, so the ratio is exactly one
    let analytic = par_cases(ANALYTIC_CASES, |i| {
        let mut rng = ctx.rng(u64::from(u16::MAX), i);
        let degree = rng.random_range(0..=2 * MAX_FREQ as usize);
        let g = TrigPolynomial::new(0, (0..=degree).map(|_| complex_gaussian(&mut rng)).collect());
        let (ratio, _, _) = hv_ratio(&g, 2.0, &quad)?;
        Ok(CaseRecord::upper(
            format!("hv/analytic/q=2/{i}"),
            json!({ "q": 2.0, "case": i, "degree": degree, "ratio": ratio }),
            (ratio - 1.0).abs(),
            0.0,
            0.0,
        ))
    })?;
    cases.extend(analytic);
    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}
