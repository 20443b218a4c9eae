use rand::Rng;
use serde_json::json;

use contraction_core::extremal::key_property_chain;
use contraction_core::sampling::random_polynomial;

use super::{par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::CaseRecord;

pub const KEYCHAIN_P: [f64; 3] = [2.5, 3.0, 4.0];
pub const IDENTITY_TOL: f64 = 1e-10;

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Keychain, 1e-9);
    let quad = ctx.quad;
    let mut cases = Vec::new();
    for (pi, p) in cfg.p_list(&KEYCHAIN_P).into_iter().enumerate() {
        let chunk = par_cases(cfg.cases_or(1000), |i| {
            let mut rng = ctx.rng(pi as u64, i);
            let degree = cfg.n.unwrap_or_else(|| rng.random_range(1..=8));
            let f = random_polynomial(&mut rng, degree);
            let r = key_property_chain(&f, p, &quad)?;
            let inputs = json!({ "p": p, "case": i, "degree": degree });
            let id = |part: &str| format!("keychain/p={p}/{i}/{part}");
            let mut holder = CaseRecord::upper(
                id("integral_le_holder"),
                inputs.clone(),
                r.integral,
                r.holder,
                r.integral_err + r.holder_err,
            );
            holder.pass = r.holder_ok;
            let mut kulikov = CaseRecord::upper(
                id("holder_le_kulikov"),
                inputs.clone(),
                r.holder,
                r.kulikov,
                r.holder_err + r.kulikov_err,
            );
            kulikov.pass = r.kulikov_ok;
            let identity = CaseRecord::upper(id("coeff_identity"), inputs, r.identity_rel_error, IDENTITY_TOL, 0.0);
            Ok([holder, kulikov, identity])
        })?;
        cases.extend(chunk.into_iter().flatten());
    }
    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}
