use rand::Rng;
use serde_json::json;

use contraction_core::dirichlet::{besicovitch_probe, helson_check, verify_coro_dirichlet, DirichletPolynomial};
use contraction_core::sampling::random_dirichlet;

use super::{close, from_check, par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::{CaseRecord, PlotKind, Series};

pub const DIRICHLET_P: [f64; 2] = [2.5, 4.0];
pub const REDUCTION_TOL: f64 = 1e-8;
pub const DIRICHLET_N_MAX: usize = 4;
const CASES: usize = 500;
const LADDER_T_MAX: f64 = 1e4;
const LADDER_STEPS: usize = 5;

fn corpus_member(ctx: &Ctx, i: usize) -> (usize, DirichletPolynomial) {
    let mut rng = ctx.rng(0, i);
    let n = ctx.cfg.n.unwrap_or_else(|| rng.random_range(1..=DIRICHLET_N_MAX));
    (n, random_dirichlet(&mut rng, n))
}

pub(super) fn run_dirichlet(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Dirichlet, 1e-12);
    let quad = ctx.quad;
    let p_list = cfg.p_list(&DIRICHLET_P);
    let fuzz = par_cases(cfg.cases_or(CASES), |i| {
        let (n, f) = corpus_member(&ctx, i);
        p_list
            .iter()
            .map(|&p| {
                let check = verify_coro_dirichlet(&f, p, &quad)?;
                Ok(from_check(
                    format!("dirichlet/p={p}/{i}"),
                    json!({ "p": p, "case": i, "n": n }),
                    &check,
                ))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut cases: Vec<CaseRecord> = fuzz.into_iter().flatten().collect();

    let reduction = DirichletPolynomial::from_real(&[1.0, 1.0])?;
    let check = verify_coro_dirichlet(&reduction, 4.0, &quad)?;
    let inputs = json!({ "f": "1 + 2^(-it)", "p": 4 });
    cases.push(close(
        "dirichlet/reduction/lhs".into(),
        inputs.clone(),
        check.lhs.value,
        6f64.powf(0.25),
        REDUCTION_TOL,
    ));
    cases.push(close(
        "dirichlet/reduction/rhs".into(),
        inputs.clone(),
        check.rhs.value,
        3f64.sqrt(),
        REDUCTION_TOL,
    ));
    cases.push(from_check("dirichlet/reduction/inequality".into(), inputs, &check));

    let f = DirichletPolynomial::from_real(&[1.0, 1.0, 1.0])?;
    let probe = besicovitch_probe(&f, 4.0, LADDER_T_MAX, LADDER_STEPS, &quad)?;
    cases.push(CaseRecord::upper(
        "dirichlet/besicovitch/gap",
        json!({ "f": "1 + 2^(-it) + 3^(-it)", "p": 4, "t_max": LADDER_T_MAX, "torus_value": probe.torus_value }),
        probe.relative_gap,
        0.05,
        0.0,
    ));
    let series = vec![Series {
        kind: PlotKind::BesicovitchLadder,
        label: "1 + 2^(-it) + 3^(-it), p=4".into(),
        columns: vec!["T".into(), "partial_mean".into(), "torus_value".into()],
        rows: probe
            .ladder
            .iter()
            .map(|pt| vec![pt.t, pt.partial_mean, probe.torus_value])
            .collect(),
    }];
    Ok(SuiteOutput {
        cases,
        series,
        ..SuiteOutput::default()
    })
}

pub(super) fn run_helson(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Helson, 1e-12);
    let quad = ctx.quad;
    let mut cases = par_cases(cfg.cases_or(CASES), |i| {
        let (n, f) = corpus_member(&ctx, i);
        let check = helson_check(&f, &quad)?;
        Ok(from_check(
            format!("helson/{i}"),
            json!({ "p": 1, "case": i, "n": n }),
            &check,
        ))
    })?;
    let reduction = DirichletPolynomial::from_real(&[1.0, 1.0])?;
    let check = helson_check(&reduction, &quad)?;
    let inputs = json!({ "f": "1 + 2^(-it)", "p": 1 });
    cases.push(close(
        "helson/reduction/lhs".into(),
        inputs.clone(),
        check.lhs.value,
        1.5f64.sqrt(),
        REDUCTION_TOL,
    ));
    cases.push(close(
        "helson/reduction/rhs".into(),
        inputs.clone(),
        check.rhs.value,
        4.0 / std::f64::consts::PI,
        REDUCTION_TOL,
    ));
    cases.push(from_check("helson/reduction/inequality".into(), inputs, &check));
    Ok(SuiteOutput {
        cases,
        ..SuiteOutput::default()
    })
}
