use rand::Rng;
use serde_json::json;

use contraction_core::extremal::{estimate_cpn, OptimizerConfig};
use contraction_core::norms::hardy_norm;
use contraction_core::sampling::random_normalized_polynomial;

use super::{par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::{CaseRecord, PlotKind, Series};

pub const CPN_P: [f64; 4] = [2.5, 3.0, 4.0, 6.0];
pub const CPN_N_MAX: usize = 8;
pub const CPN_SLACK: f64 = 1e-6;
pub const CONSTANT_DISTANCE: f64 = 1e-3;
const RESTARTS: usize = 16;
const MAX_ITER: usize = 2000;
const STRICT_CASES: usize = 10_000;
/// Margin below which a normalized polynomial counts as "barely inside"; logged only.
const STRICT_FLOOR: f64 = 1e-6;

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Cpn, 1e-12);
    let p_list = cfg.p_list(&CPN_P);
    let n_list: Vec<usize> = cfg.n.map_or_else(|| (1..=CPN_N_MAX).collect(), |n| vec![n]);
    let grid: Vec<(f64, usize)> = p_list
        .iter()
        .flat_map(|&p| n_list.iter().map(move |&n| (p, n)))
        .collect();

    let mut cases = Vec::new();
    let mut series = Vec::new();
    for (g, &(p, n)) in grid.iter().enumerate() {
        let opt = OptimizerConfig {
            restarts: RESTARTS,
            max_iter: MAX_ITER,
            seed: ctx.derived_seed(g as u64),
            ..OptimizerConfig::default()
        };
        let r = estimate_cpn(p, n, &opt)?;
        let distance = r.distance_to_constant();
        cases.push(
            CaseRecord::upper(
                format!("cpn/p={p}/n={n}"),
                json!({
                    "p": p,
                    "n": n,
                    "restarts": r.restarts,
                    "converged_restarts": r.converged_restarts,
                    "distance_to_constant": distance,
                    "gradient_norm": r.gradient_norm_at_best,
                }),
                r.best_value,
                1.0 + CPN_SLACK,
                r.best_value_check.est_error,
            )
            .require(distance < CONSTANT_DISTANCE, "maximizer is not a unimodular constant"),
        );
        series.push(Series {
            kind: PlotKind::CpnConvergence,
            label: format!("p={p} n={n}"),
            columns: vec!["restart".into(), "iterations".into(), "best_value".into()],
            rows: r
                .traces
                .iter()
                .map(|t| vec![t.index as f64, t.iterations as f64, t.value])
                .collect(),
        });
    }

    let quad = ctx.quad;
    let per_p = cfg.cases_or(STRICT_CASES).div_ceil(p_list.len());
    for (pi, &p) in p_list.iter().enumerate() {
        let strict = par_cases(per_p, |i| {
            let mut rng = ctx.rng(pi as u64, i);
            let max_degree = cfg.n.unwrap_or_else(|| rng.random_range(1..=CPN_N_MAX));
            let f = random_normalized_polynomial(&mut rng, max_degree, p / 2.0);
            let h = hardy_norm(&f, p, &quad)?;
            let rec = CaseRecord::upper(
                format!("cpn/strict/p={p}/{i}"),
                json!({ "p": p, "case": i, "degree": f.degree() }),
                h.value,
                1.0,
                h.est_error,
            );
            Ok(if 1.0 - h.value < STRICT_FLOOR {
                rec.with_note("margin below 1e-6")
            } else {
                rec
            })
        })?;
        cases.extend(strict);
    }

    Ok(SuiteOutput {
        cases,
        series,
        ..SuiteOutput::default()
    })
}
