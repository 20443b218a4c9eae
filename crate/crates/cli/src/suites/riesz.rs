use rand::Rng;
use serde_json::json;

use contraction_core::riesz::{contraction_check, default_epsilon_grid, epsilon_scan};
use contraction_core::sampling::random_trig_polynomial;

use super::{par_cases, Ctx, SuiteOutput};
use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::{CaseRecord, PlotKind, Series};

pub const SUFFICIENT: [(f64, f64); 2] = [(4.0, 0.0), (3.0, -0.5)];
pub const CONTRACTION_SLACK: f64 = 1e-8;
pub const EPS_GRID_POINTS: usize = 64;

/// First violating grid point and its ratio for the pairs known to fail,
/// from an independent brute-force scan of the same grid.
pub const FROZEN_CROSSINGS: [(f64, f64, f64, f64); 2] = [
    (4.0, -0.5, 0.024163745236132288, 1.0000485921675),
    (4.0, -0.9, 0.024163745236132288, 1.0001192984225282),
];
const FROZEN_RATIO_TOL: f64 = 1e-10;

fn pairs(cfg: &RunConfig, default: &[(f64, f64)]) -> Vec<(f64, f64)> {
    match (cfg.p, cfg.alpha) {
        (None, None) => default.to_vec(),
        (p, alpha) => vec![(p.unwrap_or(4.0), alpha.unwrap_or(0.0))],
    }
}

pub(super) fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let ctx = Ctx::new(cfg, Suite::Riesz, 1e-12);
    let quad = ctx.quad;
    let mut cases = Vec::new();
    let mut series = Vec::new();

    for (g, (p, alpha)) in pairs(cfg, &SUFFICIENT).into_iter().enumerate() {
        let chunk = par_cases(cfg.cases_or(1000), |i| {
            let mut rng = ctx.rng(g as u64, i);
            let k = cfg.n.map_or_else(|| rng.random_range(1..=16), |n| n as i64);
            let f = random_trig_polynomial(&mut rng, k);
            let r = contraction_check(&f, p, alpha, &quad)?;
            Ok(CaseRecord::upper(
                format!("riesz/contraction/p={p}/alpha={alpha}/{i}"),
                json!({ "p": p, "alpha": alpha, "case": i, "max_freq": k }),
                r.ratio,
                1.0 + CONTRACTION_SLACK,
                r.rhs_err / r.rhs,
            ))
        })?;
        cases.extend(chunk);
    }

    let grid = default_epsilon_grid(EPS_GRID_POINTS);
    let necessary: Vec<(f64, f64)> = FROZEN_CROSSINGS.iter().map(|c| (c.0, c.1)).collect();
    let mut scans = pairs(cfg, &necessary);
    if cfg.p.is_none() && cfg.alpha.is_none() {
        scans.extend(SUFFICIENT);
    }
    for (p, alpha) in scans {
        let scan = epsilon_scan(p, alpha, &grid, &quad)?;
        let max = scan
            .points
            .iter()
            .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
            .expect("grid is non-empty");
        let id = format!("riesz/eps_scan/p={p}/alpha={alpha}");
        let mut inputs = json!({
            "p": p,
            "alpha": alpha,
            "grid_points": grid.len(),
            "first_violation": scan.first_violation,
            "argmax_eps": max.eps,
        });
        let rec = match FROZEN_CROSSINGS.iter().find(|c| c.0 == p && c.1 == alpha) {
            Some(&(_, _, eps, ratio)) => {
                let first = scan.points.iter().find(|pt| pt.ratio > 1.0);
                inputs["frozen_eps"] = json!(eps);
                inputs["frozen_ratio"] = json!(ratio);
                let reproduced =
                    first.is_some_and(|pt| pt.eps == Some(eps) && (pt.ratio - ratio).abs() < FROZEN_RATIO_TOL);
                CaseRecord::lower(&id, inputs, max.ratio, 1.0, max.rhs_err / max.rhs)
                    .require(
                        scan.first_violation.is_some_and(|e| e < 1.0),
                        "no violation below eps = 1",
                    )
                    .require(reproduced, "crossing differs from the frozen value")
            }
            None => CaseRecord::upper(&id, inputs, max.ratio, 1.0 + CONTRACTION_SLACK, max.rhs_err / max.rhs),
        };
        cases.push(rec);
        series.push(Series {
            kind: PlotKind::EpsilonScanCurve,
            label: format!("p={p} alpha={alpha}"),
            columns: vec!["eps".into(), "lhs".into(), "rhs".into(), "ratio".into()],
            rows: scan
                .points
                .iter()
                .map(|pt| vec![pt.eps.unwrap_or(f64::NAN), pt.lhs, pt.rhs, pt.ratio])
                .collect(),
        });
    }
    Ok(SuiteOutput {
        cases,
        series,
        ..SuiteOutput::default()
    })
}
