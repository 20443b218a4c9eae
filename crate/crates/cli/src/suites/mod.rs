//! One module per suite. Every suite returns its cases in a fixed order so a
//! report depends only on the [`RunConfig`].

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use contraction_core::extremal::InequalityCheck;
use contraction_core::quadrature::QuadratureSpec;
use contraction_core::sampling::case_rng;

use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::{CaseRecord, Series};

mod coeff;
mod cpn;
mod dirichlet;
mod hv;
mod keychain;
mod kulikov;
mod norms;
mod riesz;

pub use riesz::FROZEN_CROSSINGS;

#[derive(Debug, Default)]
pub struct SuiteOutput {
    pub cases: Vec<CaseRecord>,
    pub series: Vec<Series>,
    pub timings: Vec<(Suite, f64)>,
}

impl SuiteOutput {
    fn extend(&mut self, other: SuiteOutput) {
        self.cases.extend(other.cases);
        self.series.extend(other.series);
        self.timings.extend(other.timings);
    }
}

/// Shared state of a suite run.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub quad: QuadratureSpec,
    suite: Suite,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig, suite: Suite, default_tol: f64) -> Self {
        Self {
            cfg,
            quad: QuadratureSpec::with_tol(cfg.tol.unwrap_or(default_tol)),
            suite,
        }
    }

    /// Generator for case `index` of corpus `group`; independent of evaluation order.
    pub fn rng(&self, group: u64, index: usize) -> impl Rng {
        let stream = ((self.suite as u64) << 48) | (group << 32) | index as u64;
        case_rng(self.cfg.seed, stream)
    }

    /// Seed for core routines that split their own streams.
    pub fn derived_seed(&self, group: u64) -> u64 {
        self.cfg
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(((self.suite as u64) << 32) | group)
    }
}

/// Evaluates `n` cases in parallel and returns them in index order.
pub(crate) fn par_cases<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Record for a two-sided norm check computed by the core crate.
pub(crate) fn from_check(id: String, inputs: serde_json::Value, check: &InequalityCheck) -> CaseRecord {
    CaseRecord {
        id,
        inputs,
        lhs: check.lhs.value,
        rhs: check.rhs.value,
        margin: check.margin,
        est_error: check.lhs.est_error + check.rhs.est_error,
        pass: check.ok,
        note: (!(check.lhs.converged && check.rhs.converged)).then(|| "quadrature not converged".to_string()),
    }
}

/// Record for `|value - expected| ≤ tol`.
pub(crate) fn close(id: String, inputs: serde_json::Value, value: f64, expected: f64, tol: f64) -> CaseRecord {
    let mut inputs = inputs;
    if let Some(obj) = inputs.as_object_mut() {
        obj.insert("value".into(), json!(value));
        obj.insert("expected".into(), json!(expected));
    }
    CaseRecord::upper(id, inputs, (value - expected).abs(), tol, 0.0)
}

pub fn run(cfg: &RunConfig) -> Result<SuiteOutput> {
    let start = std::time::Instant::now();
    let mut out = match cfg.suite {
        Suite::Coeff => coeff::run(cfg),
        Suite::Norms => norms::run(cfg),
        Suite::Cpn => cpn::run(cfg),
        Suite::Kulikov => kulikov::run(cfg),
        Suite::Keychain => keychain::run(cfg),
        Suite::Riesz => riesz::run(cfg),
        Suite::Hv => hv::run(cfg),
        Suite::Dirichlet => dirichlet::run_dirichlet(cfg),
        Suite::Helson => dirichlet::run_helson(cfg),
        Suite::All => {
            let mut out = SuiteOutput::default();
            for suite in Suite::INDIVIDUAL {
                let sub = RunConfig { suite, ..cfg.clone() };
                out.extend(run(&sub)?);
            }
            Ok(out)
        }
    }?;
    out.timings.push((cfg.suite, start.elapsed().as_secs_f64()));
    Ok(out)
}
