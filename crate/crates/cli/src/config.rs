//! Run configuration: CLI flags merged over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Coeff,
    Norms,
    Cpn,
    Kulikov,
    Keychain,
    Riesz,
    Hv,
    Dirichlet,
    Helson,
    #[default]
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 9] = [
        Suite::Coeff,
        Suite::Norms,
        Suite::Cpn,
        Suite::Kulikov,
        Suite::Keychain,
        Suite::Riesz,
        Suite::Hv,
        Suite::Dirichlet,
        Suite::Helson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coeff => "coeff",
            Suite::Norms => "norms",
            Suite::Cpn => "cpn",
            Suite::Kulikov => "kulikov",
            Suite::Keychain => "keychain",
            Suite::Riesz => "riesz",
            Suite::Hv => "hv",
            Suite::Dirichlet => "dirichlet",
            Suite::Helson => "helson",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        <Suite as ValueEnum>::from_str(s, true).map_err(|_| invalid("suite", format!("unknown suite {s:?}")))
    }
}

/// Everything that determines a report. Identical configs give identical report bodies.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Suite,
    pub seed: u64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n: Option<usize>,
    /// Relative quadrature tolerance; each suite has its own default.
    pub tol: Option<f64>,
    /// Corpus size; each suite has its own default.
    pub cases: Option<usize>,
    /// Report path (not echoed into the report).
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        Self {
            suite,
            seed,
            ..Self::default()
        }
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        toml::from_str(&text).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(mut self, over: &RunConfig) -> Self {
        self.suite = over.suite;
        self.seed = over.seed;
        macro_rules! take {
            ($($f:ident),*) => {$( if over.$f.is_some() { self.$f = over.$f.clone(); } )*};
        }
        take!(p, q, alpha, beta, n, tol, cases, out);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: Option<f64>| match v {
            Some(x) if !x.is_finite() => Err(invalid(name, format!("must be finite, got {x}"))),
            _ => Ok(()),
        };
        finite("p", self.p)?;
        finite("q", self.q)?;
        finite("alpha", self.alpha)?;
        finite("beta", self.beta)?;
        if let Some(p) = self.p {
            if p <= 0.0 {
                return Err(invalid("p", format!("must be > 0, got {p}")));
            }
        }
        if let Some(q) = self.q {
            if q <= 0.0 {
                return Err(invalid("q", format!("must be > 0, got {q}")));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(invalid("tol", format!("must lie in (0, 1), got {t}")));
            }
        }
        if self.cases == Some(0) {
            return Err(invalid("cases", "must be >= 1"));
        }
        Ok(())
    }

    pub fn cases_or(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    pub fn p_list(&self, default: &[f64]) -> Vec<f64> {
        self.p.map_or_else(|| default.to_vec(), |p| vec![p])
    }
}
