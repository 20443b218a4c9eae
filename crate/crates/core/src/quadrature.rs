//! Quadrature building blocks shared by the norm functionals.
//!
//! Angular integrals use the trapezoid rule with node doubling. Radial
//! integrals are taken in `u = r²`, where the Bergman weight becomes
//! `(1 - u)^α`; the panel touching `u = 1` uses a Gauss–Jacobi rule for that
//! weight and interior panels use Gauss–Legendre with the weight multiplied in.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

/// Radial discretization strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialRule {
    /// Gauss–Jacobi on the panel touching the boundary.
    GaussJacobi,
    /// Geometrically graded Gauss–Legendre panels towards the boundary.
    GradedMesh,
}

/// Numerical controls for every quadrature-based norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Initial trapezoid node count on a circle (power of two).
    pub angular_nodes: usize,
    /// Initial Gauss node count per radial panel.
    pub radial_nodes: usize,
    pub radial_rule: RadialRule,
    pub rel_tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            angular_nodes: 64,
            radial_nodes: 16,
            radial_rule: RadialRule::GaussJacobi,
            rel_tol: 1e-12,
            max_doublings: 10,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(
            self.angular_nodes >= 4 && self.angular_nodes.is_power_of_two(),
            "angular_nodes",
            format!("must be a power of two >= 4, got {}", self.angular_nodes),
        )?;
        ensure(self.radial_nodes >= 2, "radial_nodes", "must be >= 2")?;
        ensure(self.rel_tol > 0.0, "rel_tol", "must be > 0")?;
        ensure(self.max_doublings >= 1, "max_doublings", "must be >= 1")?;
        Ok(())
    }

    /// Smallest power-of-two node count that integrates a trigonometric
    /// polynomial of the given degree exactly.
    pub fn exact_angular_nodes(degree: usize) -> usize {
        (2 * (degree + 1)).next_power_of_two().max(4)
    }
}

/// Output of a quadrature-based functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    /// Absolute difference between the last two refinement levels (plus the
    /// propagated angular error for area integrals).
    pub est_error: f64,
    pub angular_nodes: usize,
    pub radial_nodes: usize,
    pub converged: bool,
}

impl NormReport {
    /// Converts a report on `∫|f|^p` into one on `(∫|f|^p)^{1/p}`.
    pub(crate) fn pth_root(self, p: f64) -> Self {
        let value = self.value.max(0.0).powf(1.0 / p);
        let est_error = if self.value > 0.0 {
            value * self.est_error / (p * self.value)
        } else {
            self.est_error.powf(1.0 / p)
        };
        Self {
            value,
            est_error,
            ..self
        }
    }
}

/// Gauss rule on `[-1, 1]` for the weight `(1 - x)^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiRule {
    pub fn new(m: usize, alpha: f64) -> Result<Self> {
        ensure(m >= 1, "m", "must be >= 1")?;
        ensure(alpha > -1.0, "alpha", format!("must be > -1, got {alpha}"))?;
        let (diag, off) = jacobi_recurrence(m, alpha);
        let mu0 = 2f64.powf(alpha + 1.0) / (alpha + 1.0);

        let mut jm = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            jm[(i, i)] = diag[i];
            if i + 1 < m {
                jm[(i, i + 1)] = off[i + 1];
                jm[(i + 1, i)] = off[i + 1];
            }
        }
        let mut nodes: Vec<f64> = jm.symmetric_eigen().eigenvalues.iter().copied().collect();
        nodes.sort_by(|a, b| a.total_cmp(b));

        let mut weights = Vec::with_capacity(m);
        for x in nodes.iter_mut() {
            // Newton polish on the orthonormal p_m
            for _ in 0..3 {
                let (pm, dpm, _) = orthonormal_eval(*x, m, &diag, &off, mu0);
                if dpm != 0.0 {
                    let step = pm / dpm;
                    if step.abs() < 1e-6 {
                        *x -= step;
                    }
                }
            }
            let (_, _, sumsq) = orthonormal_eval(*x, m, &diag, &off, mu0);
            weights.push(1.0 / sumsq);
        }
        Ok(Self { alpha, nodes, weights })
    }

    pub fn legendre(m: usize) -> Result<Self> {
        Self::new(m, 0.0)
    }

    /// Cached rule; rules are immutable so sharing is free.
    pub fn cached(m: usize, alpha: f64) -> Result<Arc<Self>> {
        type RuleCache = Mutex<HashMap<(usize, u64), Arc<JacobiRule>>>;
        static CACHE: OnceLock<RuleCache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (m, alpha.to_bits());
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&key) {
            return Ok(rule.clone());
        }
        let rule = Arc::new(Self::new(m, alpha)?);
        cache.lock().expect("rule cache poisoned").insert(key, rule.clone());
        Ok(rule)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Diagonal and square-rooted off-diagonal of the Jacobi matrix for the
/// weight `(1 - x)^α (1 + x)^0`. `off[0]` is unused.
fn jacobi_recurrence(m: usize, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let beta = 0.0;
    let s = alpha + beta;
    let mut diag = Vec::with_capacity(m);
    let mut off = vec![0.0; m + 1];
    for k in 0..m {
        let kf = k as f64;
        let a = if k == 0 {
            (beta - alpha) / (s + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
        };
        diag.push(a);
    }
    for (k, o) in off.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let t = 2.0 * kf + s;
        let b = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0));
        *o = b.sqrt();
    }
    (diag, off)
}

/// `(p̃_m(x), p̃_m'(x), Σ_{k<m} p̃_k(x)²)` for the orthonormal family.
fn orthonormal_eval(x: f64, m: usize, diag: &[f64], off: &[f64], mu0: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut sumsq = 0.0;
    for k in 0..m {
        sumsq += p * p;
        let back = if k == 0 { 0.0 } else { off[k] };
        let p_next = ((x - diag[k]) * p - back * p_prev) / off[k + 1];
        let d_next = (p + (x - diag[k]) * d - back * d_prev) / off[k + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d, sumsq)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CircleMean {
    pub value: f64,
    pub est_error: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// `(1/2π) ∫_0^{2π} g(t) dt` by the trapezoid rule with node doubling.
pub(crate) fn circle_mean(g: impl Fn(f64) -> f64, n0: usize, rel_tol: f64, max_doublings: u32) -> CircleMean {
    let mut n = n0;
    let mut sum: f64 = (0..n).map(|j| g(2.0 * PI * j as f64 / n as f64)).sum();
    let mut value = sum / n as f64;
    let mut diff = f64::INFINITY;
    for _ in 0..max_doublings {
        let mid: f64 = (0..n).map(|j| g(2.0 * PI * (j as f64 + 0.5) / n as f64)).sum();
        sum += mid;
        n *= 2;
        let next = sum / n as f64;
        diff = (next - value).abs();
        value = next;
        if diff <= rel_tol * value.abs() {
            return CircleMean {
                value,
                est_error: diff,
                nodes: n,
                converged: true,
            };
        }
    }
    CircleMean {
        value,
        est_error: diff,
        nodes: n,
        converged: false,
    }
}

/// Panel breakpoints in `u = r²` coordinates from zero moduli `|z_0| < radius`.
pub(crate) fn breakpoints_u(zero_moduli: &[f64], radius: f64) -> Vec<f64> {
    let mut b: Vec<f64> = zero_moduli
        .iter()
        .map(|&m| (m / radius).powi(2))
        .filter(|&u| u > 1e-10 && u < 1.0 - 1e-10)
        .collect();
    b.sort_by(|a, c| a.total_cmp(c));
    b.dedup_by(|a, c| (*a - *c).abs() < 1e-10);
    b
}

/// `(α+1) ∫_0^1 (1-u)^α M(R√u) du`, where `M(ρ)` is the circle mean of `g`
/// at radius `ρ`. For `α = 0` this is the normalized-area mean of `g` over
/// the disk of radius `R`.
/// Per-panel cap on radial Gauss nodes inside [`disk_mean`].
pub const MAX_RADIAL_NODES: usize = 512;
/// Cap on angular doublings per circle inside [`disk_mean`].
pub const MAX_DISK_ANGULAR_DOUBLINGS: u32 = 6;

pub(crate) fn disk_mean(
    g: &dyn Fn(Complex64) -> f64,
    radius: f64,
    alpha: f64,
    breaks: &[f64],
    quad: &QuadratureSpec,
) -> Result<NormReport> {
    quad.validate()?;
    ensure(alpha > -1.0, "alpha", format!("must be > -1, got {alpha}"))?;

    let mut edges = vec![0.0];
    edges.extend_from_slice(breaks);
    if quad.radial_rule == RadialRule::GradedMesh {
        let last = *edges.last().unwrap_or(&0.0);
        let mut j = 1;
        loop {
            let u = 1.0 - 2f64.powi(-j);
            if u > last + 1e-12 {
                edges.push(u);
            }
            if j >= 40 {
                break;
            }
            j += 1;
        }
        edges.sort_by(|a, b| a.total_cmp(b));
    }
    edges.push(1.0);

    let radial_mean = |u: f64| -> CircleMean {
        let rho = radius * u.sqrt();
        circle_mean(
            |t| g(Complex64::from_polar(rho, t)),
            quad.angular_nodes,
            quad.rel_tol,
            quad.max_doublings.min(MAX_DISK_ANGULAR_DOUBLINGS),
        )
    };

    let mut previous: Option<f64> = None;
    let mut m = quad.radial_nodes;
    let mut last = NormReport {
        value: 0.0,
        est_error: f64::INFINITY,
        angular_nodes: 0,
        radial_nodes: 0,
        converged: false,
    };
    for _ in 0..=quad.max_doublings {
        let mut total = 0.0;
        let mut ang_err = 0.0;
        let mut ang_nodes = 0;
        let mut ang_ok = true;
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b == 1.0 && quad.radial_rule == RadialRule::GradedMesh {
                // innermost graded panel: freeze the circle mean at u = 1 and integrate the weight exactly
                let cm = radial_mean(1.0);
                let mass = (b - a).powf(alpha + 1.0);
                total += mass * cm.value;
                ang_err += mass * cm.est_error;
                ang_nodes = ang_nodes.max(cm.nodes);
                ang_ok &= cm.converged;
                continue;
            }
            let boundary_panel = b == 1.0 && quad.radial_rule == RadialRule::GaussJacobi && alpha != 0.0;
            let rule = if boundary_panel {
                JacobiRule::cached(m, alpha)?
            } else {
                JacobiRule::cached(m, 0.0)?
            };
            let half = 0.5 * (b - a);
            for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
                let u = a + half * (1.0 + x);
                let (weight, jac) = if boundary_panel {
                    (1.0, half.powf(alpha + 1.0))
                } else {
                    ((1.0 - u).powf(alpha), half)
                };
                let cm = radial_mean(u);
                let factor = (alpha + 1.0) * wt * jac * weight;
                total += factor * cm.value;
                ang_err += factor * cm.est_error;
                ang_nodes = ang_nodes.max(cm.nodes);
                ang_ok &= cm.converged;
            }
        }
        let diff = previous.map_or(f64::INFINITY, |prev| (total - prev).abs());
        let tol = quad.rel_tol * total.abs();
        let radial_ok = diff <= tol;
        last = NormReport {
            value: total,
            est_error: diff + ang_err,
            angular_nodes: ang_nodes,
            radial_nodes: m,
            converged: radial_ok && (ang_ok || ang_err <= tol),
        };
        if radial_ok {
            return Ok(last);
        }
        previous = Some(total);
        m *= 2;
        if m > MAX_RADIAL_NODES {
            break;
        }
    }
    Ok(last)
}
