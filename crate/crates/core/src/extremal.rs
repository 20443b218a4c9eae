//! The extremal problem
//! `C_{p,n} = sup { ‖q‖_{H^p} : deg q ≤ n, ‖q‖_{D_{p/2}} = 1 }`,
//! the Bergman-to-Bergman contraction family and the inequality chain
//! linking them.
//!
//! The ascent runs on the unit sphere of `C^{n+1}` through the substitution
//! `b_k = √c_{p/2}(k) a_k`, so the constraint is enforced exactly by
//! normalization.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeff::binom_coeffs;
use crate::error::{ensure, LabError, Result};
use crate::funcspace::{DiskFunction, Polynomial};
use crate::norms::{bergman_norm, gradient_energy, hardy_norm, weighted_norm};
use crate::par::map_indexed;
use crate::quadrature::{NormReport, QuadratureSpec};
use crate::sampling::{case_rng, random_sphere};

/// Relative slack added to quadrature error estimates when comparing two
/// sides that may coincide exactly.
pub const ROUNDING_FLOOR: f64 = 1e-14;

/// `‖q‖_{H^p}^p` as a function of sphere coordinates `b`.
#[derive(Debug, Clone)]
pub struct HardyObjective {
    p: f64,
    sqrt_weights: Vec<f64>,
    /// `e^{ik t_j}`, row-major by node.
    table: Vec<Complex64>,
    nodes: usize,
}

impl HardyObjective {
    pub fn new(p: f64, n: usize) -> Result<Self> {
        ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
        let nodes = if p.fract() == 0.0 && (p as usize).is_multiple_of(2) {
            // |q|^p is a trigonometric polynomial of degree p·n: the trapezoid rule is exact
            (p as usize * n + 1).next_power_of_two().max(16)
        } else {
            (16 * p.ceil() as usize * (n + 1)).next_power_of_two().max(256)
        };
        Self::with_nodes(p, n, nodes)
    }

    pub fn with_nodes(p: f64, n: usize, nodes: usize) -> Result<Self> {
        ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
        ensure(nodes >= 2 * (n + 1), "nodes", "too few angular nodes for the degree")?;
        let sqrt_weights = binom_coeffs(p / 2.0, n).into_iter().map(f64::sqrt).collect();
        let mut table = Vec::with_capacity(nodes * (n + 1));
        for j in 0..nodes {
            let t = 2.0 * PI * j as f64 / nodes as f64;
            for k in 0..=n {
                table.push(Complex64::from_polar(1.0, k as f64 * t));
            }
        }
        Ok(Self {
            p,
            sqrt_weights,
            table,
            nodes,
        })
    }

    pub fn dim(&self) -> usize {
        self.sqrt_weights.len()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Taylor coefficients `a_k = b_k / √c_{p/2}(k)`.
    pub fn to_polynomial(&self, b: &[Complex64]) -> Polynomial {
        Polynomial::new(b.iter().zip(&self.sqrt_weights).map(|(&bk, &s)| bk / s).collect())
    }

    /// Sphere coordinates of a polynomial (not normalized).
    pub fn from_polynomial(&self, q: &Polynomial) -> Vec<Complex64> {
        (0..self.dim()).map(|k| q.coeff(k) * self.sqrt_weights[k]).collect()
    }

    pub fn value(&self, b: &[Complex64]) -> f64 {
        self.evaluate(b, false).0
    }

    /// `(Φ(b), ∇Φ(b))`, with the gradient packed as `∂/∂Re b_k + i ∂/∂Im b_k`.
    pub fn value_and_gradient(&self, b: &[Complex64]) -> (f64, Vec<Complex64>) {
        self.evaluate(b, true)
    }

    fn evaluate(&self, b: &[Complex64], with_gradient: bool) -> (f64, Vec<Complex64>) {
        let dim = self.dim();
        let a: Vec<Complex64> = b.iter().zip(&self.sqrt_weights).map(|(&bk, &s)| bk / s).collect();
        let mut total = 0.0;
        let mut grad = vec![Complex64::new(0.0, 0.0); if with_gradient { dim } else { 0 }];
        for row in self.table.chunks_exact(dim) {
            let q: Complex64 = row.iter().zip(&a).map(|(e, ak)| e * ak).sum();
            let m2 = q.norm_sqr();
            let w = if m2 == 0.0 { 0.0 } else { m2.powf(0.5 * self.p - 1.0) };
            total += w * m2;
            if with_gradient {
                let h = q * w;
                for (g, e) in grad.iter_mut().zip(row) {
                    *g += h * e.conj();
                }
            }
        }
        let inv = 1.0 / self.nodes as f64;
        for (g, s) in grad.iter_mut().zip(&self.sqrt_weights) {
            *g *= self.p * inv / s;
        }
        (total * inv, grad)
    }
}

fn real_dot(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a * b.conj()).re).sum()
}

fn l2(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Normalizes `b` and rotates it so that `b_0` is real and nonnegative.
pub fn retract(b: &mut [Complex64]) {
    let norm = l2(b);
    let phase = if b[0].norm() > 0.0 {
        b[0].conj() / b[0].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    for c in b.iter_mut() {
        *c *= phase / norm;
    }
    b[0] = Complex64::new(b[0].re.max(0.0), 0.0);
}

/// Tangential component of `g` at `b` on the unit sphere.
pub fn tangent_projection(b: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let radial = real_dot(g, b);
    g.iter().zip(b).map(|(gk, bk)| gk - bk * radial).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestartKind {
    Constant,
    NearKernel,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub index: usize,
    pub kind: RestartKind,
    pub iterations: usize,
    /// `‖q‖_{H^p}` at the final iterate.
    pub value: f64,
    pub gradient_norm: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentOutcome {
    pub point: Vec<Complex64>,
    pub objective: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Random restarts (the constant and near-kernel starts come on top).
    pub restarts: usize,
    pub max_iter: usize,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iter: 5000,
            grad_tol: 1e-8,
            seed: 0,
        }
    }
}

/// Riemannian gradient ascent with Armijo backtracking and retraction by
/// normalization. `observer` sees every accepted iterate.
pub fn ascend(
    objective: &HardyObjective,
    start: &[Complex64],
    max_iter: usize,
    grad_tol: f64,
    mut observer: impl FnMut(&[Complex64]),
) -> AscentOutcome {
    let mut b = start.to_vec();
    retract(&mut b);
    observer(&b);
    let (mut value, g) = objective.value_and_gradient(&b);
    let mut rg = tangent_projection(&b, &g);
    let mut gnorm = l2(&rg);
    let mut step = 0.1;
    let mut iterations = 0;
    while iterations < max_iter && gnorm >= grad_tol {
        iterations += 1;
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial: Vec<Complex64> = b.iter().zip(&rg).map(|(x, d)| x + d * step).collect();
            retract(&mut trial);
            let trial_value = objective.value(&trial);
            if trial_value >= value + 1e-4 * step * gnorm * gnorm {
                b = trial;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // no ascent direction left at double precision
            break;
        }
        observer(&b);
        let (v, g) = objective.value_and_gradient(&b);
        value = v;
        rg = tangent_projection(&b, &g);
        gnorm = l2(&rg);
    }
    AscentOutcome {
        converged: gnorm < grad_tol,
        point: b,
        objective: value,
        gradient_norm: gnorm,
        iterations,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub p: f64,
    pub n: usize,
    /// Best `‖q‖_{H^p}` found (a lower bound for `C_{p,n}`).
    pub best_value: f64,
    /// Maximizer, normalized in `D_{p/2}` with `a_0 ≥ 0`.
    pub best_poly: Polynomial,
    /// Adaptive-quadrature recomputation of `‖best_poly‖_{H^p}`.
    pub best_value_check: NormReport,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub gradient_norm_at_best: f64,
    pub traces: Vec<RestartTrace>,
}

impl ExtremalResult {
    /// Coefficient distance from `best_poly` to the nearest unimodular constant.
    pub fn distance_to_constant(&self) -> f64 {
        let c = self.best_poly.coeffs();
        let head = (c.first().map_or(0.0, |a| a.norm()) - 1.0).powi(2);
        let tail: f64 = c.iter().skip(1).map(|a| a.norm_sqr()).sum();
        (head + tail).sqrt()
    }
}

/// Multi-restart estimate of `C_{p,n}`.
pub fn estimate_cpn(p: f64, n: usize, opt: &OptimizerConfig) -> Result<ExtremalResult> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    let objective = HardyObjective::new(p, n)?;
    let dim = n + 1;

    let mut starts: Vec<(RestartKind, Vec<Complex64>)> = Vec::with_capacity(opt.restarts + 2);
    let mut one = vec![Complex64::new(0.0, 0.0); dim];
    one[0] = Complex64::new(1.0, 0.0);
    starts.push((RestartKind::Constant, one));
    if n >= 1 {
        // Taylor profile of (1 - z/2)^{-2/p}
        let c = binom_coeffs(2.0 / p, n);
        let profile: Vec<Complex64> = (0..=n)
            .map(|k| Complex64::new(c[k] * 0.5f64.powi(k as i32), 0.0))
            .collect();
        starts.push((
            RestartKind::NearKernel,
            objective.from_polynomial(&Polynomial::new(profile)),
        ));
        for i in 0..opt.restarts {
            let mut rng = case_rng(opt.seed, i as u64);
            starts.push((RestartKind::Random, random_sphere(&mut rng, dim)));
        }
    }

    let outcomes = map_indexed(starts.len(), |i| {
        ascend(&objective, &starts[i].1, opt.max_iter, opt.grad_tol, |_| {})
    });

    let traces: Vec<RestartTrace> = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| RestartTrace {
            index: i,
            kind: starts[i].0,
            iterations: o.iterations,
            value: o.objective.powf(1.0 / p),
            gradient_norm: o.gradient_norm,
            converged: o.converged,
        })
        .collect();
    let converged_restarts = outcomes.iter().filter(|o| o.converged).count();
    if converged_restarts == 0 {
        return Err(LabError::NotConverged);
    }
    let best = outcomes
        .iter()
        .max_by(|x, y| {
            x.objective
                .total_cmp(&y.objective)
                .then(y.gradient_norm.total_cmp(&x.gradient_norm))
        })
        .expect("at least one restart");
    let best_poly = objective.to_polynomial(&best.point);
    let best_value_check = hardy_norm(&best_poly, p, &QuadratureSpec::default())?;
    Ok(ExtremalResult {
        p,
        n,
        best_value: best.objective.powf(1.0 / p),
        best_poly,
        best_value_check,
        restarts: starts.len(),
        converged_restarts,
        gradient_norm_at_best: best.gradient_norm,
        traces,
    })
}

/// Outcome of one two-sided norm inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: NormReport,
    pub rhs: NormReport,
    /// `rhs - lhs`.
    pub margin: f64,
    pub ok: bool,
}

impl InequalityCheck {
    pub fn new(lhs: NormReport, rhs: NormReport) -> Self {
        let slack = lhs.est_error + rhs.est_error + ROUNDING_FLOOR * rhs.value.abs();
        Self {
            lhs,
            rhs,
            margin: rhs.value - lhs.value,
            ok: lhs.value <= rhs.value + slack,
        }
    }
}

/// Checks `‖f‖_{A^q_β} ≤ ‖f‖_{A^p_α}` on the balanced line `(α+2)/p = (β+2)/q`.
pub fn verify_kulikov(
    f: &dyn DiskFunction,
    p: f64,
    q: f64,
    alpha: f64,
    beta: f64,
    quad: &QuadratureSpec,
) -> Result<InequalityCheck> {
    ensure(p > 0.0 && p < q, "q", format!("need 0 < p < q, got p={p}, q={q}"))?;
    ensure(
        alpha >= -1.0 && alpha < beta,
        "beta",
        format!("need -1 <= alpha < beta, got alpha={alpha}, beta={beta}"),
    )?;
    let balance = (alpha + 2.0) / p - (beta + 2.0) / q;
    ensure(
        balance.abs() <= 1e-12,
        "beta",
        format!("(alpha+2)/p must equal (beta+2)/q, off by {balance:e}"),
    )?;
    let lhs = weighted_norm(f, q, beta, quad)?;
    let rhs = weighted_norm(f, p, alpha, quad)?;
    Ok(InequalityCheck::new(lhs, rhs))
}

/// The four quantities behind the key area-integral estimate for `q` and `p > 2`:
/// `I ≤ H ≤ K` together with the coefficient identity for `‖q'‖²_{A²_{2/p-1}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyChainReport {
    /// `∫_D |q'|² |q|^{p-2} dA`.
    pub integral: f64,
    /// `‖q'‖²_{A^{4p/(p+2)}} ‖q‖^{p-2}_{A^{2p}}`.
    pub holder: f64,
    /// `‖q'‖²_{A²_{2/p-1}} ‖q‖^{p-2}_{H^p}`.
    pub kulikov: f64,
    /// `Σ k² |a_k|² / c_{2/p+1}(k-1)`.
    pub coeff_sum: f64,
    /// `‖q'‖²_{A²_{2/p-1}}` by quadrature.
    pub derivative_norm_sq: f64,
    pub integral_err: f64,
    pub holder_err: f64,
    pub kulikov_err: f64,
    pub holder_ok: bool,
    pub kulikov_ok: bool,
    /// `|derivative_norm_sq - coeff_sum| / coeff_sum`.
    pub identity_rel_error: f64,
}

impl KeyChainReport {
    pub fn ok(&self) -> bool {
        self.holder_ok && self.kulikov_ok
    }
}

pub fn key_property_chain(q: &Polynomial, p: f64, quad: &QuadratureSpec) -> Result<KeyChainReport> {
    ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
    if q.is_constant() {
        return Ok(KeyChainReport {
            integral: 0.0,
            holder: 0.0,
            kulikov: 0.0,
            coeff_sum: 0.0,
            derivative_norm_sq: 0.0,
            integral_err: 0.0,
            holder_err: 0.0,
            kulikov_err: 0.0,
            holder_ok: true,
            kulikov_ok: true,
            identity_rel_error: 0.0,
        });
    }
    let dq = q.derivative();

    let integral = gradient_energy(q, p, 1.0, quad)?;

    let d_holder = bergman_norm(&dq, 4.0 * p / (p + 2.0), 0.0, quad)?;
    let q_holder = bergman_norm(q, 2.0 * p, 0.0, quad)?;
    let holder = d_holder.value.powi(2) * q_holder.value.powf(p - 2.0);
    let holder_err =
        holder * (2.0 * d_holder.est_error / d_holder.value + (p - 2.0) * q_holder.est_error / q_holder.value);

    let d_kul = bergman_norm(&dq, 2.0, 2.0 / p - 1.0, quad)?;
    let q_hardy = hardy_norm(q, p, quad)?;
    let derivative_norm_sq = d_kul.value.powi(2);
    let kulikov = derivative_norm_sq * q_hardy.value.powf(p - 2.0);
    let kulikov_err = kulikov * (2.0 * d_kul.est_error / d_kul.value + (p - 2.0) * q_hardy.est_error / q_hardy.value);

    let c = binom_coeffs(2.0 / p + 1.0, q.coeffs().len());
    let coeff_sum: f64 = q
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| (k * k) as f64 * a.norm_sqr() / c[k - 1])
        .sum();

    let floor = ROUNDING_FLOOR;
    Ok(KeyChainReport {
        integral: integral.value,
        holder,
        kulikov,
        coeff_sum,
        derivative_norm_sq,
        integral_err: integral.est_error,
        holder_err,
        kulikov_err,
        holder_ok: integral.value <= holder + integral.est_error + holder_err + floor * holder,
        kulikov_ok: holder <= kulikov + holder_err + kulikov_err + floor * kulikov,
        identity_rel_error: (derivative_norm_sq - coeff_sum).abs() / coeff_sum,
    })
}

/// Which inclusion the gate classifies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum InclusionMode {
    /// `A^p_α → A^q_β`, with `α = -1` read as `H^p`.
    Bergman { p: f64, q: f64, alpha: f64, beta: f64 },
    /// `D_β → H^p` for `p > 2`.
    DirichletHardy { p: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    /// `p < q`: contraction through the balanced line.
    KulikovChain,
    /// `p ≥ q, α ≤ β` (or `β ≥ p/2` in Dirichlet mode): the target weight dominates.
    SameOrBiggerWeight,
    /// Inclusion holds but its norm exceeds one.
    KnownFailure,
    /// The spaces are not nested at all.
    NotEmbedded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InclusionVerdict {
    pub contractive: bool,
    pub reason: VerdictReason,
    pub params: InclusionMode,
}

/// Whether `A^p_α ⊂ A^q_β` (with `A^p_{-1} = H^p`).
pub fn bergman_embedded(p: f64, q: f64, alpha: f64, beta: f64) -> bool {
    if p < q {
        (alpha + 2.0) / p <= (beta + 2.0) / q
    } else if p == q {
        alpha <= beta
    } else {
        (alpha + 1.0) / p < (beta + 1.0) / q || (alpha == -1.0 && beta == -1.0)
    }
}

pub fn contractive_inclusion_gate(mode: InclusionMode) -> Result<InclusionVerdict> {
    let (contractive, reason) = match mode {
        InclusionMode::Bergman { p, q, alpha, beta } => {
            ensure(p > 0.0 && q > 0.0, "p", "exponents must be positive")?;
            ensure(alpha >= -1.0 && beta >= -1.0, "alpha", "weights must be >= -1")?;
            if !bergman_embedded(p, q, alpha, beta) {
                (false, VerdictReason::NotEmbedded)
            } else if p < q {
                (true, VerdictReason::KulikovChain)
            } else if alpha <= beta {
                (true, VerdictReason::SameOrBiggerWeight)
            } else {
                (false, VerdictReason::KnownFailure)
            }
        }
        InclusionMode::DirichletHardy { p, beta } => {
            ensure(p > 2.0, "p", format!("must be > 2, got {p}"))?;
            ensure(beta > 0.0, "beta", format!("must be > 0, got {beta}"))?;
            if beta >= p / 2.0 {
                (true, VerdictReason::SameOrBiggerWeight)
            } else {
                (false, VerdictReason::KnownFailure)
            }
        }
    };
    Ok(InclusionVerdict {
        contractive,
        reason,
        params: mode,
    })
}
