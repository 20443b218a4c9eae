//! WebAssembly bindings for three interactive views of `contraction-core`.
//! Every entry point is synchronous and single-threaded; the page calls them
//! from input handlers and draws the returned arrays on a canvas.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use contraction_core::extremal::{estimate_cpn, OptimizerConfig};
use contraction_core::funcspace::Polynomial;
use contraction_core::norms::{dirichlet_norm, hardy_norm};
use contraction_core::quadrature::QuadratureSpec;
use contraction_core::riesz::{default_epsilon_grid, epsilon_scan};
use contraction_core::LabError;

/// Grid size cap so a slider drag never stalls the page.
pub const MAX_SCAN_POINTS: usize = 256;
pub const MAX_DEGREE: usize = 12;
pub const MAX_RESTARTS: usize = 32;

fn to_js(e: LabError) -> JsError {
    JsError::new(&e.to_string())
}

fn demo_quadrature() -> QuadratureSpec {
    QuadratureSpec::with_tol(1e-10)
}

#[wasm_bindgen]
pub struct ScanCurve {
    eps: Vec<f64>,
    ratio: Vec<f64>,
    first_violation: Option<f64>,
}

#[wasm_bindgen]
impl ScanCurve {
    #[wasm_bindgen(getter)]
    pub fn eps(&self) -> Vec<f64> {
        self.eps.clone()
    }

    /// `‖P_+F_ε‖_{A²_α} / ‖F_ε‖_{L^{p'}}` at each grid point.
    #[wasm_bindgen(getter)]
    pub fn ratio(&self) -> Vec<f64> {
        self.ratio.clone()
    }

    #[wasm_bindgen(getter, js_name = firstViolation)]
    pub fn first_violation(&self) -> Option<f64> {
        self.first_violation
    }
}

/// Ratio curve of the Riesz projection test family over `points` values of ε.
#[wasm_bindgen(js_name = epsilonScan)]
pub fn epsilon_scan_curve(p: f64, alpha: f64, points: usize) -> Result<ScanCurve, JsError> {
    let grid = default_epsilon_grid(points.clamp(2, MAX_SCAN_POINTS));
    let scan = epsilon_scan(p, alpha, &grid, &demo_quadrature()).map_err(to_js)?;
    Ok(ScanCurve {
        eps: grid,
        ratio: scan.points.iter().map(|pt| pt.ratio).collect(),
        first_violation: scan.first_violation,
    })
}

#[wasm_bindgen]
pub struct NormRatio {
    pub hardy: f64,
    pub dirichlet: f64,
    pub ratio: f64,
    pub est_error: f64,
}

/// `‖f‖_{H^p} / ‖f‖_{D_{p/2}}` for `f(z) = Σ (re_k + i im_k) z^k`.
#[wasm_bindgen(js_name = normRatio)]
pub fn norm_ratio(re: Vec<f64>, im: Vec<f64>, p: f64) -> Result<NormRatio, JsError> {
    if re.len() != im.len() || re.is_empty() || re.len() > MAX_DEGREE + 1 {
        return Err(JsError::new(&format!(
            "need matching coefficient arrays of length 1..={}",
            MAX_DEGREE + 1
        )));
    }
    let f = Polynomial::new(re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect());
    if f.degree().is_none() {
        return Err(JsError::new("polynomial is zero"));
    }
    let hardy = hardy_norm(&f, p, &demo_quadrature()).map_err(to_js)?;
    let dirichlet = dirichlet_norm(&f, p / 2.0).map_err(to_js)?;
    Ok(NormRatio {
        hardy: hardy.value,
        dirichlet,
        ratio: hardy.value / dirichlet,
        est_error: hardy.est_error / dirichlet,
    })
}

#[wasm_bindgen]
pub struct CpnSearch {
    best_value: f64,
    distance_to_constant: f64,
    best_coeffs: Vec<f64>,
    restart_values: Vec<f64>,
}

#[wasm_bindgen]
impl CpnSearch {
    #[wasm_bindgen(getter, js_name = bestValue)]
    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    #[wasm_bindgen(getter, js_name = distanceToConstant)]
    pub fn distance_to_constant(&self) -> f64 {
        self.distance_to_constant
    }

    /// Moduli of the maximizer's coefficients.
    #[wasm_bindgen(getter, js_name = bestCoeffs)]
    pub fn best_coeffs(&self) -> Vec<f64> {
        self.best_coeffs.clone()
    }

    /// Final `‖q‖_{H^p}` of each restart, in restart order.
    #[wasm_bindgen(getter, js_name = restartValues)]
    pub fn restart_values(&self) -> Vec<f64> {
        self.restart_values.clone()
    }
}

/// Multi-restart ascent for the largest `‖q‖_{H^p}` over `D_{p/2}`-normalized polynomials of degree `n`.
#[wasm_bindgen(js_name = cpnSearch)]
pub fn cpn_search(p: f64, n: usize, restarts: usize, seed: u32) -> Result<CpnSearch, JsError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(JsError::new(&format!("degree must lie in 1..={MAX_DEGREE}")));
    }
    let opt = OptimizerConfig {
        restarts: restarts.min(MAX_RESTARTS),
        max_iter: 1500,
        seed: u64::from(seed),
        ..OptimizerConfig::default()
    };
    let r = estimate_cpn(p, n, &opt).map_err(to_js)?;
    Ok(CpnSearch {
        best_value: r.best_value,
        distance_to_constant: r.distance_to_constant(),
        best_coeffs: r.best_poly.coeffs().iter().map(|c| c.norm()).collect(),
        restart_values: r.traces.iter().map(|t| t.value).collect(),
    })
}
