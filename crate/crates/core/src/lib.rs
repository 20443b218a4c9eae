//! Numerical laboratory for contractive inequalities between Hardy, Bergman
//! and weighted Dirichlet spaces of analytic functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`coeff`]: weight sequences `c_β(n)` and generalized divisor functions.
//! * [`funcspace`]: polynomials, trigonometric polynomials, closed-form samplers.
//! * [`quadrature`] / [`norms`]: coefficient and quadrature norm functionals.
//! * [`extremal`]: the extremal problem on `D_{p/2}` and the Bergman contraction family.
//! * [`riesz`]: the Riesz projection and its contraction tests.
//! * [`dirichlet`]: Bohr lift, polytorus norms and Dirichlet series.

pub mod coeff;
pub mod error;
pub mod funcspace;
pub mod norms;
pub mod quadrature;

pub use error::{LabError, Result};
pub use funcspace::{AnalyticSampler, CircleFunction, DiskFunction, MultiPolynomial, Polynomial, TrigPolynomial};
pub use quadrature::{NormReport, QuadratureSpec, RadialRule};
pub mod dirichlet;
pub mod extremal;
mod par;
pub mod riesz;
pub mod sampling;
