//! Dunkl-Gamma positive linear operators built from two-variable Hermite
//! polynomials.
//!
//! The crate evaluates four related families of positive linear operators on
//! `[0, ∞)` — the Szász-Dunkl operator, the Wafi-Rao Szász-Gamma operator,
//! the Hermite-Szász operator, and the Dunkl-Gamma operator that combines a
//! Hermite-weighted Dunkl basis with Gamma-kernel smoothing — together with
//! their closed-form moments, central moments, and the convergence-rate
//! bounds driven by the modulus of continuity, the second modulus, Lipschitz
//! classes, and Peetre's K-functional.
//!
//! Module layout:
//!
//! * [`dunkl`] — the special-function bedrock: parity indicator, the
//!   `γ_μ(k)` coefficients, the Dunkl exponential and its reflection ratio,
//!   `log Γ`, and the Dunkl derivative on polynomials.
//! * [`hermite`] — the Dunkl generalization of two-variable Hermite
//!   polynomials and the shifted generating-function identities.
//! * [`operators`] — the weight series and evaluation engine for the four
//!   operator families, including exact and quadrature Gamma-kernel
//!   expectations.
//! * [`moments`] — closed-form moments, the central moments `Λ₁`, `Λ₂`, the
//!   quantity `Υ(n,x)`, and the shifted operator.
//! * [`moduli`] — sampled moduli of continuity and the evaluators for every
//!   quantitative error bound.
//! * [`functions`] / [`presets`] — target functions with declared growth,
//!   plus the named presets (with analytic moduli where known) used by the
//!   experiment runner.

pub mod dd;
pub mod dunkl;
pub mod error;
pub mod functions;
pub mod hermite;
pub mod logval;
pub mod moduli;
pub mod moments;
pub mod operators;
pub mod poly;
pub mod presets;
pub mod quad;

pub use error::{Error, Result};
pub use logval::LogValue;
pub use poly::Polynomial;

pub use dunkl::{DunklParam, RatioEval, SeriesControl};
pub use functions::{Growth, TargetFunction};
pub use hermite::HermiteParam;
pub use moduli::{ModulusEstimate, SmoothnessNorms};
pub use moments::MomentReport;
pub use operators::{ApplyResult, OperatorConfig, OperatorFamily, WeightSeries};
pub use quad::QuadratureControl;
