//! Target functions with declared domains and growth classes.
//!
//! Every function handed to an operator must declare how it grows on
//! `[0, ∞)`; the declaration gates series truncation bounds and lets the
//! Gamma-kernel quadrature widen its window for polynomially growing
//! integrands. Exceeding the declared envelope on an evaluated node by more
//! than 10% is a contract violation surfaced as `Error::GrowthViolation`.

use std::fmt;
use std::sync::Arc;

use crate::poly::Polynomial;

/// Growth class of a target function on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// `|f(t)| ≤ bound` everywhere.
    Bounded { bound: f64 },
    /// `|f(t)| ≤ coeff · (1 + t^degree)`.
    PolynomialDegree { degree: u32, coeff: f64 },
}

impl Growth {
    /// The declared envelope at `t`.
    pub fn envelope(&self, t: f64) -> f64 {
        match *self {
            Growth::Bounded { bound } => bound,
            Growth::PolynomialDegree { degree, coeff } => coeff * (1.0 + t.powi(degree as i32)),
        }
    }

    /// Polynomial degree used for tail/window control (0 for bounded).
    pub fn degree(&self) -> u32 {
        match *self {
            Growth::Bounded { .. } => 0,
            Growth::PolynomialDegree { degree, .. } => degree,
        }
    }
}

#[derive(Clone)]
pub(crate) enum FunctionKind {
    /// `t^m`; Gamma-kernel expectations use the exact rising-factorial value.
    Monomial(u32),
    /// Dense polynomial; expectations are exact linear combinations.
    Poly(Polynomial),
    /// Arbitrary callable; expectations go through quadrature.
    Callable(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// An evaluatable function on `[0, ∞)` with a declared growth class.
#[derive(Clone)]
pub struct TargetFunction {
    label: String,
    growth: Growth,
    kind: FunctionKind,
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("label", &self.label)
            .field("growth", &self.growth)
            .finish()
    }
}

impl TargetFunction {
    /// The constant function `c`.
    pub fn constant(c: f64) -> Self {
        TargetFunction {
            label: format!("const({c})"),
            growth: Growth::Bounded { bound: c.abs() },
            kind: FunctionKind::Poly(Polynomial::constant(c)),
        }
    }

    /// The monomial `t^m`.
    pub fn monomial(m: u32) -> Self {
        TargetFunction {
            label: format!("t^{m}"),
            growth: Growth::PolynomialDegree {
                degree: m.max(1),
                coeff: 1.0,
            },
            kind: FunctionKind::Monomial(m),
        }
    }

    /// A polynomial target; the growth envelope is derived from the
    /// coefficient norm.
    pub fn polynomial(label: impl Into<String>, p: Polynomial) -> Self {
        let coeff: f64 = p.coeffs().iter().map(|c| c.abs()).sum::<f64>().max(1e-300);
        let degree = p.degree().unwrap_or(0).max(1) as u32;
        TargetFunction {
            label: label.into(),
            growth: Growth::PolynomialDegree { degree, coeff },
            kind: FunctionKind::Poly(p),
        }
    }

    /// An arbitrary callable with a caller-declared growth class.
    pub fn callable(
        label: impl Into<String>,
        growth: Growth,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TargetFunction {
            label: label.into(),
            growth,
            kind: FunctionKind::Callable(Arc::new(f)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub(crate) fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            FunctionKind::Monomial(m) => t.powi(*m as i32),
            FunctionKind::Poly(p) => p.eval(t),
            FunctionKind::Callable(f) => f(t),
        }
    }
}
