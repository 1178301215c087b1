//! The four positive linear operator families and their evaluation engine.
//!
//! Every family is a probability-weighted mixture: a discrete weight series
//! `w_k(x)` (the normalized Dunkl/Hermite basis at `x`) paired with a kernel
//! that is either point evaluation at `(k + 2μθ_k)/n` (Szász-type) or the
//! expectation under a Gamma density with shape `k + 2μθ_k + λ + 1` and rate
//! `n` (Gamma-type). Weights sum to one with the discarded tail recorded, so
//! truncation error is controlled by tail mass alone.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use crate::dunkl::{dunkl_exp, gamma_nu_log_table, log_gamma, theta, DunklParam, SeriesControl};
use crate::error::{Error, Result};
use crate::functions::{FunctionKind, Growth, TargetFunction};
use crate::hermite::{HermiteEvaluator, HermiteParam};
use crate::poly::Polynomial;
use crate::quad::{integrate, QuadratureControl};

/// The operator families, ordered by ancestry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorFamily {
    /// Point-evaluation operator on the Dunkl basis.
    SzaszDunkl,
    /// Gamma-kernel smoothing of the Dunkl basis (`α` ignored).
    WafiRaoGamma,
    /// Point-evaluation operator on the Hermite-weighted Dunkl basis
    /// (`λ` ignored).
    HermiteSzasz,
    /// Gamma-kernel smoothing of the Hermite-weighted Dunkl basis.
    HermiteGamma,
}

impl OperatorFamily {
    pub const ALL: [OperatorFamily; 4] = [
        OperatorFamily::SzaszDunkl,
        OperatorFamily::WafiRaoGamma,
        OperatorFamily::HermiteSzasz,
        OperatorFamily::HermiteGamma,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorFamily::SzaszDunkl => "szasz_dunkl",
            OperatorFamily::WafiRaoGamma => "wafi_rao_gamma",
            OperatorFamily::HermiteSzasz => "hermite_szasz",
            OperatorFamily::HermiteGamma => "hermite_gamma",
        }
    }

    /// Whether the weight series carries the Hermite second variable `α`.
    pub fn uses_alpha(&self) -> bool {
        matches!(
            self,
            OperatorFamily::HermiteSzasz | OperatorFamily::HermiteGamma
        )
    }

    /// Whether the kernel is a Gamma expectation (otherwise point evaluation).
    pub fn gamma_kernel(&self) -> bool {
        matches!(
            self,
            OperatorFamily::WafiRaoGamma | OperatorFamily::HermiteGamma
        )
    }
}

impl fmt::Display for OperatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "szasz_dunkl" => Ok(OperatorFamily::SzaszDunkl),
            "wafi_rao_gamma" => Ok(OperatorFamily::WafiRaoGamma),
            "hermite_szasz" => Ok(OperatorFamily::HermiteSzasz),
            "hermite_gamma" => Ok(OperatorFamily::HermiteGamma),
            other => Err(Error::InvalidParameter(format!(
                "unknown operator family '{other}'"
            ))),
        }
    }
}

/// Parameter bundle of one operator instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    family: OperatorFamily,
    n: u32,
    mu: f64,
    alpha: f64,
    lambda: f64,
}

impl OperatorConfig {
    /// Validates `n ≥ 1` and `μ, α, λ ≥ 0`. `α` is ignored by the
    /// Szász-Dunkl and Wafi-Rao families, `λ` by the point-evaluation
    /// families.
    pub fn new(family: OperatorFamily, n: u32, mu: f64, alpha: f64, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("operator index n must be >= 1".into()));
        }
        for (name, v) in [("mu", mu), ("alpha", alpha), ("lambda", lambda)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(OperatorConfig {
            family,
            n,
            mu,
            alpha,
            lambda,
        })
    }

    pub fn family(&self) -> OperatorFamily {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `α` as the weight series sees it (zero for the non-Hermite families).
    pub fn effective_alpha(&self) -> f64 {
        if self.family.uses_alpha() {
            self.alpha
        } else {
            0.0
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dunkl_param(&self) -> DunklParam {
        DunklParam::new(self.mu).expect("validated at construction")
    }

    pub fn hermite_param(&self) -> HermiteParam {
        HermiteParam::new(self.mu, self.effective_alpha()).expect("validated at construction")
    }
}

/// The documented default truncation control for weight series: relative
/// tail `1e-12` and a term cap of `max(256, ⌈8nx⌉)` — the weight
/// distribution's mean is `Θ(nx)`, so the cap sits far in the tail.
pub fn weight_series_control(config: &OperatorConfig, x: f64) -> SeriesControl {
    let cap = (8.0 * config.n_f64() * x).ceil() as usize;
    SeriesControl {
        tail_tol: 1e-12,
        max_terms: cap.max(256),
    }
}

/// A truncated, normalized weight sequence at a fixed evaluation point.
#[derive(Debug, Clone)]
pub struct WeightSeries {
    weights: Vec<f64>,
    tail_mass: f64,
    x: f64,
    config: OperatorConfig,
}

impl WeightSeries {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn config(&self) -> &OperatorConfig {
        &self.config
    }

    /// `Σ w_k + tail_mass`, which the partition-of-unity invariant pins to 1.
    pub fn total_mass(&self) -> f64 {
        kahan_sum(self.weights.iter().copied()) + self.tail_mass
    }
}

fn kahan_sum(it: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in it {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// The normalized weights
/// `w_k = [h_k^μ(n,α) x^k / γ_μ(k)] / [e^{αx²} e_μ(nx)]`
/// (Hermite families) or `w_k = (nx)^k / [γ_μ(k) e_μ(nx)]` (direct
/// families; the `α = 0` collapse of the former).
///
/// Each weight is assembled as `exp(log term − log normalizer)`; the series
/// stops once the cumulative weight reaches `1 − tail_tol` and the remainder
/// is recorded as `tail_mass`.
pub fn weights(config: &OperatorConfig, x: f64, ctrl: &SeriesControl) -> Result<WeightSeries> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("weights require x >= 0, got {x}")));
    }
    if x == 0.0 {
        // x^k = 0 for k >= 1 and the normalizer is 1
        return Ok(WeightSeries {
            weights: vec![1.0],
            tail_mass: 0.0,
            x,
            config: *config,
        });
    }
    let n = config.n_f64();
    let p = config.dunkl_param();
    let log_e = dunkl_exp(p, n * x, ctrl)?;
    let log_x = x.ln();

    let hermite = config.family.uses_alpha();
    let log_norm = if hermite {
        config.alpha() * x * x + log_e.log_abs()
    } else {
        log_e.log_abs()
    };
    let log_nx = (n * x).ln();
    let mut hermite_eval = if hermite {
        Some(HermiteEvaluator::new(config.hermite_param(), n))
    } else {
        None
    };
    let gamma_log = if hermite {
        Vec::new()
    } else {
        gamma_nu_log_table(p, ctrl.max_terms)
    };

    let mut w = Vec::with_capacity(64);
    let mut cum = 0.0f64;
    let mut comp = 0.0f64;
    let mut tiny_streak = 0usize;
    let peak = n * x;
    for k in 0..ctrl.max_terms {
        let log_term = if let Some(ev) = hermite_eval.as_mut() {
            ev.term(k).log_abs() + k as f64 * log_x
        } else {
            k as f64 * log_nx - gamma_log[k]
        };
        let wk = (log_term - log_norm).exp();
        w.push(wk);
        let y = wk - comp;
        let t = cum + y;
        comp = (t - cum) - y;
        cum = t;

        if cum >= 1.0 - ctrl.tail_tol {
            return Ok(WeightSeries {
                weights: w,
                tail_mass: (1.0 - cum).max(0.0),
                x,
                config: *config,
            });
        }
        // fallback: past the peak with certifiably negligible terms, the
        // cumulative sum has saturated below 1 - tail_tol only through
        // normalizer rounding
        if k as f64 > peak && wk < 1e-17 * cum.max(f64::MIN_POSITIVE) {
            tiny_streak += 1;
            if tiny_streak >= 3 {
                return Ok(WeightSeries {
                    weights: w,
                    tail_mass: (1.0 - cum).max(0.0),
                    x,
                    config: *config,
                });
            }
        } else {
            tiny_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: ctrl.max_terms,
        last_rel: 1.0 - cum,
    })
}

fn rising_factorial(a: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Exact Gamma-kernel moment of `t^m`: `a(a+1)⋯(a+m-1)/rate^m`.
pub fn gamma_monomial_moment(shape: f64, rate: f64, m: u32) -> f64 {
    rising_factorial(shape, m) / rate.powi(m as i32)
}

/// `E[f(T)]` for `T ~ Gamma(shape, rate)`.
///
/// Monomials and polynomials take the exact rising-factorial route; every
/// other target goes through adaptive quadrature on the truncated support.
pub fn gamma_kernel_expectation(
    shape: f64,
    rate: f64,
    f: &TargetFunction,
    quad: &QuadratureControl,
) -> Result<f64> {
    check_gamma_args(shape, rate)?;
    match f.kind() {
        FunctionKind::Monomial(m) => Ok(gamma_monomial_moment(shape, rate, *m)),
        FunctionKind::Poly(p) => Ok(poly_gamma_moment(shape, rate, p)),
        FunctionKind::Callable(_) => gamma_kernel_expectation_quadrature(shape, rate, f, quad),
    }
}

fn poly_gamma_moment(shape: f64, rate: f64, p: &Polynomial) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(m, &c)| c * gamma_monomial_moment(shape, rate, m as u32))
        .sum()
}

fn check_gamma_args(shape: f64, rate: f64) -> Result<()> {
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::Domain(format!("Gamma shape must be > 0, got {shape}")));
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::Domain(format!("Gamma rate must be > 0, got {rate}")));
    }
    Ok(())
}

/// Solve `Δ - e^Δ + 1 = -c` for the two roots bracketing 0.
fn window_offsets(c: f64) -> (f64, f64) {
    let g = |d: f64| d - d.exp() + 1.0 + c;
    let bisect = |mut lo: f64, mut hi: f64| {
        // sign(g(lo)) != sign(g(hi)) by construction
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) > 0.0) == (g(lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-12 * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    (bisect(-(c + 2.0), 0.0), bisect((c + 2.0).ln() + 1.0, 0.0))
}

/// `E[f(T)]` by forced adaptive Gauss-Kronrod quadrature, independent of the
/// exact-moment route.
///
/// Substituting `t = e^s` turns the density into a smooth, log-concave
/// integrand with an interior peak for every `shape > 0` (the `shape < 1`
/// endpoint singularity disappears); the window keeps every `s` with
/// effective log-integrand within 46 nats of the peak, the effective
/// exponent being widened by the declared polynomial growth degree. The
/// density factor is evaluated in log space, so large shapes cannot
/// overflow. Growth of `f` is spot-checked on every quadrature node.
pub fn gamma_kernel_expectation_quadrature(
    shape: f64,
    rate: f64,
    f: &TargetFunction,
    quad: &QuadratureControl,
) -> Result<f64> {
    check_gamma_args(shape, rate)?;
    const WINDOW_NATS: f64 = 46.0;
    let degree = f.growth().degree() as f64;
    let a_eff = shape + degree;
    let s_peak = (a_eff / rate).ln();
    let (lo, hi) = window_offsets(WINDOW_NATS / a_eff);
    let log_density_const = shape * rate.ln() - log_gamma(shape)?;

    let growth = f.growth();
    let worst = Cell::new((0.0f64, 0.0f64, 0.0f64)); // (ratio, t, |f(t)|)
    let integrand = |s: f64| {
        let t = s.exp();
        let v = f.eval(t);
        let env = growth.envelope(t);
        let ratio = v.abs() / env.max(f64::MIN_POSITIVE);
        if ratio > worst.get().0 {
            worst.set((ratio, t, v.abs()));
        }
        v * (log_density_const + shape * s - rate * t).exp()
    };
    let value = integrate(integrand, s_peak + lo, s_peak + hi, quad)?;
    let (ratio, t, actual) = worst.get();
    if ratio > 1.1 {
        return Err(Error::GrowthViolation {
            t,
            actual,
            declared: growth.envelope(t),
        });
    }
    Ok(value)
}

/// Outcome of one operator application: the value plus truncation
/// diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApplyResult {
    /// `Σ_k w_k K_k(f)` over the retained terms.
    pub value: f64,
    /// Bound on the discarded contribution: `tail_mass · sup|f|` for bounded
    /// targets, `√(tail_mass · S_n(env²))` via Cauchy-Schwarz for polynomial
    /// growth (with the second moment estimated over the retained terms).
    pub truncation_bound: f64,
    /// Number of retained weight terms.
    pub trunc_k: usize,
    /// Recorded tail mass of the weight series.
    pub tail_mass: f64,
}

/// Apply the operator to a target function at `x`.
///
/// `K_k` is point evaluation at `(k + 2μθ_k)/n` for the Szász-type families
/// and the Gamma expectation with shape `k + 2μθ_k + λ + 1`, rate `n` for
/// the Gamma-type families. At `x = 0` the Gamma families still smooth:
/// `S_n(f;0)` is the Gamma(λ+1, n) expectation of `f`, not `f(0)`.
pub fn apply(
    config: &OperatorConfig,
    f: &TargetFunction,
    x: f64,
    ctrl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<ApplyResult> {
    let ws = weights(config, x, ctrl)?;
    apply_with_weights(&ws, f, quad)
}

/// [`apply`] reusing a precomputed weight series (the weights do not depend
/// on the target function).
pub fn apply_with_weights(
    ws: &WeightSeries,
    f: &TargetFunction,
    quad: &QuadratureControl,
) -> Result<ApplyResult> {
    let config = ws.config();
    let n = config.n_f64();
    let mu = config.mu();
    let lambda = config.lambda();
    let gamma_kernel = config.family().gamma_kernel();
    let growth = f.growth();

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut env2 = 0.0f64; // running S_n(envelope²) estimate for poly growth
    for (k, &w) in ws.weights().iter().enumerate() {
        let shifted = k as f64 + 2.0 * mu * theta(k as u64) as f64;
        let kv = if gamma_kernel {
            let shape = shifted + lambda + 1.0;
            gamma_kernel_expectation(shape, n, f, quad)?
        } else {
            let node = shifted / n;
            let fv = f.eval(node);
            let env = growth.envelope(node);
            if fv.abs() > 1.1 * env {
                return Err(Error::GrowthViolation {
                    t: node,
                    actual: fv.abs(),
                    declared: env,
                });
            }
            fv
        };
        let y = w * kv - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        if let Growth::PolynomialDegree { degree, coeff } = growth {
            let e2 = if gamma_kernel {
                let shape = shifted + lambda + 1.0;
                coeff * coeff
                    * (1.0
                        + 2.0 * gamma_monomial_moment(shape, n, degree)
                        + gamma_monomial_moment(shape, n, 2 * degree))
            } else {
                let e = growth.envelope(shifted / n);
                e * e
            };
            env2 += w * e2;
        }
    }

    let truncation_bound = match growth {
        Growth::Bounded { bound } => ws.tail_mass() * bound,
        Growth::PolynomialDegree { .. } => (ws.tail_mass() * env2).sqrt(),
    };
    Ok(ApplyResult {
        value: sum,
        truncation_bound,
        trunc_k: ws.weights().len(),
        tail_mass: ws.tail_mass(),
    })
}
