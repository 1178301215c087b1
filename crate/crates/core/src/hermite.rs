//! The Dunkl generalization of two-variable Hermite polynomials.
//!
//! `H_k^μ(ξ,α) = k! Σ_{j=0}^{⌊k/2⌋} α^j ξ^{k-2j} / (j! γ_μ(k-2j))`, generated
//! by `Σ_k h_k^μ(ξ,α) t^k / γ_μ(k) = e^{αt²} e_μ(ξt)` where
//! `h_k^μ = γ_μ(k) H_k^μ / k!`.
//!
//! The primitive here is `H_k^μ/k! = h_k^μ/γ_μ(k)` — every series in the
//! operator layer consumes exactly that combination, so the factorially
//! large `h_k^μ` is never materialized on its own. Terms are assembled in
//! log space with explicit sign tracking (`ξ` may be negative; `α ≥ 0`).

use crate::dunkl::{dunkl_exp, gamma_nu_log_table, log_factorial, DunklParam, SeriesControl};
use crate::error::{Error, Result};
use crate::logval::LogValue;

/// Parameters of the Hermite generating function `e^{αt²} e_μ(ξt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteParam {
    mu: f64,
    alpha: f64,
}

impl HermiteParam {
    pub fn new(mu: f64, alpha: f64) -> Result<Self> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Hermite parameter mu must be finite and nonnegative, got {mu}"
            )));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Hermite parameter alpha must be finite and nonnegative, got {alpha}"
            )));
        }
        Ok(HermiteParam { mu, alpha })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dunkl(&self) -> DunklParam {
        DunklParam::new(self.mu).expect("validated at construction")
    }
}

/// Incremental evaluator for `H_k^μ(ξ,α)/k!` at fixed `(μ, α, ξ)`.
///
/// Keeps the `log γ_μ` and `log j!` prefix tables so that sweeping `k`
/// upward (the weight-series access pattern) costs `O(k)` per term.
pub(crate) struct HermiteEvaluator {
    alpha: f64,
    log_alpha: f64,
    xi_sign: i8,
    log_xi: f64,
    mu: DunklParam,
    gamma_log: Vec<f64>,
    fact_log: Vec<f64>,
}

impl HermiteEvaluator {
    pub fn new(hp: HermiteParam, xi: f64) -> Self {
        HermiteEvaluator {
            alpha: hp.alpha,
            log_alpha: if hp.alpha == 0.0 {
                f64::NEG_INFINITY
            } else {
                hp.alpha.ln()
            },
            xi_sign: if xi > 0.0 {
                1
            } else if xi < 0.0 {
                -1
            } else {
                0
            },
            log_xi: xi.abs().ln(),
            mu: hp.dunkl(),
            gamma_log: vec![0.0],
            fact_log: vec![0.0],
        }
    }

    fn ensure_tables(&mut self, k: usize) {
        if self.gamma_log.len() <= k {
            self.gamma_log = gamma_nu_log_table(self.mu, k + 32);
        }
        while self.fact_log.len() <= k / 2 {
            let j = self.fact_log.len() as u64;
            self.fact_log.push(log_factorial(j));
        }
    }

    /// `H_k^μ(ξ,α)/k!`, the coefficient of `t^k x^k`-type series.
    pub fn term(&mut self, k: usize) -> LogValue {
        self.ensure_tables(k);
        // max-shifted signed sum over j = 0..⌊k/2⌋
        let mut logs = Vec::with_capacity(k / 2 + 1);
        let mut max_log = f64::NEG_INFINITY;
        for j in 0..=k / 2 {
            let pow = k - 2 * j;
            let mut lg = -self.fact_log[j] - self.gamma_log[pow];
            if j > 0 {
                lg += j as f64 * self.log_alpha;
            }
            if pow > 0 {
                lg += pow as f64 * self.log_xi;
            }
            let sign = if pow == 0 || self.xi_sign >= 0 {
                1i8
            } else if pow % 2 == 0 {
                1
            } else {
                -1
            };
            // ξ = 0 kills every term with a surviving power of ξ
            let dead = pow > 0 && self.xi_sign == 0;
            let lg = if dead || (j > 0 && self.alpha == 0.0) {
                f64::NEG_INFINITY
            } else {
                lg
            };
            if lg > max_log {
                max_log = lg;
            }
            logs.push((lg, sign));
        }
        if max_log == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        let mut acc = 0.0f64;
        for (lg, sign) in logs {
            if lg > f64::NEG_INFINITY {
                acc += sign as f64 * (lg - max_log).exp();
            }
        }
        if acc == 0.0 {
            return LogValue::ZERO;
        }
        let sign = if acc > 0.0 { 1 } else { -1 };
        LogValue::new(sign, max_log + acc.abs().ln())
    }

    /// `log γ_μ(k+s) - log γ_μ(k)` for small shifts.
    pub fn gamma_log_ratio(&mut self, k: usize, s: usize) -> f64 {
        self.ensure_tables(k + s);
        self.gamma_log[k + s] - self.gamma_log[k]
    }
}

/// `H_k^μ(ξ,α)` by the explicit finite sum, assembled in log space.
pub fn hermite_h(hp: HermiteParam, k: u64, xi: f64) -> LogValue {
    let term = hermite_term(hp, k, xi);
    // H_k = k! · (H_k/k!) — exact in log space, by representation
    term.mul(&LogValue::new(1, log_factorial(k)))
}

/// `H_k^μ(ξ,α)/k! = h_k^μ(ξ,α)/γ_μ(k)` — the coefficient of `t^k` in
/// `e^{αt²} e_μ(ξt)`.
pub fn hermite_term(hp: HermiteParam, k: u64, xi: f64) -> LogValue {
    HermiteEvaluator::new(hp, xi).term(k as usize)
}

/// Result of a truncated series summation: the value and the truncation
/// index, reported for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
}

/// The shifted generating-function series
/// `Σ_{k≥0} h_{k+shift}^μ(ξ,α) t^k / γ_μ(k)` for `shift ∈ {0, 1, 2}`,
/// truncated under `ctrl`.
///
/// [`shifted_series_closed_form`] is the companion evaluator for the shifted
/// identities' right-hand sides; the two must agree on their common domain.
pub fn shifted_series_sum(
    hp: HermiteParam,
    xi: f64,
    t: f64,
    shift: u8,
    ctrl: &SeriesControl,
) -> Result<SeriesSum> {
    assert!(shift <= 2, "shift must be 0, 1, or 2");
    assert!(t >= 0.0, "shifted series requires t >= 0, got {t}");
    let log_t = t.ln(); // -inf at t = 0, guarded below
    let mut eval = HermiteEvaluator::new(hp, xi);
    let s = shift as usize;

    let mut max_log = f64::NEG_INFINITY;
    let mut acc = 0.0f64;
    let mut mag = 0.0f64;
    let mut small_streak = 0usize;
    for k in 0..ctrl.max_terms {
        let h = eval.term(k + s);
        let mut lg = f64::NEG_INFINITY;
        if !h.is_zero() && (k == 0 || t > 0.0) {
            lg = h.log_abs() + eval.gamma_log_ratio(k, s);
            if k > 0 {
                lg += k as f64 * log_t;
            }
        }
        let scaled = if lg == f64::NEG_INFINITY {
            0.0
        } else if lg > max_log {
            // rescale the accumulators to the new peak
            let f = (max_log - lg).exp();
            acc *= f;
            mag *= f;
            max_log = lg;
            1.0
        } else {
            (lg - max_log).exp()
        };
        acc += h.sign() as f64 * scaled;
        mag += scaled;

        if k >= 2 && scaled < ctrl.tail_tol * mag.max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 || t == 0.0 {
                let value = if max_log == f64::NEG_INFINITY {
                    0.0
                } else {
                    acc * max_log.exp()
                };
                return Ok(SeriesSum {
                    value,
                    terms: k + 1,
                });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: ctrl.max_terms,
        last_rel: ctrl.tail_tol,
    })
}

/// Closed forms of the shifted generating identities:
///
/// * shift 0: `e^{αt²} e_μ(ξt)`
/// * shift 1: `(ξ + 2αt) e^{αt²} e_μ(ξt)`
/// * shift 2: `(ξ² + 4ξαt + 4α²t² + 2α) e^{αt²} e_μ(ξt) + 4αμ e^{αt²} e_μ(-ξt)`
pub fn shifted_series_closed_form(
    hp: HermiteParam,
    xi: f64,
    t: f64,
    shift: u8,
    ctrl: &SeriesControl,
) -> Result<f64> {
    assert!(shift <= 2, "shift must be 0, 1, or 2");
    let (mu, alpha) = (hp.mu(), hp.alpha());
    let p = hp.dunkl();
    let gauss_log = alpha * t * t;
    let e_plus = dunkl_exp(p, xi * t, ctrl)?;
    let base = e_plus.sign() as f64 * (gauss_log + e_plus.log_abs()).exp();
    match shift {
        0 => Ok(base),
        1 => Ok((xi + 2.0 * alpha * t) * base),
        _ => {
            let e_minus = dunkl_exp(p, -xi * t, ctrl)?;
            let reflected = e_minus.sign() as f64 * (gauss_log + e_minus.log_abs()).exp();
            let poly = xi * xi + 4.0 * xi * alpha * t + 4.0 * alpha * alpha * t * t + 2.0 * alpha;
            Ok(poly * base + 4.0 * alpha * mu * reflected)
        }
    }
}
