//! Closed-form moments and central moments of the Dunkl-Gamma operator, the
//! quantity `Υ(n,x) = Λ₁² + Λ₂`, and the shifted operator
//! `S̃_n(g;x) = S_n(g;x) + g(x) - g(x + Λ₁)`.
//!
//! The closed forms are stated for the Dunkl-Gamma family only; the ancestor
//! families are covered through the `α = 0` reduction identities rather than
//! duplicated formulas.

use crate::dunkl::{dunkl_exp_ratio, RatioEval, SeriesControl};
use crate::error::Result;
use crate::functions::TargetFunction;
use crate::operators::{apply, OperatorConfig, OperatorFamily};
use crate::quad::QuadratureControl;

fn require_hermite_gamma(config: &OperatorConfig) {
    assert_eq!(
        config.family(),
        OperatorFamily::HermiteGamma,
        "closed-form moments are defined for the hermite_gamma family; \
         ancestor moments follow from the α = 0 reduction"
    );
}

/// `μ · e_μ(-nx)/e_μ(nx)` — the reflection term of the second moment — plus
/// its precision diagnostic.
pub fn reflection_term(config: &OperatorConfig, x: f64) -> RatioEval {
    let ctrl = SeriesControl::default();
    dunkl_exp_ratio(config.dunkl_param(), config.n_f64() * x, &ctrl)
}

/// Closed-form raw moment `S_n(t^order; x)` for `order ∈ {0, 1, 2}`:
///
/// * order 0: `1`
/// * order 1: `x + 2αx²/n + (λ+1)/n`
/// * order 2: `x²/n²·{n² + 4nαx + 4α²x² + 2α + 4αμR} + 2μx/n²·(n-2αx)R
///   + 2(λ+2)/n²·(n+2αx)x + (λ+1)(λ+2)/n²` with `R = e_μ(-nx)/e_μ(nx)`.
pub fn moment_closed(config: &OperatorConfig, order: u8, x: f64) -> f64 {
    require_hermite_gamma(config);
    assert!(order <= 2, "closed forms cover orders 0..=2");
    assert!(x >= 0.0, "moments require x >= 0");
    let n = config.n_f64();
    let (mu, alpha, lambda) = (config.mu(), config.alpha(), config.lambda());
    match order {
        0 => 1.0,
        1 => x + 2.0 * alpha * x * x / n + (lambda + 1.0) / n,
        _ => {
            let r = reflection_term(config, x).value;
            let n2 = n * n;
            (x * x / n2)
                * (n2 + 4.0 * n * alpha * x
                    + 4.0 * alpha * alpha * x * x
                    + 2.0 * alpha
                    + 4.0 * alpha * mu * r)
                + (2.0 * mu * x / n2) * (n - 2.0 * alpha * x) * r
                + (2.0 * (lambda + 2.0) / n2) * (n + 2.0 * alpha * x) * x
                + (lambda + 1.0) * (lambda + 2.0) / n2
        }
    }
}

/// Closed-form central moment for `order ∈ {1, 2}`:
///
/// * `Λ₁ = S_n(t-x; x) = (2αx² + λ + 1)/n`
/// * `Λ₂ = S_n((t-x)²; x) = (1/n)[x²/n·(4x²α² + 4λα + 10α)
///   + 2x(μR + 1) + (λ+1)(λ+2)/n]`
///
/// `Λ₂` is evaluated from this factored form rather than the raw-moment
/// difference `m₂ - 2x·m₁ + x²`, which cancels badly for large `x` and
/// moderate `n`; the difference form survives as a consistency test.
pub fn central_moment_closed(config: &OperatorConfig, order: u8, x: f64) -> f64 {
    require_hermite_gamma(config);
    assert!(
        order == 1 || order == 2,
        "central closed forms cover orders 1 and 2"
    );
    assert!(x >= 0.0, "moments require x >= 0");
    let n = config.n_f64();
    let (mu, alpha, lambda) = (config.mu(), config.alpha(), config.lambda());
    if order == 1 {
        (2.0 * alpha * x * x + lambda + 1.0) / n
    } else {
        let r = reflection_term(config, x).value;
        (x * x / n * (4.0 * x * x * alpha * alpha + 4.0 * lambda * alpha + 10.0 * alpha)
            + 2.0 * x * (mu * r + 1.0)
            + (lambda + 1.0) * (lambda + 2.0) / n)
            / n
    }
}

/// `Υ(n,x) = Λ₁² + Λ₂` — the error-bound driver of the final theorem.
pub fn upsilon(config: &OperatorConfig, x: f64) -> f64 {
    let l1 = central_moment_closed(config, 1, x);
    l1 * l1 + central_moment_closed(config, 2, x)
}

/// Moments, central moments, and `Υ` at one grid point, with the reflection
/// ratio's precision diagnostic surfaced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub upsilon: f64,
    pub x: f64,
    pub config: OperatorConfig,
    /// Degraded reflection-ratio accuracy at this grid point.
    pub precision_loss: bool,
}

impl MomentReport {
    pub fn compute(config: &OperatorConfig, x: f64) -> MomentReport {
        let lambda1 = central_moment_closed(config, 1, x);
        let lambda2 = central_moment_closed(config, 2, x);
        MomentReport {
            m0: 1.0,
            m1: moment_closed(config, 1, x),
            m2: moment_closed(config, 2, x),
            lambda1,
            lambda2,
            upsilon: lambda1 * lambda1 + lambda2,
            x,
            config: *config,
            precision_loss: reflection_term(config, x).precision_loss,
        }
    }
}

/// The shifted operator `S̃_n(f;x) = S_n(f;x) + f(x) - f(x + Λ₁)`, which
/// reproduces affine functions exactly.
pub fn shifted_apply(
    config: &OperatorConfig,
    f: &TargetFunction,
    x: f64,
    ctrl: &SeriesControl,
    quad: &QuadratureControl,
) -> Result<f64> {
    let base = apply(config, f, x, ctrl, quad)?;
    let l1 = central_moment_closed(config, 1, x);
    Ok(base.value + f.eval(x) - f.eval(x + l1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::TargetFunction;
    use crate::poly::Polynomial;

    fn cfg(n: u32, mu: f64, alpha: f64, lambda: f64) -> OperatorConfig {
        OperatorConfig::new(OperatorFamily::HermiteGamma, n, mu, alpha, lambda).unwrap()
    }

    #[test]
    fn zeroth_moment_is_one() {
        assert_eq!(moment_closed(&cfg(7, 0.5, 0.25, 1.0), 0, 1.3), 1.0);
    }

    #[test]
    fn first_moment_example() {
        // n=10, x=1, α=0.5, λ=0 -> 1.2
        let v = moment_closed(&cfg(10, 0.9, 0.5, 0.0), 1, 1.0);
        assert!((v - 1.2).abs() < 1e-15);
    }

    #[test]
    fn second_moment_reduction() {
        // μ=α=λ=0: x² + 4x/n + 2/n²
        for (n, x) in [(5u32, 0.5), (10, 1.0), (100, 2.0)] {
            let v = moment_closed(&cfg(n, 0.0, 0.0, 0.0), 2, x);
            let nf = n as f64;
            let expect = x * x + 4.0 * x / nf + 2.0 / (nf * nf);
            assert!((v - expect).abs() / expect < 1e-13, "n={n} x={x}");
        }
    }

    #[test]
    fn second_moment_frozen() {
        // mpmath: closed form and independent weighted-kernel sum agree
        let v = moment_closed(&cfg(10, 0.5, 0.5, 1.0), 2, 1.0);
        assert!((v - 1.942_637_800_402_140_9).abs() < 1e-14, "{v}");
        let v = moment_closed(&cfg(5, 1.0, 0.5, 0.0), 2, 2.0);
        assert!((v - 10.362_105_261_330_833).abs() < 1e-13, "{v}");
    }

    #[test]
    fn central_moment_examples() {
        // Λ₁(n=10, x=1, α=0.5, λ=0) = 0.2
        let v = central_moment_closed(&cfg(10, 0.0, 0.5, 0.0), 1, 1.0);
        assert!((v - 0.2).abs() < 1e-16);
        // α=0: Λ₁ = (λ+1)/n (the Wafi-Rao first central moment)
        let v = central_moment_closed(&cfg(20, 1.0, 0.0, 3.0), 1, 1.7);
        assert!((v - 0.2).abs() < 1e-15);
        // μ=α=λ=0: Λ₂ = 2x/n + 2/n²
        let v = central_moment_closed(&cfg(10, 0.0, 0.0, 0.0), 2, 1.5);
        assert!((v - (0.3 + 0.02)).abs() < 1e-14);
    }

    #[test]
    fn upsilon_example() {
        // n=10, x=1, α=0.5, λ=0, μ=0: Λ₁=0.2, Λ₂=0.28, Υ=0.32
        let c = cfg(10, 0.0, 0.5, 0.0);
        let l2 = central_moment_closed(&c, 2, 1.0);
        assert!((l2 - 0.28).abs() < 1e-14, "{l2}");
        let v = upsilon(&c, 1.0);
        assert!((v - 0.32).abs() < 1e-14, "{v}");
    }

    #[test]
    fn upsilon_at_zero() {
        // x=0: Υ = ((λ+1)/n)² + (λ+1)(λ+2)/n²
        let c = cfg(10, 0.5, 0.5, 1.0);
        let v = upsilon(&c, 0.0);
        let expect = 0.04 + 6.0 / 100.0;
        assert!((v - expect).abs() < 1e-15);
        // Υ ≥ Λ₂ always
        for x in [0.0, 0.5, 1.0, 2.0] {
            assert!(upsilon(&c, x) >= central_moment_closed(&c, 2, x));
        }
    }

    #[test]
    fn central_moment_algebra() {
        // Λ₁ = m₁ - x and Λ₂ = m₂ - 2x·m₁ + x² within 1e-12 relative
        for (n, x, mu, alpha, lambda) in [
            (5u32, 0.25, 0.5, 0.5, 1.0),
            (10, 1.0, 1.0, 0.5, 0.0),
            (50, 2.0, 0.0, 0.0, 1.0),
            (100, 1.75, 0.5, 0.5, 1.0),
        ] {
            let c = cfg(n, mu, alpha, lambda);
            let m1 = moment_closed(&c, 1, x);
            let m2 = moment_closed(&c, 2, x);
            let l1 = central_moment_closed(&c, 1, x);
            let l2 = central_moment_closed(&c, 2, x);
            assert!((l1 - (m1 - x)).abs() <= 1e-12 * l1.abs().max(1e-15));
            let diff_form = m2 - 2.0 * x * m1 + x * x;
            assert!(
                (l2 - diff_form).abs() <= 1e-12 * l2.abs().max(1e-12),
                "n={n} x={x}: {l2} vs {diff_form}"
            );
        }
    }

    #[test]
    fn report_consistency() {
        let c = cfg(10, 0.5, 0.5, 1.0);
        let rep = MomentReport::compute(&c, 1.25);
        assert_eq!(rep.m0, 1.0);
        assert_eq!(rep.upsilon, rep.lambda1 * rep.lambda1 + rep.lambda2);
        assert!(rep.lambda2 > 0.0);
    }

    #[test]
    fn shifted_reproduces_affine() {
        let ctrl = SeriesControl::default();
        let quad = QuadratureControl::default();
        let c = cfg(10, 0.5, 0.5, 1.0);
        // f = 1 and f = t
        let one = TargetFunction::monomial(0);
        assert!((shifted_apply(&c, &one, 1.0, &ctrl, &quad).unwrap() - 1.0).abs() < 1e-12);
        let t = TargetFunction::monomial(1);
        for x in [0.0, 0.5, 1.0, 2.0] {
            let v = shifted_apply(&c, &t, x, &ctrl, &quad).unwrap();
            assert!((v - x).abs() < 1e-11, "x={x}: {v}");
        }
    }

    #[test]
    fn shifted_square_example() {
        // f = t², n=10, x=1, α=0.5, λ=0, μ=0: m₂ + 1 - 1.2²
        let ctrl = SeriesControl::default();
        let quad = QuadratureControl::default();
        let c = cfg(10, 0.0, 0.5, 0.0);
        let t2 = TargetFunction::polynomial("t^2", Polynomial::monomial(2));
        let v = shifted_apply(&c, &t2, 1.0, &ctrl, &quad).unwrap();
        let expect = moment_closed(&c, 2, 1.0) + 1.0 - 1.44;
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");
    }
}
