//! Sampled smoothness estimators and the quantitative error bounds.
//!
//! The sampled moduli maximize over a finite grid, so they are lower bounds
//! of the true suprema — good enough for diagnostics and for convergence
//! studies, but the bound-domination tests pair the theorems only with
//! functions whose moduli are known analytically.

use crate::error::{Error, Result};
use crate::functions::TargetFunction;
use crate::moments::{central_moment_closed, reflection_term, upsilon};
use crate::operators::OperatorConfig;

/// First- or second-order modulus estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    FirstOrder,
    SecondOrder,
}

/// A sampled modulus-of-continuity value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusEstimate {
    pub value: f64,
    pub delta: f64,
    pub grid_step: f64,
    pub kind: ModulusKind,
    /// Sampled estimates maximize over a finite subset, so they never
    /// exceed the true modulus.
    pub is_lower_bound: bool,
}

/// Sup norms of a function and its first two derivatives on the working
/// domain — the `C̃_B²` norm splits of the twice-differentiable bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessNorms {
    pub sup_f: f64,
    pub sup_f1: f64,
    pub sup_f2: f64,
}

impl SmoothnessNorms {
    pub fn new(sup_f: f64, sup_f1: f64, sup_f2: f64) -> Result<Self> {
        for (name, v) in [("sup_f", sup_f), ("sup_f1", sup_f1), ("sup_f2", sup_f2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(SmoothnessNorms {
            sup_f,
            sup_f1,
            sup_f2,
        })
    }

    /// `‖h‖ + ‖h′‖ + ‖h″‖`.
    pub fn total(&self) -> f64 {
        self.sup_f + self.sup_f1 + self.sup_f2
    }
}

fn grid_count(a: f64, b: f64, step: f64) -> usize {
    ((b - a) / step + 1e-9).floor() as usize
}

/// Sampled first modulus of continuity
/// `ω(f;δ) = sup{|f(s)-f(t)| : |s-t| ≤ δ}` over the grid
/// `{a, a+step, …, b}`.
///
/// Pairs within distance δ always lie inside some window of width δ, so the
/// estimate is the maximum windowed range, computed with monotonic deques in
/// `O(N)`.
pub fn modulus(f: &TargetFunction, delta: f64, domain: (f64, f64), step: f64) -> ModulusEstimate {
    let (a, b) = domain;
    assert!(b > a && a >= 0.0, "domain must satisfy b > a >= 0");
    assert!(step > 0.0 && step <= delta, "require 0 < step <= delta");
    let n = grid_count(a, b, step);
    let window = grid_count(0.0, delta, step); // indices i..=i+window
    let values: Vec<f64> = (0..=n).map(|i| f.eval(a + i as f64 * step)).collect();

    let mut max_deque: std::collections::VecDeque<usize> = Default::default();
    let mut min_deque: std::collections::VecDeque<usize> = Default::default();
    let mut best = 0.0f64;
    for i in 0..=n {
        while let Some(&back) = max_deque.back() {
            if values[back] <= values[i] {
                max_deque.pop_back();
            } else {
                break;
            }
        }
        max_deque.push_back(i);
        while let Some(&back) = min_deque.back() {
            if values[back] >= values[i] {
                min_deque.pop_back();
            } else {
                break;
            }
        }
        min_deque.push_back(i);
        if i >= window {
            // window [i-window, i] is full from here on
        }
        while *max_deque.front().unwrap() + window < i {
            max_deque.pop_front();
        }
        while *min_deque.front().unwrap() + window < i {
            min_deque.pop_front();
        }
        let range = values[*max_deque.front().unwrap()] - values[*min_deque.front().unwrap()];
        if range > best {
            best = range;
        }
    }
    ModulusEstimate {
        value: best,
        delta,
        grid_step: step,
        kind: ModulusKind::FirstOrder,
        is_lower_bound: true,
    }
}

/// Sampled second modulus
/// `ω₂(f;δ) = sup{|f(x+2s) - 2f(x+s) + f(x)| : 0 < s ≤ δ}` with `x + 2s`
/// kept inside the domain.
pub fn second_modulus(
    f: &TargetFunction,
    delta: f64,
    domain: (f64, f64),
    step: f64,
) -> ModulusEstimate {
    let (a, b) = domain;
    assert!(b > a && a >= 0.0, "domain must satisfy b > a >= 0");
    assert!(step > 0.0 && step <= delta, "require 0 < step <= delta");
    let n = grid_count(a, b, step);
    let values: Vec<f64> = (0..=n).map(|i| f.eval(a + i as f64 * step)).collect();
    let s_max = grid_count(0.0, delta, step);
    let mut best = 0.0f64;
    for s in 1..=s_max {
        for x in 0..=n.saturating_sub(2 * s) {
            let d2 = (values[x + 2 * s] - 2.0 * values[x + s] + values[x]).abs();
            if d2 > best {
                best = d2;
            }
        }
    }
    ModulusEstimate {
        value: best,
        delta,
        grid_step: step,
        kind: ModulusKind::SecondOrder,
        is_lower_bound: true,
    }
}

/// Sampled least Lipschitz constant of exponent `lip_exponent ∈ (0, 1]`:
/// the maximum of `|f(s)-f(t)|/|s-t|^lip_exponent` over distinct grid pairs
/// (a lower bound of the least admissible constant).
pub fn lipschitz_constant(
    f: &TargetFunction,
    lip_exponent: f64,
    domain: (f64, f64),
    step: f64,
) -> f64 {
    assert!(
        lip_exponent > 0.0 && lip_exponent <= 1.0,
        "lip_exponent must lie in (0, 1]"
    );
    let (a, b) = domain;
    assert!(b > a && a >= 0.0, "domain must satisfy b > a >= 0");
    assert!(step > 0.0, "step must be positive");
    let n = grid_count(a, b, step);
    let values: Vec<f64> = (0..=n).map(|i| f.eval(a + i as f64 * step)).collect();
    let mut best = 0.0f64;
    for i in 0..=n {
        for j in (i + 1)..=n {
            let ds = ((j - i) as f64 * step).powf(lip_exponent);
            let r = (values[j] - values[i]).abs() / ds;
            if r > best {
                best = r;
            }
        }
    }
    best
}

/// Lipschitz-class bound: `|S_n(h;x) - h(x)| ≤ M · Λ₂^{lip_exponent/2}` for
/// `h` in the class `Lip_M(lip_exponent)`.
pub fn bound_theorem6(config: &OperatorConfig, x: f64, m_const: f64, lip_exponent: f64) -> f64 {
    assert!(lip_exponent > 0.0 && lip_exponent <= 1.0);
    assert!(m_const >= 0.0);
    m_const * central_moment_closed(config, 2, x).powf(lip_exponent / 2.0)
}

/// The bracketed radicand of the first-modulus bound, written exactly as the
/// theorem states it:
/// `x²/n·(4x²α² + 4λα + 10α) + 2x(μ e_μ(-nx)/e_μ(nx) + 1) + (λ+1)(λ+2)/n`.
pub fn theorem7_radicand(config: &OperatorConfig, x: f64) -> f64 {
    let n = config.n_f64();
    let (mu, alpha, lambda) = (config.mu(), config.alpha(), config.lambda());
    let r = reflection_term(config, x).value;
    x * x / n * (4.0 * x * x * alpha * alpha + 4.0 * lambda * alpha + 10.0 * alpha)
        + 2.0 * x * (mu * r + 1.0)
        + (lambda + 1.0) * (lambda + 2.0) / n
}

/// First-modulus bound:
/// `|S_n(g;x) - g(x)| ≤ (1 + √(n·Λ₂)) · ω(g; 1/√n)` — the caller supplies
/// `ω(g; 1/√n)` (analytic or estimated). The theorem's radicand is checked
/// against `n·Λ₂` at every call; they agree by the central-moment algebra.
pub fn bound_theorem7(config: &OperatorConfig, x: f64, omega_at_inv_sqrt_n: f64) -> f64 {
    assert!(omega_at_inv_sqrt_n >= 0.0);
    let radicand = theorem7_radicand(config, x);
    let n_lambda2 = config.n_f64() * central_moment_closed(config, 2, x);
    assert!(
        (radicand - n_lambda2).abs() <= 1e-12 * radicand.abs().max(1.0),
        "radicand {radicand} deviates from n·Λ₂ = {n_lambda2}"
    );
    (1.0 + radicand.sqrt()) * omega_at_inv_sqrt_n
}

/// Twice-differentiable bound:
/// `|S_n(h;x) - h(x)| ≤ (Λ₁ + Λ₂) · (‖h‖ + ‖h′‖ + ‖h″‖)`.
pub fn bound_lemma8(config: &OperatorConfig, x: f64, norms: &SmoothnessNorms) -> f64 {
    let l1 = central_moment_closed(config, 1, x);
    let l2 = central_moment_closed(config, 2, x);
    (l1 + l2) * norms.total()
}

/// Peetre-type bound:
/// `|S_n(f;x) - f(x)| ≤ c·ω₂(f; ½√Υ(n,x)) + ω(f; Λ₁)`.
///
/// The constant `c > 0` in `K₂(f;δ) ≤ c·ω₂(f;√δ)` is not pinned down by the
/// theory, so it is an explicit argument; reports quote the bound for
/// several `c` values rather than claiming one.
pub fn bound_final(
    config: &OperatorConfig,
    x: f64,
    c: f64,
    omega2_at_half_sqrt_upsilon: f64,
    omega_at_lambda1: f64,
) -> f64 {
    assert!(c > 0.0, "the Peetre constant must be positive");
    assert!(omega2_at_half_sqrt_upsilon >= 0.0 && omega_at_lambda1 >= 0.0);
    let _ = upsilon(config, x); // the caller's ω₂ argument is at ½√Υ(n,x)
    c * omega2_at_half_sqrt_upsilon + omega_at_lambda1
}

/// Default estimation window `[0, x_max + 4√(Λ₂·n)/n + Λ₁]` for sampled
/// moduli: wide enough that all operator mass relevant to the bound
/// comparison lies inside.
pub fn default_window(config: &OperatorConfig, x_max: f64) -> (f64, f64) {
    let l1 = central_moment_closed(config, 1, x_max);
    let l2 = central_moment_closed(config, 2, x_max);
    let n = config.n_f64();
    (0.0, x_max + 4.0 * (l2 * n).sqrt() / n + l1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Growth;
    use crate::operators::OperatorFamily;

    fn cfg(n: u32, mu: f64, alpha: f64, lambda: f64) -> OperatorConfig {
        OperatorConfig::new(OperatorFamily::HermiteGamma, n, mu, alpha, lambda).unwrap()
    }

    fn sin_fn() -> TargetFunction {
        TargetFunction::callable("sin", Growth::Bounded { bound: 1.0 }, f64::sin)
    }

    #[test]
    fn modulus_of_identity_is_delta() {
        let f = TargetFunction::monomial(1);
        let m = modulus(&f, 0.5, (0.0, 4.0), 0.125);
        assert!((m.value - 0.5).abs() < 1e-12);
        assert!(m.is_lower_bound);
    }

    #[test]
    fn modulus_of_constant_is_zero() {
        let f = TargetFunction::constant(3.0);
        assert_eq!(modulus(&f, 1.0, (0.0, 5.0), 0.25).value, 0.0);
        assert_eq!(second_modulus(&f, 1.0, (0.0, 5.0), 0.25).value, 0.0);
    }

    #[test]
    fn modulus_of_sin() {
        // ω(sin; 1) = 2 sin(1/2) on a domain covering a full period
        let m = modulus(&sin_fn(), 1.0, (0.0, 4.0 * std::f64::consts::PI), 1e-4);
        let expect = 2.0 * 0.5f64.sin();
        assert!(m.value <= expect + 1e-12, "lower bound exceeded");
        assert!((m.value - expect).abs() < 1e-4, "{} vs {expect}", m.value);
    }

    #[test]
    fn modulus_monotone_in_delta_and_step() {
        let f = sin_fn();
        let dom = (0.0, 10.0);
        let m1 = modulus(&f, 0.5, dom, 0.01);
        let m2 = modulus(&f, 1.5, dom, 0.01);
        assert!(m1.value <= m2.value);
        // halving the step never decreases the estimate
        let coarse = modulus(&f, 1.0, dom, 0.02).value;
        let fine = modulus(&f, 1.0, dom, 0.01).value;
        assert!(fine >= coarse - 1e-15);
        let c2 = second_modulus(&f, 1.0, dom, 0.02).value;
        let f2 = second_modulus(&f, 1.0, dom, 0.01).value;
        assert!(f2 >= c2 - 1e-15);
    }

    #[test]
    fn second_modulus_cases() {
        // affine: second difference vanishes
        let aff = TargetFunction::polynomial("affine", crate::poly::Polynomial::new(vec![2.0, -3.0]));
        assert!(second_modulus(&aff, 1.0, (0.0, 6.0), 0.05).value < 1e-12);
        // t²: second difference is 2s², maximized at s = δ
        let sq = TargetFunction::monomial(2);
        let m = second_modulus(&sq, 0.5, (0.0, 4.0), 0.05);
        assert!((m.value - 0.5).abs() < 1e-12, "{}", m.value);
    }

    #[test]
    fn lipschitz_cases() {
        let id = TargetFunction::monomial(1);
        assert!((lipschitz_constant(&id, 1.0, (0.0, 4.0), 0.05) - 1.0).abs() < 1e-12);
        let c = TargetFunction::constant(5.0);
        assert_eq!(lipschitz_constant(&c, 0.5, (0.0, 4.0), 0.1), 0.0);
        // √t with exponent ½ has least constant 1, attained against t = 0
        let sq = TargetFunction::callable(
            "sqrt",
            Growth::PolynomialDegree {
                degree: 1,
                coeff: 1.0,
            },
            f64::sqrt,
        );
        let m = lipschitz_constant(&sq, 0.5, (0.0, 4.0), 0.01);
        assert!(m <= 1.0 + 1e-12 && m > 0.999, "{m}");
    }

    #[test]
    fn subadditivity_diagnostic() {
        // ω(f;2δ) ≤ 2ω(f;δ) + 2·step·Lip(f) for the sampled estimator
        let f = sin_fn();
        let dom = (0.0, 12.0);
        let step = 0.01;
        for delta in [0.25, 0.5, 1.0] {
            let w1 = modulus(&f, delta, dom, step).value;
            let w2 = modulus(&f, 2.0 * delta, dom, step).value;
            assert!(w2 <= 2.0 * w1 + 2.0 * step, "delta={delta}");
        }
    }

    #[test]
    fn theorem6_bound_zero_constant() {
        assert_eq!(bound_theorem6(&cfg(10, 0.5, 0.5, 0.0), 1.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn theorem6_dominates_lambda1() {
        // |S_n(t;x) - x| = Λ₁ ≤ √Λ₂ (Cauchy-Schwarz for the positive operator)
        for n in [5u32, 10, 50, 100] {
            for x in [0.0, 0.5, 1.0, 2.0] {
                let c = cfg(n, 0.5, 0.5, 1.0);
                let l1 = central_moment_closed(&c, 1, x);
                let bound = bound_theorem6(&c, x, 1.0, 1.0);
                assert!(l1 <= bound + 1e-10, "n={n} x={x}: {l1} vs {bound}");
            }
        }
    }

    #[test]
    fn theorem7_radicand_identity() {
        // radicand ≡ n·Λ₂ (bound_theorem7 asserts it internally)
        let c = cfg(10, 0.5, 0.5, 1.0);
        let b = bound_theorem7(&c, 1.0, 0.0);
        assert_eq!(b, 0.0);
        let b = bound_theorem7(&c, 1.0, 0.1);
        let expect = (1.0 + (10.0 * central_moment_closed(&c, 2, 1.0)).sqrt()) * 0.1;
        assert!((b - expect).abs() < 1e-13);
    }

    #[test]
    fn lemma8_bound_shape() {
        let c = cfg(10, 0.5, 0.5, 0.0);
        let norms = SmoothnessNorms::new(1.0, 1.0, 1.0).unwrap();
        let l1 = central_moment_closed(&c, 1, 1.0);
        let l2 = central_moment_closed(&c, 2, 1.0);
        assert!((bound_lemma8(&c, 1.0, &norms) - 3.0 * (l1 + l2)).abs() < 1e-15);
        assert!(SmoothnessNorms::new(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn final_bound_composition() {
        let c = cfg(10, 0.0, 0.5, 0.0);
        // f = t: ω₂ = 0, ω(Λ₁) = Λ₁, so the bound is exactly Λ₁
        let l1 = central_moment_closed(&c, 1, 1.0);
        let b = bound_final(&c, 1.0, 2.0, 0.0, l1);
        assert_eq!(b, l1);
    }

    #[test]
    fn window_covers_x_max() {
        let c = cfg(10, 0.5, 0.5, 1.0);
        let (lo, hi) = default_window(&c, 2.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 2.0);
    }
}
