//! Named target-function presets with their known analytic smoothness data.
//!
//! The bound-domination checks must not feed sampled (lower-bound) moduli
//! into inequalities that need upper bounds, so each preset carries its
//! analytic first/second modulus, Lipschitz data, and `C̃_B²` norms where
//! those are known in closed form.

use crate::functions::{Growth, TargetFunction};
use crate::moduli::SmoothnessNorms;
use crate::poly::Polynomial;

/// A named target function plus whatever analytic smoothness data it admits.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub target: TargetFunction,
    /// Analytic `ω(f;δ)` on `[0, ∞)`, when finite and known.
    pub omega: Option<fn(f64) -> f64>,
    /// Analytic `ω₂(f;δ)` on `[0, ∞)`, when finite and known.
    pub omega2: Option<fn(f64) -> f64>,
    /// `(M, exponent)` with `f ∈ Lip_M(exponent)`.
    pub lipschitz: Option<(f64, f64)>,
    /// Sup norms of `f, f′, f″` on `[0, ∞)` for twice-differentiable targets.
    pub norms: Option<SmoothnessNorms>,
}

fn omega_identity(d: f64) -> f64 {
    d
}

fn omega2_zero(_d: f64) -> f64 {
    0.0
}

fn omega_sin(d: f64) -> f64 {
    if d >= std::f64::consts::PI {
        2.0
    } else {
        2.0 * (d / 2.0).sin()
    }
}

fn omega2_sin(d: f64) -> f64 {
    let s = if d >= std::f64::consts::PI {
        1.0
    } else {
        (d / 2.0).sin()
    };
    4.0 * s * s
}

fn omega_sqrt(d: f64) -> f64 {
    d.sqrt()
}

fn omega2_sqrt(d: f64) -> f64 {
    // |√(x+2s) - 2√(x+s) + √x| peaks at x = 0: (2 - √2)√s
    (2.0 - std::f64::consts::SQRT_2) * d.sqrt()
}

fn omega_exp_decay(d: f64) -> f64 {
    -(-d).exp_m1()
}

fn omega2_exp_decay(d: f64) -> f64 {
    let w = -(-d).exp_m1();
    w * w
}

fn omega2_square(d: f64) -> f64 {
    // second difference of t² is 2s², independent of x
    2.0 * d * d
}

// sup norms of t²e^{-t}: |f| peaks at t=2 (4e^{-2}), |f′| at t=2-√2, |f″| at t=0.
const T2_EXP_SUP_F: f64 = 0.541_341_132_946_450_77;
const T2_EXP_SUP_F1: f64 = 0.461_158_792_007_203_47;
const T2_EXP_SUP_F2: f64 = 2.0;

/// Look up a preset by name. Known names: `constant`, `identity`, `square`,
/// `sin`, `sqrt`, `exp_decay`, `t2_exp_decay`.
pub fn preset(name: &str) -> Option<Preset> {
    let p = match name {
        "constant" => Preset {
            name: "constant",
            target: TargetFunction::constant(1.0),
            omega: Some(omega2_zero),
            omega2: Some(omega2_zero),
            lipschitz: Some((0.0, 1.0)),
            norms: Some(SmoothnessNorms::new(1.0, 0.0, 0.0).expect("static norms")),
        },
        "identity" => Preset {
            name: "identity",
            target: TargetFunction::monomial(1),
            omega: Some(omega_identity),
            omega2: Some(omega2_zero),
            lipschitz: Some((1.0, 1.0)),
            norms: None, // unbounded
        },
        "square" => Preset {
            name: "square",
            target: TargetFunction::monomial(2),
            omega: None, // infinite on [0, ∞)
            omega2: Some(omega2_square),
            lipschitz: None,
            norms: None,
        },
        "sin" => Preset {
            name: "sin",
            target: TargetFunction::callable("sin", Growth::Bounded { bound: 1.0 }, f64::sin),
            omega: Some(omega_sin),
            omega2: Some(omega2_sin),
            lipschitz: Some((1.0, 1.0)),
            norms: Some(SmoothnessNorms::new(1.0, 1.0, 1.0).expect("static norms")),
        },
        "sqrt" => Preset {
            name: "sqrt",
            target: TargetFunction::callable(
                "sqrt",
                Growth::PolynomialDegree {
                    degree: 1,
                    coeff: 1.0,
                },
                f64::sqrt,
            ),
            omega: Some(omega_sqrt),
            omega2: Some(omega2_sqrt),
            lipschitz: Some((1.0, 0.5)),
            norms: None, // f′ blows up at 0
        },
        "exp_decay" => Preset {
            name: "exp_decay",
            target: TargetFunction::callable(
                "exp_decay",
                Growth::Bounded { bound: 1.0 },
                |t| (-t).exp(),
            ),
            omega: Some(omega_exp_decay),
            omega2: Some(omega2_exp_decay),
            lipschitz: Some((1.0, 1.0)),
            norms: Some(SmoothnessNorms::new(1.0, 1.0, 1.0).expect("static norms")),
        },
        "t2_exp_decay" => Preset {
            name: "t2_exp_decay",
            target: TargetFunction::callable(
                "t2_exp_decay",
                Growth::Bounded {
                    bound: T2_EXP_SUP_F,
                },
                |t| t * t * (-t).exp(),
            ),
            omega: None,
            omega2: None,
            lipschitz: Some((T2_EXP_SUP_F1, 1.0)),
            norms: Some(
                SmoothnessNorms::new(T2_EXP_SUP_F, T2_EXP_SUP_F1, T2_EXP_SUP_F2)
                    .expect("static norms"),
            ),
        },
        _ => return None,
    };
    Some(p)
}

/// Polynomial presets `1, t, t²` as [`TargetFunction`]s — the Korovkin test
/// set driving the moment checks.
pub fn korovkin_set() -> [TargetFunction; 3] {
    [
        TargetFunction::monomial(0),
        TargetFunction::monomial(1),
        TargetFunction::monomial(2),
    ]
}

/// An affine target `a + b·t`.
pub fn affine(a: f64, b: f64) -> TargetFunction {
    TargetFunction::polynomial(format!("{a}+{b}t"), Polynomial::new(vec![a, b]))
}

pub const PRESET_NAMES: [&str; 7] = [
    "constant",
    "identity",
    "square",
    "sin",
    "sqrt",
    "exp_decay",
    "t2_exp_decay",
];
