//! Moving frame along a canonical null curve and its structure functions.
//!
//! The frame is {γ, ξ, N, W} with ξ = γ′, N = γ⊥/D, W = −(γ⊥)′/D, where γ⊥
//! swaps components pairwise ((v₁,v₂,v₃,v₄) ↦ (v₂,−v₁,−v₄,v₃)) and
//! D = ⟨γ⊥, γ′⟩ = 2(1 + m²)·Ω. All four vectors are lightlike; the only
//! nonzero pairings are ⟨γ, W⟩ = 1 and ⟨ξ, N⟩ = 1. The motion of the frame
//! is governed by three scalar functions (h, κ₁, κ₂):
//!
//! ```text
//! γ′ = ξ
//! ξ′ = κ₁·γ + h·ξ
//! N′ = κ₂·γ − h·N − W
//! W′ =      − κ₂·ξ − κ₁·N
//! ```

use crate::error::{Error, Result};
use crate::jet::{v4_add, v4_derivative, v4_div, v4_inner, v4_perp, v4_value, ScalarJet, Vec4Jet};
use crate::null_curve::ConeCurve;
use crate::pseudo_metric::PerpVariant;

/// Frame denominators smaller than this (in absolute value) are treated as
/// singular points of the construction.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-9;

/// The frame at one parameter value, as jets.
///
/// For an entry order `k` the position carries order `k` and the other
/// members order `k − 1`, so curvature jets come out with order `k − 2`.
#[derive(Debug, Clone)]
pub struct FrameJets {
    pub t: f64,
    pub gamma: Vec4Jet,
    pub xi: Vec4Jet,
    pub n: Vec4Jet,
    pub w: Vec4Jet,
    /// Jet of the pairing denominator D = ⟨γ⊥, γ′⟩.
    pub d: ScalarJet,
}

/// Build the frame jets at `t` with entry order `k` (2 ≤ k ≤ 4).
///
/// Fails with [`Error::SingularFrame`] when |D(t)| ≤ `singular_tol`.
pub fn build_frame_jets(
    curve: &ConeCurve,
    t: f64,
    k: usize,
    singular_tol: f64,
) -> Result<FrameJets> {
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidConfig(format!(
            "frame entry order must be 2..=4, got {k}"
        )));
    }
    if !(singular_tol.is_finite() && singular_tol > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "singular tolerance must be positive and finite, got {singular_tol}"
        )));
    }
    let gamma = curve.position_jet(t, k)?;
    let xi = v4_derivative(&gamma);
    let perp = v4_perp(&gamma, PerpVariant::P14);
    let d = v4_inner(&perp, &xi);
    if d.value().abs() <= singular_tol {
        return Err(Error::SingularFrame { t, d: d.value() });
    }
    let n = v4_div(&perp, &d)?;
    let w = v4_div(&v4_derivative(&perp), &d)?.map(|j| j.scale(-1.0));
    Ok(FrameJets {
        t,
        gamma,
        xi,
        n,
        w,
        d,
    })
}

/// The three structure functions at a point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CurvatureTriple {
    pub h: f64,
    pub kappa1: f64,
    pub kappa2: f64,
}

/// Structure functions as jets (order: entry order − 2).
#[derive(Debug, Clone)]
pub struct CurvatureJets {
    pub h: ScalarJet,
    pub kappa1: ScalarJet,
    pub kappa2: ScalarJet,
}

pub fn curvature_jets(frame: &FrameJets) -> CurvatureJets {
    let gamma_dd = v4_derivative(&frame.xi);
    CurvatureJets {
        h: v4_inner(&gamma_dd, &frame.n),
        kappa1: v4_inner(&gamma_dd, &frame.w),
        kappa2: v4_inner(&v4_derivative(&frame.n), &frame.w),
    }
}

pub fn curvatures(frame: &FrameJets) -> CurvatureTriple {
    let j = curvature_jets(frame);
    CurvatureTriple {
        h: j.h.value(),
        kappa1: j.kappa1.value(),
        kappa2: j.kappa2.value(),
    }
}

/// Residuals of the ten pairing conditions the frame must satisfy; each
/// field is the measured inner product minus its required value (1 for
/// γ·W and ξ·N, 0 for the rest).
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GramResiduals {
    pub gamma_gamma: f64,
    pub xi_xi: f64,
    pub n_n: f64,
    pub w_w: f64,
    pub gamma_xi: f64,
    pub gamma_n: f64,
    pub gamma_w: f64,
    pub xi_n: f64,
    pub xi_w: f64,
    pub n_w: f64,
}

impl GramResiduals {
    pub fn max_abs(&self) -> f64 {
        [
            self.gamma_gamma,
            self.xi_xi,
            self.n_n,
            self.w_w,
            self.gamma_xi,
            self.gamma_n,
            self.gamma_w,
            self.xi_n,
            self.xi_w,
            self.n_w,
        ]
        .iter()
        .fold(0.0f64, |acc, r| acc.max(r.abs()))
    }
}

pub fn gram_residuals(frame: &FrameJets) -> GramResiduals {
    let pair = |a: &Vec4Jet, b: &Vec4Jet| v4_inner(a, b).value();
    GramResiduals {
        gamma_gamma: pair(&frame.gamma, &frame.gamma),
        xi_xi: pair(&frame.xi, &frame.xi),
        n_n: pair(&frame.n, &frame.n),
        w_w: pair(&frame.w, &frame.w),
        gamma_xi: pair(&frame.gamma, &frame.xi),
        gamma_n: pair(&frame.gamma, &frame.n),
        gamma_w: pair(&frame.gamma, &frame.w) - 1.0,
        xi_n: pair(&frame.xi, &frame.n) - 1.0,
        xi_w: pair(&frame.xi, &frame.w),
        n_w: pair(&frame.n, &frame.w),
    }
}

/// Max-abs component residuals of the four frame motion equations.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct FrenetResiduals {
    /// γ′ − ξ
    pub gamma_eq: f64,
    /// ξ′ − (κ₁γ + hξ)
    pub xi_eq: f64,
    /// N′ − (κ₂γ − hN − W)
    pub n_eq: f64,
    /// W′ + κ₂ξ + κ₁N
    pub w_eq: f64,
}

impl FrenetResiduals {
    pub fn max_abs(&self) -> f64 {
        self.gamma_eq
            .abs()
            .max(self.xi_eq.abs())
            .max(self.n_eq.abs())
            .max(self.w_eq.abs())
    }
}

pub fn frenet_residuals(frame: &FrameJets) -> FrenetResiduals {
    let c = curvatures(frame);
    let gamma = v4_value(&frame.gamma);
    let xi = v4_value(&frame.xi);
    let n = v4_value(&frame.n);
    let w = v4_value(&frame.w);
    let dot = |v: &Vec4Jet| [v[0].coeff(1), v[1].coeff(1), v[2].coeff(1), v[3].coeff(1)];
    let gamma_dot = dot(&frame.gamma);
    let xi_dot = dot(&frame.xi);
    let n_dot = dot(&frame.n);
    let w_dot = dot(&frame.w);
    let mut res = FrenetResiduals {
        gamma_eq: 0.0,
        xi_eq: 0.0,
        n_eq: 0.0,
        w_eq: 0.0,
    };
    for i in 0..4 {
        res.gamma_eq = res.gamma_eq.max((gamma_dot[i] - xi[i]).abs());
        res.xi_eq = res
            .xi_eq
            .max((xi_dot[i] - (c.kappa1 * gamma[i] + c.h * xi[i])).abs());
        res.n_eq = res
            .n_eq
            .max((n_dot[i] - (c.kappa2 * gamma[i] - c.h * n[i] - w[i])).abs());
        res.w_eq = res
            .w_eq
            .max((w_dot[i] + c.kappa2 * xi[i] + c.kappa1 * n[i]).abs());
    }
    res
}

/// Both sides of the pairing identity ⟨γ⊥, γ′⟩ = 2(1 + m²)·Ω at one point.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PairingIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_residual: f64,
}

pub fn pairing_identity(curve: &ConeCurve, t: f64) -> Result<PairingIdentity> {
    let gamma = curve.position_jet(t, 1)?;
    let perp = v4_perp(&gamma, PerpVariant::P14);
    let lhs = v4_inner(&perp, &v4_derivative(&gamma)).value();
    let m = curve.m();
    let rhs = 2.0 * (1.0 + m * m) * curve.omega(t)?;
    let rel_residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
    Ok(PairingIdentity {
        lhs,
        rhs,
        rel_residual,
    })
}

/// Assemble c₁γ + c₂ξ + c₃N + c₄W as component jets.
pub fn combine(frame: &FrameJets, c: &[ScalarJet; 4]) -> Vec4Jet {
    let mut acc = v4_scale_by(&frame.gamma, &c[0]);
    acc = v4_add(&acc, &v4_scale_by(&frame.xi, &c[1]));
    acc = v4_add(&acc, &v4_scale_by(&frame.n, &c[2]));
    v4_add(&acc, &v4_scale_by(&frame.w, &c[3]))
}

fn v4_scale_by(v: &Vec4Jet, s: &ScalarJet) -> Vec4Jet {
    [v[0].mul(s), v[1].mul(s), v[2].mul(s), v[3].mul(s)]
}

/// Differentiate a vector given by its frame coefficients: if
/// V = c₁γ + c₂ξ + c₃N + c₄W then V′ has the coefficients returned here.
/// Encodes the frame motion equations, so it needs the structure functions
/// as jets of at least the coefficients' order − 1.
pub fn coefficient_derivative(c: &[ScalarJet; 4], k: &CurvatureJets) -> [ScalarJet; 4] {
    [
        c[0].derivative()
            .add(&k.kappa1.mul(&c[1]))
            .add(&k.kappa2.mul(&c[2])),
        c[1].derivative()
            .add(&c[0])
            .add(&k.h.mul(&c[1]))
            .sub(&k.kappa2.mul(&c[3])),
        c[2].derivative()
            .sub(&k.h.mul(&c[2]))
            .sub(&k.kappa1.mul(&c[3])),
        c[3].derivative().sub(&c[2]),
    ]
}
