//! Closed-form curvature tables for the seven derived-curve families.
//!
//! Each evaluator transcribes the printed prediction tables for one family:
//! the signed normalizer radicand `Mₖ²`, the named intermediate coefficient
//! tables, and the closed-form `(h, κ₁, κ₂)` triple. The transcriptions are
//! deliberately literal — irregular signs, mixed normalizations and all —
//! because these formulas are the *subject* of the audit, not a trusted
//! implementation. [`FormulaMode::Corrected`] repairs exactly three known
//! misprints (see the per-family notes); everything else is kept verbatim in
//! both modes.
//!
//! All inputs arrive as truncated Taylor jets, so every printed derivative
//! (`a′`, `M′`, `Ω′`, …) is evaluated exactly rather than by finite
//! differences.

use std::f64::consts::SQRT_2;

use crate::cone_frame::{coefficient_derivative, CurvatureJets};
use crate::error::{Error, Result};
use crate::jet::{v4_derivative, v4_inner, ScalarJet, Vec4Jet};

use super::{FormulaMode, SmarandacheKind, TableEntry};

/// Inputs shared by every family evaluator at one parameter value.
///
/// Angles must carry order ≥ 3 and the curvature functions order ≥ 2 so that
/// every printed derivative in the tables is available.
pub(crate) struct TableCtx {
    pub t: f64,
    pub m: f64,
    /// First driving angle.
    pub angle1: ScalarJet,
    /// Second driving angle, for the two-angle families.
    pub angle2: Option<ScalarJet>,
    /// Base-curve curvature functions.
    pub h: ScalarJet,
    pub kappa1: ScalarJet,
    pub kappa2: ScalarJet,
    /// Absolute threshold below which a printed denominator or normalizer
    /// radicand counts as vanished.
    pub singular_tol: f64,
}

impl TableCtx {
    fn curvature_jets(&self) -> CurvatureJets {
        CurvatureJets {
            h: self.h,
            kappa1: self.kappa1,
            kappa2: self.kappa2,
        }
    }

    fn second_angle(&self) -> ScalarJet {
        self.angle2
            .expect("two-angle family evaluated without a second angle")
    }
}

/// One family's evaluated tables at one parameter value.
pub(crate) struct KindTables {
    /// Signed radicand of the printed normalizer `Mₖ`.
    pub radicand: f64,
    /// Named intermediate values in evaluation order. On a mid-pipeline
    /// failure the entries computed so far are retained.
    pub entries: Vec<TableEntry>,
    /// The closed-form `(h, κ₁, κ₂)`. Errors here are per-point findings
    /// (vanishing printed denominator, negative radicand), not harness bugs.
    pub triple: Result<(f64, f64, f64)>,
}

/// Evaluates one family's printed tables.
///
/// The outer `Err` is reserved for failures that precede even the normalizer
/// radicand (the `gamma-zeta-n` tables divide by `sinh Φ₂` from the start);
/// all later failures land in [`KindTables::triple`] so the radicand and the
/// intermediate entries survive for reporting.
pub(crate) fn evaluate(
    kind: SmarandacheKind,
    ctx: &TableCtx,
    mode: FormulaMode,
) -> Result<KindTables> {
    match kind {
        SmarandacheKind::GammaW => Ok(gamma_w(ctx, mode)),
        SmarandacheKind::XiN => Ok(xi_n(ctx)),
        SmarandacheKind::WN => Ok(w_n(ctx)),
        SmarandacheKind::GammaZetaN => gamma_zeta_n(ctx),
        SmarandacheKind::XiNW => xi_n_w(ctx),
        SmarandacheKind::GammaXiW => gamma_xi_w(ctx, mode),
        SmarandacheKind::GammaXiNW => gamma_xi_n_w(ctx),
    }
}

fn push(entries: &mut Vec<TableEntry>, symbol: &str, value: f64) {
    entries.push(TableEntry {
        symbol: symbol.to_string(),
        value,
    });
}

fn push4(entries: &mut Vec<TableEntry>, prefix: &str, values: [f64; 4]) {
    for (i, v) in values.iter().enumerate() {
        push(entries, &format!("{prefix}{}", i + 1), *v);
    }
}

/// Checks a printed denominator before dividing by it. Values within `tol`
/// of zero count as vanished: several tables vanish *identically* on natural
/// inputs, and the evaluated value is then roundoff noise rather than exact 0.
fn nonzero(value: f64, symbol: &str, t: f64, tol: f64) -> Result<()> {
    if value.abs() <= tol {
        return Err(Error::DenominatorZero {
            symbol: symbol.to_string(),
            t,
        });
    }
    Ok(())
}

/// Square root of a printed normalizer radicand. A non-positive radicand is a
/// per-point finding: zero (within `tol`) means the normalizer divides by
/// zero downstream, negative means the printed radicand is not a norm at this
/// point.
fn normalizer(radicand: &ScalarJet, symbol: &str, t: f64, tol: f64) -> Result<ScalarJet> {
    let value = radicand.value();
    if value.abs() <= tol {
        return Err(Error::DenominatorZero {
            symbol: symbol.to_string(),
            t,
        });
    }
    if value < 0.0 {
        return Err(Error::Domain {
            op: format!("square root of negative radicand {symbol}^2"),
            offset: 0,
            t,
        });
    }
    radicand.sqrt()
}

fn finite_triple(h: f64, kappa1: f64, kappa2: f64, t: f64) -> Result<(f64, f64, f64)> {
    if h.is_finite() && kappa1.is_finite() && kappa2.is_finite() {
        Ok((h, kappa1, kappa2))
    } else {
        Err(Error::Domain {
            op: "non-finite closed-form curvature".to_string(),
            offset: 0,
            t,
        })
    }
}

fn values(c: &[ScalarJet; 4]) -> [f64; 4] {
    [c[0].value(), c[1].value(), c[2].value(), c[3].value()]
}

/// Tables for the `gamma-w` family (position sinh ψ₁ · γ + cosh ψ₁ · W).
///
/// Corrected mode repairs two misprints here: the radicand tail
/// `κ₂ sin(2hψ₁)` becomes `κ₂ sinh(2ψ₁)`, and the `ψ₁″/ψ₁²` factor in the
/// `nᵢ` table becomes `ψ₁″/ψ₁′²`.
fn gamma_w(ctx: &TableCtx, mode: FormulaMode) -> KindTables {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let psi = ctx.angle1;
    let dpsi = psi.derivative();
    let (sh, ch) = psi.sinh_cosh();
    let (shv, chv) = (sh.value(), ch.value());
    let (h, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let tail = match mode {
        FormulaMode::Literal => {
            let (s, _) = h.mul(&psi).scale(2.0).sin_cos();
            k2.mul(&s)
        }
        FormulaMode::Corrected => {
            let (sh2, _) = psi.scale(2.0).sinh_cosh();
            k2.mul(&sh2)
        }
    };
    let radicand_jet = k1
        .mul(&k1)
        .sub(&k2.mul(&k2))
        .mul(&ch.mul(&ch))
        .sub(&dpsi.mul(&dpsi))
        .sub(&sh.mul(&sh))
        .add(&tail);
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M1^2", radicand);

    let triple = (|| {
        let m1 = normalizer(&radicand_jet, "M1", t, tol)?;
        let a = [
            dpsi.mul(&ch).div(&m1)?,
            sh.sub(&k2.mul(&ch)).div(&m1)?,
            k1.mul(&ch).neg().div(&m1)?,
            dpsi.mul(&sh).div(&m1)?,
        ];
        push4(&mut entries, "a", values(&a));

        let motion = coefficient_derivative(&a, &kj);
        let mut b = [0.0; 4];
        for i in 0..4 {
            b[i] = motion[i].value() / m1.value();
        }
        push4(&mut entries, "b", b);

        let q_den = match mode {
            FormulaMode::Literal => {
                nonzero(psi.value() * psi.value(), "psi1^2", t, tol)?;
                psi.value() * psi.value()
            }
            FormulaMode::Corrected => {
                nonzero(dpsi.value() * dpsi.value(), "psi1'^2", t, tol)?;
                dpsi.value() * dpsi.value()
            }
        };
        let q = psi.coeff(2) / q_den;
        let n = [
            -(q * (chv - m * shv) + shv - m * chv) / one_m2,
            (q * (shv + m * chv) + chv + m * shv) / one_m2,
            (q * (chv + m * shv) + shv + m * chv) / one_m2,
            -(q * (shv - m * chv) + chv - m * shv) / one_m2,
        ];
        push4(&mut entries, "n", n);
        push(&mut entries, "Omega1", -dpsi.value() / 4.0);

        nonzero(dpsi.value(), "psi1'", t, tol)?;
        let h_out = -(-b[0] * (chv - m * shv) + b[1] * (shv + m * chv) - b[2] * (chv + m * shv)
            + b[3] * (shv - m * chv))
            / (one_m2 * dpsi.value());
        let k1_out = (-b[0] * (shv - m * chv) + b[1] * (chv + m * shv) - b[2] * (shv + m * chv)
            + b[3] * (chv - m * shv))
            / one_m2;
        let k2_out = -(-n[0] * (shv - m * chv) + n[1] * (chv + m * shv) - n[2] * (shv + m * chv)
            + n[3] * (chv - m * shv))
            / one_m2;
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    KindTables {
        radicand,
        entries,
        triple,
    }
}

/// Tables for the `xi-n` family (position sinh ψ₂ · ξ + cosh ψ₂ · N).
///
/// The `n₄` row carries no `M₂′` term and the `W` coefficient of the tangent
/// is folded in as the constant `−cosh ψ₂`; both quirks are kept as printed.
fn xi_n(ctx: &TableCtx) -> KindTables {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let psi = ctx.angle1;
    let dpsi = psi.derivative();
    let (sh, ch) = psi.sinh_cosh();
    let (shv, chv) = (sh.value(), ch.value());
    let (h, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let (sh2, _) = psi.scale(2.0).sinh_cosh();
    let radicand_jet = k1
        .mul(&k1)
        .neg()
        .mul(&sh.mul(&sh))
        .add(
            &ScalarJet::constant(1.0, k2.order())
                .sub(&k2.mul(&k2))
                .mul(&ch.mul(&ch)),
        )
        .sub(&dpsi.mul(&dpsi))
        .add(&h.mul(&h))
        .sub(&sh2.mul(&k1.mul(&k2).add(&dpsi.mul(&h).scale(2.0))));
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M2^2", radicand);

    let triple = (|| {
        let a = [
            k1.mul(&sh).add(&k2.mul(&ch)),
            dpsi.mul(&ch).add(&h.mul(&sh)),
            dpsi.mul(&sh).sub(&h.mul(&ch)),
            ch.neg(),
        ];
        push4(&mut entries, "a", values(&a));

        let m2 = normalizer(&radicand_jet, "M2", t, tol)?;
        let motion = coefficient_derivative(&a, &kj);
        let m2v = m2.value();
        let m2d = m2.coeff(1);
        let n = [
            (-m2d / m2v * a[0].value() + motion[0].value()) / (m2v * m2v),
            -m2d / (m2v * m2v * m2v) * a[1].value() + motion[1].value() / (m2v * m2v),
            -m2d / (m2v * m2v * m2v) * a[2].value() + motion[2].value() / (m2v * m2v),
            -(dpsi.value() * shv + a[2].value()) / (m2v * m2v),
        ];
        push4(&mut entries, "n", n);

        nonzero(dpsi.value() * dpsi.value(), "psi2'^2", t, tol)?;
        let q = psi.coeff(2) / (dpsi.value() * dpsi.value());
        let upsilon = [
            (-q * (shv - m * chv) + chv - m * shv) / one_m2,
            (q * (chv + m * shv) - shv - m * chv) / one_m2,
            (q * (shv + m * chv) - chv - m * shv) / one_m2,
            (-q * (chv - m * shv) + shv - m * chv) / one_m2,
        ];
        push4(&mut entries, "Upsilon", upsilon);
        push(&mut entries, "Omega2", dpsi.value() / 4.0);

        nonzero(dpsi.value(), "psi2'", t, tol)?;
        let h_out = (-n[0] * (shv - m * chv) + n[1] * (chv + m * shv) - n[2] * (chv + m * shv)
            + n[3] * (shv - m * chv))
            / (one_m2 * dpsi.value());
        let k1_out = (n[0] * (chv - m * shv) + n[1] * (-shv - m * chv)
            - n[2] * (-chv - m * shv)
            - n[3] * (shv - m * chv))
            / one_m2;
        let k2_out = -(-upsilon[0] * (chv - m * shv) + upsilon[1] * (shv + m * chv)
            - upsilon[2] * (chv + m * shv)
            + upsilon[3] * (shv - m * chv))
            / one_m2;
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    KindTables {
        radicand,
        entries,
        triple,
    }
}

/// Tables for the `w-n` family (position sin ψ₃ · N + cos ψ₃ · W).
///
/// The `aᵢ` rows add `+M₃′/M₃ bᵢ` (plus sign as printed) and the `h` row
/// divides by the first family's angle symbol; both are kept as printed, the
/// denominator being read as this family's `ψ₃′`.
fn w_n(ctx: &TableCtx) -> KindTables {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let psi = ctx.angle1;
    let dpsi = psi.derivative();
    let (sn, cs) = psi.sin_cos();
    let (snv, csv) = (sn.value(), cs.value());
    let (h, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let one = ScalarJet::constant(1.0, dpsi.order());
    let (sn2, _) = psi.scale(2.0).sin_cos();
    let radicand_jet = k2
        .mul(&k2)
        .neg()
        .add(
            &sn.mul(&sn)
                .mul(&h.mul(&h).add(&one.add(&dpsi).mul(&one.add(&dpsi)))),
        )
        .add(&cs.mul(&cs).mul(&dpsi.sub(&k1).mul(&dpsi.sub(&k1))))
        .sub(&h.mul(&dpsi.sub(&k1)).mul(&sn2));
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M3^2", radicand);

    let triple = (|| {
        let b = [
            k2.mul(&sn),
            k2.mul(&cs).neg(),
            dpsi.sub(&k1).mul(&cs).sub(&h.mul(&sn)),
            one.add(&dpsi).mul(&sn).neg(),
        ];
        push4(&mut entries, "b", values(&b));

        let m3 = normalizer(&radicand_jet, "M3", t, tol)?;
        let motion = coefficient_derivative(&b, &kj);
        let m3v = m3.value();
        let m3d = m3.coeff(1);
        let mut a = [0.0; 4];
        for i in 0..4 {
            a[i] = (m3d / m3v * b[i].value() + motion[i].value()) / (m3v * m3v);
        }
        push4(&mut entries, "a", a);

        nonzero(dpsi.value() * dpsi.value(), "psi3'^2", t, tol)?;
        let q = psi.coeff(2) / (dpsi.value() * dpsi.value());
        let n = [
            (-q * (csv - m * snv) + snv - m * csv) / one_m2,
            (q * (snv + m * csv) + csv - m * snv) / one_m2,
            (q * (csv + m * snv) - snv + m * csv) / one_m2,
            (-q * (snv - m * csv) - csv - m * snv) / one_m2,
        ];
        push4(&mut entries, "n", n);
        push(&mut entries, "Omega3", -dpsi.value() / 4.0);

        nonzero(dpsi.value(), "psi3'", t, tol)?;
        let h_out = (a[0] * (csv - m * snv) - a[1] * (snv + m * csv) + a[2] * (csv + m * snv)
            - a[3] * (snv - m * csv))
            / (one_m2 * dpsi.value());
        let k1_out = (a[0] * (snv + m * csv) - a[1] * (-csv + m * snv)
            + a[2] * (snv - m * csv)
            + a[3] * (csv + m * snv))
            / one_m2;
        let k2_out = (n[0] * (snv + m * csv) - n[1] * (-csv + m * snv)
            + n[2] * (snv - m * csv)
            + n[3] * (csv + m * snv))
            / one_m2;
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    KindTables {
        radicand,
        entries,
        triple,
    }
}

/// Tables for the `gamma-zeta-n` family
/// (position (sin Φ₁ · γ + cos Φ₁ · ξ + cosh Φ₂ · N) / sinh Φ₂).
///
/// The printed `nᵢ′` rows divide by one extra power of `Ω₄` relative to the
/// quotient rule; they are transcribed as printed in both modes.
fn gamma_zeta_n(ctx: &TableCtx) -> Result<KindTables> {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let phi1 = ctx.angle1;
    let phi2 = ctx.second_angle();
    let (s1, c1) = phi1.sin_cos();
    let (sh2, ch2) = phi2.sinh_cosh();
    let (hj, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    nonzero(sh2.value(), "sinh(Phi2)", t, tol)?;
    let g1 = s1.div(&sh2)?;
    let g2 = c1.div(&sh2)?;
    let g3 = ch2.div(&sh2)?;

    let t1 = g1.derivative().add(&k1.mul(&g2));
    let t2 = g1.add(&g2.derivative()).add(&hj.mul(&g2)).add(&k2.mul(&g3));
    let t3 = g3.derivative().sub(&hj.mul(&g3));
    let t4 = g3.neg();
    let radicand_jet = t1
        .mul(&t1)
        .neg()
        .sub(&t2.mul(&t2))
        .add(&t3.mul(&t3))
        .add(&g3.mul(&g3));
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M4^2", radicand);

    let triple = (|| {
        let m4 = normalizer(&radicand_jet, "M4", t, tol)?;
        let g = [t1.div(&m4)?, t2.div(&m4)?, t3.div(&m4)?, t4.div(&m4)?];
        push4(&mut entries, "g", values(&g));

        let motion = coefficient_derivative(&g, &kj);
        let mut b = [0.0; 4];
        for i in 0..4 {
            b[i] = motion[i].value() / m4.value();
        }
        push4(&mut entries, "b", b);

        let two_sh2 = sh2.scale(2.0);
        let hh = [
            c1.sub(&s1.add(&ch2).scale(m)).div(&two_sh2)?,
            s1.add(&ch2).add(&c1.scale(m)).neg().div(&two_sh2)?,
            c1.add(&s1.add(&ch2).scale(m)).neg().div(&two_sh2)?,
            s1.add(&ch2).sub(&c1.scale(m)).div(&two_sh2)?,
        ];
        push4(&mut entries, "h", values(&hh));

        // Ω₄ has no printed closed form; evaluate fg′ − f′g from the premise
        // generators f = (sin Φ₁ + cosh Φ₂)/(2 sinh Φ₂), g = cos Φ₁/(2 sinh Φ₂).
        let f_gen = s1.add(&ch2).div(&two_sh2)?;
        let g_gen = c1.div(&two_sh2)?;
        let omega = f_gen
            .mul(&g_gen.derivative())
            .sub(&f_gen.derivative().mul(&g_gen));
        push(&mut entries, "Omega4", omega.value());
        nonzero(omega.value(), "Omega4", t, tol)?;
        let pairing = 2.0 * one_m2 * omega.value();

        let mut n = [0.0; 4];
        for i in 0..4 {
            n[i] = hh[i].value() / pairing;
        }
        push4(&mut entries, "n", n);

        // Printed nᵢ′ rows (with their extra 1/Ω₄), then the two transported
        // tables the κ rows contract.
        let ov = omega.value();
        let od = omega.coeff(1);
        let mut n_prime = [0.0; 4];
        for i in 0..4 {
            n_prime[i] = (-hh[i].value() * od / (ov * ov) + hh[i].coeff(1) / ov) / pairing;
        }
        let d_motion = coefficient_derivative(&hh, &kj);
        let d = values(&d_motion);
        let (hv, k1v, k2v) = (hj.value(), k1.value(), k2.value());
        let e = [
            n_prime[0] + n[1] * k1v + n[2] * k2v,
            n_prime[1] + n[0] + n[1] * hv - n[3] * k2v,
            n_prime[2] - n[2] * hv - n[3] * k1v,
            n_prime[3] - n[2],
        ];

        let h_out = (-b[0] * (c1.value() - m * (s1.value() + ch2.value()))
            + b[1] * (s1.value() + ch2.value() + m * c1.value())
            - b[2] * (c1.value() + m * (s1.value() + ch2.value()))
            + b[3] * (s1.value() + ch2.value() - m * c1.value()))
            / (4.0 * one_m2 * ov * sh2.value());
        let k1_out = (-b[0] * d[0] - b[1] * d[1] + b[2] * d[2] + b[3] * d[3]) / pairing;
        let k2_out = (-e[0] * d[0] - e[1] * d[1] + e[2] * d[2] + e[3] * d[3]) / pairing;
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    Ok(KindTables {
        radicand,
        entries,
        triple,
    })
}

/// Tables for the `xi-n-w` family
/// (position (sinh Φ₃ · ξ + N + cosh Φ₃ · W) / √2).
///
/// The κ₂ row is printed as an un-expanded inner product of the transported
/// normal against the first-kind perp derivative; it is evaluated exactly in
/// that shape.
fn xi_n_w(ctx: &TableCtx) -> Result<KindTables> {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let phi = ctx.angle1;
    let dphi = phi.derivative();
    let (sh, ch) = phi.sinh_cosh();
    let (hj, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let a = [
        k1.mul(&sh).add(&k2).scale(1.0 / SQRT_2),
        dphi.sub(&k2).mul(&ch).add(&hj.mul(&sh)).scale(1.0 / SQRT_2),
        hj.add(&k1.mul(&ch)).neg().scale(1.0 / SQRT_2),
        dphi.mul(&sh)
            .sub(&ScalarJet::constant(1.0, dphi.order()))
            .scale(1.0 / SQRT_2),
    ];
    let radicand_jet = a[0]
        .mul(&a[0])
        .neg()
        .sub(&a[1].mul(&a[1]))
        .add(&a[2].mul(&a[2]))
        .add(&a[3].mul(&a[3]));
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M5^2", radicand);

    let triple = (|| {
        push4(&mut entries, "a", values(&a));
        let m5 = normalizer(&radicand_jet, "M5", t, tol)?;
        let motion = coefficient_derivative(&a, &kj);
        let m5v = m5.value();
        let m5d = m5.coeff(1);
        let mut c = [0.0; 4];
        for i in 0..4 {
            c[i] = -m5d / (m5v * m5v) * a[i].value() + motion[i].value() / m5v;
        }
        push4(&mut entries, "c", c);

        let big_c = sh.add(&ch);
        let cv = big_c.value();
        push(&mut entries, "Omega5", dphi.value() * cv / 8.0);

        nonzero(dphi.value(), "phi3'", t, tol)?;
        nonzero(cv, "sinh(Phi3)+cosh(Phi3)", t, tol)?;

        let r = 1.0 / (2.0 * SQRT_2);
        let s = 1.0 / SQRT_2;
        let h_out = 4.0
            * (-c[0] * (cv * r - m * s) + c[1] * (s + m * cv * r) - c[2] * (cv * r + m * s)
                + c[3] * (s - m * cv * r))
            / (one_m2 * dphi.value() * cv);
        let k1_out =
            -SQRT_2 * (-c[0] * cv + c[1] * m * cv - c[2] * cv - c[3] * m * cv) / (one_m2 * cv);

        // Perp of the derived position in closed form, its derivative, and the
        // transported normal N = 4 γ⊥ / ((1+m²) Φ₃′ (sinh Φ₃ + cosh Φ₃)).
        let two_m = ScalarJet::constant(2.0 * m, big_c.order());
        let two = ScalarJet::constant(2.0, big_c.order());
        let perp: Vec4Jet = [
            big_c.sub(&two_m).scale(r),
            two.neg().sub(&big_c.scale(m)).scale(r),
            big_c.neg().sub(&two_m).scale(r),
            two.sub(&big_c.scale(m)).scale(r),
        ];
        let perp_prime = v4_derivative(&perp);
        let pairing_jet = dphi.mul(&big_c).scale(one_m2 / 4.0);
        let mut normal: Vec4Jet = perp;
        for j in normal.iter_mut() {
            *j = j.div(&pairing_jet)?;
        }
        let inner = v4_inner(&v4_derivative(&normal), &perp_prime).value();
        let k2_out = -4.0 * inner / (one_m2 * cv * dphi.value());
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    Ok(KindTables {
        radicand,
        entries,
        triple,
    })
}

/// Tables for the `gamma-xi-w` family
/// (position sinh ω₁ sin ω₂ · γ + sinh ω₁ cos ω₂ · ξ + cosh ω₁ · W).
///
/// Corrected mode repairs one misprint here: the radicand's trailing `γ₃′`
/// becomes `γ₃′²`. The transported-normal rows divide by this family's Ω
/// (the statement's stray fifth-family subscript is resolved to it), and the
/// printed Ω₆ closed form is kept verbatim.
fn gamma_xi_w(ctx: &TableCtx, mode: FormulaMode) -> Result<KindTables> {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let kj = ctx.curvature_jets();
    let om1 = ctx.angle1;
    let om2 = ctx.second_angle();
    let (sh1, ch1) = om1.sinh_cosh();
    let (s2, c2) = om2.sin_cos();
    let (hj, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let g1 = sh1.mul(&s2);
    let g2 = sh1.mul(&c2);
    let g3 = ch1;
    let t1 = g1.derivative().add(&g2.mul(&k1));
    let t2 = g1.add(&g2.derivative()).add(&hj.mul(&g2)).sub(&k2.mul(&g3));
    let t3 = k1.mul(&g3).neg();
    let t4 = g3.derivative();
    let tail = match mode {
        FormulaMode::Literal => t4,
        FormulaMode::Corrected => t4.mul(&t4),
    };
    let radicand_jet = t1
        .mul(&t1)
        .neg()
        .sub(&t2.mul(&t2))
        .add(&t3.mul(&t3))
        .add(&tail);
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M6^2", radicand);

    let triple = (|| {
        let m6 = normalizer(&radicand_jet, "M6", t, tol)?;
        let alpha = [t1.div(&m6)?, t2.div(&m6)?, t3.div(&m6)?, t4.div(&m6)?];
        push4(&mut entries, "alpha", values(&alpha));

        let motion = coefficient_derivative(&alpha, &kj);
        let mut b = [0.0; 4];
        for i in 0..4 {
            b[i] = motion[i].value() / m6.value();
        }
        push4(&mut entries, "b", b);

        let sc = s2.add(&c2);
        let c_tab = [
            ch1.sub(&sh1.mul(&sc).scale(m)).scale(0.5),
            sh1.mul(&sc).neg().sub(&ch1.scale(m)).scale(0.5),
            ch1.neg().sub(&sh1.mul(&sc).scale(m)).scale(0.5),
            sh1.mul(&sc).sub(&ch1.scale(m)).scale(0.5),
        ];
        push4(&mut entries, "c", values(&c_tab));

        // Printed Ω₆ closed form.
        let (sh_2om1, _) = om1.scale(2.0).sinh_cosh();
        let omega = om1
            .derivative()
            .mul(&sc)
            .neg()
            .sub(&om2.derivative().mul(&c2.sub(&s2)).mul(&sh_2om1).scale(0.5))
            .scale(0.5);
        push(&mut entries, "Omega6", omega.value());
        nonzero(omega.value(), "Omega6", t, tol)?;
        let pairing_jet = omega.scale(2.0 * one_m2);

        let mut n_tab = c_tab;
        for j in n_tab.iter_mut() {
            *j = j.div(&pairing_jet)?;
        }
        push4(&mut entries, "n", values(&n_tab));

        let d = values(&coefficient_derivative(&c_tab, &kj));
        push4(&mut entries, "d", d);
        let e = values(&coefficient_derivative(&n_tab, &kj));
        let c = values(&c_tab);

        let pairing = pairing_jet.value();
        let h_out = (-b[0] * c[0] - b[1] * c[1] + b[2] * c[2] + b[3] * c[3]) / pairing;
        let k1_out = -(-b[0] * d[0] - b[1] * d[1] + b[2] * d[2] + b[3] * d[3]) / pairing;
        let k2_out = -(-e[0] * d[0] - e[1] * d[1] + e[2] * d[2] + e[3] * d[3]) / pairing;
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    Ok(KindTables {
        radicand,
        entries,
        triple,
    })
}

/// Tables for the `gamma-xi-n-w` family
/// (position (sinh ω₁ · γ + sinh ω₂ · ξ + cosh ω₂ · N + cosh ω₁ · W) / √2).
///
/// The first transported row mixes a tangent coefficient (`α₃`) in where the
/// pattern used everywhere else would take `b₃`; kept as printed. The Ω₇
/// closed form vanishes identically when ω₁ = ω₂.
fn gamma_xi_n_w(ctx: &TableCtx) -> Result<KindTables> {
    let t = ctx.t;
    let tol = ctx.singular_tol;
    let m = ctx.m;
    let one_m2 = 1.0 + m * m;
    let om1 = ctx.angle1;
    let om2 = ctx.second_angle();
    let (sh1, ch1) = om1.sinh_cosh();
    let (sh2, ch2) = om2.sinh_cosh();
    let (hj, k1, k2) = (ctx.h, ctx.kappa1, ctx.kappa2);

    let alpha = [
        om1.derivative()
            .mul(&ch1)
            .add(&sh2.mul(&k1))
            .sub(&k2.mul(&ch2))
            .scale(1.0 / SQRT_2),
        sh1.add(&om2.derivative().mul(&ch2))
            .add(&hj.mul(&sh2))
            .sub(&k2.mul(&ch1))
            .scale(1.0 / SQRT_2),
        om2.derivative()
            .mul(&sh2)
            .sub(&hj.mul(&ch2))
            .sub(&k1.mul(&ch1))
            .scale(1.0 / SQRT_2),
        ch2.neg()
            .add(&om1.derivative().mul(&sh1))
            .scale(1.0 / SQRT_2),
    ];
    let radicand_jet = alpha[0]
        .mul(&alpha[0])
        .neg()
        .sub(&alpha[1].mul(&alpha[1]))
        .add(&alpha[2].mul(&alpha[2]))
        .add(&alpha[3].mul(&alpha[3]));
    let radicand = radicand_jet.value();

    let mut entries = Vec::new();
    push(&mut entries, "M7^2", radicand);

    let triple = (|| {
        push4(&mut entries, "alpha", values(&alpha));
        let m7 = normalizer(&radicand_jet, "M7", t, tol)?;
        let mut b = alpha;
        for j in b.iter_mut() {
            *j = j.div(&m7)?;
        }
        push4(&mut entries, "b", values(&b));

        let m7v = m7.value();
        let c = [
            (b[0].coeff(1) + b[1].value() * k1.value() + alpha[2].value() * k2.value()) / m7v,
            (b[1].coeff(1) + b[0].value() + b[1].value() * hj.value() - b[3].value() * k2.value())
                / m7v,
            (b[2].coeff(1) - b[2].value() * hj.value() - b[3].value() * k1.value()) / m7v,
            (-b[2].value() + b[3].coeff(1)) / m7v,
        ];
        push4(&mut entries, "c", c);

        let r = 1.0 / (2.0 * SQRT_2);
        let f_gen = sh1.add(&ch2).scale(r);
        let g_gen = sh2.add(&ch1).scale(r);
        let (fv, gv) = (f_gen.value(), g_gen.value());
        let (fd, gd) = (f_gen.coeff(1), g_gen.coeff(1));
        push(&mut entries, "f", fv);
        push(&mut entries, "g", gv);

        // Printed Ω₇ closed form.
        let (sh_diff, _) = om1.sub(&om2).sinh_cosh();
        let omega = om1
            .derivative()
            .add(&om2.derivative())
            .mul(&sh_diff)
            .sub(&om1.derivative())
            .add(&om2.derivative())
            .scale(1.0 / 8.0);
        push(&mut entries, "Omega7", omega.value());
        nonzero(omega.value(), "Omega7", t, tol)?;

        let ov = omega.value();
        let od = omega.coeff(1);
        let pairing = 2.0 * one_m2 * ov;
        let h_out = (-c[0] * (gv - m * fv) + c[1] * (fv + m * gv) - c[2] * (gv + m * fv)
            + c[3] * (fv - m * gv))
            / pairing;
        let k1_out = (c[0] * (gd - m * fd) - c[1] * (fd + m * gd) + c[2] * (gd + m * fd)
            - c[3] * (fd - m * gd))
            / pairing;
        let k2_out = (-(-od / ov * (gv - m * fv) + gd - m * fd) * (gd - m * fd)
            - (-od / ov * (fv + m * gv) + fd + m * gd) * (fd + m * gd)
            + (-od / ov * (gv + m * fv) + gd + m * fd) * (gd + m * fd)
            + (-od / ov * (fv - m * gv) + fd - m * gd) * (fd - m * gd))
            / (pairing * pairing);
        finite_triple(h_out, k1_out, k2_out, t)
    })();

    Ok(KindTables {
        radicand,
        entries,
        triple,
    })
}
