//! Smarandache curves built on the null-cone frame, and the audit machinery
//! that cross-checks their printed curvature tables.
//!
//! A Smarandache curve places its position on a unit combination of the base
//! frame fields {γ, ξ, N, W}, steered by one or two caller-supplied angle
//! functions of the curve parameter. Seven combinations are supported; see
//! [`SmarandacheKind`]. For each combination the crate offers two independent
//! routes to the derived curve's structure functions:
//!
//! * **Closed form** ([`paper_curvatures`]): evaluate the printed coefficient
//!   tables exactly as transcribed, using jets of the angle functions and of
//!   the base structure functions, so every printed derivative is exact to
//!   machine precision. [`FormulaMode`] selects between the literal
//!   transcription and a variant with a small set of documented repairs.
//! * **First principles** ([`oracle_curvatures`]): run the derived position
//!   through the same perp-and-pairing frame construction used for the base
//!   curve, with no reference to the printed tables at all.
//!
//! [`comparison_report`] evaluates both routes over a parameter grid and
//! records where they agree, where they disagree, and where either side is
//! undefined (vanishing printed denominators, negative radicands, singular
//! pairings). Disagreements are findings, not errors: the report never hides
//! them and never fails because of them.

mod tables;

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cone_frame::{
    self, build_frame_jets, combine, curvature_jets, CurvatureTriple, FrameJets, GramResiduals,
    DEFAULT_SINGULAR_TOL,
};
use crate::error::{Error, Result};
use crate::jet::{
    v4_derivative, v4_div, v4_inner, v4_perp, v4_value, ScalarJet, Vec4Jet, MAX_ORDER,
};
use crate::null_curve::{ConeCurve, Grid};
use crate::pseudo_metric::{PerpVariant, Vec4};
use crate::scalar_expr::Expr;

/// Default relative tolerance for declaring the closed-form and
/// first-principles curvature triples equal in [`comparison_report`].
pub const DEFAULT_MATCH_TOL: f64 = 1e-6;

/// The seven supported frame combinations.
///
/// Names list the frame fields that carry the position: e.g. `GammaW` places
/// the curve on sinh ψ · γ + cosh ψ · W, while the four-letter kinds blend all
/// four fields. Kinds taking one angle expect a single expression ψ(t); kinds
/// taking two expect (φ₁(t), φ₂(t)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmarandacheKind {
    /// sinh ψ · γ + cosh ψ · W
    GammaW,
    /// sinh ψ · ξ + cosh ψ · N
    XiN,
    /// sin ψ · N + cos ψ · W
    WN,
    /// (sin φ₁ · γ + cos φ₁ · ξ + cosh φ₂ · N) / sinh φ₂
    GammaZetaN,
    /// (sinh φ · ξ + N + cosh φ · W) / √2
    XiNW,
    /// sinh φ₁ sin φ₂ · γ + sinh φ₁ cos φ₂ · ξ + cosh φ₁ · W
    GammaXiW,
    /// (sinh φ₁ · γ + sinh φ₂ · ξ + cosh φ₂ · N + cosh φ₁ · W) / √2
    GammaXiNW,
}

impl SmarandacheKind {
    /// All seven kinds, in canonical order.
    pub fn all() -> [SmarandacheKind; 7] {
        [
            SmarandacheKind::GammaW,
            SmarandacheKind::XiN,
            SmarandacheKind::WN,
            SmarandacheKind::GammaZetaN,
            SmarandacheKind::XiNW,
            SmarandacheKind::GammaXiW,
            SmarandacheKind::GammaXiNW,
        ]
    }

    /// Number of angle expressions the kind consumes (1 or 2).
    pub fn angle_arity(self) -> usize {
        match self {
            SmarandacheKind::GammaW
            | SmarandacheKind::XiN
            | SmarandacheKind::WN
            | SmarandacheKind::XiNW => 1,
            SmarandacheKind::GammaZetaN
            | SmarandacheKind::GammaXiW
            | SmarandacheKind::GammaXiNW => 2,
        }
    }

    /// Stable kebab-case name, identical to the serialized form.
    pub fn name(self) -> &'static str {
        match self {
            SmarandacheKind::GammaW => "gamma-w",
            SmarandacheKind::XiN => "xi-n",
            SmarandacheKind::WN => "w-n",
            SmarandacheKind::GammaZetaN => "gamma-zeta-n",
            SmarandacheKind::XiNW => "xi-n-w",
            SmarandacheKind::GammaXiW => "gamma-xi-w",
            SmarandacheKind::GammaXiNW => "gamma-xi-n-w",
        }
    }
}

impl fmt::Display for SmarandacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SmarandacheKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SmarandacheKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown curve kind `{s}` (expected one of: gamma-w, xi-n, w-n, \
                     gamma-zeta-n, xi-n-w, gamma-xi-w, gamma-xi-n-w)"
                ))
            })
    }
}

/// Which version of the closed-form tables to evaluate.
///
/// `Literal` reproduces the printed tables character for character, including
/// any defects they carry. `Corrected` applies exactly three repairs — listed
/// by [`FormulaMode::corrections`] — and is otherwise identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaMode {
    /// Evaluate the tables exactly as printed.
    #[default]
    Literal,
    /// Evaluate the tables with the three documented repairs applied.
    Corrected,
}

impl FormulaMode {
    /// Human-readable list of the repairs this mode applies relative to the
    /// literal transcription, one line per repair. Empty for `Literal`.
    pub fn corrections(self) -> &'static [&'static str] {
        match self {
            FormulaMode::Literal => &[],
            FormulaMode::Corrected => &[
                "gamma-w normalizer radicand: trailing factor sin(2 h psi1) replaced by sinh(2 psi1)",
                "gamma-w transported-normal coefficient q: denominator psi1^2 replaced by psi1'^2",
                "gamma-xi-w normalizer radicand: trailing term gamma3' replaced by gamma3'^2",
            ],
        }
    }

    /// Stable kebab-case name, identical to the serialized form.
    pub fn name(self) -> &'static str {
        match self {
            FormulaMode::Literal => "literal",
            FormulaMode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for FormulaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(FormulaMode::Literal),
            "corrected" => Ok(FormulaMode::Corrected),
            _ => Err(Error::InvalidConfig(format!(
                "unknown formula mode `{s}` (expected `literal` or `corrected`)"
            ))),
        }
    }
}

/// The angle expressions steering a derived curve.
#[derive(Debug, Clone)]
pub enum AngleSet {
    /// A single angle ψ(t).
    One(Expr),
    /// An ordered pair (φ₁(t), φ₂(t)).
    Two(Expr, Expr),
}

impl AngleSet {
    /// Number of expressions held (1 or 2).
    pub fn arity(&self) -> usize {
        match self {
            AngleSet::One(_) => 1,
            AngleSet::Two(_, _) => 2,
        }
    }
}

/// A fully specified derived curve: base curve, combination kind, and angles.
///
/// Construction validates that the number of angle expressions matches the
/// kind's arity; everything else (angle smoothness, nonvanishing
/// denominators) is checked pointwise during evaluation.
#[derive(Debug, Clone)]
pub struct SmarandacheSpec {
    base: ConeCurve,
    kind: SmarandacheKind,
    angles: AngleSet,
}

impl SmarandacheSpec {
    pub fn new(base: ConeCurve, kind: SmarandacheKind, angles: AngleSet) -> Result<Self> {
        if angles.arity() != kind.angle_arity() {
            return Err(Error::InvalidConfig(format!(
                "kind `{kind}` expects {} angle expression(s), got {}",
                kind.angle_arity(),
                angles.arity()
            )));
        }
        Ok(SmarandacheSpec { base, kind, angles })
    }

    pub fn base(&self) -> &ConeCurve {
        &self.base
    }

    pub fn kind(&self) -> SmarandacheKind {
        self.kind
    }

    pub fn angles(&self) -> &AngleSet {
        &self.angles
    }

    /// Jets of the angle expression(s) at `t`, truncated at order `k`.
    fn angle_jets(&self, t: f64, k: usize) -> Result<(ScalarJet, Option<ScalarJet>)> {
        match &self.angles {
            AngleSet::One(e) => Ok((e.jet_eval(t, k)?, None)),
            AngleSet::Two(e1, e2) => Ok((e1.jet_eval(t, k)?, Some(e2.jet_eval(t, k)?))),
        }
    }
}

/// One labelled scalar from a printed coefficient table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableEntry {
    /// ASCII rendering of the printed symbol, e.g. `a3`, `Upsilon2`, `M1^2`.
    pub symbol: String,
    pub value: f64,
}

/// Every intermediate scalar from the printed derivation of one kind's
/// curvature triple, evaluated at a single parameter value.
///
/// The entries appear in derivation order and survive even when the final
/// triple is unavailable (vanishing printed denominator, negative radicand),
/// so a failed evaluation can still be inspected term by term.
#[derive(Debug, Clone, Serialize)]
pub struct PaperFormulaTable {
    pub kind: SmarandacheKind,
    pub mode: FormulaMode,
    pub t: f64,
    /// Signed value of the radicand inside the printed normalizer, reported
    /// before any square root is attempted.
    pub normalizer_radicand: f64,
    pub entries: Vec<TableEntry>,
}

/// First derivative of a derived curve's position, with its scalar square.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DerivedTangent {
    pub tangent: Vec4,
    /// ⟨γ_s′, γ_s′⟩ under the ambient (−,−,+,+) product; the sign classifies
    /// the tangent as timelike, null, or spacelike.
    pub norm_sq: f64,
}

/// Structure functions of a derived curve rebuilt from first principles,
/// bundled with the frame-consistency diagnostics of the rebuilt frame.
///
/// The ten pairing residuals are reported, never asserted: a derived position
/// is generally not null, so residuals such as ⟨γ_s, γ_s⟩ are expected to be
/// far from zero. Hiding them would hide exactly the information the audit
/// is after.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleCurvatures {
    pub curvatures: CurvatureTriple,
    /// Residuals of the ten base-frame pairing conditions for the rebuilt
    /// frame (informational; see the type-level comment).
    pub gram: GramResiduals,
    /// The pairing ⟨γ_s⊥, γ_s′⟩ used to normalize the rebuilt frame.
    pub d: f64,
    /// ⟨γ_s, γ_s⟩ of the derived position itself.
    pub position_norm_sq: f64,
}

/// Outcome of one grid point in a [`ComparisonReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Both routes produced a triple and every component agrees within the
    /// match tolerance.
    Match,
    /// Both routes produced a triple and at least one component disagrees.
    Mismatch,
    /// A frame pairing or printed denominator vanished, or the kind's own
    /// domain restriction failed, so one side is undefined here.
    Singular,
    /// A numeric domain violation (negative radicand, non-finite value)
    /// stopped one side.
    DomainError,
}

/// Per-verdict tallies for a report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    #[serde(rename = "match")]
    pub matches: usize,
    pub mismatch: usize,
    pub singular: usize,
    #[serde(rename = "domain-error")]
    pub domain_error: usize,
}

impl VerdictCounts {
    pub fn record(&mut self, v: Verdict) {
        match v {
            Verdict::Match => self.matches += 1,
            Verdict::Mismatch => self.mismatch += 1,
            Verdict::Singular => self.singular += 1,
            Verdict::DomainError => self.domain_error += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.matches + self.mismatch + self.singular + self.domain_error
    }
}

/// Both curvature routes at one grid point, with supporting diagnostics.
///
/// Optional fields are present exactly when the corresponding computation
/// succeeded; `error` carries the rendered failure when one did not.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRecord {
    pub t: f64,
    /// Closed-form triple from the printed tables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper: Option<CurvatureTriple>,
    /// First-principles triple from the rebuilt frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<CurvatureTriple>,
    /// Signed radicand of the printed normalizer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_radicand: Option<f64>,
    /// ⟨γ_s′, γ_s′⟩ computed directly from the derived position — the
    /// definitional counterpart of the printed radicand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_norm_sq: Option<f64>,
    /// ⟨γ_s, γ_s⟩ of the derived position.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position_norm_sq: Option<f64>,
    /// Pairing residuals of the rebuilt frame (informational).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_gram: Option<GramResiduals>,
    /// max over (h, κ₁, κ₂) of |paper − oracle| / max(1, |paper|, |oracle|).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rel_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: Verdict,
}

/// Deterministic grid-by-grid comparison of the two curvature routes.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub kind: SmarandacheKind,
    pub mode: FormulaMode,
    pub match_tolerance: f64,
    pub records: Vec<ComparisonRecord>,
    pub summary: VerdictCounts,
}

/// Frame coefficients (c_γ, c_ξ, c_N, c_W) of the derived position as jets.
fn position_coefficients(
    kind: SmarandacheKind,
    t: f64,
    a1: &ScalarJet,
    a2: Option<&ScalarJet>,
) -> Result<[ScalarJet; 4]> {
    let zero = ScalarJet::constant(0.0, a1.order());
    Ok(match kind {
        SmarandacheKind::GammaW => {
            let (sh, ch) = a1.sinh_cosh();
            [sh, zero, zero, ch]
        }
        SmarandacheKind::XiN => {
            let (sh, ch) = a1.sinh_cosh();
            [zero, sh, ch, zero]
        }
        SmarandacheKind::WN => {
            let (s, c) = a1.sin_cos();
            [zero, zero, s, c]
        }
        SmarandacheKind::GammaZetaN => {
            let phi2 = a2.expect("angle arity validated at construction");
            let (sh2, ch2) = phi2.sinh_cosh();
            if sh2.value() == 0.0 {
                return Err(Error::KindDomain {
                    t,
                    message: "the gamma-zeta-n combination divides by sinh(phi2), which \
                              vanishes here"
                        .to_string(),
                });
            }
            let (s1, c1) = a1.sin_cos();
            [s1.div(&sh2)?, c1.div(&sh2)?, ch2.div(&sh2)?, zero]
        }
        SmarandacheKind::XiNW => {
            let (sh, ch) = a1.sinh_cosh();
            [
                zero,
                sh.scale(FRAC_1_SQRT_2),
                ScalarJet::constant(FRAC_1_SQRT_2, a1.order()),
                ch.scale(FRAC_1_SQRT_2),
            ]
        }
        SmarandacheKind::GammaXiW => {
            let om2 = a2.expect("angle arity validated at construction");
            let (sh1, ch1) = a1.sinh_cosh();
            let (s2, c2) = om2.sin_cos();
            [sh1.mul(&s2), sh1.mul(&c2), zero, ch1]
        }
        SmarandacheKind::GammaXiNW => {
            let om2 = a2.expect("angle arity validated at construction");
            let (sh1, ch1) = a1.sinh_cosh();
            let (sh2, ch2) = om2.sinh_cosh();
            [
                sh1.scale(FRAC_1_SQRT_2),
                sh2.scale(FRAC_1_SQRT_2),
                ch2.scale(FRAC_1_SQRT_2),
                ch1.scale(FRAC_1_SQRT_2),
            ]
        }
    })
}

fn position_jet_with(
    spec: &SmarandacheSpec,
    t: f64,
    k: usize,
    singular_tol: f64,
) -> Result<Vec4Jet> {
    if k + 1 > MAX_ORDER {
        return Err(Error::InvalidConfig(format!(
            "derived-curve jets support order <= {}, got {k}",
            MAX_ORDER - 1
        )));
    }
    // The base frame consumes one extra order (N and W are built from a
    // derivative of the position), and needs at least entry order 2.
    let entry = (k + 1).max(2);
    let frame = build_frame_jets(spec.base(), t, entry, singular_tol)?;
    let (a1, a2) = spec.angle_jets(t, k)?;
    let c = position_coefficients(spec.kind(), t, &a1, a2.as_ref())?;
    Ok(combine(&frame, &c))
}

/// Jet of the derived curve's position at `t`, truncated at order `k` (≤ 3).
pub fn position_jet(spec: &SmarandacheSpec, t: f64, k: usize) -> Result<Vec4Jet> {
    position_jet_with(spec, t, k, DEFAULT_SINGULAR_TOL)
}

/// Position of the derived curve at `t`.
pub fn smarandache_curve(spec: &SmarandacheSpec, t: f64) -> Result<Vec4> {
    Ok(v4_value(&position_jet_with(
        spec,
        t,
        0,
        DEFAULT_SINGULAR_TOL,
    )?))
}

/// First derivative of the derived position, with its scalar square.
pub fn derived_tangent(spec: &SmarandacheSpec, t: f64) -> Result<DerivedTangent> {
    let pos = position_jet_with(spec, t, 1, DEFAULT_SINGULAR_TOL)?;
    let tangent = v4_derivative(&pos);
    Ok(DerivedTangent {
        tangent: v4_value(&tangent),
        norm_sq: v4_inner(&tangent, &tangent).value(),
    })
}

/// Run an arbitrary position jet (order ≥ 3) through the perp-and-pairing
/// frame construction and read off structure functions plus diagnostics.
///
/// This is the first-principles side of the audit: it never touches the
/// printed tables. The `variant` parameter exists so self-tests can feed the
/// deliberately wrong perp and watch the construction degenerate.
pub(crate) fn frame_audit_from_jet(
    t: f64,
    position: &Vec4Jet,
    variant: PerpVariant,
    singular_tol: f64,
) -> Result<OracleCurvatures> {
    let xi = v4_derivative(position);
    let perp = v4_perp(position, variant);
    let d_jet = v4_inner(&perp, &xi);
    let d = d_jet.value();
    if !d.is_finite() || d.abs() <= singular_tol {
        return Err(Error::SingularFrame { t, d });
    }
    let n = v4_div(&perp, &d_jet)?;
    let w = v4_div(&v4_derivative(&perp), &d_jet)?.map(|j| j.scale(-1.0));
    let frame = FrameJets {
        t,
        gamma: *position,
        xi,
        n,
        w,
        d: d_jet,
    };
    Ok(OracleCurvatures {
        curvatures: cone_frame::curvatures(&frame),
        gram: cone_frame::gram_residuals(&frame),
        d,
        position_norm_sq: v4_inner(position, position).value(),
    })
}

/// Structure functions of the derived curve rebuilt from first principles.
pub fn oracle_curvatures(spec: &SmarandacheSpec, t: f64) -> Result<OracleCurvatures> {
    let pos = position_jet_with(spec, t, 3, DEFAULT_SINGULAR_TOL)?;
    frame_audit_from_jet(t, &pos, PerpVariant::P14, DEFAULT_SINGULAR_TOL)
}

/// Everything the printed tables need at one point: angle jets (order 3) and
/// base structure-function jets (order 2, from an entry-order-4 frame).
fn table_ctx(spec: &SmarandacheSpec, t: f64, singular_tol: f64) -> Result<tables::TableCtx> {
    let frame = build_frame_jets(spec.base(), t, MAX_ORDER, singular_tol)?;
    let kj = curvature_jets(&frame);
    let (angle1, angle2) = spec.angle_jets(t, MAX_ORDER - 1)?;
    Ok(tables::TableCtx {
        t,
        m: spec.base().m(),
        angle1,
        angle2,
        h: kj.h,
        kappa1: kj.kappa1,
        kappa2: kj.kappa2,
        singular_tol,
    })
}

/// Evaluate the printed coefficient tables for `spec.kind()` at `t`.
///
/// Succeeds as long as the radicand itself is computable; inspect
/// [`paper_curvatures`] for the final triple, which can fail later in the
/// printed pipeline.
pub fn paper_formula_table(
    spec: &SmarandacheSpec,
    mode: FormulaMode,
    t: f64,
) -> Result<PaperFormulaTable> {
    let ctx = table_ctx(spec, t, DEFAULT_SINGULAR_TOL)?;
    let kt = tables::evaluate(spec.kind(), &ctx, mode)?;
    Ok(PaperFormulaTable {
        kind: spec.kind(),
        mode,
        t,
        normalizer_radicand: kt.radicand,
        entries: kt.entries,
    })
}

/// Signed radicand of the printed normalizer at `t`.
///
/// No square root is taken: a negative value is returned as is, so callers
/// can see *how* the printed normalizer fails, not merely that it does.
pub fn paper_normalizer(spec: &SmarandacheSpec, mode: FormulaMode, t: f64) -> Result<f64> {
    let ctx = table_ctx(spec, t, DEFAULT_SINGULAR_TOL)?;
    let kt = tables::evaluate(spec.kind(), &ctx, mode)?;
    Ok(kt.radicand)
}

/// Curvature triple (h, κ₁, κ₂) of the derived curve according to the
/// printed closed-form tables.
///
/// Fails with [`Error::DenominatorZero`] naming the offending printed symbol
/// when a printed denominator vanishes, and with [`Error::Domain`] when a
/// printed radicand is negative.
pub fn paper_curvatures(
    spec: &SmarandacheSpec,
    mode: FormulaMode,
    t: f64,
) -> Result<CurvatureTriple> {
    let ctx = table_ctx(spec, t, DEFAULT_SINGULAR_TOL)?;
    let kt = tables::evaluate(spec.kind(), &ctx, mode)?;
    let (h, kappa1, kappa2) = kt.triple?;
    Ok(CurvatureTriple { h, kappa1, kappa2 })
}

/// Classify a pointwise failure, or return `None` for harness-level errors
/// that must abort the whole report.
fn point_verdict(e: &Error) -> Option<Verdict> {
    match e {
        Error::SingularFrame { .. } | Error::DenominatorZero { .. } | Error::KindDomain { .. } => {
            Some(Verdict::Singular)
        }
        Error::Domain { .. } => Some(Verdict::DomainError),
        _ => None,
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Compare the printed closed forms against the first-principles rebuild
/// over `grid`.
///
/// Records are emitted in grid order and the whole report is deterministic:
/// two runs with equal inputs serialize to identical bytes. Per-point
/// failures (singular pairings, vanishing printed denominators, negative
/// radicands, kind domain restrictions) become verdicts on the record;
/// only configuration-level problems abort the report.
pub fn comparison_report(
    spec: &SmarandacheSpec,
    mode: FormulaMode,
    grid: &Grid,
    match_tol: f64,
    singular_tol: f64,
) -> Result<ComparisonReport> {
    let mut records = Vec::with_capacity(grid.count());
    let mut summary = VerdictCounts::default();

    for t in grid.points() {
        let mut record = ComparisonRecord {
            t,
            paper: None,
            oracle: None,
            paper_radicand: None,
            tangent_norm_sq: None,
            position_norm_sq: None,
            oracle_gram: None,
            max_rel_deviation: None,
            error: None,
            verdict: Verdict::Match,
        };
        let mut first_error: Option<Error> = None;

        // Closed-form side: keep the radicand even when the triple fails.
        match table_ctx(spec, t, singular_tol)
            .and_then(|ctx| tables::evaluate(spec.kind(), &ctx, mode))
        {
            Ok(kt) => {
                record.paper_radicand = Some(kt.radicand);
                match kt.triple {
                    Ok((h, kappa1, kappa2)) => {
                        record.paper = Some(CurvatureTriple { h, kappa1, kappa2 })
                    }
                    Err(e) => first_error = Some(e),
                }
            }
            Err(e) => first_error = Some(e),
        }

        // First-principles side, plus the definitional tangent square.
        match position_jet_with(spec, t, 3, singular_tol) {
            Ok(pos) => {
                let tangent = v4_derivative(&pos);
                record.tangent_norm_sq = Some(v4_inner(&tangent, &tangent).value());
                match frame_audit_from_jet(t, &pos, PerpVariant::P14, singular_tol) {
                    Ok(o) => {
                        record.oracle = Some(o.curvatures);
                        record.oracle_gram = Some(o.gram);
                        record.position_norm_sq = Some(o.position_norm_sq);
                    }
                    Err(e) => {
                        if first_error.is_none() {
                            first_error = Some(e);
                        }
                    }
                }
            }
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }

        record.verdict = match first_error {
            Some(e) => match point_verdict(&e) {
                Some(v) => {
                    record.error = Some(e.to_string());
                    v
                }
                None => return Err(e),
            },
            None => {
                let p = record.paper.expect("paper triple present when no error");
                let o = record.oracle.expect("oracle triple present when no error");
                let dev = rel_dev(p.h, o.h)
                    .max(rel_dev(p.kappa1, o.kappa1))
                    .max(rel_dev(p.kappa2, o.kappa2));
                record.max_rel_deviation = Some(dev);
                if dev <= match_tol {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                }
            }
        };
        summary.record(record.verdict);
        records.push(record);
    }

    Ok(ComparisonReport {
        kind: spec.kind(),
        mode,
        match_tolerance: match_tol,
        records,
        summary,
    })
}
