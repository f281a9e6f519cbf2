//! The canonical null curve on the lightlike cone, built from two scalar
//! generator functions and a mixing constant.
//!
//! A generator pair (f, g) and a constant m define the position
//!
//! ```text
//! γ(t) = ( f + m·g,  g − m·f,  f − m·g,  g + m·f )
//! ```
//!
//! which satisfies ⟨γ, γ⟩ = 0 identically under the (−,−,+,+) form: the four
//! squares cancel algebraically for every f, g, m. The nullity validator
//! therefore evaluates the quadratic form in double-double arithmetic from
//! the rounded f64 inputs, so its residual reports the defect of the
//! construction itself rather than the rounding of a plain f64 summation
//! (which already reaches ~1e−12 near |t| = 2 for growing generators).

use crate::error::{Error, Result};
use crate::jet::{ScalarJet, Vec4Jet};
use crate::pseudo_metric::Vec4;
use crate::scalar_expr::Expr;

/// Canonical null curve: generators f, g and the mixing constant m.
#[derive(Debug, Clone)]
pub struct ConeCurve {
    f: Expr,
    g: Expr,
    m: f64,
}

impl ConeCurve {
    pub fn new(f: Expr, g: Expr, m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidInput(format!(
                "mixing constant m must be finite, got {m}"
            )));
        }
        Ok(ConeCurve { f, g, m })
    }

    /// Generators sinh(a·t)/2, cosh(a·t)/2: constant curvatures (0, a², 0).
    pub fn hyperbolic(a: f64, m: f64) -> Result<Self> {
        fixture_scale(a)?;
        let arg = || Expr::mul(Expr::constant(a), Expr::var());
        Self::new(
            Expr::div(Expr::sinh(arg()), Expr::constant(2.0)),
            Expr::div(Expr::cosh(arg()), Expr::constant(2.0)),
            m,
        )
    }

    /// Generators sin(a·t)/2, cos(a·t)/2: constant curvatures (0, −a², 0).
    pub fn trigonometric(a: f64, m: f64) -> Result<Self> {
        fixture_scale(a)?;
        let arg = || Expr::mul(Expr::constant(a), Expr::var());
        Self::new(
            Expr::div(Expr::sin(arg()), Expr::constant(2.0)),
            Expr::div(Expr::cos(arg()), Expr::constant(2.0)),
            m,
        )
    }

    pub fn f(&self) -> &Expr {
        &self.f
    }

    pub fn g(&self) -> &Expr {
        &self.g
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// Jets of the generator pair at `t`, to order `k`.
    pub fn generator_jets(&self, t: f64, k: usize) -> Result<(ScalarJet, ScalarJet)> {
        Ok((self.f.jet_eval(t, k)?, self.g.jet_eval(t, k)?))
    }

    /// Position jets (γ and its first `k` derivatives) at `t`.
    pub fn position_jet(&self, t: f64, k: usize) -> Result<Vec4Jet> {
        let (fj, gj) = self.generator_jets(t, k)?;
        Ok(assemble_components(&fj, &gj, self.m))
    }

    /// Position values at `t`.
    pub fn position(&self, t: f64) -> Result<Vec4> {
        let p = self.position_jet(t, 0)?;
        Ok([p[0].value(), p[1].value(), p[2].value(), p[3].value()])
    }

    /// Jet of Ω = f·g′ − f′·g to order `k ≤ 3` (one order is spent on the
    /// generator derivatives).
    pub fn omega_jet(&self, t: f64, k: usize) -> Result<ScalarJet> {
        let (fj, gj) = self.generator_jets(t, k + 1)?;
        let fd = fj.derivative();
        let gd = gj.derivative();
        Ok(fj.truncate(k).mul(&gd).sub(&fd.mul(&gj.truncate(k))))
    }

    /// Ω = f·g′ − f′·g at `t`.
    pub fn omega(&self, t: f64) -> Result<f64> {
        Ok(self.omega_jet(t, 0)?.value())
    }
}

fn fixture_scale(a: f64) -> Result<()> {
    if !a.is_finite() || a == 0.0 {
        return Err(Error::InvalidInput(format!(
            "fixture frequency a must be finite and nonzero, got {a}"
        )));
    }
    Ok(())
}

/// Build the four curve components from generator jets.
fn assemble_components(fj: &ScalarJet, gj: &ScalarJet, m: f64) -> Vec4Jet {
    let mf = fj.scale(m);
    let mg = gj.scale(m);
    [fj.add(&mg), gj.sub(&mf), fj.sub(&mg), gj.add(&mf)]
}

/// Uniform sample grid on [start, end].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Grid {
    start: f64,
    end: f64,
    count: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidInput(format!(
                "grid endpoints must be finite, got [{start}, {end}]"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidInput("grid needs at least one sample".into()));
        }
        if count == 1 {
            if start != end {
                return Err(Error::InvalidInput(
                    "a single-sample grid needs start == end".into(),
                ));
            }
        } else if end <= start {
            return Err(Error::InvalidInput(format!(
                "grid needs end > start for {count} samples, got [{start}, {end}]"
            )));
        }
        Ok(Grid { start, end, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.end
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect()
    }
}

/// Nullity residuals at one grid point. Evaluation failures are recorded
/// here instead of aborting the sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NullCheckPoint {
    pub t: f64,
    /// |⟨γ, γ⟩|, absent when evaluation failed.
    pub gamma_residual: Option<f64>,
    /// |⟨γ′, γ′⟩|, absent when evaluation failed.
    pub tangent_residual: Option<f64>,
    pub error: Option<String>,
}

/// Result of checking ⟨γ, γ⟩ = 0 and ⟨γ′, γ′⟩ = 0 along a grid.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NullValidation {
    pub tolerance: f64,
    pub max_abs_residual: f64,
    pub worst_t: f64,
    /// True when f and g vanish together at every evaluated point — the
    /// degenerate pair that generates the zero curve.
    pub degenerate: bool,
    pub passed: bool,
    pub points: Vec<NullCheckPoint>,
}

/// Check the canonical construction along `grid` with absolute tolerance
/// `tol` on both quadratic-form residuals.
pub fn validate_null(curve: &ConeCurve, grid: &Grid, tol: f64) -> Result<NullValidation> {
    validate_rows(curve, grid, tol, &component_rows(curve.m, false))
}

/// Negative-control variant: the first component is deliberately assembled
/// with a doubled cross term (f + 2m·g), which breaks the cancellation and
/// must be caught by the validator.
pub fn validate_null_tampered(curve: &ConeCurve, grid: &Grid, tol: f64) -> Result<NullValidation> {
    validate_rows(curve, grid, tol, &component_rows(curve.m, true))
}

/// Coefficients of each component as a linear map of (f, g).
fn component_rows(m: f64, tampered_first: bool) -> [[f64; 2]; 4] {
    let first = if tampered_first {
        [1.0, 2.0 * m]
    } else {
        [1.0, m]
    };
    [first, [-m, 1.0], [1.0, -m], [m, 1.0]]
}

/// −c₁² − c₂² + c₃² + c₄² over components cᵢ = rowᵢ·(u, v), evaluated in
/// double-double so the result reflects the construction rather than the
/// rounding of a plain f64 summation.
fn quadratic_form_dd(rows: &[[f64; 2]; 4], u: f64, v: f64) -> f64 {
    let c: [Dd; 4] = std::array::from_fn(|i| Dd::prod(rows[i][0], u).add(&Dd::prod(rows[i][1], v)));
    c[2].mul(&c[2])
        .add(&c[3].mul(&c[3]))
        .add(&c[0].mul(&c[0]).neg())
        .add(&c[1].mul(&c[1]).neg())
        .to_f64()
}

fn validate_rows(
    curve: &ConeCurve,
    grid: &Grid,
    tol: f64,
    rows: &[[f64; 2]; 4],
) -> Result<NullValidation> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    let mut points = Vec::with_capacity(grid.count());
    let mut max_abs = 0.0f64;
    let mut worst_t = grid.start();
    let mut any_error = false;
    let mut max_generator = 0.0f64;
    let mut any_evaluated = false;
    for t in grid.points() {
        let jets = curve
            .f
            .jet_eval(t, 1)
            .and_then(|fj| curve.g.jet_eval(t, 1).map(|gj| (fj, gj)));
        let (fj, gj) = match jets {
            Ok(pair) => pair,
            Err(e) => {
                any_error = true;
                points.push(NullCheckPoint {
                    t,
                    gamma_residual: None,
                    tangent_residual: None,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        any_evaluated = true;
        max_generator = max_generator.max(fj.value().abs()).max(gj.value().abs());
        let gamma_res = quadratic_form_dd(rows, fj.value(), gj.value()).abs();
        let tangent_res = quadratic_form_dd(rows, fj.coeff(1), gj.coeff(1)).abs();
        if !gamma_res.is_finite() || !tangent_res.is_finite() {
            any_error = true;
            points.push(NullCheckPoint {
                t,
                gamma_residual: None,
                tangent_residual: None,
                error: Some(format!("non-finite nullity residual at t = {t}")),
            });
            continue;
        }
        for r in [gamma_res, tangent_res] {
            if r > max_abs {
                max_abs = r;
                worst_t = t;
            }
        }
        points.push(NullCheckPoint {
            t,
            gamma_residual: Some(gamma_res),
            tangent_residual: Some(tangent_res),
            error: None,
        });
    }
    let degenerate = !any_evaluated || max_generator == 0.0;
    Ok(NullValidation {
        tolerance: tol,
        max_abs_residual: max_abs,
        worst_t,
        degenerate,
        passed: !any_error && !degenerate && max_abs <= tol,
        points,
    })
}

/// Unevaluated double-double value (hi + lo with |lo| ≤ ulp(hi)/2).
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    /// Exact product of two f64 values.
    fn prod(a: f64, b: f64) -> Dd {
        let hi = a * b;
        let lo = a.mul_add(b, -hi);
        Dd { hi, lo }
    }

    fn neg(&self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn add(&self, other: &Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = fast_two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul(&self, other: &Dd) -> Dd {
        let p = Dd::prod(self.hi, other.hi);
        let e = p.lo + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = fast_two_sum(p.hi, e);
        Dd { hi, lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{v4_inner, v4_perp};
    use crate::pseudo_metric::{inner, PerpVariant};
    use crate::scalar_expr::parse;
    use proptest::prelude::*;

    fn hyper12() -> ConeCurve {
        ConeCurve::hyperbolic(1.0, 2.0).unwrap()
    }

    #[test]
    fn frozen_position_of_hyperbolic_fixture() {
        let p = hyper12().position(0.0).unwrap();
        assert_eq!(p, [1.0, 0.5, -1.0, 0.5]);
    }

    #[test]
    fn frozen_perp_and_tangent_of_hyperbolic_fixture() {
        let jets = hyper12().position_jet(0.0, 1).unwrap();
        let tangent = jets.map(|j| j.coeff(1));
        assert_eq!(tangent, [0.5, -1.0, 0.5, 1.0]);
        let perp = v4_perp(&jets, PerpVariant::P14);
        let perp_vals = perp.map(|j| j.value());
        assert_eq!(perp_vals, [0.5, -1.0, -0.5, -1.0]);
        let perp_dot = perp.map(|j| j.coeff(1));
        assert_eq!(perp_dot, [-1.0, -0.5, -1.0, 0.5]);
    }

    #[test]
    fn frozen_omega_values() {
        assert_eq!(hyper12().omega(0.0).unwrap(), -0.25);
        assert!((hyper12().omega(0.7).unwrap() + 0.25).abs() <= 1e-15);
        let trig = ConeCurve::trigonometric(1.0, 0.5).unwrap();
        assert!((trig.omega(0.3).unwrap() + 0.25).abs() <= 1e-15);
        // Ω scales linearly with the fixture frequency
        let fast = ConeCurve::hyperbolic(2.0, 0.0).unwrap();
        assert!((fast.omega(0.4).unwrap() + 0.5).abs() <= 1e-15);
    }

    #[test]
    fn omega_jet_of_fixture_is_constant() {
        let j = hyper12().omega_jet(0.9, 3).unwrap();
        assert!((j.value() + 0.25).abs() <= 1e-15);
        for k in 1..=3 {
            assert!(j.coeff(k).abs() <= 1e-15, "Ω^({k}) = {}", j.coeff(k));
        }
    }

    #[test]
    fn pairing_between_perp_and_tangent() {
        // ⟨γ⊥, γ′⟩ = 2(1 + m²)Ω, exercised on a non-fixture pair
        let curve =
            ConeCurve::new(parse("t*t/4+t").unwrap(), parse("sinh(t)/2").unwrap(), 1.5).unwrap();
        for t in [-1.0, 0.2, 0.9] {
            let jets = curve.position_jet(t, 1).unwrap();
            let perp = v4_perp(&jets, PerpVariant::P14);
            let tangent = crate::jet::v4_derivative(&jets);
            let d = v4_inner(&perp, &tangent).value();
            let expected = 2.0 * (1.0 + 1.5 * 1.5) * curve.omega(t).unwrap();
            assert!(
                (d - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                "t={t}: {d} vs {expected}"
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ConeCurve::hyperbolic(0.0, 1.0).is_err());
        assert!(ConeCurve::hyperbolic(f64::NAN, 1.0).is_err());
        assert!(ConeCurve::new(parse("t").unwrap(), parse("t").unwrap(), f64::INFINITY).is_err());
    }

    #[test]
    fn grid_points_hit_both_endpoints() {
        let g = Grid::new(0.1, 1.1, 11).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 11);
        assert_eq!(pts[0], 0.1);
        assert_eq!(pts[10], 1.1);
        assert!((pts[5] - 0.6).abs() <= 1e-15);
        assert_eq!(Grid::new(0.5, 0.5, 1).unwrap().points(), vec![0.5]);
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(Grid::new(0.0, 1.0, 0).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
        assert!(Grid::new(0.0, 0.0, 2).is_err());
        assert!(Grid::new(0.0, 0.3, 1).is_err());
        assert!(Grid::new(f64::NAN, 1.0, 3).is_err());
    }

    #[test]
    fn nullity_holds_on_growing_generators() {
        // the regime where a plain f64 summation already exceeds 1e−12
        let curve = ConeCurve::hyperbolic(2.0, 2.0).unwrap();
        let grid = Grid::new(-2.0, 2.0, 101).unwrap();
        let v = validate_null(&curve, &grid, 1e-12).unwrap();
        assert!(
            v.passed,
            "max residual {} at t = {}",
            v.max_abs_residual, v.worst_t
        );
        assert!(v.max_abs_residual <= 1e-20);
    }

    #[test]
    fn tampered_pair_is_caught() {
        let curve = ConeCurve::hyperbolic(1.0, 1.0).unwrap();
        let grid = Grid::new(0.0, 0.0, 1).unwrap();
        let v = validate_null_tampered(&curve, &grid, 1e-12).unwrap();
        assert!(!v.passed);
        // |−2m·f·g − 3m²·g²| at t = 0: f = 0, g = 1/2 → 3/4
        let gamma_res = v.points[0].gamma_residual.unwrap();
        assert!((gamma_res - 0.75).abs() <= 1e-15);
        // the tangent pair (f′, g′) = (1/2, 0) leaves the tangent residual 0
        assert_eq!(v.points[0].tangent_residual.unwrap(), 0.0);
        assert!((v.max_abs_residual - 0.75).abs() <= 1e-15);
    }

    #[test]
    fn evaluation_failures_are_recorded_per_point() {
        // 1/t fails at the middle grid point only
        let curve = ConeCurve::new(parse("1/t").unwrap(), parse("t").unwrap(), 0.5).unwrap();
        let grid = Grid::new(-1.0, 1.0, 3).unwrap();
        let v = validate_null(&curve, &grid, 1e-12).unwrap();
        assert!(!v.passed);
        assert_eq!(v.points.len(), 3);
        assert!(v.points[0].error.is_none());
        assert!(v.points[1].error.is_some());
        assert!(v.points[1].gamma_residual.is_none());
        assert!(v.points[2].gamma_residual.is_some());
    }

    #[test]
    fn degenerate_pair_is_flagged() {
        let zero = ConeCurve::new(Expr::constant(0.0), Expr::constant(0.0), 1.0).unwrap();
        let grid = Grid::new(-1.0, 1.0, 5).unwrap();
        let v = validate_null(&zero, &grid, 1e-12).unwrap();
        assert!(v.degenerate);
        assert!(!v.passed);
        let live = validate_null(&hyper12(), &grid, 1e-12).unwrap();
        assert!(!live.degenerate);
    }

    #[test]
    fn omega_jets_agree_with_fd_oracle() {
        let curve = ConeCurve::new(
            parse("t*t/4+sin(t)").unwrap(),
            parse("cosh(t/2)").unwrap(),
            1.0,
        )
        .unwrap();
        for t in [-1.1, 0.2, 0.9] {
            let via_jets = curve.omega(t).unwrap();
            let f = curve.f().eval_value(t).unwrap();
            let g = curve.g().eval_value(t).unwrap();
            let fd_f = crate::scalar_expr::fd_derivative(
                curve.f(),
                t,
                1,
                crate::scalar_expr::fd_default_step(1, t),
            )
            .unwrap();
            let fd_g = crate::scalar_expr::fd_derivative(
                curve.g(),
                t,
                1,
                crate::scalar_expr::fd_default_step(1, t),
            )
            .unwrap();
            let via_fd = f * fd_g - fd_f * g;
            assert!(
                (via_jets - via_fd).abs() <= 1e-8 * via_jets.abs().max(1.0),
                "t={t}: {via_jets} vs {via_fd}"
            );
        }
    }

    #[test]
    fn validator_rejects_bad_tolerance() {
        let curve = hyper12();
        let grid = Grid::new(0.0, 1.0, 3).unwrap();
        assert!(validate_null(&curve, &grid, 0.0).is_err());
        assert!(validate_null(&curve, &grid, -1.0).is_err());
    }

    #[test]
    fn position_jets_differentiate_the_position() {
        let curve = ConeCurve::new(
            parse("sin(t)*t").unwrap(),
            parse("cosh(t/2)").unwrap(),
            -0.75,
        )
        .unwrap();
        let t = 0.6;
        let jets = curve.position_jet(t, 2).unwrap();
        let h = 1e-5;
        let plus = curve.position(t + h).unwrap();
        let minus = curve.position(t - h).unwrap();
        for i in 0..4 {
            let fd = (plus[i] - minus[i]) / (2.0 * h);
            assert!((jets[i].coeff(1) - fd).abs() <= 1e-8 * fd.abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn canonical_nullity_is_algebraic(
            a in prop::sample::select(vec![0.5f64, 1.0, 2.0, 3.0]),
            m in -3.0f64..3.0,
            t0 in -2.0f64..1.9,
        ) {
            let curve = ConeCurve::hyperbolic(a, m).unwrap();
            let grid = Grid::new(t0, t0 + 0.1, 3).unwrap();
            let v = validate_null(&curve, &grid, 1e-12).unwrap();
            // double-double leaves only its own noise floor
            prop_assert!(v.max_abs_residual <= 1e-18);
        }

        #[test]
        fn position_values_match_plain_inner(m in -2.0f64..2.0, t in -1.5f64..1.5) {
            let curve = ConeCurve::hyperbolic(1.0, m).unwrap();
            let p = curve.position(t).unwrap();
            // plain f64 residual is small on this modest range, and the dd
            // validator is strictly tighter
            let plain = inner(&p, &p).unwrap();
            prop_assert!(plain.abs() <= 1e-13);
        }

        #[test]
        fn scaling_generators_scales_omega_quadratically(
            lambda in prop::sample::select(vec![0.5f64, 2.0, 3.0]),
            t in -1.0f64..1.0,
        ) {
            let base = ConeCurve::new(parse("sinh(t)/2").unwrap(), parse("t*t/3+1").unwrap(), 1.5).unwrap();
            let scaled = ConeCurve::new(
                Expr::mul(Expr::constant(lambda), base.f().clone()),
                Expr::mul(Expr::constant(lambda), base.g().clone()),
                1.5,
            ).unwrap();
            let om = base.omega(t).unwrap();
            let om_s = scaled.omega(t).unwrap();
            prop_assert!((om_s - lambda * lambda * om).abs() <= 1e-12 * om_s.abs().max(1.0));
            let p = base.position(t).unwrap();
            let p_s = scaled.position(t).unwrap();
            for i in 0..4 {
                prop_assert!((p_s[i] - lambda * p[i]).abs() <= 1e-12 * p_s[i].abs().max(1.0));
            }
        }
    }
}
