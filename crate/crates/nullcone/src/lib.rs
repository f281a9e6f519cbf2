//! Null curves on the lightlike cone of a flat (2,2)-signature space.
//!
//! The crate builds canonical null curves from a generator pair (f, g) and a
//! mixing constant m, constructs their natural frames {γ, ξ, N, W} and
//! structure functions (h, κ₁, κ₂), generates seven families of derived
//! curves whose positions combine the frame vectors, and audits the closed
//! form curvature tables those families are claimed to satisfy against
//! independent differentiation oracles.
//!
//! Module map:
//! - [`pseudo_metric`] — the (−,−,+,+) inner product, causal classification,
//!   and the two orthogonal "perp" component swaps.
//! - [`scalar_expr`] — the expression language for generator and angle
//!   functions, truncated-Taylor jets, and a finite-difference oracle.
//! - [`null_curve`] — the canonical curve, the Ω invariant, fixtures, and
//!   nullity validation.
//! - [`cone_frame`] — frame construction, curvatures, frame-equation
//!   residuals.
//! - [`smarandache`] — the seven derived-curve families, their printed
//!   curvature tables (literal and corrected), and the oracle comparison.
//! - [`verify`] — named audit suites aggregated into a deterministic report.

pub mod error;
pub(crate) mod jet;

pub mod cone_frame;
pub mod null_curve;
pub mod pseudo_metric;
pub mod scalar_expr;
pub mod smarandache;
pub mod verify;

pub use error::{Error, Result};

/// `|a − b| ≤ tol·max(1, |a|, |b|)`: the relative comparison used by audits.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
