//! Signature-(2,2) algebra on coordinate 4-vectors.
//!
//! The scalar product used everywhere in this crate is
//! `⟨u,v⟩ = -u₁v₁ - u₂v₂ + u₃v₃ + u₄v₄`, i.e. the bilinear form of the
//! diagonal metric diag(-,-,+,+). Two component-shuffle operators, here
//! called the perp maps, send every vector to one of its metric-orthogonal
//! partners and preserve the scalar product.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Coordinate vector in the flat (2,2)-signature space.
pub type Vec4 = [f64; 4];

/// Causal class of a vector with respect to diag(-,-,+,+).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalCharacter {
    /// ⟨v,v⟩ > tol
    Spacelike,
    /// ⟨v,v⟩ < -tol
    Timelike,
    /// |⟨v,v⟩| ≤ tol with some component larger than tol
    Null,
    /// every component within tol of zero
    Zero,
}

/// The two component-shuffle operators.
///
/// `P13` maps (v₁,v₂,v₃,v₄) ↦ (v₂,-v₁,v₄,-v₃); `P14` maps it to
/// (v₂,-v₁,-v₄,v₃). Both are linear, both preserve ⟨·,·⟩, and both send
/// every vector to one orthogonal to itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PerpVariant {
    P13,
    P14,
}

fn check_finite(v: &Vec4, what: &str) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what} has a non-finite component: {v:?}"
        )))
    }
}

/// Scalar product of the diag(-,-,+,+) metric.
///
/// The summation order is fixed (terms left to right), so results are
/// bit-reproducible across runs.
pub fn inner(u: &Vec4, v: &Vec4) -> Result<f64> {
    check_finite(u, "left vector")?;
    check_finite(v, "right vector")?;
    Ok(inner_raw(u, v))
}

/// `inner` without the finiteness guard, for internal hot paths whose inputs
/// are already validated.
pub(crate) fn inner_raw(u: &Vec4, v: &Vec4) -> f64 {
    -u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

/// Classify a vector as spacelike / timelike / lightlike / zero.
///
/// `tol` guards both the scalar-product comparison and the zero test on the
/// max-abs component; it must be positive.
pub fn causal_character(v: &Vec4, tol: f64) -> Result<CausalCharacter> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "causal tolerance must be positive, got {tol}"
        )));
    }
    check_finite(v, "vector")?;
    let q = inner_raw(v, v);
    if q > tol {
        Ok(CausalCharacter::Spacelike)
    } else if q < -tol {
        Ok(CausalCharacter::Timelike)
    } else if v.iter().all(|c| c.abs() <= tol) {
        Ok(CausalCharacter::Zero)
    } else {
        Ok(CausalCharacter::Null)
    }
}

/// Apply a perp operator to a coordinate vector.
pub fn perp(v: &Vec4, variant: PerpVariant) -> Vec4 {
    match variant {
        PerpVariant::P13 => [v[1], -v[0], v[3], -v[2]],
        PerpVariant::P14 => [v[1], -v[0], -v[3], v[2]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXACT: f64 = 0.0;

    #[test]
    fn inner_matches_frozen_values() {
        assert_eq!(
            inner(&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]).unwrap(),
            -1.0
        );
        assert_eq!(
            inner(&[1.0, 0.0, 1.0, 0.0], &[1.0, 0.0, 1.0, 0.0]).unwrap(),
            0.0
        );
        // position of the hyperbolic pair (a=1, m=2) at t=0 is null
        let g = [1.0, 0.5, -1.0, 0.5];
        assert_eq!(inner(&g, &g).unwrap(), 0.0);
    }

    #[test]
    fn inner_rejects_non_finite() {
        let bad = [f64::NAN, 0.0, 0.0, 0.0];
        assert!(matches!(
            inner(&bad, &[0.0; 4]),
            Err(Error::InvalidInput(_))
        ));
        let inf = [0.0, f64::INFINITY, 0.0, 0.0];
        assert!(matches!(
            inner(&[0.0; 4], &inf),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn causal_character_matches_frozen_values() {
        let tol = 1e-9;
        assert_eq!(
            causal_character(&[1.0, 0.0, 0.0, 0.0], tol).unwrap(),
            CausalCharacter::Timelike
        );
        assert_eq!(
            causal_character(&[0.0, 0.0, 1.0, 0.0], tol).unwrap(),
            CausalCharacter::Spacelike
        );
        assert_eq!(
            causal_character(&[1.0, 0.0, 1.0, 0.0], tol).unwrap(),
            CausalCharacter::Null
        );
        assert_eq!(
            causal_character(&[0.0, 0.0, 1e-12, 0.0], tol).unwrap(),
            CausalCharacter::Zero
        );
    }

    #[test]
    fn causal_character_rejects_bad_tolerance() {
        for tol in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                causal_character(&[1.0, 0.0, 0.0, 0.0], tol),
                Err(Error::InvalidConfig(_))
            ));
        }
    }

    #[test]
    fn perp_matches_frozen_values() {
        assert_eq!(
            perp(&[1.0, 2.0, 3.0, 4.0], PerpVariant::P13),
            [2.0, -1.0, 4.0, -3.0]
        );
        assert_eq!(
            perp(&[1.0, 2.0, 3.0, 4.0], PerpVariant::P14),
            [2.0, -1.0, -4.0, 3.0]
        );
        // curve position at t=0 for the hyperbolic pair (a=1, m=2)
        assert_eq!(
            perp(&[1.0, 0.5, -1.0, 0.5], PerpVariant::P14),
            [0.5, -1.0, -0.5, -1.0]
        );
    }

    #[test]
    fn perp_is_orthogonal_to_its_argument_on_frozen_vectors() {
        for v in [
            [1.0, 2.0, 3.0, 4.0],
            [0.5, -1.5, 2.5, 0.25],
            [1.0, 0.0, 0.0, 0.0],
        ] {
            for variant in [PerpVariant::P13, PerpVariant::P14] {
                let p = perp(&v, variant);
                assert_eq!(inner(&v, &p).unwrap(), EXACT);
            }
        }
    }

    fn int_vec() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-8i32..=8).prop_map(|a| a.map(|x| x as f64))
    }

    fn real_vec() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-2.0f64..=2.0)
    }

    proptest! {
        // On integer-valued inputs every identity below is exact in f64.
        #[test]
        fn inner_is_symmetric_and_bilinear_on_integers(u in int_vec(), v in int_vec(), w in int_vec()) {
            prop_assert_eq!(inner(&u, &v).unwrap(), inner(&v, &u).unwrap());
            let vw: Vec4 = std::array::from_fn(|i| v[i] + w[i]);
            prop_assert_eq!(inner(&u, &vw).unwrap(), inner(&u, &v).unwrap() + inner(&u, &w).unwrap());
            let u3: Vec4 = std::array::from_fn(|i| 3.0 * u[i]);
            prop_assert_eq!(inner(&u3, &v).unwrap(), 3.0 * inner(&u, &v).unwrap());
        }

        #[test]
        fn perp_identities_exact_on_integers(u in int_vec(), v in int_vec()) {
            for variant in [PerpVariant::P13, PerpVariant::P14] {
                let up = perp(&u, variant);
                let vp = perp(&v, variant);
                // ⟨u,v⟩ = ⟨u⊥,v⊥⟩
                prop_assert_eq!(inner(&u, &v).unwrap(), inner(&up, &vp).unwrap());
                // ⟨u,v⊥⟩ = -⟨u⊥,v⟩
                prop_assert_eq!(inner(&u, &vp).unwrap(), -inner(&up, &v).unwrap());
                // self-orthogonality
                prop_assert_eq!(inner(&u, &up).unwrap(), 0.0);
            }
        }

        #[test]
        fn perp_is_linear_on_integers(u in int_vec(), v in int_vec()) {
            for variant in [PerpVariant::P13, PerpVariant::P14] {
                let sum: Vec4 = std::array::from_fn(|i| u[i] + v[i]);
                let lhs = perp(&sum, variant);
                let pu = perp(&u, variant);
                let pv = perp(&v, variant);
                let rhs: Vec4 = std::array::from_fn(|i| pu[i] + pv[i]);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn perp_identities_tight_on_reals(u in real_vec(), v in real_vec()) {
            for variant in [PerpVariant::P13, PerpVariant::P14] {
                let up = perp(&u, variant);
                let vp = perp(&v, variant);
                let d1 = (inner(&u, &v).unwrap() - inner(&up, &vp).unwrap()).abs();
                let d2 = (inner(&u, &vp).unwrap() + inner(&up, &v).unwrap()).abs();
                prop_assert!(d1 <= 1e-12, "product preservation residual {d1}");
                prop_assert!(d2 <= 1e-12, "skew pairing residual {d2}");
            }
        }

        #[test]
        fn causal_classes_are_exhaustive(v in real_vec()) {
            // classification never fails on finite input with a valid tolerance
            causal_character(&v, 1e-9).unwrap();
        }
    }
}
