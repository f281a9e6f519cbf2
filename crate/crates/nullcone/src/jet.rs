//! Truncated Taylor ("jet") arithmetic up to fourth order.
//!
//! A [`ScalarJet`] carries the value of a function together with its first
//! `order ≤ 4` derivatives at a point. Arithmetic propagates derivatives
//! exactly (Leibniz rule, quotient rule, elementary-function recurrences),
//! which is what the rest of the crate uses to differentiate curve positions,
//! frame fields and printed coefficient tables without finite differences.
//!
//! Coefficients are stored as plain derivative values (not divided by k!),
//! so `coeff(k)` is d^k f / dt^k.

use crate::error::{Error, Result};

/// Highest supported derivative order.
pub const MAX_ORDER: usize = 4;

/// Binomial coefficients C(n, k) for n, k ≤ 4.
const BINOM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

/// Value plus derivatives of a scalar function at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarJet {
    c: [f64; 5],
    order: usize,
}

impl ScalarJet {
    /// Jet of a constant: all derivatives zero.
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; 5];
        c[0] = value;
        ScalarJet { c, order }
    }

    /// Jet of the identity function at `t`: value `t`, first derivative 1.
    pub fn variable(t: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mut c = [0.0; 5];
        c[0] = t;
        if order >= 1 {
            c[1] = 1.0;
        }
        ScalarJet { c, order }
    }

    /// Build directly from derivative values (`coeffs[k]` = k-th derivative).
    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= MAX_ORDER + 1);
        let mut c = [0.0; 5];
        c[..coeffs.len()].copy_from_slice(coeffs);
        ScalarJet {
            c,
            order: coeffs.len() - 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Function value (0-th derivative).
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative value; panics if `k` exceeds the jet's order.
    pub fn coeff(&self, k: usize) -> f64 {
        assert!(
            k <= self.order,
            "derivative order {k} exceeds jet order {}",
            self.order
        );
        self.c[k]
    }

    /// All tracked derivatives, value first.
    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.order]
    }

    /// Jet of the derivative function: shifts coefficients down one slot and
    /// lowers the order by one. Panics on order-0 jets.
    pub fn derivative(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut c = [0.0; 5];
        c[..self.order].copy_from_slice(&self.c[1..=self.order]);
        ScalarJet {
            c,
            order: self.order - 1,
        }
    }

    /// Truncate to a lower order (no-op if already at or below it).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        if order >= self.order {
            return *self;
        }
        let mut c = [0.0; 5];
        c[..=order].copy_from_slice(&self.c[..=order]);
        ScalarJet { c, order }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_finite())
    }

    pub fn neg(&self) -> Self {
        let mut out = *self;
        for k in 0..=self.order {
            out.c[k] = -out.c[k];
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; 5];
        for (k, slot) in c.iter_mut().enumerate().take(order + 1) {
            *slot = self.c[k] + rhs.c[k];
        }
        ScalarJet { c, order }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; 5];
        for (k, slot) in c.iter_mut().enumerate().take(order + 1) {
            *slot = self.c[k] - rhs.c[k];
        }
        ScalarJet { c, order }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for k in 0..=self.order {
            out.c[k] *= s;
        }
        out
    }

    /// Leibniz product: (uv)^(k) = Σ C(k,i) u^(i) v^(k-i).
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; 5];
        for k in 0..=order {
            let mut acc = 0.0;
            for (i, binom) in BINOM[k].iter().enumerate().take(k + 1) {
                acc += binom * self.c[i] * rhs.c[k - i];
            }
            c[k] = acc;
        }
        ScalarJet { c, order }
    }

    /// Quotient: solves (w·v)^(k) = u^(k) for w^(k). Errors when the divisor
    /// value is exactly zero.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.c[0] == 0.0 {
            return Err(Error::Domain {
                op: "division by zero".into(),
                offset: 0,
                t: f64::NAN,
            });
        }
        let order = self.order.min(rhs.order);
        let mut w = [0.0; 5];
        for k in 0..=order {
            let mut acc = self.c[k];
            for i in 0..k {
                acc -= BINOM[k][i] * w[i] * rhs.c[k - i];
            }
            w[k] = acc / rhs.c[0];
        }
        Ok(ScalarJet { c: w, order })
    }

    /// Square root. Errors on negative values, and on zero values when
    /// derivatives are requested (the derivative is unbounded there).
    pub fn sqrt(&self) -> Result<Self> {
        if self.c[0] < 0.0 || (self.c[0] == 0.0 && self.order >= 1) {
            return Err(Error::Domain {
                op: "sqrt of non-positive value".into(),
                offset: 0,
                t: f64::NAN,
            });
        }
        let mut w = [0.0; 5];
        w[0] = self.c[0].sqrt();
        for k in 1..=self.order {
            // (w·w)^(k) = u^(k)  =>  2 w0 wk = u^(k) - Σ_{0<i<k} C(k,i) wi w(k-i)
            let mut acc = self.c[k];
            for i in 1..k {
                acc -= BINOM[k][i] * w[i] * w[k - i];
            }
            w[k] = acc / (2.0 * w[0]);
        }
        Ok(ScalarJet {
            c: w,
            order: self.order,
        })
    }

    /// Integer power. Negative exponents divide; `u^0` is the constant 1.
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n == 0 {
            return Ok(ScalarJet::constant(1.0, self.order));
        }
        let mut acc = *self;
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(self);
        }
        if n < 0 {
            ScalarJet::constant(1.0, self.order).div(&acc)
        } else {
            Ok(acc)
        }
    }

    /// Sine and cosine of the jet, computed jointly through the coupled
    /// recurrences s' = c·u', c' = -s·u'.
    pub fn sin_cos(&self) -> (Self, Self) {
        let order = self.order;
        let (s0, c0) = self.c[0].sin_cos();
        let mut s = [0.0; 5];
        let mut c = [0.0; 5];
        s[0] = s0;
        c[0] = c0;
        for k in 0..order {
            // s^(k+1) = (c · u')^(k),  c^(k+1) = (-s · u')^(k)
            let mut ds = 0.0;
            let mut dc = 0.0;
            for i in 0..=k {
                let up = self.c[k - i + 1];
                ds += BINOM[k][i] * c[i] * up;
                dc -= BINOM[k][i] * s[i] * up;
            }
            s[k + 1] = ds;
            c[k + 1] = dc;
        }
        (ScalarJet { c: s, order }, ScalarJet { c, order })
    }

    /// Hyperbolic sine and cosine, via s' = c·u', c' = s·u'.
    ///
    /// The order-0 values come from a shared pair of `expm1` evaluations so
    /// the two results carry correlated rounding — this keeps cancellation in
    /// downstream sums (like the null-cone residuals) as clean as possible.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let order = self.order;
        let u = self.c[0];
        let (s0, c0) = sinh_cosh_value(u);
        let mut s = [0.0; 5];
        let mut c = [0.0; 5];
        s[0] = s0;
        c[0] = c0;
        for k in 0..order {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for i in 0..=k {
                let up = self.c[k - i + 1];
                ds += BINOM[k][i] * c[i] * up;
                dc += BINOM[k][i] * s[i] * up;
            }
            s[k + 1] = ds;
            c[k + 1] = dc;
        }
        (ScalarJet { c: s, order }, ScalarJet { c, order })
    }

    /// Exponential, via e' = e·u'.
    pub fn exp(&self) -> Self {
        let order = self.order;
        let mut e = [0.0; 5];
        e[0] = self.c[0].exp();
        for k in 0..order {
            let mut de = 0.0;
            for i in 0..=k {
                de += BINOM[k][i] * e[i] * self.c[k - i + 1];
            }
            e[k + 1] = de;
        }
        ScalarJet { c: e, order }
    }
}

/// sinh/cosh value pair from two shared `expm1` calls (cancellation-free for
/// small arguments, correlated rounding between the two results).
pub(crate) fn sinh_cosh_value(u: f64) -> (f64, f64) {
    if u.abs() > 350.0 {
        // expm1(±u) would overflow the sum; fall back to libm directly
        return (u.sinh(), u.cosh());
    }
    let ep = u.exp_m1();
    let en = (-u).exp_m1();
    ((ep - en) / 2.0, 1.0 + (ep + en) / 2.0)
}

/// Four-component jet: one scalar jet per coordinate.
pub type Vec4Jet = [ScalarJet; 4];

/// Componentwise derivative of a vector jet.
pub fn v4_derivative(v: &Vec4Jet) -> Vec4Jet {
    std::array::from_fn(|i| v[i].derivative())
}

/// Values of a vector jet.
pub fn v4_value(v: &Vec4Jet) -> crate::pseudo_metric::Vec4 {
    std::array::from_fn(|i| v[i].value())
}

/// Componentwise k-th derivative values.
pub fn v4_coeff(v: &Vec4Jet, k: usize) -> crate::pseudo_metric::Vec4 {
    std::array::from_fn(|i| v[i].coeff(k))
}

pub fn v4_add(u: &Vec4Jet, v: &Vec4Jet) -> Vec4Jet {
    std::array::from_fn(|i| u[i].add(&v[i]))
}

/// Scale a vector jet by a scalar jet (Leibniz per component).
pub fn v4_scale(v: &Vec4Jet, s: &ScalarJet) -> Vec4Jet {
    std::array::from_fn(|i| v[i].mul(s))
}

/// Divide a vector jet by a scalar jet.
pub fn v4_div(v: &Vec4Jet, s: &ScalarJet) -> Result<Vec4Jet> {
    Ok([v[0].div(s)?, v[1].div(s)?, v[2].div(s)?, v[3].div(s)?])
}

/// Apply a perp operator to a vector jet (linear, so it commutes with d/dt).
pub fn v4_perp(v: &Vec4Jet, variant: crate::pseudo_metric::PerpVariant) -> Vec4Jet {
    use crate::pseudo_metric::PerpVariant::*;
    match variant {
        P13 => [v[1], v[0].neg(), v[3], v[2].neg()],
        P14 => [v[1], v[0].neg(), v[3].neg(), v[2]],
    }
}

/// Scalar product jet: ⟨u,v⟩ with the diag(-,-,+,+) signs, propagated
/// through derivatives.
pub fn v4_inner(u: &Vec4Jet, v: &Vec4Jet) -> ScalarJet {
    let t0 = u[0].mul(&v[0]);
    let t1 = u[1].mul(&v[1]);
    let t2 = u[2].mul(&v[2]);
    let t3 = u[3].mul(&v[3]);
    t2.add(&t3).sub(&t0).sub(&t1)
}
