//! Scalar expressions of one variable `t`: parsing, printing, plain
//! evaluation, jet evaluation, and a finite-difference derivative oracle.
//!
//! The grammar covers exactly what generator functions and angle functions
//! need: constants, `t`, the four arithmetic operators, unary minus, integer
//! powers, and `sin cos sinh cosh exp sqrt`. Offsets in errors are 1-based
//! byte positions into the source text; programmatically built trees carry
//! offset 0.

use crate::error::{Error, Result};

pub use crate::jet::{
    v4_add, v4_coeff, v4_derivative, v4_div, v4_inner, v4_perp, v4_scale, v4_value, ScalarJet,
    Vec4Jet, MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    Const(f64),
    /// The independent variable `t`.
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sinh(Box<Expr>),
    Cosh(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
}

/// Expression tree node with its source position.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    kind: Kind,
    span: usize,
}

/// Largest exponent magnitude `^n` accepts.
const MAX_EXPONENT: i32 = 64;

impl Expr {
    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    /// 1-based byte offset of this node in the source, 0 if synthetic.
    pub fn span(&self) -> usize {
        self.span
    }

    fn synthetic(kind: Kind) -> Self {
        Expr { kind, span: 0 }
    }

    pub fn constant(v: f64) -> Self {
        Self::synthetic(Kind::Const(v))
    }

    pub fn var() -> Self {
        Self::synthetic(Kind::Var)
    }

    // The arithmetic names below construct syntax nodes rather than perform
    // arithmetic, so the std operator traits don't apply.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Self {
        Self::synthetic(Kind::Neg(Box::new(e)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Self {
        Self::synthetic(Kind::Add(Box::new(a), Box::new(b)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Self {
        Self::synthetic(Kind::Sub(Box::new(a), Box::new(b)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Self {
        Self::synthetic(Kind::Mul(Box::new(a), Box::new(b)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Expr, b: Expr) -> Self {
        Self::synthetic(Kind::Div(Box::new(a), Box::new(b)))
    }

    pub fn pow(a: Expr, n: i32) -> Self {
        Self::synthetic(Kind::Pow(Box::new(a), n))
    }

    pub fn sin(e: Expr) -> Self {
        Self::synthetic(Kind::Sin(Box::new(e)))
    }

    pub fn cos(e: Expr) -> Self {
        Self::synthetic(Kind::Cos(Box::new(e)))
    }

    pub fn sinh(e: Expr) -> Self {
        Self::synthetic(Kind::Sinh(Box::new(e)))
    }

    pub fn cosh(e: Expr) -> Self {
        Self::synthetic(Kind::Cosh(Box::new(e)))
    }

    pub fn exp(e: Expr) -> Self {
        Self::synthetic(Kind::Exp(Box::new(e)))
    }

    pub fn sqrt(e: Expr) -> Self {
        Self::synthetic(Kind::Sqrt(Box::new(e)))
    }

    /// Tree equality that ignores source positions.
    pub fn structural_eq(&self, other: &Expr) -> bool {
        use Kind::*;
        match (&self.kind, &other.kind) {
            (Const(a), Const(b)) => a == b,
            (Var, Var) => true,
            (Neg(a), Neg(b)) => a.structural_eq(b),
            (Add(a1, a2), Add(b1, b2))
            | (Sub(a1, a2), Sub(b1, b2))
            | (Mul(a1, a2), Mul(b1, b2))
            | (Div(a1, a2), Div(b1, b2)) => a1.structural_eq(b1) && a2.structural_eq(b2),
            (Pow(a, n), Pow(b, m)) => n == m && a.structural_eq(b),
            (Sin(a), Sin(b))
            | (Cos(a), Cos(b))
            | (Sinh(a), Sinh(b))
            | (Cosh(a), Cosh(b))
            | (Exp(a), Exp(b))
            | (Sqrt(a), Sqrt(b)) => a.structural_eq(b),
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self.kind {
            Kind::Add(..) | Kind::Sub(..) => 1,
            Kind::Mul(..) | Kind::Div(..) => 2,
            Kind::Neg(..) => 3,
            Kind::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Render to text that reparses to a structurally equal tree.
    pub fn print(&self) -> String {
        fn child(buf: &mut String, c: &Expr, parent_prec: u8, right_of_same: bool) {
            let need =
                c.precedence() < parent_prec || (right_of_same && c.precedence() == parent_prec);
            if need {
                buf.push('(');
                write(buf, c);
                buf.push(')');
            } else {
                write(buf, c);
            }
        }
        fn write(buf: &mut String, e: &Expr) {
            match &e.kind {
                Kind::Const(v) => buf.push_str(&format!("{v}")),
                Kind::Var => buf.push('t'),
                Kind::Neg(a) => {
                    buf.push('-');
                    child(buf, a, 3, false);
                }
                Kind::Add(a, b) => {
                    child(buf, a, 1, false);
                    buf.push('+');
                    child(buf, b, 1, true);
                }
                Kind::Sub(a, b) => {
                    child(buf, a, 1, false);
                    buf.push('-');
                    child(buf, b, 1, true);
                }
                Kind::Mul(a, b) => {
                    child(buf, a, 2, false);
                    buf.push('*');
                    child(buf, b, 2, true);
                }
                Kind::Div(a, b) => {
                    child(buf, a, 2, false);
                    buf.push('/');
                    child(buf, b, 2, true);
                }
                Kind::Pow(a, n) => {
                    child(buf, a, 4, false);
                    buf.push('^');
                    buf.push_str(&n.to_string());
                }
                Kind::Sin(a) => func(buf, "sin", a),
                Kind::Cos(a) => func(buf, "cos", a),
                Kind::Sinh(a) => func(buf, "sinh", a),
                Kind::Cosh(a) => func(buf, "cosh", a),
                Kind::Exp(a) => func(buf, "exp", a),
                Kind::Sqrt(a) => func(buf, "sqrt", a),
            }
        }
        fn func(buf: &mut String, name: &str, a: &Expr) {
            buf.push_str(name);
            buf.push('(');
            write(buf, a);
            buf.push(')');
        }
        let mut buf = String::new();
        write(&mut buf, self);
        buf
    }

    fn domain(&self, op: &str, t: f64) -> Error {
        Error::Domain {
            op: op.into(),
            offset: self.span,
            t,
        }
    }

    /// Plain f64 evaluation. Independent of the jet path — used as the base
    /// of the finite-difference oracle.
    pub fn eval_value(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "evaluation point {t} is not finite"
            )));
        }
        let v = match &self.kind {
            Kind::Const(v) => *v,
            Kind::Var => t,
            Kind::Neg(a) => -a.eval_value(t)?,
            Kind::Add(a, b) => a.eval_value(t)? + b.eval_value(t)?,
            Kind::Sub(a, b) => a.eval_value(t)? - b.eval_value(t)?,
            Kind::Mul(a, b) => a.eval_value(t)? * b.eval_value(t)?,
            Kind::Div(a, b) => {
                let d = b.eval_value(t)?;
                if d == 0.0 {
                    return Err(self.domain("division by zero", t));
                }
                a.eval_value(t)? / d
            }
            Kind::Pow(a, n) => {
                let base = a.eval_value(t)?;
                if *n < 0 && base == 0.0 {
                    return Err(self.domain("division by zero", t));
                }
                base.powi(*n)
            }
            Kind::Sin(a) => a.eval_value(t)?.sin(),
            Kind::Cos(a) => a.eval_value(t)?.cos(),
            Kind::Sinh(a) => a.eval_value(t)?.sinh(),
            Kind::Cosh(a) => a.eval_value(t)?.cosh(),
            Kind::Exp(a) => a.eval_value(t)?.exp(),
            Kind::Sqrt(a) => {
                let u = a.eval_value(t)?;
                if u < 0.0 {
                    return Err(self.domain("sqrt of negative value", t));
                }
                u.sqrt()
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.domain("non-finite value", t))
        }
    }

    /// Evaluate to a jet of order `k ≤ 4`: value plus the first k derivatives.
    pub fn jet_eval(&self, t: f64, k: usize) -> Result<ScalarJet> {
        if k > MAX_ORDER {
            return Err(Error::InvalidConfig(format!(
                "jet order {k} exceeds the cap {MAX_ORDER}"
            )));
        }
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "evaluation point {t} is not finite"
            )));
        }
        let j = self.jet_rec(t, k)?;
        if j.is_finite() {
            Ok(j)
        } else {
            Err(self.domain("non-finite value", t))
        }
    }

    fn jet_rec(&self, t: f64, k: usize) -> Result<ScalarJet> {
        let reloc = |e: Error| match e {
            Error::Domain { op, .. } => Error::Domain {
                op,
                offset: self.span,
                t,
            },
            other => other,
        };
        Ok(match &self.kind {
            Kind::Const(v) => ScalarJet::constant(*v, k),
            Kind::Var => ScalarJet::variable(t, k),
            Kind::Neg(a) => a.jet_rec(t, k)?.neg(),
            Kind::Add(a, b) => a.jet_rec(t, k)?.add(&b.jet_rec(t, k)?),
            Kind::Sub(a, b) => a.jet_rec(t, k)?.sub(&b.jet_rec(t, k)?),
            Kind::Mul(a, b) => a.jet_rec(t, k)?.mul(&b.jet_rec(t, k)?),
            Kind::Div(a, b) => a.jet_rec(t, k)?.div(&b.jet_rec(t, k)?).map_err(reloc)?,
            Kind::Pow(a, n) => a.jet_rec(t, k)?.powi(*n).map_err(reloc)?,
            Kind::Sin(a) => a.jet_rec(t, k)?.sin_cos().0,
            Kind::Cos(a) => a.jet_rec(t, k)?.sin_cos().1,
            Kind::Sinh(a) => a.jet_rec(t, k)?.sinh_cosh().0,
            Kind::Cosh(a) => a.jet_rec(t, k)?.sinh_cosh().1,
            Kind::Exp(a) => a.jet_rec(t, k)?.exp(),
            Kind::Sqrt(a) => a.jet_rec(t, k)?.sqrt().map_err(reloc)?,
        })
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.print())
    }
}

/// Parse expression text. Offsets in errors are 1-based byte positions.
pub fn parse(src: &str) -> Result<Expr> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        eof_offset: src.len() + 1,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(tok) => Err(Error::Parse {
            offset: tok.offset,
            message: format!("unexpected `{}`", tok.text),
        }),
    }
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    kind: TokKind,
    offset: usize, // 1-based
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TokKind {
    Num(f64),
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let offset = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let kind = match c {
                    '+' => TokKind::Plus,
                    '-' => TokKind::Minus,
                    '*' => TokKind::Star,
                    '/' => TokKind::Slash,
                    '^' => TokKind::Caret,
                    '(' => TokKind::LParen,
                    _ => TokKind::RParen,
                };
                out.push(Token {
                    text: c.to_string(),
                    kind,
                    offset,
                });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| Error::Parse {
                    offset,
                    message: format!("malformed number `{text}`"),
                })?;
                out.push(Token {
                    text: text.to_string(),
                    kind: TokKind::Num(value),
                    offset,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    text: src[start..i].to_string(),
                    kind: TokKind::Ident,
                    offset,
                });
            }
            _ => {
                return Err(Error::Parse {
                    offset,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof_offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: TokKind) -> bool {
        if self.peek().map(|t| t.kind == kind).unwrap_or(false) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> Result<Token> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.bump().unwrap()),
            Some(t) => Err(Error::Parse {
                offset: t.offset,
                message: format!("expected {what}, found `{}`", t.text),
            }),
            None => Err(Error::Parse {
                offset: self.eof_offset,
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let (is_add, offset) = match self.peek() {
                Some(t) if t.kind == TokKind::Plus => (true, t.offset),
                Some(t) if t.kind == TokKind::Minus => (false, t.offset),
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            let kind = if is_add {
                Kind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Kind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span: offset };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let (is_mul, offset) = match self.peek() {
                Some(t) if t.kind == TokKind::Star => (true, t.offset),
                Some(t) if t.kind == TokKind::Slash => (false, t.offset),
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            let kind = if is_mul {
                Kind::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Kind::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span: offset };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(t) = self.peek() {
            if t.kind == TokKind::Minus {
                let offset = t.offset;
                self.pos += 1;
                let inner = self.unary()?;
                return Ok(Expr {
                    kind: Kind::Neg(Box::new(inner)),
                    span: offset,
                });
            }
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        while self
            .peek()
            .map(|t| t.kind == TokKind::Caret)
            .unwrap_or(false)
        {
            let caret = self.bump().unwrap();
            let negative = self.eat(TokKind::Minus);
            let tok = match self.peek() {
                Some(t) => t.clone(),
                None => {
                    return Err(Error::Parse {
                        offset: self.eof_offset,
                        message: "expected integer exponent".into(),
                    })
                }
            };
            let n = match tok.kind {
                TokKind::Num(v) if v.fract() == 0.0 && v.abs() <= MAX_EXPONENT as f64 => v as i32,
                TokKind::Num(_) => {
                    return Err(Error::Parse {
                        offset: tok.offset,
                        message: format!("exponent must be an integer with |n| ≤ {MAX_EXPONENT}"),
                    })
                }
                _ => {
                    return Err(Error::Parse {
                        offset: tok.offset,
                        message: "expected integer exponent".into(),
                    })
                }
            };
            self.pos += 1;
            let n = if negative { -n } else { n };
            e = Expr {
                kind: Kind::Pow(Box::new(e), n),
                span: caret.offset,
            };
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = match self.bump() {
            Some(t) => t,
            None => {
                return Err(Error::Parse {
                    offset: self.eof_offset,
                    message: "expected expression".into(),
                })
            }
        };
        match tok.kind {
            TokKind::Num(v) => Ok(Expr {
                kind: Kind::Const(v),
                span: tok.offset,
            }),
            TokKind::LParen => {
                let e = self.expr()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(e)
            }
            TokKind::Ident => {
                let make = |kind: Kind| Expr {
                    kind,
                    span: tok.offset,
                };
                match tok.text.as_str() {
                    "t" => Ok(make(Kind::Var)),
                    "sin" | "cos" | "sinh" | "cosh" | "exp" | "sqrt" => {
                        self.expect(TokKind::LParen, "`(`")?;
                        let arg = self.expr()?;
                        self.expect(TokKind::RParen, "`)`")?;
                        let b = Box::new(arg);
                        Ok(make(match tok.text.as_str() {
                            "sin" => Kind::Sin(b),
                            "cos" => Kind::Cos(b),
                            "sinh" => Kind::Sinh(b),
                            "cosh" => Kind::Cosh(b),
                            "exp" => Kind::Exp(b),
                            _ => Kind::Sqrt(b),
                        }))
                    }
                    name => Err(Error::UnknownIdentifier {
                        offset: tok.offset,
                        name: name.to_string(),
                    }),
                }
            }
            _ => Err(Error::Parse {
                offset: tok.offset,
                message: format!("unexpected `{}`", tok.text),
            }),
        }
    }
}

/// Step size the finite-difference oracle uses by default: scaled to the
/// magnitude of `t`, and widened for higher derivative orders where the
/// rounding term of the stencil dominates sooner.
pub fn fd_default_step(j: usize, t: f64) -> f64 {
    let scale = match j {
        1 | 2 => 1e-4,
        3 => 5e-3,
        _ => 2e-2,
    };
    scale * t.abs().max(1.0)
}

/// Finite-difference j-th derivative (1 ≤ j ≤ 4) with a symmetric stencil
/// and one Richardson refinement; the refined estimate has O(h⁴) truncation
/// error. Entirely based on [`Expr::eval_value`], so it is an oracle
/// independent of the jet arithmetic.
pub fn fd_derivative(e: &Expr, t: f64, j: usize, h: f64) -> Result<f64> {
    if !(1..=4).contains(&j) {
        return Err(Error::InvalidConfig(format!(
            "fd derivative order must be 1..=4, got {j}"
        )));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "fd step must be positive and finite, got {h}"
        )));
    }
    let stencil = |h: f64| -> Result<f64> {
        let f = |x: f64| e.eval_value(x);
        Ok(match j {
            1 => (f(t + h)? - f(t - h)?) / (2.0 * h),
            2 => (f(t + h)? - 2.0 * f(t)? + f(t - h)?) / (h * h),
            3 => {
                (f(t + 2.0 * h)? - 2.0 * f(t + h)? + 2.0 * f(t - h)? - f(t - 2.0 * h)?)
                    / (2.0 * h * h * h)
            }
            _ => {
                (f(t + 2.0 * h)? - 4.0 * f(t + h)? + 6.0 * f(t)? - 4.0 * f(t - h)?
                    + f(t - 2.0 * h)?)
                    / (h * h * h * h)
            }
        })
    };
    let coarse = stencil(h)?;
    let fine = stencil(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
