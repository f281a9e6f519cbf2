use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes the
/// library distinguishes: bad inputs, bad configuration, expression problems,
/// numeric domain violations, and geometric degeneracies.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A caller handed in a non-finite number or an otherwise malformed value.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configuration value is out of range or inconsistent.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Expression text failed to parse. `offset` is a 1-based byte position.
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Expression text referenced a name that is not `t` or a known function.
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },

    /// Evaluation hit a numeric domain violation (division by zero, square
    /// root of a negative value, non-finite intermediate). `offset` is the
    /// 1-based byte position of the offending node, 0 for synthetic trees.
    #[error("domain error in `{op}` at offset {offset} (t = {t})")]
    Domain { op: String, offset: usize, t: f64 },

    /// The frame construction degenerates: the pairing ⟨γ⊥, γ′⟩ is zero (or
    /// below the singularity threshold) at this parameter value.
    #[error("singular frame at t = {t}: pairing {d:e} within threshold")]
    SingularFrame { t: f64, d: f64 },

    /// A derived-curve coefficient is undefined at this parameter value
    /// (e.g. a hyperbolic-sine denominator vanishing).
    #[error("derived curve undefined at t = {t}: {message}")]
    KindDomain { t: f64, message: String },

    /// A printed formula divides by a quantity that vanishes here. `symbol`
    /// names the offending denominator.
    #[error("printed denominator `{symbol}` vanishes at t = {t}")]
    DenominatorZero { symbol: String, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
