use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input coefficient or coordinate was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// Leading cubic coefficient is zero.
    #[error("degenerate cubic: leading coefficient a must be nonzero")]
    DegenerateLeading,

    /// A parameter lies outside the operator's domain (e.g. alpha <= 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input violates a strict inequality the closed form requires.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A closed-form result failed its own postcondition.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// A bracket did not enclose a sign change.
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
