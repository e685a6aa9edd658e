use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two trig parts at different frequencies were combined. Internal misuse.
    #[error("frequency mismatch: {0} vs {1}")]
    FrequencyMismatch(f64, f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("t = {t} is outside the horizon [-tau, {end})")]
    OutOfHorizon { t: f64, end: f64 },

    #[error(transparent)]
    Expression(#[from] ExprError),
}

pub type Result<T> = std::result::Result<T, Error>;
