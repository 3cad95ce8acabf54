use thiserror::Error;

use crate::class::FunctionIndex;
use crate::pr::PrError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Evaluation hit its resource bound. Inconclusive, never a wrong value.
    #[error("evaluation budget exhausted computing f_{index}({n})")]
    BudgetExhausted { index: FunctionIndex, n: u64 },
    #[error("class `{class}` does not declare capability `{capability}`")]
    NotCapable {
        class: String,
        capability: &'static str,
    },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("no non-interior witness: {0}")]
    WitnessNotFound(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Pr(#[from] PrError),
}

impl Error {
    /// True for outcomes caused by resource limits rather than by a
    /// definite answer or a malformed request.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::BudgetExhausted { .. }
                | Error::SearchExhausted(_)
                | Error::Pr(PrError::FuelExhausted)
        )
    }
}
