use thiserror::Error;

/// Errors raised by the inference library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Observed data for which the model is undefined (constant samples,
    /// zero standard deviations, boundary correlations, ...).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// A series or quadrature did not reach the requested accuracy. The best
    /// value obtained is carried along.
    #[error("accuracy error in {what}: tolerance not met (partial value {partial})")]
    Accuracy { what: String, partial: f64 },

    /// A bracketing search could not enclose the requested point.
    #[error("search error: {what} (last bracket [{lo}, {hi}])")]
    Search { what: String, lo: f64, hi: f64 },

    /// The operation is not defined for this kind of model.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Malformed user input (files, inline statistics, configuration).
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateData(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Accuracy { .. } | Error::Search { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
