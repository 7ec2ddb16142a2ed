use thiserror::Error;

/// Errors reported by the numerical kernels and the pipelines built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the supported evaluation box.
    #[error("{what} out of supported range: {detail}")]
    Range { what: &'static str, detail: String },

    /// The kernel's own error estimate exceeded its accuracy contract.
    #[error("loss of precision evaluating {what}: estimated relative error {est_rel_err:e}")]
    LossOfPrecision { what: &'static str, est_rel_err: f64 },

    /// A sign scan could not isolate the requested zero.
    #[error("bracket failure: {0}")]
    BracketFailure(String),

    /// Two zeros share one scan cell; retry with a finer step.
    #[error("scan step {step} too coarse near r = {at}")]
    StepTooCoarse { step: f64, at: f64 },

    /// Exact integer arithmetic would overflow.
    #[error("integer overflow computing {0}")]
    Overflow(String),

    /// Two eigenvalues from different families are numerically indistinguishable.
    #[error("degenerate ordering: {0}")]
    DegenerateOrdering(String),

    /// A certificate inequality does not hold strictly.
    #[error("certificate failure in {module}: {check} (lhs = {lhs:e}, rhs = {rhs:e})")]
    CertificateFailure {
        module: &'static str,
        check: String,
        lhs: f64,
        rhs: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Malformed textual input (orders, boundary conditions, serialized tables).
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }

    /// True for the failures the CLI reports as numerical (exit status 2).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::LossOfPrecision { .. }
                | Error::BracketFailure(_)
                | Error::StepTooCoarse { .. }
                | Error::DegenerateOrdering(_)
                | Error::CertificateFailure { .. }
                | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
