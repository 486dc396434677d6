use std::fmt;

use vekua_core::disk::DiskError;
use vekua_core::integral::QuadError;
use vekua_core::representations::RepError;
use vekua_core::verify::VerifyError;
use vekua_core::ConicError;

/// A fatal command error, printed as `error[code]: message` on one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
}

impl Failure {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Self::new("schema", message)
    }

    pub fn io(context: &str, e: std::io::Error) -> Self {
        Self::new("io", format!("{context}: {e}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat: String = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "error[{}]: {flat}", self.code)
    }
}

impl From<DiskError> for Failure {
    fn from(e: DiskError) -> Self {
        let code = match &e {
            DiskError::InvalidOrder { .. } => "invalid-order",
            DiskError::GammaCount { .. } => "schema",
            DiskError::MixedProblem => "mixed-problem",
            DiskError::SampleOutsideDisk(_) => "sample-outside-disk",
            DiskError::Quad(_) => "quadrature",
            DiskError::Verify(_) => "stencil",
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ConicError> for Failure {
    fn from(e: ConicError) -> Self {
        let code = match &e {
            ConicError::CircumferenceNotAllowed { .. } => "circumference-not-allowed",
            ConicError::DegenerateConic => "degenerate-conic",
            ConicError::EmptyLocus => "empty-locus",
            ConicError::DegreeCapExceeded { .. } => "degree-cap-exceeded",
            ConicError::NonUnique { .. } => "non-unique",
            ConicError::UnsupportedDomain(_) => "unsupported-domain",
        };
        Failure::new(code, e.to_string())
    }
}

impl From<QuadError> for Failure {
    fn from(e: QuadError) -> Self {
        Failure::new("quadrature", e.to_string())
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::new("representation", e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::new("stencil", e.to_string())
    }
}
