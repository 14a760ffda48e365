//! Orchestration: input files, the seeded run, the JSON-lines resolution log, replay
//! verification and diagram emission.

pub mod emit;
pub mod input;
pub mod log;
pub mod run;
pub mod verify;

use thiserror::Error;

use crate::belyi::BelyiError;
use crate::projection::ProjectionError;
use crate::ruled::RuledError;
use crate::stabilization::{SncFailure, StabilizationError};
use crate::toric::ToricError;

pub use input::{InputFile, Mode, PipelineConfig};
pub use run::{run, RunOutcome};
pub use verify::{verify, VerifyReport};

/// Exit codes of the command line tool.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Certificate,
    Input,
    Cap,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Certificate => EXIT_CERTIFICATE,
            ErrorClass::Input => EXIT_INPUT,
            ErrorClass::Cap => EXIT_CAP,
        }
    }
}

/// A stage failure with a machine-readable code.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("{stage}: {message}")]
pub struct PipelineError {
    pub stage: &'static str,
    pub code: &'static str,
    pub class: ErrorClass,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: &'static str, code: &'static str, class: ErrorClass, message: impl Into<String>) -> Self {
        PipelineError { stage, code, class, message: message.into() }
    }

    pub fn input(message: impl Into<String>) -> Self {
        PipelineError::new("input", "invalid_input", ErrorClass::Input, message)
    }

    pub fn exit_code(&self) -> i32 {
        self.class.exit_code()
    }

    /// Degree-cap and genericity failures may succeed with another seed.
    pub fn retryable(&self) -> bool {
        matches!(self.code, "degree_cap" | "genericity_failure" | "center_search_failed" | "no_verified_base_point")
    }
}

impl From<RuledError> for PipelineError {
    fn from(e: RuledError) -> Self {
        PipelineError::input(e.to_string())
    }
}

impl From<ProjectionError> for PipelineError {
    fn from(e: ProjectionError) -> Self {
        if let ProjectionError::Input(m) = &e {
            return PipelineError::input(m.clone());
        }
        let (code, class) = match &e {
            ProjectionError::Input(_) => ("invalid_input", ErrorClass::Input),
            ProjectionError::CenterSearchFailed(_) => ("center_search_failed", ErrorClass::Cap),
            ProjectionError::NoVerifiedCenter(_) => ("no_verified_base_point", ErrorClass::Cap),
            ProjectionError::NotSquarefreeInW => ("not_squarefree", ErrorClass::Input),
            ProjectionError::Algebra(_) | ProjectionError::Ruled(_) => ("algebra", ErrorClass::Input),
        };
        PipelineError::new("projection", code, class, e.to_string())
    }
}

impl From<BelyiError> for PipelineError {
    fn from(e: BelyiError) -> Self {
        let (code, class) = match &e {
            BelyiError::DegreeGuard { .. } => ("degree_cap", ErrorClass::Cap),
            BelyiError::GenericityFailure(_) => ("genericity_failure", ErrorClass::Cap),
            BelyiError::NotDistinct(..) => ("not_distinct", ErrorClass::Certificate),
            _ => ("belyi", ErrorClass::Input),
        };
        PipelineError::new("belyi", code, class, e.to_string())
    }
}

impl From<StabilizationError> for PipelineError {
    fn from(e: StabilizationError) -> Self {
        let (code, class) = match &e {
            StabilizationError::ExtensionCap { .. } => ("extension_cap", ErrorClass::Cap),
            StabilizationError::NotDistinct(..) => ("not_distinct", ErrorClass::Certificate),
            StabilizationError::PositionsCollide(..) => ("positions_collide", ErrorClass::Certificate),
            _ => ("stabilization", ErrorClass::Input),
        };
        PipelineError::new("stabilization", code, class, e.to_string())
    }
}

impl From<SncFailure> for PipelineError {
    fn from(e: SncFailure) -> Self {
        PipelineError::new("snc", "snc_failure", ErrorClass::Certificate, e.to_string())
    }
}

impl From<ToricError> for PipelineError {
    fn from(e: ToricError) -> Self {
        let (code, class) = match &e {
            ToricError::Unsupported(_) => ("unsupported_local_model", ErrorClass::Input),
            ToricError::InvalidDatum(_) | ToricError::InvalidType { .. } => ("invalid_branching_datum", ErrorClass::Input),
            ToricError::Certificate(_) | ToricError::Snc(_) => ("certificate_failure", ErrorClass::Certificate),
            ToricError::Algebra(_) | ToricError::Ruled(_) => ("algebra", ErrorClass::Input),
        };
        PipelineError::new("toric", code, class, e.to_string())
    }
}
