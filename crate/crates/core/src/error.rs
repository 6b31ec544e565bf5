use std::path::PathBuf;

use crate::ring::RingSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A violated clause of a precondition together with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violation: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    AntisymmetryViolation(String, String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("ring mismatch: {0} vs {1}")]
    SpecMismatch(RingSpec, RingSpec),
    #[error("`{0}` is not a unit of {1}")]
    NotAUnit(String, RingSpec),
    #[error("`{0}` is not <= `{1}`")]
    NotComparable(String, String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("map is not invertible over {0}: determinant {1} is not a unit")]
    NotInvertible(RingSpec, String),
    #[error("map is not a Jordan homomorphism ({0} failing identity instances)")]
    NotJordan(usize),
    #[error("{0} is not 2-torsionfree; refusing without an explicit override")]
    TorsionRefused(RingSpec),
    #[error("precondition failed: {}", .0.iter().map(|v| v.clause.as_str()).collect::<Vec<_>>().join("; "))]
    PreconditionFailed(Vec<Violation>),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: Box<Error> },
    /// A failure attributed to one command-line input, e.g. `--ring modular(6)`.
    #[error("{flag} {value}: {source}")]
    Input {
        flag: &'static str,
        value: String,
        source: Box<Error>,
    },
}

impl Error {
    /// The underlying error, looking through file context.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } | Error::Input { source, .. } => source.root(),
            e => e,
        }
    }

    /// Variant name of [`Error::root`], for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::UnknownElement(_) => "UnknownElement",
            Error::AntisymmetryViolation(..) => "AntisymmetryViolation",
            Error::SizeMismatch(..) => "SizeMismatch",
            Error::SpecMismatch(..) => "SpecMismatch",
            Error::NotAUnit(..) => "NotAUnit",
            Error::NotComparable(..) => "NotComparable",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::NotInvertible(..) => "NotInvertible",
            Error::NotJordan(_) => "NotJordan",
            Error::TorsionRefused(_) => "TorsionRefused",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::Invalid(_) => "Invalid",
            Error::Io { .. } => "Io",
            Error::Format { .. } => "Format",
            Error::Json(_) => "Json",
            Error::File { .. } | Error::Input { .. } => unreachable!("root looks through context"),
        }
    }
}
