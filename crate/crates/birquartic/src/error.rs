use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("insufficient multiplicity data: {0} is unknown")]
    UnknownMultiplicity(String),

    #[error("degree would become non-positive ({0})")]
    NonPositiveDegree(String),

    #[error("word is not supported on a single cluster: {0}")]
    MixedClusterWord(String),

    #[error("not a simply-laced (-2) configuration: {0}")]
    NotSimplyLaced(String),

    #[error("invalid lattice data: {0}")]
    InvalidLattice(String),

    #[error("unknown corollary case label `{0}`")]
    UnknownCaseLabel(String),

    #[error("point is not on the hypersurface")]
    PointNotOnHypersurface,

    #[error("point is not a node")]
    NotANode,

    #[error("line is not contained in the hypersurface")]
    LineNotOnHypersurface,

    #[error("plane does not contain the line")]
    PlaneMissesLine,

    #[error("hyperplane does not contain the line")]
    HyperplaneMissesLine,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("singular cubic: {0}")]
    SingularCubic(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            // Descent obstacles have a dedicated code; everything else is a
            // parse/validation failure from the CLI's point of view.
            Error::UnknownMultiplicity(_) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
