use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a rational number: {0:?}")]
pub struct ParseRationalError(pub String);

/// Errors raised by the co~event calculus itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label sets differ: {left:?} vs {right:?}")]
    LabelMismatch { left: Vec<String>, right: Vec<String> },

    #[error("operands live on different atom spaces")]
    SpaceMismatch,

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("label ids must be non-empty")]
    EmptyLabel,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("a co~event needs at least one label")]
    NoLabels,

    #[error("atom index {index} out of range for a space of {len} atoms")]
    AtomOutOfRange { index: usize, len: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("labelling does not refine the co~event: terrace {terrace} mixes covered and uncovered cells for label {label:?}")]
    NotRefinement { terrace: usize, label: String },

    #[error("conditioning on a co~event of zero certainty is undefined")]
    UndefinedConditional,

    /// The normalizer Σ b·μ vanished, so no posterior exists.
    #[error("posterior is undefined: prior certainty of the match co~event is 0")]
    UndefinedPosterior,

    #[error("prior believability vanishes on every label with positive match probability")]
    EmptySupport,

    #[error("invalid iteration settings: {0}")]
    InvalidSettings(String),
}

impl Error {
    /// Stable variant name, for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LabelMismatch { .. } => "LabelMismatch",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::EmptyLabel => "EmptyLabel",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::NoLabels => "NoLabels",
            Error::AtomOutOfRange { .. } => "AtomOutOfRange",
            Error::InvalidDistribution(_) => "InvalidDistribution",
            Error::NotRefinement { .. } => "NotRefinement",
            Error::UndefinedConditional => "UndefinedConditional",
            Error::UndefinedPosterior => "UndefinedPosterior",
            Error::EmptySupport => "EmptySupport",
            Error::InvalidSettings(_) => "InvalidSettings",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
