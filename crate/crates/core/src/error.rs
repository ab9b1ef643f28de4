use thiserror::Error;

/// Every failure the library can report.
///
/// The variant name doubles as the structured error name printed by the CLI,
/// see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("spec file not found: {0}")]
    SpecNotFound(String),
    #[error("malformed spec document: {0}")]
    SpecParse(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphism is not prolongable on the seed: {0}")]
    NotProlongable(String),
    #[error("block starting at position {start} exceeds the block-length horizon {horizon}")]
    InfiniteBlock { start: usize, horizon: usize },
    #[error("horizon exceeded: {0}")]
    HorizonExceeded(String),
    #[error("degenerate pattern: {0}")]
    PatternDegenerate(String),
    #[error("precision exhausted after {iterations} iterations")]
    PrecisionExhausted { iterations: usize },
    #[error("matrix is not primitive")]
    NonPrimitive,
    #[error("dominant eigenvalue is not certified to exceed 1")]
    LambdaNotGreaterThanOne,
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("not a Perron matrix: {0}")]
    NotPerron(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::SpecNotFound(_) => "SpecNotFound",
            Error::SpecParse(_) => "SpecParse",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::InvalidMorphism(_) => "InvalidMorphism",
            Error::NotProlongable(_) => "NotProlongable",
            Error::InfiniteBlock { .. } => "InfiniteBlock",
            Error::HorizonExceeded(_) => "HorizonExceeded",
            Error::PatternDegenerate(_) => "PatternDegenerate",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::NonPrimitive => "NonPrimitive",
            Error::LambdaNotGreaterThanOne => "LambdaNotGreaterThanOne",
            Error::DegenerateDenominator(_) => "DegenerateDenominator",
            Error::NotPerron(_) => "NotPerron",
            Error::InvalidParams(_) => "InvalidParams",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
