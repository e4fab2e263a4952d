use thiserror::Error;

/// Errors raised by the kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),

    #[error("neither leg of the span/cospan is injective")]
    NoInjectiveLeg,

    #[error("morphism is not injective: {0}")]
    NotInjective(String),

    #[error("cocone does not commute with the span")]
    CoconeDoesNotCommute,

    #[error("square does not commute")]
    NonCommutingSquare,

    #[error("cube face does not commute: {0}")]
    NonCommutingCube(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("typing corner mismatch: {0}")]
    CornerMismatch(String),

    #[error("objects do not agree over the interface")]
    AgreementFailed,

    #[error("condition is not positive: {0}")]
    NotPositive(String),

    #[error("invalid condition: {0}")]
    InvalidCondition(String),

    #[error("condition root is not the initial (empty) graph")]
    RootNotInitial,

    #[error("solution does not fit the condition: {0}")]
    SolutionShapeMismatch(String),

    #[error("solution failed verification: {0}")]
    InvalidSolution(String),

    #[error("restriction failed: {0}")]
    RestrictionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
