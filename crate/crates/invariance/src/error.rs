use freegroup::FreeGroupError;
use presentations::PresentationError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvarianceError {
    #[error("support is empty")]
    EmptySupport,
    #[error("weight of {0} is not positive")]
    NonPositiveWeight(String),
    #[error("word {0} appears twice in the support")]
    DuplicateWord(String),
    #[error("partition ground set differs from the support closure")]
    GroundMismatch,
    #[error("n must be at least 1")]
    ZeroN,
    #[error("generator {generator} outside rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Word(#[from] FreeGroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}
