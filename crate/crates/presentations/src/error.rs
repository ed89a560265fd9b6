use freegroup::FreeGroupError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] FreeGroupError),
    #[error("unknown builtin model {0:?}")]
    UnknownModel(String),
    #[error("unknown relator family {0:?}")]
    UnknownFamily(String),
    #[error("invalid presentation file: {0}")]
    File(String),
    #[error("relator {index} uses generator {generator} outside rank {rank}")]
    RelatorOutOfRange { index: usize, generator: usize, rank: usize },
    #[error("invalid rational {0:?}")]
    BadRational(String),
}
