use freegroup::FreeGroupError;
use invariance::InvarianceError;
use presentations::PresentationError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FolnerError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("search would scan more than {limit} subsets")]
    Guard { limit: u64 },
    #[error("budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("no level set of the pushforward is {0}-Følner")]
    NoLevelSet(u64),
    #[error("no box family for model {0}")]
    NoBoxes(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Invariance(#[from] InvarianceError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] FreeGroupError),
}
