use invariance::InvarianceError;
use sofic_wp::SoficError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("no family certified at invariance level {level} within {rounds} rounds")]
    Undecided { level: u64, rounds: usize },
    #[error("the family stream ended")]
    NoFamilies,
    #[error(transparent)]
    Sofic(#[from] SoficError),
    #[error(transparent)]
    Invariance(#[from] InvarianceError),
}
