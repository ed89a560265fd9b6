use thiserror::Error;

/// Errors raised while building alphabets, words and word text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("alphabet rank must be positive")]
    ZeroRank,
    #[error("alphabet rank {0} exceeds the supported maximum")]
    RankTooLarge(usize),
    #[error("display names must be {rank} distinct lowercase ascii letters, got {names:?}")]
    BadNames { rank: usize, names: Vec<char> },
    #[error("generator {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}
