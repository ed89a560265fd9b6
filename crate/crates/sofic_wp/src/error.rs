use folner::FolnerError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SoficError {
    #[error("certificate is not injective")]
    NotInjective,
    #[error("empty certificate")]
    EmptyCertificate,
    #[error("letter {code} has no permutation among {count}")]
    LetterOutOfRange { code: u16, count: usize },
    #[error("pairs ({i}, {j}) and an earlier pair share a coordinate")]
    Conflict { i: usize, j: usize },
    #[error("kernel stream ended or budget hit after {consumed} elements")]
    KernelExhausted { consumed: usize },
    #[error("hamming value {value} of {word} lies strictly between 1/{n} and 1 - 1/{n}")]
    GapViolation { word: String, value: String, n: u64 },
    #[error("supplier returned a level-{got} certificate for level {want}")]
    WrongLevel { got: u64, want: u64 },
    #[error(transparent)]
    Supplier(#[from] FolnerError),
}
