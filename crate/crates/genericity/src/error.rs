use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericityError {
    #[error("ball of radius {radius} has {size} words, over the limit of {limit}")]
    Guard { radius: usize, size: u128, limit: u128 },
    #[error("no translate found within {0} candidates")]
    NotFoundWithinBudget(usize),
    #[error("declared growth bound violated at n = {0}")]
    BoundViolated(u64),
    #[error("membership of a length-{0} word not settled within the search limit")]
    Undecided(usize),
    #[error("at least one sample is needed")]
    NoSamples,
    #[error("need n > 2k, got n = {n}, k = {k}")]
    ShortRadius { n: usize, k: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("csv: {0}")]
    Csv(String),
}
