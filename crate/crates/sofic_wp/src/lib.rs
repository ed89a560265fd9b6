//! Word-problem decisions from injective Følner preimages: partial
//! injections filled from the kernel, completed to permutations, and a
//! threshold on the normalized Hamming length of the evaluated word.

mod decide;
mod error;
mod perm;
mod sigma;

pub use decide::{
    decide_word, prepare_level, verdict_on, word_level, BoxSupplier, FolnerSupplier, KernelFactory, SoficDecider,
    SoficLevel, Verdict, WpVerdict,
};
pub use error::SoficError;
pub use perm::{complete_to_permutation, evaluate_word, hamming_length, PartialInjection, Permutation};
pub use sigma::{build_partial_injections, sigma_target, symmetrize, SigmaBuild, SymmetricCertificate};
