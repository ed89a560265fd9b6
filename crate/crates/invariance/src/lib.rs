//! The invariance subroutine: certify that the pushforward of a finitely
//! supported function is `n`-invariant by refining a partition of its
//! support closure with kernel words.

mod error;
mod exact;
mod kappa;
mod partition;
mod support;

pub use error::InvarianceError;
pub use exact::{exact_invariance, invariance_of};
pub use kappa::{kappa_run, m_value, resume, CertificateFile, InvarianceCertificate, KappaOutcome, KappaRun};
pub use partition::{merge_for_kernel_element, BlockPartition, DisjointSet};
pub use support::{support_closure, WeightedSupport};
