use freegroup::Alphabet;
use invariance::InvarianceCertificate;
use presentations::KernelStream;

use crate::error::FolnerError;
use crate::search::{reiter_search, ReiterOutcome, SubsetOrder};

/// One entry of a universal run: an alphabet and a fresh kernel stream.
pub struct Member {
    pub name: String,
    pub alphabet: Alphabet,
    pub kernel: KernelStream,
}

#[derive(Clone, Debug)]
pub enum UniversalOutcome {
    /// `support_bound` bounds the Følner function at `n` from above.
    Accepted {
        certificate: InvarianceCertificate,
        support_bound: usize,
    },
    Pending,
}

/// Runs the Reiter search for every member with the same macro-step budget.
/// Results are in member order.
pub fn universal_run(
    members: Vec<Member>,
    n: u64,
    order: SubsetOrder,
    max_macro_steps: usize,
) -> Result<Vec<(String, UniversalOutcome)>, FolnerError> {
    members
        .into_iter()
        .map(|m| {
            let out = match reiter_search(&m.alphabet, m.kernel, n, order, max_macro_steps)? {
                ReiterOutcome::Accepted { certificate, .. } => UniversalOutcome::Accepted {
                    support_bound: certificate.function.len(),
                    certificate,
                },
                ReiterOutcome::BudgetExhausted { .. } => UniversalOutcome::Pending,
            };
            Ok((m.name, out))
        })
        .collect()
}
