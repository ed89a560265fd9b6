use std::collections::{BTreeMap, HashSet};

use freegroup::{Alphabet, FiniteSubsets, FiniteWordSet, Word};
use invariance::{InvarianceCertificate, KappaRun, WeightedSupport};
use presentations::{pushforward, Element, GroupModel, KernelStream};

use crate::certificate::{images, ratios_of, within, FolnerCertificate, Witness};
use crate::error::FolnerError;

/// The order in which candidate supports are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetOrder {
    /// The staged enumeration of all finite subsets.
    Staged,
    /// Power boxes `{x1^a1 … xd^ad : 0 ≤ ai < r}`, `r = 1, 2, …`, spread
    /// through the staged enumeration, without repeats.
    Boxed,
}

impl SubsetOrder {
    pub fn parse(s: &str) -> Option<SubsetOrder> {
        match s {
            "staged" => Some(SubsetOrder::Staged),
            "boxed" => Some(SubsetOrder::Boxed),
            _ => None,
        }
    }
}

/// `{x1^a1 … xd^ad : 0 ≤ ai < r}`.
pub fn power_box(rank: usize, r: i64) -> FiniteWordSet {
    let mut out = FiniteWordSet::new();
    let mut exps = vec![0i64; rank];
    loop {
        let w = exps
            .iter()
            .enumerate()
            .fold(Word::empty(), |acc, (g, &e)| acc.mul(&Word::power(g, e)));
        out.insert(w);
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            exps[i] += 1;
            if exps[i] < r {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

pub fn candidates(alphabet: &Alphabet, order: SubsetOrder) -> Box<dyn Iterator<Item = FiniteWordSet> + Send> {
    match order {
        SubsetOrder::Staged => Box::new(FiniteSubsets::new(alphabet)),
        SubsetOrder::Boxed => Box::new(BoxedCandidates {
            rank: alphabet.rank(),
            r: 1,
            emitted: 0,
            staged: FiniteSubsets::new(alphabet),
            seen: HashSet::new(),
        }),
    }
}

/// `P_r` sits at position `max(r^d, 2r - 1)`, so the boxes hold about as
/// many words as the staged sets around them count.
struct BoxedCandidates {
    rank: usize,
    r: i64,
    emitted: u64,
    staged: FiniteSubsets,
    seen: HashSet<FiniteWordSet>,
}

impl BoxedCandidates {
    fn box_position(&self) -> u64 {
        let r = self.r as u64;
        r.checked_pow(self.rank as u32).unwrap_or(u64::MAX).max(2 * r - 1)
    }
}

impl Iterator for BoxedCandidates {
    type Item = FiniteWordSet;

    fn next(&mut self) -> Option<FiniteWordSet> {
        loop {
            let s = if self.emitted + 1 >= self.box_position() {
                self.r += 1;
                power_box(self.rank, self.r - 1)
            } else {
                self.staged.next()?
            };
            if self.seen.insert(s.clone()) {
                self.emitted += 1;
                return Some(s);
            }
        }
    }
}

/// A kernel stream read by many runs, each from its own start.
pub struct SharedKernel {
    stream: KernelStream,
    buf: Vec<Word>,
    done: bool,
}

impl SharedKernel {
    pub fn new(stream: KernelStream) -> SharedKernel {
        SharedKernel {
            stream,
            buf: Vec::new(),
            done: false,
        }
    }

    pub fn get(&mut self, i: usize) -> Option<&Word> {
        while self.buf.len() <= i && !self.done {
            match self.stream.next() {
                Some(w) => self.buf.push(w),
                None => self.done = true,
            }
        }
        self.buf.get(i)
    }

    /// Number of elements drawn from the underlying stream so far.
    pub fn drawn(&self) -> usize {
        self.buf.len()
    }
}

#[derive(Clone, Debug)]
pub enum ReiterOutcome {
    Accepted {
        certificate: InvarianceCertificate,
        /// 1-based position of the accepted support among the candidates.
        candidate: usize,
        /// Macro-step of the triangular schedule at which it was accepted.
        macro_step: usize,
    },
    BudgetExhausted {
        macro_steps: usize,
    },
}

impl ReiterOutcome {
    pub fn certificate(&self) -> Option<&InvarianceCertificate> {
        match self {
            ReiterOutcome::Accepted { certificate, .. } => Some(certificate),
            ReiterOutcome::BudgetExhausted { .. } => None,
        }
    }
}

/// Dovetails the invariance subroutine over the indicator functions of the
/// candidate supports.
///
/// The schedule is triangular: macro-step `t` starts run `t` (which may
/// accept on its initial evaluation) and then feeds one kernel element to
/// each of runs `1..=t` in order. The first acceptance wins. The schedule is
/// simulated up to a horizon that doubles until some run has accepted within
/// it; every run inside the horizon is then exactly as far as the schedule
/// would have taken it, so the winner is the same.
pub fn reiter_search(
    alphabet: &Alphabet,
    kernel: KernelStream,
    n: u64,
    order: SubsetOrder,
    max_macro_steps: usize,
) -> Result<ReiterOutcome, FolnerError> {
    if n == 0 {
        return Err(FolnerError::ZeroN);
    }
    let mut shared = SharedKernel::new(kernel);
    let mut sets = candidates(alphabet, order);
    let mut runs: Vec<KappaRun> = Vec::new();
    // (macro step, position within the step) of each accepted run
    let mut keys: Vec<Option<(usize, usize)>> = Vec::new();
    let mut horizon = 1;
    loop {
        horizon = horizon.min(max_macro_steps);
        while runs.len() < horizon {
            let i = runs.len() + 1;
            let set = sets.next().expect("candidate stream is infinite");
            let run = KappaRun::new(WeightedSupport::characteristic(&set)?, alphabet, n)?;
            keys.push(run.accepted().then_some((i, 0)));
            runs.push(run);
        }
        for (idx, run) in runs.iter_mut().enumerate() {
            let i = idx + 1;
            while keys[idx].is_none() && run.consumed() < horizon - i + 1 {
                let Some(eta) = shared.get(run.consumed()) else { break };
                run.step(eta);
                if run.accepted() {
                    keys[idx] = Some((i + run.consumed() - 1, i));
                }
            }
        }
        let best = keys
            .iter()
            .enumerate()
            .filter_map(|(idx, k)| k.map(|k| (k, idx)))
            .min();
        if let Some(((t, _), idx)) = best {
            return Ok(ReiterOutcome::Accepted {
                certificate: runs[idx].certificate(),
                candidate: idx + 1,
                macro_step: t,
            });
        }
        if horizon >= max_macro_steps {
            return Ok(ReiterOutcome::BudgetExhausted {
                macro_steps: max_macro_steps,
            });
        }
        horizon *= 2;
    }
}

/// Layer-cake extraction: the first level set `{h ≥ v}` of the pushforward,
/// scanning the values `v` of `h` in descending order, that is `n`-Følner.
/// One preimage word per element is kept.
pub fn folner_from_reiter(cert: &InvarianceCertificate, model: &dyn GroupModel) -> Result<FolnerCertificate, FolnerError> {
    let classes = pushforward(cert.function.iter(), model);
    let mut levels: BTreeMap<&presentations::Q, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        levels.entry(&c.mass).or_default().push(i);
    }
    let mut omega: HashSet<Element> = HashSet::new();
    let mut words = FiniteWordSet::new();
    for (_, idx) in levels.iter().rev() {
        for &i in idx {
            omega.insert(classes[i].element.clone());
            words.insert(classes[i].words[0].clone());
        }
        let r = ratios_of(&omega, model);
        if within(&r, cert.n) {
            return Ok(FolnerCertificate {
                words,
                n: cert.n,
                injective: true,
                witness: Witness::Ratios(r),
            });
        }
    }
    Err(FolnerError::NoLevelSet(cert.n))
}

/// The first candidate mapping injectively onto an `n`-Følner set.
pub fn injective_folner_search(
    model: &dyn GroupModel,
    n: u64,
    order: SubsetOrder,
    max_candidates: usize,
) -> Result<FolnerCertificate, FolnerError> {
    if n == 0 {
        return Err(FolnerError::ZeroN);
    }
    for set in candidates(model.alphabet(), order).take(max_candidates) {
        let (omega, injective) = images(&set, model);
        if !injective {
            continue;
        }
        let r = ratios_of(&omega, model);
        if within(&r, n) {
            return Ok(FolnerCertificate {
                words: set,
                n,
                injective: true,
                witness: Witness::Ratios(r),
            });
        }
    }
    Err(FolnerError::BudgetExhausted(max_candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::ratio::{q, qi};
    use presentations::{builtin_model, enumerate_kernel, Presentation};

    fn fmt(a: &Alphabet, s: &FiniteWordSet) -> Vec<String> {
        s.iter().map(|w| a.format_word(w)).collect()
    }

    #[test]
    fn boxes() {
        let a = Alphabet::with_names(&['x', 'y']).unwrap();
        assert_eq!(fmt(&a, &power_box(2, 2)), ["", "x", "y", "xy"]);
        assert_eq!(power_box(3, 3).len(), 27);
        let sizes: Vec<usize> = candidates(&a, SubsetOrder::Boxed).take(9).map(|s| s.len()).collect();
        assert_eq!((sizes[0], sizes[3], sizes[8]), (1, 4, 9));
        assert!(sizes.iter().enumerate().all(|(i, &k)| [0, 3, 8].contains(&i) || k < 4));
        let one = Alphabet::new(1).unwrap();
        let sizes: Vec<usize> = candidates(&one, SubsetOrder::Boxed).take(5).map(|s| s.len()).collect();
        assert_eq!((sizes[0], sizes[2], sizes[4]), (1, 2, 3));
    }

    #[test]
    fn free_rank_one_segments() {
        let a = Alphabet::with_names(&['x']).unwrap();
        let free = Presentation::free(a.clone());
        let run = |n| reiter_search(&a, Box::new(enumerate_kernel(&free)), n, SubsetOrder::Staged, 100_000).unwrap();
        let three = run(3);
        let c = three.certificate().unwrap();
        assert_eq!(fmt(&a, &c.function.support()), ["", "x", "X", "xx", "XX", "xxx"]);
        assert_eq!(c.m_values, vec![q(1, 3)]);
        let one = run(1);
        let c = one.certificate().unwrap();
        assert_eq!(fmt(&a, &c.function.support()), ["", "x"]);
        assert_eq!(c.m_values, vec![qi(1)]);
    }

    #[test]
    fn layer_cake_on_z() {
        let m = builtin_model("Z").unwrap();
        let f = WeightedSupport::new([(Word::empty(), qi(2)), (Word::power(0, 1), qi(1))]).unwrap();
        let mut run = KappaRun::new(f, m.alphabet(), 1).unwrap();
        let c = folner_from_reiter(&run.certificate(), m.as_ref()).unwrap();
        assert_eq!(fmt(m.alphabet(), &c.words), [""]);
        assert_eq!(c.witness, Witness::Ratios(vec![qi(1)]));
    }

    #[test]
    fn injective_search_on_z_and_z2() {
        let z = builtin_model("Z").unwrap();
        let c = injective_folner_search(z.as_ref(), 3, SubsetOrder::Staged, 10_000).unwrap();
        assert_eq!(fmt(z.alphabet(), &c.words), ["", "x", "X"]);
        let z2 = builtin_model("Z2").unwrap();
        let c = injective_folner_search(z2.as_ref(), 2, SubsetOrder::Staged, 1_000_000).unwrap();
        assert!(c.len() >= 4);
        c.validate(z2.as_ref()).unwrap();
        let c6 = builtin_model("C6").unwrap();
        let c = injective_folner_search(c6.as_ref(), 50, SubsetOrder::Staged, 1_000_000).unwrap();
        assert_eq!(c.len(), 6);
    }
}
