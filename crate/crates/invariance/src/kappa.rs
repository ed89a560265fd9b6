use freegroup::{Alphabet, Letter, Word};
use num_traits::{Signed, Zero};
use presentations::ratio::{self, Q};
use serde::{Deserialize, Serialize};

use crate::error::InvarianceError;
use crate::partition::BlockPartition;
use crate::support::{support_closure, WeightedSupport};

/// `f(ν) - f(x^-1 ν)` for every ground word `ν`.
fn differences(f: &WeightedSupport, partition: &BlockPartition, generator: usize) -> Vec<Q> {
    let xi = Word::letter(Letter::neg(generator));
    partition
        .ground()
        .words()
        .iter()
        .map(|v| f.value(v) - f.value(&xi.mul(v)))
        .collect()
}

fn check_ground(f: &WeightedSupport, alphabet: &Alphabet, partition: &BlockPartition) -> Result<(), InvarianceError> {
    let closure = support_closure(f, alphabet);
    if closure.len() != partition.len() || closure.iter().any(|w| !partition.ground().contains(w)) {
        return Err(InvarianceError::GroundMismatch);
    }
    Ok(())
}

/// `Σ_V |Σ_{ν∈V} f(ν) - f(x^-1 ν)|  /  Σ f`, computed from scratch.
pub fn m_value(
    f: &WeightedSupport,
    alphabet: &Alphabet,
    partition: &mut BlockPartition,
    generator: usize,
) -> Result<Q, InvarianceError> {
    if generator >= alphabet.rank() {
        return Err(InvarianceError::GeneratorOutOfRange {
            generator,
            rank: alphabet.rank(),
        });
    }
    check_ground(f, alphabet, partition)?;
    let diff = differences(f, partition, generator);
    let mut sums = vec![Q::zero(); diff.len()];
    for (i, d) in diff.into_iter().enumerate() {
        let r = partition.find(i);
        sums[r] += d;
    }
    let num: Q = sums.iter().map(Q::abs).sum();
    Ok(num / f.mass())
}

/// Evidence that the pushforward of `function` is `n`-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCertificate {
    pub function: WeightedSupport,
    pub n: u64,
    pub m_values: Vec<Q>,
    pub kernel_consumed: usize,
    pub blocks: Vec<Vec<Word>>,
}

/// On-disk form of an [`InvarianceCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub support: Vec<String>,
    pub weights: Vec<String>,
    pub n: u64,
    pub m_values: Vec<String>,
    pub kernel_consumed: usize,
    pub blocks: Vec<Vec<String>>,
}

impl InvarianceCertificate {
    pub fn to_file(&self, alphabet: &Alphabet) -> CertificateFile {
        let fmt = |w: &Word| alphabet.format_word(w);
        CertificateFile {
            support: self.function.iter().map(|(w, _)| fmt(w)).collect(),
            weights: self.function.iter().map(|(_, q)| ratio::to_string(q)).collect(),
            n: self.n,
            m_values: self.m_values.iter().map(ratio::to_string).collect(),
            kernel_consumed: self.kernel_consumed,
            blocks: self.blocks.iter().map(|b| b.iter().map(fmt).collect()).collect(),
        }
    }

    pub fn from_file(file: &CertificateFile, alphabet: &Alphabet) -> Result<InvarianceCertificate, InvarianceError> {
        if file.support.len() != file.weights.len() {
            return Err(InvarianceError::Certificate("support and weights differ in length".into()));
        }
        let mut entries = Vec::new();
        for (w, q) in file.support.iter().zip(&file.weights) {
            entries.push((alphabet.parse_word(w)?, ratio::parse(q)?));
        }
        let blocks = file
            .blocks
            .iter()
            .map(|b| b.iter().map(|w| alphabet.parse_word(w)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InvarianceCertificate {
            function: WeightedSupport::new(entries)?,
            n: file.n,
            m_values: file.m_values.iter().map(|q| ratio::parse(q)).collect::<Result<_, _>>()?,
            kernel_consumed: file.kernel_consumed,
            blocks,
        })
    }

    /// Recomputes the M-values from the stored blocks and checks them against
    /// the stored values and the bound `1/n`.
    pub fn check(&self, alphabet: &Alphabet) -> Result<(), InvarianceError> {
        let bad = |m: &str| Err(InvarianceError::Certificate(m.to_string()));
        if self.n == 0 {
            return Err(InvarianceError::ZeroN);
        }
        let ground = support_closure(&self.function, alphabet);
        let mut partition = BlockPartition::finest(&ground);
        let mut count = 0;
        for b in &self.blocks {
            count += b.len();
            let Some(first) = b.first().and_then(|w| partition.ground().position(w)) else {
                return bad("block outside the ground set");
            };
            for w in &b[1..] {
                let Some(j) = partition.ground().position(w) else {
                    return bad("block outside the ground set");
                };
                partition.union(first, j);
            }
        }
        if count != ground.len() || partition.block_count() != self.blocks.len() {
            return bad("blocks do not partition the ground set");
        }
        if self.m_values.len() != alphabet.rank() {
            return bad("one M-value per generator expected");
        }
        let bound = Q::new(1.into(), self.n.into());
        for g in 0..alphabet.rank() {
            let m = m_value(&self.function, alphabet, &mut partition, g)?;
            if m != self.m_values[g] {
                return bad("stored M-value does not match its blocks");
            }
            if m > bound {
                return bad("M-value exceeds 1/n");
            }
        }
        Ok(())
    }
}

/// A resumable run of the invariance subroutine on one function.
///
/// Block sums are kept per generator, so every union updates the M-values in
/// constant time and they are always current.
#[derive(Clone, Debug)]
pub struct KappaRun {
    alphabet: Alphabet,
    function: WeightedSupport,
    n: u64,
    mass: Q,
    partition: BlockPartition,
    sums: Vec<Vec<Q>>,
    num: Vec<Q>,
    consumed: usize,
}

impl KappaRun {
    pub fn new(f: WeightedSupport, alphabet: &Alphabet, n: u64) -> Result<KappaRun, InvarianceError> {
        if n == 0 {
            return Err(InvarianceError::ZeroN);
        }
        f.check(alphabet)?;
        let partition = BlockPartition::finest(&support_closure(&f, alphabet));
        let sums: Vec<Vec<Q>> = (0..alphabet.rank()).map(|g| differences(&f, &partition, g)).collect();
        let num = sums.iter().map(|s| s.iter().map(Q::abs).sum()).collect();
        Ok(KappaRun {
            alphabet: alphabet.clone(),
            mass: f.mass(),
            function: f,
            n,
            partition,
            sums,
            num,
            consumed: 0,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn function(&self) -> &WeightedSupport {
        &self.function
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn m_values(&self) -> Vec<Q> {
        self.num.iter().map(|x| x / &self.mass).collect()
    }

    /// Whether `M ≤ 1/n` for every generator.
    pub fn accepted(&self) -> bool {
        let n = Q::from_integer(self.n.into());
        self.num.iter().all(|x| x * &n <= self.mass)
    }

    /// Consumes one kernel element; returns the number of unions it caused.
    pub fn step(&mut self, eta: &Word) -> usize {
        self.consumed += 1;
        let mut merges = 0;
        for (s, t) in self.partition.witnessed_pairs(eta) {
            if let Some((keep, gone)) = self.partition.union(s, t) {
                merges += 1;
                for (sum, num) in self.sums.iter_mut().zip(&mut self.num) {
                    let joined = &sum[keep] + &sum[gone];
                    *num -= sum[keep].abs() + sum[gone].abs();
                    *num += joined.abs();
                    sum[keep] = joined;
                }
            }
        }
        merges
    }

    /// Feeds up to `budget` kernel elements, stopping at acceptance or when
    /// the stream ends. Returns whether the run is accepted.
    pub fn advance<I: Iterator<Item = Word> + ?Sized>(&mut self, kernel: &mut I, budget: usize) -> bool {
        let mut used = 0;
        while !self.accepted() && used < budget {
            let Some(eta) = kernel.next() else { break };
            self.step(&eta);
            used += 1;
        }
        self.accepted()
    }

    pub fn certificate(&mut self) -> InvarianceCertificate {
        InvarianceCertificate {
            function: self.function.clone(),
            n: self.n,
            m_values: self.m_values(),
            kernel_consumed: self.consumed,
            blocks: self.partition.blocks(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

#[derive(Clone, Debug)]
pub enum KappaOutcome {
    Accepted(InvarianceCertificate),
    /// Not certified yet; the run can be resumed with more kernel elements.
    BudgetExhausted(Box<KappaRun>),
}

impl KappaOutcome {
    pub fn certificate(&self) -> Option<&InvarianceCertificate> {
        match self {
            KappaOutcome::Accepted(c) => Some(c),
            KappaOutcome::BudgetExhausted(_) => None,
        }
    }
}

/// Runs the subroutine on `f` at level `n` with at most `budget` kernel
/// elements.
pub fn kappa_run<I: Iterator<Item = Word> + ?Sized>(
    f: &WeightedSupport,
    alphabet: &Alphabet,
    n: u64,
    kernel: &mut I,
    budget: usize,
) -> Result<KappaOutcome, InvarianceError> {
    let run = KappaRun::new(f.clone(), alphabet, n)?;
    Ok(resume(run, kernel, budget))
}

pub fn resume<I: Iterator<Item = Word> + ?Sized>(mut run: KappaRun, kernel: &mut I, budget: usize) -> KappaOutcome {
    if run.advance(kernel, budget) {
        KappaOutcome::Accepted(run.certificate())
    } else {
        KappaOutcome::BudgetExhausted(Box::new(run))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::merge_for_kernel_element;
    use presentations::ratio::{q, qi};
    use presentations::{builtin_model, enumerate_kernel};
    use proptest::prelude::*;

    fn segment(k: i64) -> WeightedSupport {
        WeightedSupport::characteristic(&(0..k).map(|i| Word::power(0, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn segment_of_four_has_m_one_half() {
        let a = Alphabet::new(1).unwrap();
        let f = segment(4);
        let mut p = BlockPartition::finest(&support_closure(&f, &a));
        assert_eq!(m_value(&f, &a, &mut p, 0).unwrap(), q(1, 2));
        assert!(m_value(&f, &a, &mut p, 1).is_err());
        let mut wrong = BlockPartition::finest(&f.support());
        assert_eq!(m_value(&f, &a, &mut wrong, 0), Err(InvarianceError::GroundMismatch));
    }

    #[test]
    fn free_rank_one_accepts_at_once() {
        let a = Alphabet::new(1).unwrap();
        let free = presentations::Presentation::free(a.clone());
        for n in 1..=5u64 {
            let f = segment(2 * n as i64);
            let out = kappa_run(&f, &a, n, &mut enumerate_kernel(&free), 0).unwrap();
            let c = out.certificate().expect("accepted");
            assert_eq!(c.m_values, vec![q(1, n as i64)]);
            assert_eq!(c.kernel_consumed, 0);
        }
    }

    #[test]
    fn point_mass_never_accepts() {
        let m = builtin_model("Z2").unwrap();
        let f = WeightedSupport::characteristic(&[Word::empty()]).unwrap();
        let out = kappa_run(&f, m.alphabet(), 1, &mut enumerate_kernel(m.presentation()), 500).unwrap();
        let KappaOutcome::BudgetExhausted(run) = out else { panic!("accepted a point mass") };
        assert_eq!(run.m_values(), vec![qi(2), qi(2)]);
        assert_eq!(run.consumed(), 500);
    }

    #[test]
    fn certificate_round_trip() {
        let a = Alphabet::new(1).unwrap();
        let mut run = KappaRun::new(segment(6), &a, 3).unwrap();
        assert!(run.accepted());
        let c = run.certificate();
        c.check(&a).unwrap();
        let file = c.to_file(&a);
        assert_eq!(file.m_values, ["1/3"]);
        let text = serde_json::to_string(&file).unwrap();
        let back: CertificateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(InvarianceCertificate::from_file(&back, &a).unwrap(), c);
        let mut tampered = c.clone();
        tampered.m_values[0] = q(1, 4);
        assert!(tampered.check(&a).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn incremental_values_match_and_never_increase(
            raw in prop::collection::btree_map(prop::collection::vec(0u16..4, 0..5), 1i64..5, 1..12),
            kernel_skip in 0usize..40,
        ) {
            let m = builtin_model("Z2").unwrap();
            let a = m.alphabet().clone();
            let f = WeightedSupport::new(raw.into_iter().map(|(v, w)| {
                (Word::reduce(v.into_iter().map(Letter::from_code)), qi(w))
            }).collect::<std::collections::BTreeMap<_, _>>()).unwrap();
            let mut run = KappaRun::new(f.clone(), &a, 1).unwrap();
            let mut shadow = run.partition().clone();
            let mut prev = run.m_values();
            for eta in enumerate_kernel(m.presentation()).skip(kernel_skip).take(60) {
                run.step(&eta);
                merge_for_kernel_element(&mut shadow, &eta);
                let now = run.m_values();
                for g in 0..2 {
                    prop_assert!(now[g] <= prev[g]);
                    prop_assert_eq!(&now[g], &m_value(&f, &a, &mut shadow, g).unwrap());
                }
                prev = now;
            }
        }
    }
}
