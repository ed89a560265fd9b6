use std::collections::HashMap;

use folner::{FolnerCertificate, FolnerError, Witness};
use freegroup::{Alphabet, FiniteWordSet, Letter, Word};
use invariance::{KappaRun, WeightedSupport};
use presentations::ratio;
use presentations::{Interleave, KernelStream, Presentation, StagedKernel};
use serde::{Deserialize, Serialize};
use sofic_wp::{prepare_level, verdict_on, word_level, FolnerSupplier, SoficError, SoficLevel, SymmetricCertificate, Verdict, WpVerdict};

use crate::error::PipelineError;
use crate::families::{enumerate_injective_families, EpRelations, InjectiveFamilies};
use crate::oracle::{EpOracle, QueryStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Dovetail rounds per invariance level; one new family per round.
    pub max_rounds: usize,
    /// Kernel elements allowed when filling the partial injections.
    pub sigma_budget: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            max_rounds: 40,
            sigma_budget: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub index: usize,
    pub size: usize,
    pub first: String,
    pub last: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub invariance_level: u64,
    pub folner_level: u64,
    pub family: usize,
    pub family_size: usize,
    pub round: usize,
    pub kernel_consumed: usize,
    pub m_values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoficRecord {
    pub n: u64,
    pub k: usize,
    pub kernel_consumed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PipelineVerdict {
    Decided(WpVerdict),
    Undecided { word: String, reason: String },
}

impl PipelineVerdict {
    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            PipelineVerdict::Decided(v) => Some(v.verdict),
            PipelineVerdict::Undecided { .. } => None,
        }
    }
}

/// Replayable record of a pipeline run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub model: String,
    pub domain: String,
    pub config: PipelineConfig,
    pub queries: QueryStats,
    pub candidates_tried: usize,
    pub families: Vec<FamilyRecord>,
    pub certificates: Vec<LevelRecord>,
    pub sofic_levels: Vec<SoficRecord>,
    pub verdicts: Vec<PipelineVerdict>,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts serialize")
    }
}

/// A certified family: injective, with a characteristic function accepted by
/// the invariance subroutine.
#[derive(Clone, Debug)]
pub struct CertifiedFamily {
    pub family: usize,
    pub certificate: FolnerCertificate,
}

/// The Følner side of the pipeline; also the supplier handed to the sofic
/// decider.
struct Core {
    oracle: EpOracle,
    presentation: Presentation,
    config: PipelineConfig,
    families: InjectiveFamilies,
    emitted: Vec<FiniteWordSet>,
    certified: HashMap<u64, CertifiedFamily>,
    records: Vec<LevelRecord>,
}

struct FamilyRun {
    run: KappaRun,
    kernel: KernelStream,
    stalled: bool,
}

impl Core {
    fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    fn family(&mut self, i: usize) -> Result<&FiniteWordSet, PipelineError> {
        while self.emitted.len() <= i {
            let f = self.families.next().ok_or(PipelineError::NoFamilies)?;
            self.emitted.push(f);
        }
        Ok(&self.emitted[i])
    }

    fn kernel_for(&self, words: &[Word], letters: &[Letter]) -> KernelStream {
        let rank = self.alphabet().rank();
        let ep = EpRelations::new(self.oracle.clone(), words, letters, rank);
        Box::new(Interleave::new(vec![
            Box::new(ep),
            Box::new(StagedKernel::new(&self.presentation)),
        ]))
    }

    fn start(&mut self, i: usize, level: u64) -> Result<FamilyRun, PipelineError> {
        let words = self.family(i)?.to_vec();
        let alphabet = self.alphabet().clone();
        let run = KappaRun::new(WeightedSupport::characteristic(&words)?, &alphabet, level)?;
        let positive: Vec<Letter> = (0..alphabet.rank()).map(Letter::pos).collect();
        Ok(FamilyRun {
            run,
            kernel: self.kernel_for(&words, &positive),
            stalled: false,
        })
    }

    /// Size-weighted triangular dovetail over the injective families: round
    /// `r` starts family `r`, then lifts run `i ≤ r` to
    /// `(r - i + 1)·|ground_i|` kernel elements, in order of `i`. The first
    /// acceptance wins.
    fn certify(&mut self, level: u64) -> Result<CertifiedFamily, PipelineError> {
        if let Some(c) = self.certified.get(&level) {
            return Ok(c.clone());
        }
        let mut runs: Vec<FamilyRun> = Vec::new();
        for round in 0..self.config.max_rounds {
            let fresh = self.start(round, level)?;
            runs.push(fresh);
            for (i, r) in runs.iter_mut().enumerate() {
                let cap = (round - i + 1) * r.run.partition().len();
                if !r.stalled {
                    let want = cap.saturating_sub(r.run.consumed());
                    let before = r.run.consumed();
                    let accepted = r.run.advance(&mut r.kernel, want);
                    if !accepted && r.run.consumed() - before < want {
                        r.stalled = true;
                    }
                }
                if r.run.accepted() {
                    let inv = r.run.certificate();
                    let words = self.emitted[i].clone();
                    self.records.push(LevelRecord {
                        invariance_level: level,
                        folner_level: 2 * level,
                        family: i,
                        family_size: words.len(),
                        round,
                        kernel_consumed: inv.kernel_consumed,
                        m_values: inv.m_values.iter().map(ratio::to_string).collect(),
                    });
                    let certified = CertifiedFamily {
                        family: i,
                        certificate: FolnerCertificate {
                            words,
                            n: 2 * level,
                            injective: true,
                            witness: Witness::Reiter(Box::new(inv)),
                        },
                    };
                    self.certified.insert(level, certified.clone());
                    return Ok(certified);
                }
            }
        }
        Err(PipelineError::Undecided {
            level,
            rounds: self.config.max_rounds,
        })
    }
}

impl FolnerSupplier for Core {
    fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }

    /// A characteristic function accepted at invariance level `n` is an
    /// injective `2n`-Følner set, which covers level `n`.
    fn certificate(&mut self, n: u64) -> Result<FolnerCertificate, SoficError> {
        match self.certify(n) {
            Ok(c) => Ok(c.certificate),
            Err(PipelineError::Sofic(e)) => Err(e),
            Err(PipelineError::Undecided { rounds, .. }) => Err(SoficError::Supplier(FolnerError::BudgetExhausted(rounds))),
            Err(e) => Err(SoficError::Supplier(FolnerError::Certificate(e.to_string()))),
        }
    }

    fn kernel_hints(&mut self, cert: &SymmetricCertificate) -> Vec<Word> {
        let rank = self.alphabet().rank();
        EpRelations::new(self.oracle.clone(), cert.words(), cert.letters(), rank).collect()
    }
}

/// A word-problem decider built from an EP oracle and a presentation. The
/// oracle is consulted only through family checks and kernel relations.
pub struct GenericEpDecider {
    core: Core,
    levels: HashMap<u64, SoficLevel>,
    level_records: Vec<SoficRecord>,
    verdicts: Vec<PipelineVerdict>,
}

pub fn generic_ep_to_wp(oracle: EpOracle, presentation: Presentation, config: PipelineConfig) -> GenericEpDecider {
    let families = enumerate_injective_families(oracle.clone(), presentation.alphabet());
    GenericEpDecider {
        core: Core {
            oracle,
            presentation,
            config,
            families,
            emitted: Vec::new(),
            certified: HashMap::new(),
            records: Vec::new(),
        },
        levels: HashMap::new(),
        level_records: Vec::new(),
        verdicts: Vec::new(),
    }
}

impl GenericEpDecider {
    pub fn alphabet(&self) -> &Alphabet {
        self.core.presentation.alphabet()
    }

    /// Certifies a family at invariance level `level` without deciding
    /// anything.
    pub fn certify(&mut self, level: u64) -> Result<CertifiedFamily, PipelineError> {
        self.core.certify(level)
    }

    pub fn emitted_families(&self) -> &[FiniteWordSet] {
        &self.core.emitted
    }

    fn level(&mut self, n: u64) -> Result<&SoficLevel, SoficError> {
        if !self.levels.contains_key(&n) {
            let kernel: KernelStream = Box::new(StagedKernel::new(&self.core.presentation));
            let budget = self.core.config.sigma_budget;
            let level = prepare_level(&mut self.core, kernel, n, budget)?;
            self.level_records.push(SoficRecord {
                n,
                k: level.k,
                kernel_consumed: level.kernel_consumed,
            });
            self.levels.insert(n, level);
        }
        Ok(&self.levels[&n])
    }

    /// Never returns a wrong verdict: failures to certify come back as
    /// `Undecided`. Soundness violations of the underlying decider are
    /// errors.
    pub fn decide(&mut self, w: &Word) -> Result<PipelineVerdict, PipelineError> {
        let n = word_level(w);
        let word = self.alphabet().format_word(w);
        let verdict = match self.level(n) {
            Ok(_) => PipelineVerdict::Decided(verdict_on(&self.levels[&n], w, self.core.presentation.alphabet())?),
            Err(SoficError::Supplier(e)) => PipelineVerdict::Undecided {
                word,
                reason: e.to_string(),
            },
            Err(e) => return Err(e.into()),
        };
        self.verdicts.push(verdict.clone());
        Ok(verdict)
    }

    pub fn transcript(&self) -> Transcript {
        let a = self.alphabet();
        Transcript {
            model: self.core.oracle.model().name(),
            domain: self.core.oracle.domain().label().to_string(),
            config: self.core.config,
            queries: self.core.oracle.stats(),
            candidates_tried: self.core.families.tried(),
            families: self
                .core
                .emitted
                .iter()
                .enumerate()
                .map(|(index, f)| FamilyRecord {
                    index,
                    size: f.len(),
                    first: a.format_word(f.iter().next().expect("families are non-empty")),
                    last: a.format_word(f.iter().last().expect("families are non-empty")),
                })
                .collect(),
            certificates: self.core.records.clone(),
            sofic_levels: self.level_records.clone(),
            verdicts: self.verdicts.clone(),
        }
    }
}
