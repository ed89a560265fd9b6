use std::collections::HashSet;

use freegroup::{Alphabet, FiniteWordSet, Letter};
use invariance::{CertificateFile, InvarianceCertificate};
use presentations::ratio::{self, Q};
use presentations::{Element, GroupModel};
use serde::{Deserialize, Serialize};

use crate::error::FolnerError;

/// Images of `words` in the model and whether no two words collide.
pub fn images(words: &FiniteWordSet, model: &dyn GroupModel) -> (HashSet<Element>, bool) {
    let set: HashSet<Element> = words.iter().map(|w| model.normal_form(w)).collect();
    let injective = set.len() == words.len();
    (set, injective)
}

/// `|Ω ∖ xΩ| / |Ω|` for every positive generator `x`.
pub fn ratios_of(omega: &HashSet<Element>, model: &dyn GroupModel) -> Vec<Q> {
    let k = omega.len() as i64;
    (0..model.alphabet().rank())
        .map(|g| {
            let xi = Letter::neg(g);
            let out = omega.iter().filter(|p| !omega.contains(&model.left_act(xi, p))).count();
            ratio::q(out as i64, k)
        })
        .collect()
}

/// Same ratio for an arbitrary list of letters, e.g. the inverse generators.
pub fn letter_ratios(omega: &HashSet<Element>, model: &dyn GroupModel, letters: &[Letter]) -> Vec<Q> {
    let k = omega.len() as i64;
    letters
        .iter()
        .map(|l| {
            let back = l.inverse();
            let out = omega.iter().filter(|p| !omega.contains(&model.left_act(back, p))).count();
            ratio::q(out as i64, k)
        })
        .collect()
}

pub fn within(ratios: &[Q], n: u64) -> bool {
    let bound = ratio::q(1, n as i64);
    ratios.iter().all(|r| *r <= bound)
}

/// Whether the image of `words` is `n`-Følner.
pub fn is_folner(words: &FiniteWordSet, model: &dyn GroupModel, n: u64) -> bool {
    let (omega, _) = images(words, model);
    !omega.is_empty() && within(&ratios_of(&omega, model), n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Exact ratios checked with an oracle.
    Ratios(Vec<Q>),
    /// The invariance certificate the set was extracted from.
    Reiter(Box<InvarianceCertificate>),
}

/// A finite word set whose image is an `n`-Følner set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerCertificate {
    pub words: FiniteWordSet,
    pub n: u64,
    pub injective: bool,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolnerFile {
    pub words: Vec<String>,
    pub n: u64,
    pub injective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reiter: Option<CertificateFile>,
}

impl FolnerCertificate {
    /// Checks the set against an oracle: Følner ratios and, when claimed,
    /// injectivity.
    pub fn from_oracle(words: FiniteWordSet, model: &dyn GroupModel, n: u64) -> Option<FolnerCertificate> {
        let (omega, injective) = images(&words, model);
        let r = ratios_of(&omega, model);
        within(&r, n).then_some(FolnerCertificate {
            words,
            n,
            injective,
            witness: Witness::Ratios(r),
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn validate(&self, model: &dyn GroupModel) -> Result<(), FolnerError> {
        let bad = |m: &str| Err(FolnerError::Certificate(m.to_string()));
        if self.n == 0 {
            return Err(FolnerError::ZeroN);
        }
        if self.words.is_empty() {
            return bad("empty word set");
        }
        let (omega, injective) = images(&self.words, model);
        if self.injective && !injective {
            return bad("claimed injective but two words collide");
        }
        let r = ratios_of(&omega, model);
        if !within(&r, self.n) {
            return bad("image is not n-Følner");
        }
        if let Witness::Ratios(stored) = &self.witness {
            if *stored != r {
                return bad("stored ratios differ from the recomputed ones");
            }
        }
        Ok(())
    }

    pub fn to_file(&self, alphabet: &Alphabet) -> FolnerFile {
        let (ratios, reiter) = match &self.witness {
            Witness::Ratios(r) => (Some(r.iter().map(ratio::to_string).collect()), None),
            Witness::Reiter(c) => (None, Some(c.to_file(alphabet))),
        };
        FolnerFile {
            words: self.words.iter().map(|w| alphabet.format_word(w)).collect(),
            n: self.n,
            injective: self.injective,
            ratios,
            reiter,
        }
    }

    pub fn from_file(file: &FolnerFile, alphabet: &Alphabet) -> Result<FolnerCertificate, FolnerError> {
        let words = file
            .words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<FiniteWordSet, _>>()?;
        let witness = match (&file.ratios, &file.reiter) {
            (Some(r), None) => Witness::Ratios(r.iter().map(|x| ratio::parse(x)).collect::<Result<_, _>>()?),
            (None, Some(c)) => Witness::Reiter(Box::new(InvarianceCertificate::from_file(c, alphabet)?)),
            _ => return Err(FolnerError::Certificate("exactly one of ratios and reiter expected".into())),
        };
        Ok(FolnerCertificate {
            words,
            n: file.n,
            injective: file.injective,
            witness,
        })
    }
}

/// One chosen word per element: the shortlex-first preimage.
pub fn injective_part(words: &FiniteWordSet, model: &dyn GroupModel) -> FiniteWordSet {
    let mut seen = HashSet::new();
    words
        .iter()
        .filter(|w| seen.insert(model.normal_form(w)))
        .cloned()
        .collect()
}
