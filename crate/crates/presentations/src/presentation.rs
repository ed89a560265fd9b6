use freegroup::{Alphabet, Letter, Word};
use serde::{Deserialize, Serialize};

use crate::error::PresentationError;

/// A computable, restartable relator stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `a^2`, then `[a, t^k a t^-k]` for `k = 1, 2, ...` over `⟨a, t⟩`.
    Lamplighter,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lamplighter => "lamplighter",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Family::Lamplighter => 2,
        }
    }

    pub fn relator(self, k: usize) -> Word {
        match self {
            Family::Lamplighter => {
                let a = Word::letter(Letter::pos(0));
                if k == 0 {
                    return a.pow(2);
                }
                let tk = Word::power(1, k as i64);
                Word::commutator(&a, &a.conjugate_by(&tk))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relators {
    Finite(Vec<Word>),
    Family(Family),
}

/// Generators plus relators; the group is the quotient by their normal closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Relators,
}

impl Presentation {
    pub fn finite(alphabet: Alphabet, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        for (index, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.generator() >= alphabet.rank()) {
                return Err(PresentationError::RelatorOutOfRange {
                    index,
                    generator: l.generator(),
                    rank: alphabet.rank(),
                });
            }
        }
        Ok(Presentation {
            alphabet,
            relators: Relators::Finite(relators),
        })
    }

    pub fn family(alphabet: Alphabet, family: Family) -> Result<Presentation, PresentationError> {
        if alphabet.rank() != family.rank() {
            return Err(PresentationError::File(format!(
                "family {} needs {} generators",
                family.name(),
                family.rank()
            )));
        }
        Ok(Presentation {
            alphabet,
            relators: Relators::Family(family),
        })
    }

    pub fn free(alphabet: Alphabet) -> Presentation {
        Presentation {
            alphabet,
            relators: Relators::Finite(Vec::new()),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &Relators {
        &self.relators
    }

    pub fn has_relators(&self) -> bool {
        !matches!(&self.relators, Relators::Finite(v) if v.is_empty())
    }

    /// The first `s` relators (all of them for a short finite list).
    pub fn first_relators(&self, s: usize) -> Vec<Word> {
        match &self.relators {
            Relators::Finite(v) => v.iter().take(s).cloned().collect(),
            Relators::Family(f) => (0..s).map(|k| f.relator(k)).collect(),
        }
    }

    /// Parses a presentation file. A `builtin` entry is returned by name and
    /// left to the caller to resolve.
    pub fn from_json(text: &str) -> Result<PresentationFile, PresentationError> {
        serde_json::from_str(text).map_err(|e| PresentationError::File(e.to_string()))
    }

    pub fn to_file(&self) -> PresentationFile {
        let generators = match self.alphabet.names() {
            Some(n) => Generators::Names(n.iter().map(|c| c.to_string()).collect()),
            None => Generators::Count(self.rank()),
        };
        match &self.relators {
            Relators::Finite(v) => PresentationFile {
                generators: Some(generators),
                relators: Some(v.iter().map(|r| self.alphabet.format_word(r)).collect()),
                builtin: None,
                family: None,
            },
            Relators::Family(f) => PresentationFile {
                generators: Some(generators),
                relators: None,
                builtin: None,
                family: Some(f.name().to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generators {
    Count(usize),
    Names(Vec<String>),
}

/// On-disk form: `{"generators": 2 | ["x","y"], "relators": [...],
/// "builtin": "Z2", "family": "lamplighter"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

impl PresentationFile {
    pub fn alphabet(&self) -> Result<Alphabet, PresentationError> {
        match &self.generators {
            Some(Generators::Count(d)) => Ok(Alphabet::new(*d)?),
            Some(Generators::Names(names)) => {
                let cs: Option<Vec<char>> = names
                    .iter()
                    .map(|s| {
                        let mut it = s.chars();
                        match (it.next(), it.next()) {
                            (Some(c), None) => Some(c),
                            _ => None,
                        }
                    })
                    .collect();
                let cs = cs.ok_or_else(|| {
                    PresentationError::File(format!("generator names must be single letters: {names:?}"))
                })?;
                Ok(Alphabet::with_names(&cs)?)
            }
            None => Err(PresentationError::File("missing \"generators\"".into())),
        }
    }

    /// Builds the presentation for a file without a `builtin` entry.
    pub fn presentation(&self) -> Result<Presentation, PresentationError> {
        let alphabet = self.alphabet()?;
        if let Some(f) = &self.family {
            let fam = match f.as_str() {
                "lamplighter" => Family::Lamplighter,
                other => return Err(PresentationError::UnknownFamily(other.to_string())),
            };
            return Presentation::family(alphabet, fam);
        }
        let rels = self
            .relators
            .iter()
            .flatten()
            .map(|t| alphabet.parse_word(t))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::finite(alphabet, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lamplighter_relators_have_the_commutator_form() {
        let a = Alphabet::with_names(&['a', 't']).unwrap();
        let fam = Family::Lamplighter;
        assert_eq!(a.format_word(&fam.relator(0)), "aa");
        assert_eq!(a.format_word(&fam.relator(1)), "ataTAtAT");
        assert_eq!(a.format_word(&fam.relator(2)), "attaTTAttATT");
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"generators": ["x","y"], "relators": ["xyXY"]}"#;
        let file = Presentation::from_json(text).unwrap();
        let p = file.presentation().unwrap();
        assert_eq!(p.first_relators(5).len(), 1);
        assert_eq!(p.to_file().presentation().unwrap(), p);
        let lamp = Presentation::from_json(r#"{"generators": 2, "family": "lamplighter"}"#)
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(lamp.first_relators(3).len(), 3);
    }

    #[test]
    fn bad_files() {
        assert!(Presentation::from_json("{").is_err());
        assert!(Presentation::from_json(r#"{"generators": 2, "bogus": 1}"#).is_err());
        let f = Presentation::from_json(r#"{"generators": 1, "relators": ["xy"]}"#).unwrap();
        assert!(f.presentation().is_err());
        let g = Presentation::from_json(r#"{"relators": []}"#).unwrap();
        assert!(g.presentation().is_err());
    }
}
