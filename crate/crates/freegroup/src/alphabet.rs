use crate::error::FreeGroupError;
use crate::word::{Letter, Word};

/// A finite generating alphabet of rank `d`.
///
/// Display names, when present, are single lowercase ascii letters used by
/// the compact text syntax. Without names the compact syntax uses `a..z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: usize,
    names: Option<Vec<char>>,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Alphabet, FreeGroupError> {
        if rank == 0 {
            return Err(FreeGroupError::ZeroRank);
        }
        if rank > Letter::MAX_RANK {
            return Err(FreeGroupError::RankTooLarge(rank));
        }
        Ok(Alphabet { rank, names: None })
    }

    pub fn with_names(names: &[char]) -> Result<Alphabet, FreeGroupError> {
        let mut a = Alphabet::new(names.len())?;
        let bad = || FreeGroupError::BadNames {
            rank: names.len(),
            names: names.to_vec(),
        };
        if names.iter().any(|c| !c.is_ascii_lowercase()) {
            return Err(bad());
        }
        for (i, c) in names.iter().enumerate() {
            if names[..i].contains(c) {
                return Err(bad());
            }
        }
        a.names = Some(names.to_vec());
        Ok(a)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> Option<&[char]> {
        self.names.as_deref()
    }

    /// All `2d` letters in canonical order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..2 * self.rank as u16).map(Letter::from_code)
    }

    pub fn check_letter(&self, l: Letter) -> Result<(), FreeGroupError> {
        if l.generator() < self.rank {
            Ok(())
        } else {
            Err(FreeGroupError::LetterOutOfRange {
                index: l.generator(),
                rank: self.rank,
            })
        }
    }

    pub fn check(&self, w: &Word) -> Result<(), FreeGroupError> {
        w.letters().iter().try_for_each(|l| self.check_letter(*l))
    }

    /// Range-checked free reduction.
    pub fn reduce<I: IntoIterator<Item = Letter>>(&self, letters: I) -> Result<Word, FreeGroupError> {
        let mut w = Word::empty();
        for l in letters {
            self.check_letter(l)?;
            w.push(l);
        }
        Ok(w)
    }

    pub fn mul(&self, u: &Word, v: &Word) -> Result<Word, FreeGroupError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.mul(v))
    }

    fn compact_name(&self, generator: usize) -> Option<char> {
        match &self.names {
            Some(n) => n.get(generator).copied(),
            None if generator < 26 => Some((b'a' + generator as u8) as char),
            None => None,
        }
    }

    fn generator_of(&self, c: char) -> Option<usize> {
        match &self.names {
            Some(n) => n.iter().position(|&m| m == c),
            None => {
                let g = (c as u32).checked_sub('a' as u32)? as usize;
                (g < 26).then_some(g)
            }
        }
    }

    /// Parses word text, applying free reduction.
    ///
    /// Tokens are separated by whitespace. A token `x<k>` or `X<k>` names the
    /// generator `k` (1-based) or its inverse; any other token is read one
    /// character at a time, lowercase for a generator and uppercase for its
    /// inverse. A lone `1` denotes the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, FreeGroupError> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let pos = offset + text[offset..].find(token).unwrap_or(0);
            offset = pos + token.len();
            if token == "1" {
                continue;
            }
            if let Some(l) = self.indexed_token(token, pos)? {
                letters.push(l);
                continue;
            }
            for (i, c) in token.char_indices() {
                let syntax = |msg: String| FreeGroupError::Syntax { pos: pos + i, msg };
                let g = self
                    .generator_of(c.to_ascii_lowercase())
                    .filter(|_| c.is_ascii_alphabetic())
                    .ok_or_else(|| syntax(format!("unexpected character {c:?}")))?;
                if g >= self.rank {
                    return Err(syntax(format!(
                        "letter {c:?} is outside an alphabet of rank {}",
                        self.rank
                    )));
                }
                letters.push(Letter::new(g, c.is_ascii_uppercase()));
            }
        }
        Ok(Word::reduce(letters))
    }

    fn indexed_token(&self, token: &str, pos: usize) -> Result<Option<Letter>, FreeGroupError> {
        let mut chars = token.chars();
        let inverse = match chars.next() {
            Some('x') => false,
            Some('X') => true,
            _ => return Ok(None),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let k: usize = digits.parse().map_err(|_| FreeGroupError::Syntax {
            pos,
            msg: format!("bad generator index in {token:?}"),
        })?;
        if k == 0 || k > self.rank {
            return Err(FreeGroupError::Syntax {
                pos,
                msg: format!("generator index {k} outside 1..={}", self.rank),
            });
        }
        Ok(Some(Letter::new(k - 1, inverse)))
    }

    /// Compact form for rank ≤ 26, otherwise space separated `x<k>` tokens.
    /// The empty word prints as the empty string.
    pub fn format_word(&self, w: &Word) -> String {
        if self.rank <= 26 {
            w.letters()
                .iter()
                .map(|l| {
                    let c = self.compact_name(l.generator()).unwrap_or('?');
                    if l.is_inverse() {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|l| {
                    let c = if l.is_inverse() { 'X' } else { 'x' };
                    format!("{}{}", c, l.generator() + 1)
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}
