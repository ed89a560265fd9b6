use std::cmp::Ordering;
use std::fmt;

/// A generator or its formal inverse.
///
/// Letters are stored as `2 * generator + inverse`, so the derived order is
/// `x1 < X1 < x2 < X2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub const MAX_RANK: usize = (u16::MAX as usize) / 2;

    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator < Self::MAX_RANK, "generator index too large");
        Letter((generator as u16) * 2 + inverse as u16)
    }

    pub fn pos(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    pub fn from_code(code: u16) -> Letter {
        Letter(code)
    }

    pub fn code(self) -> u16 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_inverse() { 'X' } else { 'x' };
        write!(f, "{}{}", c, self.generator() + 1)
    }
}

/// A freely reduced word.
///
/// Equality is letter equality, which for reduced words is equality in the
/// free group. `Ord` is shortlex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// Freely reduces an arbitrary letter sequence with a single stack pass.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out = Word::empty();
        for l in letters {
            out.push(l);
        }
        out
    }

    /// Wraps letters that are already reduced. Panics in debug builds if not.
    pub fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(is_reduced(&letters));
        Word(letters)
    }

    /// `x^e` for the given generator.
    pub fn power(generator: usize, e: i64) -> Word {
        let l = Letter::new(generator, e < 0);
        Word(vec![l; e.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Right multiplication by one letter, cancelling if needed.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let c = cancellation(&self.0, &other.0);
        let mut v = Vec::with_capacity(self.len() + other.len() - 2 * c);
        v.extend_from_slice(&self.0[..self.len() - c]);
        v.extend_from_slice(&other.0[c..]);
        Word(v)
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `u v u^-1`
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inv())
    }

    /// `u v u^-1 v^-1`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inv()).mul(&v.inv())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Largest generator index used plus one, or 0 for the empty word.
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator() + 1).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverse())
}

/// Number of letters cancelled when multiplying `u` by `v`.
pub fn cancellation(u: &[Letter], v: &[Letter]) -> usize {
    u.iter()
        .rev()
        .zip(v)
        .take_while(|(a, b)| **a == b.inverse())
        .count()
}
