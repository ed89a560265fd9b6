use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::word::{Letter, Word};

/// `|S_n| = 2d(2d-1)^(n-1)`, and 1 for `n = 0`.
pub fn sphere_size(rank: usize, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let d = rank as u128;
    2 * d * (2 * d - 1).pow(n as u32 - 1)
}

pub fn ball_size(rank: usize, n: usize) -> u128 {
    (0..=n).map(|k| sphere_size(rank, k)).sum()
}

/// Reduced words of one fixed length in shortlex (here: lexicographic) order.
#[derive(Clone, Debug)]
pub struct Sphere {
    codes: u16,
    current: Option<Vec<Letter>>,
}

impl Sphere {
    pub fn new(alphabet: &Alphabet, n: usize) -> Sphere {
        let codes = 2 * alphabet.rank() as u16;
        let mut first = Vec::with_capacity(n);
        fill_smallest(&mut first, n, codes);
        Sphere {
            codes,
            current: Some(first),
        }
    }
}

fn smallest_after(prev: Option<Letter>, from: u16, codes: u16) -> Option<Letter> {
    (from..codes)
        .map(Letter::from_code)
        .find(|l| Some(l.inverse()) != prev)
}

fn fill_smallest(v: &mut Vec<Letter>, n: usize, codes: u16) {
    while v.len() < n {
        let l = smallest_after(v.last().copied(), 0, codes).expect("alphabet has letters");
        v.push(l);
    }
}

impl Iterator for Sphere {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let n = cur.len();
        let mut succ = cur.clone();
        loop {
            match succ.pop() {
                None => break,
                Some(l) => {
                    let prev = succ.last().copied();
                    if let Some(nl) = smallest_after(prev, l.code() + 1, self.codes) {
                        succ.push(nl);
                        fill_smallest(&mut succ, n, self.codes);
                        self.current = Some(succ);
                        break;
                    }
                }
            }
        }
        Some(Word::from_reduced(cur))
    }
}

/// The ball `B_n` in shortlex order.
pub fn ball(alphabet: &Alphabet, n: usize) -> impl Iterator<Item = Word> {
    let a = alphabet.clone();
    (0..=n).flat_map(move |k| Sphere::new(&a, k))
}

pub fn sphere(alphabet: &Alphabet, n: usize) -> Sphere {
    Sphere::new(alphabet, n)
}

/// Every reduced word, in shortlex order.
pub fn all_words(alphabet: &Alphabet) -> impl Iterator<Item = Word> {
    let a = alphabet.clone();
    (0..).flat_map(move |k| Sphere::new(&a, k))
}

/// A finite set of words, iterated in shortlex order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWordSet(BTreeSet<Word>);

impl FiniteWordSet {
    pub fn new() -> FiniteWordSet {
        FiniteWordSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn insert(&mut self, w: Word) -> bool {
        self.0.insert(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<Word> {
        self.0.iter().cloned().collect()
    }

    pub fn is_subset(&self, other: &FiniteWordSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Right translate `F y`.
    pub fn translate_right(&self, y: &Word) -> FiniteWordSet {
        self.iter().map(|w| w.mul(y)).collect()
    }
}

impl FromIterator<Word> for FiniteWordSet {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        FiniteWordSet(iter.into_iter().collect())
    }
}

impl IntoIterator for FiniteWordSet {
    type Item = Word;
    type IntoIter = std::collections::btree_set::IntoIter<Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a FiniteWordSet {
    type Item = &'a Word;
    type IntoIter = std::collections::btree_set::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Staged enumeration of all non-empty finite subsets of the free group.
///
/// Stage `s` lists the non-empty subsets of `B_s` of size at most `s` that
/// were not listed at stage `s - 1`, i.e. those meeting the sphere `S_s` or of
/// size exactly `s`. Within a stage, subsets come by size, then by the
/// lexicographic order of their index tuples in the shortlex listing of `B_s`.
#[derive(Clone, Debug)]
pub struct FiniteSubsets {
    alphabet: Alphabet,
    stage: usize,
    ball: Vec<Word>,
    inner: usize,
    combo: Option<Vec<usize>>,
}

impl FiniteSubsets {
    pub fn new(alphabet: &Alphabet) -> FiniteSubsets {
        let mut s = FiniteSubsets {
            alphabet: alphabet.clone(),
            stage: 0,
            ball: Vec::new(),
            inner: 0,
            combo: None,
        };
        s.open_stage(1);
        s
    }

    /// Current stage number.
    pub fn stage(&self) -> usize {
        self.stage
    }

    fn open_stage(&mut self, s: usize) {
        self.stage = s;
        self.inner = ball_size(self.alphabet.rank(), s - 1) as usize;
        self.ball = ball(&self.alphabet, s).collect();
        self.combo = Some(vec![0]);
    }

    fn admissible(&self, c: &[usize]) -> bool {
        c.len() == self.stage || *c.last().unwrap() >= self.inner
    }

    fn advance(&mut self) {
        let n = self.ball.len();
        let c = self.combo.as_mut().unwrap();
        let k = c.len();
        // next k-combination of 0..n in lexicographic order
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                return;
            }
        }
        if k < self.stage && k < n {
            self.combo = Some((0..k + 1).collect());
        } else {
            let s = self.stage + 1;
            self.open_stage(s);
        }
    }
}

impl Iterator for FiniteSubsets {
    type Item = FiniteWordSet;

    fn next(&mut self) -> Option<FiniteWordSet> {
        loop {
            let c = self.combo.as_ref().unwrap();
            let out = self
                .admissible(c)
                .then(|| c.iter().map(|&i| self.ball[i].clone()).collect());
            self.advance();
            if out.is_some() {
                return out;
            }
        }
    }
}
