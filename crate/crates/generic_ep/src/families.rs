use std::collections::{HashMap, HashSet, VecDeque};

use folner::power_box;
use freegroup::{ball, Alphabet, FiniteSubsets, FiniteWordSet, Letter, Word, WordIndex};

use crate::oracle::{EpAnswer, EpOracle, Prepared};

/// Candidate supports: for `j = 0, 1, …` the translates `P_{2^j}·y`, `y ∈ B_1`
/// in shortlex order, then the next set of the staged enumeration of all
/// finite subsets. Repeats are dropped.
pub fn family_candidates(alphabet: &Alphabet) -> FamilyCandidates {
    FamilyCandidates {
        rank: alphabet.rank(),
        shifts: ball(alphabet, 1).collect(),
        staged: FiniteSubsets::new(alphabet),
        staged_seen: HashSet::new(),
        j: 0,
        pos: 0,
        current: None,
    }
}

pub struct FamilyCandidates {
    rank: usize,
    shifts: Vec<Word>,
    staged: FiniteSubsets,
    staged_seen: HashSet<FiniteWordSet>,
    j: u32,
    pos: usize,
    current: Option<FiniteWordSet>,
}

impl FamilyCandidates {
    /// Whether `s` is one of the box translates already listed.
    fn listed_box(&self, s: &FiniteWordSet) -> bool {
        (0..=self.j).any(|i| {
            let side = 1i64 << i;
            side.checked_pow(self.rank as u32) == Some(s.len() as i64) && {
                let b = power_box(self.rank, side);
                self.shifts.iter().any(|y| b.translate_right(y) == *s)
            }
        })
    }
}

impl Iterator for FamilyCandidates {
    type Item = FiniteWordSet;

    fn next(&mut self) -> Option<FiniteWordSet> {
        loop {
            if self.pos < self.shifts.len() {
                let (rank, side) = (self.rank, 1i64 << self.j);
                let b = self.current.get_or_insert_with(|| power_box(rank, side));
                let t = b.translate_right(&self.shifts[self.pos]);
                self.pos += 1;
                if !self.staged_seen.contains(&t) {
                    return Some(t);
                }
            } else {
                let s = self.staged.next().expect("staged subsets never run out");
                let dup = self.listed_box(&s);
                self.pos = 0;
                self.j += 1;
                self.current = None;
                if !dup {
                    self.staged_seen.insert(s.clone());
                    return Some(s);
                }
            }
        }
    }
}

/// Whether every pair of distinct words gets a definite `Distinct`.
pub fn verified_injective(oracle: &EpOracle, set: &FiniteWordSet) -> bool {
    let k = set.len();
    let mut s = oracle.prepare(set.to_vec());
    for i in 0..k {
        for j in i + 1..k {
            if s.pair(i, j) != EpAnswer::Distinct {
                return false;
            }
        }
    }
    true
}

/// The candidates that the oracle verifies to be injective, in order.
pub fn enumerate_injective_families(oracle: EpOracle, alphabet: &Alphabet) -> InjectiveFamilies {
    InjectiveFamilies {
        oracle,
        candidates: Box::new(family_candidates(alphabet)),
        tried: 0,
    }
}

pub struct InjectiveFamilies {
    oracle: EpOracle,
    candidates: Box<dyn Iterator<Item = FiniteWordSet> + Send>,
    tried: usize,
}

impl InjectiveFamilies {
    /// Candidates examined so far, emitted or not.
    pub fn tried(&self) -> usize {
        self.tried
    }
}

impl Iterator for InjectiveFamilies {
    type Item = FiniteWordSet;

    fn next(&mut self) -> Option<FiniteWordSet> {
        loop {
            let set = self.candidates.next()?;
            self.tried += 1;
            if verified_injective(&self.oracle, &set) {
                return Some(set);
            }
        }
    }
}

fn exponent_sums(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for l in w.letters() {
        v[l.generator()] += l.sign();
    }
    v
}

/// Kernel words `l·e_i·e_j^-1` for which the oracle says `l·e_i = e_j`,
/// skipping the literal ones (they reduce to the empty word).
///
/// For each `(l, i)` the `j` with the same exponent sums as `l·e_i` are asked
/// first, then the rest; the first `Equal` ends the search since the family
/// is injective.
pub struct EpRelations {
    oracle: Prepared,
    words: Vec<Word>,
    index: WordIndex,
    letters: Vec<Letter>,
    sums: Vec<Vec<i64>>,
    by_sums: HashMap<Vec<i64>, Vec<usize>>,
    rank: usize,
    next: (usize, usize),
    out: VecDeque<Word>,
}

impl EpRelations {
    pub fn new(oracle: EpOracle, words: &[Word], letters: &[Letter], rank: usize) -> EpRelations {
        let sums: Vec<Vec<i64>> = words.iter().map(|w| exponent_sums(w, rank)).collect();
        let mut by_sums: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (j, s) in sums.iter().enumerate() {
            by_sums.entry(s.clone()).or_default().push(j);
        }
        EpRelations {
            oracle: oracle.prepare(words.to_vec()),
            words: words.to_vec(),
            index: WordIndex::new(words.to_vec()),
            letters: letters.to_vec(),
            sums,
            by_sums,
            rank,
            next: (0, 0),
            out: VecDeque::new(),
        }
    }

    fn search(&mut self, l: Letter, i: usize) -> Option<Word> {
        let target = Word::letter(l).mul(&self.words[i]);
        if self.index.contains(&target) {
            return None;
        }
        let key = exponent_sums(&target, self.rank);
        let first = self.by_sums.get(&key);
        let rest = (0..self.words.len()).filter(|&j| self.sums[j] != key);
        let ft = self.oracle.lookup(&target);
        let s = &mut self.oracle;
        let found = first
            .into_iter()
            .flatten()
            .copied()
            .chain(rest)
            .find(|&j| s.against(&target, &ft, j) == EpAnswer::Equal);
        s.flush();
        found.map(|j| target.mul(&self.words[j].inv()))
    }
}

impl Iterator for EpRelations {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while self.out.is_empty() {
            let (l, i) = self.next;
            if l >= self.letters.len() {
                return None;
            }
            self.next = if i + 1 < self.words.len() { (l, i + 1) } else { (l + 1, 0) };
            if let Some(w) = self.search(self.letters[l], i) {
                self.out.push_back(w);
            }
        }
        self.out.pop_front()
    }
}
