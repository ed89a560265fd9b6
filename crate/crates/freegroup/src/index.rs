use std::collections::HashMap;
use std::ops::Range;

use crate::word::{Letter, Word};

/// A finite list of words with exact lookup and prefix-range queries.
///
/// Duplicates are allowed; `positions` returns every index holding a word.
#[derive(Clone, Debug, Default)]
pub struct WordIndex {
    words: Vec<Word>,
    by_lex: Vec<usize>,
    positions: HashMap<Word, Vec<usize>>,
    max_len: usize,
}

impl WordIndex {
    pub fn new(words: Vec<Word>) -> WordIndex {
        let mut by_lex: Vec<usize> = (0..words.len()).collect();
        by_lex.sort_by(|&a, &b| words[a].letters().cmp(words[b].letters()));
        let mut positions: HashMap<Word, Vec<usize>> = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            positions.entry(w.clone()).or_default().push(i);
        }
        let max_len = words.iter().map(Word::len).max().unwrap_or(0);
        WordIndex {
            words,
            by_lex,
            positions,
            max_len,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn positions(&self, w: &Word) -> &[usize] {
        self.positions.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.positions(w).first().copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.positions.contains_key(w)
    }

    /// Narrows a lex range of words sharing a prefix of length `depth` to those
    /// continuing with `l`.
    fn narrow(&self, r: Range<usize>, depth: usize, l: Letter) -> Range<usize> {
        let slice = &self.by_lex[r.clone()];
        let key = |&i: &usize| self.words[i].letters().get(depth).map(|x| x.code() as i32).unwrap_or(-1);
        let code = l.code() as i32;
        let lo = slice.partition_point(|i| key(i) < code);
        let hi = slice.partition_point(|i| key(i) <= code);
        r.start + lo..r.start + hi
    }

    /// Length of the longest prefix of `w` that is a prefix of some stored
    /// word, or `None` when the index is empty.
    pub fn longest_prefix(&self, w: &[Letter]) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut r = 0..self.len();
        for (depth, &l) in w.iter().enumerate() {
            let nr = self.narrow(r, depth, l);
            if nr.is_empty() {
                return Some(depth);
            }
            r = nr;
        }
        Some(w.len())
    }

    /// Indices of the stored words starting with `p`.
    pub fn with_prefix(&self, p: &[Letter]) -> impl Iterator<Item = usize> + '_ {
        let mut r = 0..self.len();
        for (depth, &l) in p.iter().enumerate() {
            r = self.narrow(r, depth, l);
            if r.is_empty() {
                break;
            }
        }
        self.by_lex[r].iter().copied()
    }

    /// All pairs `(s, t)` with `reduce(eta * self[s]) == targets[t]`.
    ///
    /// Writing `c` for the cancellation between `eta` and a source word `v`,
    /// the product is `eta[..|eta|-c] v[c..]`, so its head is a prefix of
    /// `eta`. Only cancellations that leave a head which is a prefix of some
    /// target are possible, which bounds `c` from below and turns the scan of
    /// sources into one prefix range.
    pub fn left_products(&self, eta: &Word, targets: &WordIndex) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let e = eta.letters();
        let Some(head) = targets.longest_prefix(e) else {
            return out;
        };
        let c_min = e.len() - head;
        let inv = eta.inv();
        let iota = inv.letters();
        for s in self.with_prefix(&iota[..c_min]) {
            let v = self.words[s].letters();
            let c = iota.iter().zip(v).take_while(|(a, b)| a == b).count();
            if e.len() + v.len() - 2 * c > targets.max_len {
                continue;
            }
            let mut m = Vec::with_capacity(e.len() + v.len() - 2 * c);
            m.extend_from_slice(&e[..e.len() - c]);
            m.extend_from_slice(&v[c..]);
            let mu = Word::from_reduced(m);
            for &t in targets.positions(&mu) {
                out.push((s, t));
            }
        }
        out
    }
}
