//! Streams of words lying in the kernel of a presentation map.
//!
//! Every stream here is deduplicated and, apart from [`SeededKernel`]'s seed
//! list, complete: each kernel word is emitted after finitely many steps.

use std::collections::{HashMap, HashSet, VecDeque};

use freegroup::{ball, Letter, Word};

use crate::model::{Element, Model};
use crate::presentation::Presentation;

pub type KernelStream = Box<dyn Iterator<Item = Word> + Send>;

/// Normal-closure enumeration by bounded products of conjugated relators.
///
/// Stage `s` covers every product of at most `s` factors `u r^±1 u^-1` with
/// `|u| ≤ s` and `r` among the first `s` relators. The empty word is emitted
/// first; a presentation without relators yields nothing at all.
pub struct StagedKernel {
    presentation: Presentation,
    stage: usize,
    conjugates: Vec<Word>,
    idx: Vec<usize>,
    prefix: Vec<Word>,
    seen: HashSet<Word>,
    started: bool,
    fresh: bool,
}

impl StagedKernel {
    pub fn new(presentation: &Presentation) -> StagedKernel {
        StagedKernel {
            presentation: presentation.clone(),
            stage: 0,
            conjugates: Vec::new(),
            idx: Vec::new(),
            prefix: Vec::new(),
            seen: HashSet::new(),
            started: false,
            fresh: false,
        }
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    fn open_stage(&mut self, s: usize) {
        self.stage = s;
        let rels = self.presentation.first_relators(s);
        let mut seen = HashSet::new();
        self.conjugates.clear();
        for u in ball(self.presentation.alphabet(), s) {
            for r in &rels {
                for c in [r.conjugate_by(&u), r.inv().conjugate_by(&u)] {
                    if seen.insert(c.clone()) {
                        self.conjugates.push(c);
                    }
                }
            }
        }
        self.set_tuple(1);
    }

    fn set_tuple(&mut self, m: usize) {
        self.idx = vec![0; m];
        self.prefix.clear();
        self.refill(0);
    }

    fn refill(&mut self, from: usize) {
        self.prefix.truncate(from);
        for k in from..self.idx.len() {
            let c = &self.conjugates[self.idx[k]];
            let p = match k {
                0 => c.clone(),
                _ => self.prefix[k - 1].mul(c),
            };
            self.prefix.push(p);
        }
    }

    fn advance(&mut self) {
        let n = self.conjugates.len();
        let m = self.idx.len();
        for p in (0..m).rev() {
            if self.idx[p] + 1 < n {
                self.idx[p] += 1;
                for q in &mut self.idx[p + 1..] {
                    *q = 0;
                }
                self.refill(p);
                return;
            }
        }
        if m < self.stage {
            self.set_tuple(m + 1);
        } else {
            let s = self.stage + 1;
            self.open_stage(s);
        }
    }
}

impl Iterator for StagedKernel {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.presentation.has_relators() {
            return None;
        }
        if !self.started {
            self.started = true;
            self.open_stage(1);
            self.fresh = true;
            self.seen.insert(Word::empty());
            return Some(Word::empty());
        }
        loop {
            if !std::mem::take(&mut self.fresh) {
                self.advance();
            }
            let w = self.prefix.last().expect("non-empty tuple").clone();
            if self.seen.insert(w.clone()) {
                return Some(w);
            }
        }
    }
}

/// All words in shortlex order that the model's oracle calls trivial.
pub struct OracleKernel {
    model: Model,
    words: Box<dyn Iterator<Item = Word> + Send>,
    done: bool,
}

impl OracleKernel {
    pub fn new(model: Model) -> OracleKernel {
        let words = Box::new(freegroup::all_words(model.alphabet()));
        OracleKernel {
            model,
            words,
            done: false,
        }
    }
}

impl Iterator for OracleKernel {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if !self.model.presentation().has_relators() {
            self.done = true;
            return Some(Word::empty());
        }
        self.words.by_ref().find(|w| self.model.is_trivial(w))
    }
}

/// Cost of a syllable `x^e`: one plus the bit length of `|e|`.
pub fn syllable_cost(e: u64) -> usize {
    1 + (64 - e.leading_zeros()) as usize
}

/// Sum of syllable costs over the maximal powers in `w`.
pub fn word_cost(w: &Word) -> usize {
    let mut cost = 0;
    let mut run = 0u64;
    let mut prev: Option<Letter> = None;
    for &l in w.letters() {
        if Some(l) == prev {
            run += 1;
        } else {
            if run > 0 {
                cost += syllable_cost(run);
            }
            run = 1;
            prev = Some(l);
        }
    }
    if run > 0 {
        cost += syllable_cost(run);
    }
    cost
}

/// Oracle-trivial words ordered by [`word_cost`], so long powers come early.
///
/// Within one cost level the order is a depth-first walk over syllables:
/// generator ascending, positive exponent before negative, `|e|` ascending.
pub struct SyllableKernel {
    model: Model,
    level: usize,
    buffer: VecDeque<Word>,
    started: bool,
}

impl SyllableKernel {
    pub fn new(model: Model) -> SyllableKernel {
        SyllableKernel {
            model,
            level: 1,
            buffer: VecDeque::new(),
            started: false,
        }
    }

    /// Highest cost level generated so far.
    pub fn level(&self) -> usize {
        self.level
    }

    fn fill_level(&mut self, cost: usize) {
        let id = self.model.identity();
        let mut path = Vec::new();
        let mut out = Vec::new();
        let g = self.model.identity();
        self.walk(cost, None, &g, &id, &mut path, &mut out);
        self.buffer.extend(out);
    }

    fn walk(
        &self,
        remaining: usize,
        last: Option<usize>,
        g: &Element,
        id: &Element,
        path: &mut Vec<Letter>,
        out: &mut Vec<Word>,
    ) {
        let d = self.model.alphabet().rank();
        for gen in 0..d {
            if Some(gen) == last {
                continue;
            }
            for inverse in [false, true] {
                let l = Letter::new(gen, inverse);
                let mut h = g.clone();
                let base = path.len();
                for e in 1u64.. {
                    let c = syllable_cost(e);
                    if c > remaining {
                        break;
                    }
                    self.model.act(&mut h, l);
                    path.push(l);
                    if c == remaining {
                        if h == *id {
                            out.push(Word::from_reduced(path.clone()));
                        }
                    } else if remaining - c >= 2 {
                        self.walk(remaining - c, Some(gen), &h, id, path, out);
                    }
                }
                path.truncate(base);
            }
        }
    }
}

impl Iterator for SyllableKernel {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.started {
            self.started = true;
            return Some(Word::empty());
        }
        if !self.model.presentation().has_relators() {
            return None;
        }
        while self.buffer.is_empty() {
            self.level += 1;
            let c = self.level;
            self.fill_level(c);
        }
        self.buffer.pop_front()
    }
}

/// Emits a fixed list of kernel words first, then continues with another
/// stream, skipping repeats.
pub struct SeededKernel {
    seeds: VecDeque<Word>,
    rest: KernelStream,
    seen: HashSet<Word>,
}

impl SeededKernel {
    /// Every seed must lie in the kernel.
    pub fn new(seeds: Vec<Word>, rest: KernelStream) -> SeededKernel {
        SeededKernel {
            seeds: seeds.into(),
            rest,
            seen: HashSet::new(),
        }
    }
}

impl Iterator for SeededKernel {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while let Some(w) = self.seeds.pop_front() {
            if self.seen.insert(w.clone()) {
                return Some(w);
            }
        }
        self.rest.by_ref().find(|w| self.seen.insert(w.clone()))
    }
}

/// Kernel words `reduce(l · u · v^-1)` for every letter `l` and `u, v` in
/// `words` with `l·u` and `v` equal in the model, in `(l, u)` order. Found by
/// hashing normal forms.
pub fn translation_relations(model: &Model, letters: &[Letter], words: &[Word]) -> Vec<Word> {
    let forms: Vec<Element> = words.iter().map(|w| model.normal_form(w)).collect();
    let mut by_form: HashMap<&Element, Vec<usize>> = HashMap::new();
    for (j, g) in forms.iter().enumerate() {
        by_form.entry(g).or_default().push(j);
    }
    let mut out = Vec::new();
    for &l in letters {
        for (i, g) in forms.iter().enumerate() {
            let lg = model.left_act(l, g);
            if let Some(js) = by_form.get(&lg) {
                let lu = Word::letter(l).mul(&words[i]);
                for &j in js {
                    out.push(lu.mul(&words[j].inv()));
                }
            }
        }
    }
    out
}

/// Fair round-robin merge of several streams without repeats.
pub struct Interleave {
    streams: Vec<Option<KernelStream>>,
    turn: usize,
    seen: HashSet<Word>,
}

impl Interleave {
    pub fn new(streams: Vec<KernelStream>) -> Interleave {
        Interleave {
            streams: streams.into_iter().map(Some).collect(),
            turn: 0,
            seen: HashSet::new(),
        }
    }
}

impl Iterator for Interleave {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let k = self.streams.len();
        let mut idle = 0;
        while idle < k {
            let t = self.turn;
            self.turn = (self.turn + 1) % k;
            let Some(s) = self.streams[t].as_mut() else {
                idle += 1;
                continue;
            };
            match s.next() {
                None => {
                    self.streams[t] = None;
                    idle += 1;
                }
                Some(w) => {
                    idle = 0;
                    if self.seen.insert(w.clone()) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }
}

/// Named kernel stream choices exposed to callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    Staged,
    Oracle,
    Syllable,
}

impl KernelKind {
    pub fn parse(s: &str) -> Option<KernelKind> {
        match s {
            "staged" => Some(KernelKind::Staged),
            "oracle" => Some(KernelKind::Oracle),
            "syllable" => Some(KernelKind::Syllable),
            _ => None,
        }
    }

    pub fn stream(self, model: &Model) -> KernelStream {
        match self {
            KernelKind::Staged => Box::new(StagedKernel::new(model.presentation())),
            KernelKind::Oracle => Box::new(OracleKernel::new(model.clone())),
            KernelKind::Syllable => Box::new(SyllableKernel::new(model.clone())),
        }
    }
}

pub fn enumerate_kernel(presentation: &Presentation) -> StagedKernel {
    StagedKernel::new(presentation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin_model;

    fn fmt(m: &Model, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| m.alphabet().format_word(w)).collect()
    }

    #[test]
    fn z2_commutator_by_stage_one() {
        let m = builtin_model("Z2").unwrap();
        let mut k = enumerate_kernel(m.presentation());
        let first: Vec<Word> = (&mut k).take(11).collect();
        assert_eq!(k.stage(), 1);
        let f = fmt(&m, &first);
        assert_eq!(f[0], "");
        assert!(f.contains(&"xyXY".to_string()));
        assert!(f.contains(&"yxYX".to_string()));
    }

    #[test]
    fn free_streams_are_empty() {
        let m = builtin_model("free2").unwrap();
        assert_eq!(enumerate_kernel(m.presentation()).count(), 0);
        assert_eq!(OracleKernel::new(m.clone()).count(), 1);
        assert_eq!(SyllableKernel::new(m).count(), 1);
    }

    #[test]
    fn staged_words_are_trivial() {
        // rank one has few distinct products per stage
        let cases = [("Z2", 3000), ("heisenberg", 3000), ("lamplighter", 3000), ("bs12", 3000), ("Z3", 3000), ("C4", 6)];
        for (name, budget) in cases {
            let m = builtin_model(name).unwrap();
            let mut seen = HashSet::new();
            for w in enumerate_kernel(m.presentation()).take(budget) {
                assert!(m.is_trivial(&w), "{name}: {w:?}");
                assert!(seen.insert(w));
            }
        }
    }

    #[test]
    fn oracle_stream_z2_starts_with_commutators() {
        let m = builtin_model("Z2").unwrap();
        let first: Vec<Word> = OracleKernel::new(m.clone()).take(2).collect();
        assert!(first[0].is_empty());
        assert_eq!(first[1].len(), 4);
        let lamp = builtin_model("lamplighter").unwrap();
        let w: Vec<Word> = OracleKernel::new(lamp.clone()).take(2).collect();
        assert_eq!(fmt(&lamp, &w), ["", "aa"]);
    }

    #[test]
    fn syllable_levels_cover_costs() {
        let m = builtin_model("Z2").unwrap();
        let mut k = SyllableKernel::new(m.clone());
        let mut prev = 0;
        for w in (&mut k).take(2000) {
            assert!(m.is_trivial(&w));
            let c = word_cost(&w);
            assert!(c >= prev);
            prev = c;
        }
        assert_eq!(word_cost(&m.alphabet().parse_word("xxxxyXXXXY").unwrap()), 12);
        // every trivial word of cost at most 8 shows up
        let expect: HashSet<Word> = ball(m.alphabet(), 8)
            .filter(|w| word_cost(w) <= 8 && m.is_trivial(w))
            .collect();
        let got: HashSet<Word> = SyllableKernel::new(m).take_while(|w| word_cost(w) <= 8).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn staged_covers_b4_for_z2() {
        let m = builtin_model("Z2").unwrap();
        let mut want: HashSet<Word> = ball(m.alphabet(), 4).filter(|w| m.is_trivial(w)).collect();
        for w in enumerate_kernel(m.presentation()).take(200_000) {
            want.remove(&w);
            if want.is_empty() {
                break;
            }
        }
        assert!(want.is_empty(), "missing {}", want.len());
    }

    #[test]
    fn translation_relations_are_trivial() {
        let m = builtin_model("heisenberg").unwrap();
        let words: Vec<Word> = ball(m.alphabet(), 3).collect();
        let letters: Vec<Letter> = m.alphabet().letters().collect();
        let rels = translation_relations(&m, &letters, &words);
        assert!(!rels.is_empty());
        for r in &rels {
            assert!(m.is_trivial(r));
        }
        let mut k = SeededKernel::new(rels.clone(), Box::new(OracleKernel::new(m.clone())));
        let first: Vec<Word> = (&mut k).take(5).collect();
        assert_eq!(first[0], rels[0]);
    }

    #[test]
    fn interleave_dedups_and_ends() {
        let m = builtin_model("C3").unwrap();
        let a: KernelStream = Box::new(OracleKernel::new(m.clone()).take(5));
        let b: KernelStream = Box::new(OracleKernel::new(m.clone()).take(7));
        let all: Vec<Word> = Interleave::new(vec![a, b]).collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 7);
    }
}
