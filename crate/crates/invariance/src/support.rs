use std::collections::BTreeMap;

use freegroup::{Alphabet, FiniteWordSet, Letter, Word};
use num_traits::{One, Signed, Zero};
use presentations::Q;

use crate::error::InvarianceError;

/// A finitely supported positive rational function on the free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSupport {
    entries: BTreeMap<Word, Q>,
}

impl WeightedSupport {
    pub fn new<I: IntoIterator<Item = (Word, Q)>>(entries: I) -> Result<WeightedSupport, InvarianceError> {
        let mut map = BTreeMap::new();
        for (w, q) in entries {
            if !q.is_positive() {
                return Err(InvarianceError::NonPositiveWeight(format!("{w:?}")));
            }
            if map.contains_key(&w) {
                return Err(InvarianceError::DuplicateWord(format!("{w:?}")));
            }
            map.insert(w, q);
        }
        if map.is_empty() {
            return Err(InvarianceError::EmptySupport);
        }
        Ok(WeightedSupport { entries: map })
    }

    /// The indicator function of a non-empty set.
    pub fn characteristic<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Result<WeightedSupport, InvarianceError> {
        let mut map = BTreeMap::new();
        for w in words {
            map.insert(w.clone(), Q::one());
        }
        if map.is_empty() {
            return Err(InvarianceError::EmptySupport);
        }
        Ok(WeightedSupport { entries: map })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, w: &Word) -> Option<&Q> {
        self.entries.get(w)
    }

    /// `f(w)`, zero off the support.
    pub fn value(&self, w: &Word) -> Q {
        self.entries.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.entries.iter()
    }

    pub fn support(&self) -> FiniteWordSet {
        self.entries.keys().cloned().collect()
    }

    pub fn mass(&self) -> Q {
        self.entries.values().sum()
    }

    pub fn is_characteristic(&self) -> bool {
        self.entries.values().all(One::is_one)
    }

    pub fn check(&self, alphabet: &Alphabet) -> Result<(), InvarianceError> {
        for w in self.entries.keys() {
            alphabet.check(w)?;
        }
        Ok(())
    }
}

/// `F ∪ xF` over the positive generators `x`, where `F` is the support.
pub fn support_closure(f: &WeightedSupport, alphabet: &Alphabet) -> FiniteWordSet {
    let mut out = f.support();
    for w in f.entries.keys() {
        for g in 0..alphabet.rank() {
            out.insert(Word::letter(Letter::pos(g)).mul(w));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::ratio::{q, qi};
    use proptest::prelude::*;

    fn words(a: &Alphabet, ts: &[&str]) -> Vec<Word> {
        ts.iter().map(|t| a.parse_word(t).unwrap()).collect()
    }

    fn fmt(a: &Alphabet, s: &FiniteWordSet) -> Vec<String> {
        s.iter().map(|w| a.format_word(w)).collect()
    }

    #[test]
    fn closures_of_small_sets() {
        let a = Alphabet::with_names(&['x']).unwrap();
        let f = WeightedSupport::characteristic(&words(&a, &["1", "x"])).unwrap();
        assert_eq!(fmt(&a, &support_closure(&f, &a)), ["", "x", "xx"]);
        let b = Alphabet::with_names(&['x', 'y']).unwrap();
        let g = WeightedSupport::characteristic(&words(&b, &["1"])).unwrap();
        assert_eq!(fmt(&b, &support_closure(&g, &b)), ["", "x", "y"]);
    }

    #[test]
    fn rejects_bad_weights() {
        let a = Alphabet::new(1).unwrap();
        let e = Word::empty();
        assert_eq!(WeightedSupport::new([(e.clone(), qi(0))]), Err(InvarianceError::NonPositiveWeight("ε".into())));
        assert_eq!(WeightedSupport::new([(e.clone(), q(-1, 2))]).unwrap_err(), InvarianceError::NonPositiveWeight("ε".into()));
        assert_eq!(WeightedSupport::new([]), Err(InvarianceError::EmptySupport));
        assert!(WeightedSupport::new([(e.clone(), qi(1)), (e.clone(), qi(2))]).is_err());
        let f = WeightedSupport::new([(e, q(1, 2))]).unwrap();
        assert!(f.check(&a).is_ok());
        assert_eq!(f.mass(), q(1, 2));
    }

    proptest! {
        #[test]
        fn closure_is_monotone_and_bounded(
            small in prop::collection::btree_set(prop::collection::vec(0u16..4, 0..6), 1..10),
            extra in prop::collection::btree_set(prop::collection::vec(0u16..4, 0..6), 0..10),
        ) {
            let a = Alphabet::new(2).unwrap();
            let w = |v: &Vec<u16>| Word::reduce(v.iter().map(|&c| Letter::from_code(c)));
            let fs: Vec<Word> = small.iter().map(w).collect();
            let gs: Vec<Word> = small.iter().chain(&extra).map(w).collect();
            let f = WeightedSupport::characteristic(&fs).unwrap();
            let g = WeightedSupport::characteristic(&gs).unwrap();
            let cf = support_closure(&f, &a);
            prop_assert!(f.support().is_subset(&cf));
            prop_assert!(cf.is_subset(&support_closure(&g, &a)));
            prop_assert!(cf.len() <= 3 * f.len());
        }
    }
}
