use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use freegroup::Word;
use genericity::SetPredicate;
use presentations::{Element, Model};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpAnswer {
    Equal,
    Distinct,
    Unknown,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    pub queries: u64,
    pub equal: u64,
    pub distinct: u64,
    pub unknown: u64,
}

impl QueryStats {
    fn count(&mut self, a: EpAnswer) {
        self.queries += 1;
        match a {
            EpAnswer::Equal => self.equal += 1,
            EpAnswer::Distinct => self.distinct += 1,
            EpAnswer::Unknown => self.unknown += 1,
        }
    }
}

struct Inner {
    model: Model,
    domain: SetPredicate,
    max_len: usize,
    forms: Mutex<HashMap<Word, Option<Element>>>,
    stats: Mutex<QueryStats>,
}

/// An Equality-Problem oracle that answers only on `S × S`.
///
/// Definite answers come from the model and are always right. Off the domain,
/// or when `|u| + |v|` exceeds the step budget, the answer is `Unknown`,
/// standing in for a procedure that would not stop. Cloning shares the cache
/// and the counters.
#[derive(Clone)]
pub struct EpOracle(Arc<Inner>);

impl EpOracle {
    pub fn new(model: Model, domain: SetPredicate, max_len: usize) -> EpOracle {
        EpOracle(Arc::new(Inner {
            model,
            domain,
            max_len,
            forms: Mutex::new(HashMap::new()),
            stats: Mutex::new(QueryStats::default()),
        }))
    }

    /// Answers every query.
    pub fn total(model: Model) -> EpOracle {
        EpOracle::new(model, SetPredicate::everything(), usize::MAX)
    }

    /// Answers only when neither word lies in `excluded`.
    pub fn excluding(model: Model, excluded: &SetPredicate) -> EpOracle {
        EpOracle::new(model, excluded.complement(), usize::MAX)
    }

    /// Never answers.
    pub fn silent(model: Model) -> EpOracle {
        EpOracle::new(model, SetPredicate::nothing(), usize::MAX)
    }

    pub fn model(&self) -> &Model {
        &self.0.model
    }

    pub fn domain(&self) -> &SetPredicate {
        &self.0.domain
    }

    fn form(&self, w: &Word) -> Option<Element> {
        self.forms(std::slice::from_ref(w)).pop().flatten()
    }

    /// Cached normal forms, `None` off the domain.
    fn forms(&self, words: &[Word]) -> Vec<Option<Element>> {
        let mut forms = self.0.forms.lock().expect("oracle cache poisoned");
        words
            .iter()
            .map(|w| {
                if let Some(f) = forms.get(w) {
                    return f.clone();
                }
                let f = match self.0.domain.contains(w) {
                    Ok(true) => Some(self.0.model.normal_form(w)),
                    _ => None,
                };
                forms.insert(w.clone(), f.clone());
                f
            })
            .collect()
    }

    fn answer(&self, u: (&Word, &Option<Element>), v: (&Word, &Option<Element>)) -> EpAnswer {
        if u.0.len().saturating_add(v.0.len()) > self.0.max_len {
            return EpAnswer::Unknown;
        }
        match (u.1, v.1) {
            (Some(a), Some(b)) if a == b => EpAnswer::Equal,
            (Some(_), Some(_)) => EpAnswer::Distinct,
            _ => EpAnswer::Unknown,
        }
    }

    fn record(&self, local: &QueryStats) {
        let mut s = self.0.stats.lock().expect("oracle stats poisoned");
        s.queries += local.queries;
        s.equal += local.equal;
        s.distinct += local.distinct;
        s.unknown += local.unknown;
    }

    pub fn query(&self, u: &Word, v: &Word) -> EpAnswer {
        let (fu, fv) = (self.form(u), self.form(v));
        let answer = self.answer((u, &fu), (v, &fv));
        let mut local = QueryStats::default();
        local.count(answer);
        self.record(&local);
        answer
    }

    /// Many queries against a fixed list of words, with their forms looked
    /// up once. Each pair asked still counts as one query.
    pub fn prepare(&self, words: Vec<Word>) -> Prepared {
        Prepared {
            oracle: self.clone(),
            forms: self.forms(&words),
            words,
            local: QueryStats::default(),
        }
    }

    pub fn stats(&self) -> QueryStats {
        self.0.stats.lock().expect("oracle stats poisoned").clone()
    }
}

/// Queries over a fixed word list. Counts reach the oracle on `flush` or
/// when dropped.
pub struct Prepared {
    oracle: EpOracle,
    words: Vec<Word>,
    forms: Vec<Option<Element>>,
    local: QueryStats,
}

impl Prepared {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Query between two listed words.
    pub fn pair(&mut self, i: usize, j: usize) -> EpAnswer {
        let a = self
            .oracle
            .answer((&self.words[i], &self.forms[i]), (&self.words[j], &self.forms[j]));
        self.local.count(a);
        a
    }

    /// Query between an outside word and a listed one.
    pub fn against(&mut self, u: &Word, fu: &Option<Element>, j: usize) -> EpAnswer {
        let a = self.oracle.answer((u, fu), (&self.words[j], &self.forms[j]));
        self.local.count(a);
        a
    }

    pub fn lookup(&self, u: &Word) -> Option<Element> {
        self.oracle.form(u)
    }

    pub fn flush(&mut self) {
        self.oracle.record(&self.local);
        self.local = QueryStats::default();
    }
}

impl Drop for Prepared {
    fn drop(&mut self) {
        self.flush();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::builtin_model;

    #[test]
    fn answers_only_on_the_domain() {
        let m = builtin_model("Z2").unwrap();
        let a = m.alphabet().clone();
        let w = |t: &str| a.parse_word(t).unwrap();
        let o = EpOracle::excluding(m.clone(), &SetPredicate::nonempty_powers_of(0));
        assert_eq!(o.query(&w("xy"), &w("yx")), EpAnswer::Equal);
        assert_eq!(o.query(&w("y"), &w("yy")), EpAnswer::Distinct);
        assert_eq!(o.query(&w("xx"), &w("yxxY")), EpAnswer::Unknown);
        assert_eq!(o.query(&w("1"), &w("xX")), EpAnswer::Equal);
        let s = o.stats();
        assert_eq!((s.queries, s.equal, s.distinct, s.unknown), (4, 2, 1, 1));
        let quiet = EpOracle::silent(m.clone());
        assert_eq!(quiet.query(&w("y"), &w("y")), EpAnswer::Unknown);
        let short = EpOracle::new(m, SetPredicate::everything(), 3);
        assert_eq!(short.query(&w("xy"), &w("yx")), EpAnswer::Unknown);
        assert_eq!(short.query(&w("x"), &w("yx")), EpAnswer::Distinct);
    }
}
