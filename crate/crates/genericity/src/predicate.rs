use std::fmt;
use std::sync::Arc;

use freegroup::Word;

use crate::error::GenericityError;

type Test = dyn Fn(&Word) -> Result<bool, GenericityError> + Send + Sync;

/// A membership test on reduced words with a label for reports.
#[derive(Clone)]
pub struct SetPredicate {
    label: String,
    test: Arc<Test>,
}

impl fmt::Debug for SetPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPredicate({})", self.label)
    }
}

impl SetPredicate {
    pub fn new(label: impl Into<String>, test: impl Fn(&Word) -> bool + Send + Sync + 'static) -> SetPredicate {
        SetPredicate {
            label: label.into(),
            test: Arc::new(move |w| Ok(test(w))),
        }
    }

    pub fn fallible(
        label: impl Into<String>,
        test: impl Fn(&Word) -> Result<bool, GenericityError> + Send + Sync + 'static,
    ) -> SetPredicate {
        SetPredicate {
            label: label.into(),
            test: Arc::new(test),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, w: &Word) -> Result<bool, GenericityError> {
        (self.test)(w)
    }

    pub fn complement(&self) -> SetPredicate {
        let inner = self.test.clone();
        SetPredicate {
            label: format!("not {}", self.label),
            test: Arc::new(move |w| inner(w).map(|b| !b)),
        }
    }

    pub fn everything() -> SetPredicate {
        SetPredicate::new("everything", |_| true)
    }

    pub fn nothing() -> SetPredicate {
        SetPredicate::new("nothing", |_| false)
    }

    /// `{x^e : e ∈ ℤ}` for one generator, the empty word included.
    pub fn powers_of(generator: usize) -> SetPredicate {
        SetPredicate::new(format!("powers of x{}", generator + 1), move |w| is_power(w, generator))
    }

    /// Powers of one generator without the empty word.
    pub fn nonempty_powers_of(generator: usize) -> SetPredicate {
        SetPredicate::new(format!("nonempty powers of x{}", generator + 1), move |w| {
            !w.is_empty() && is_power(w, generator)
        })
    }

    pub fn ball(radius: usize) -> SetPredicate {
        SetPredicate::new(format!("ball of radius {radius}"), move |w| w.len() <= radius)
    }
}

fn is_power(w: &Word, generator: usize) -> bool {
    w.letters().iter().all(|l| l.generator() == generator)
}

/// Growth declaration that keeps membership in `T_f` decidable: from
/// `linear_from` on, `f(m + 1) ≥ f(m) + 1`. Use `u64::MAX` when `f` never
/// outgrows the radius (then a witness always turns up at `n = |w| + f(n)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Growth {
    pub linear_from: u64,
}

/// Steps of the membership search beyond the length of the word.
pub const TF_SEARCH_LIMIT: u64 = 1_000_000;

/// `T_f = ⋃_n B_n x^{f(n)}` for one generator `x`.
pub fn t_f_set(
    f: impl Fn(u64) -> u64 + Send + Sync + 'static,
    generator: usize,
    growth: Growth,
) -> SetPredicate {
    SetPredicate::fallible(format!("T_f along x{}", generator + 1), move |w| {
        t_f_contains(&f, generator, growth, w)
    })
}

fn t_f_contains(f: &dyn Fn(u64) -> u64, generator: usize, growth: Growth, w: &Word) -> Result<bool, GenericityError> {
    let len = w.len() as u64;
    for n in 0..=len + TF_SEARCH_LIMIT {
        let e = f(n);
        let back = w.mul(&Word::power(generator, -(e as i64)));
        if back.len() as u64 <= n {
            return Ok(true);
        }
        if n >= growth.linear_from {
            if f(n + 1) < e + 1 {
                return Err(GenericityError::BoundViolated(n));
            }
            // |w x^-f(m)| ≥ f(m) - |w| > m for every m ≥ n from here on
            if e > n + len {
                return Ok(false);
            }
        }
    }
    Err(GenericityError::Undecided(w.len()))
}

/// `B_n x^{f(n)}` listed explicitly, for witness checks.
pub fn translated_ball(alphabet: &freegroup::Alphabet, n: usize, generator: usize, e: u64) -> Vec<Word> {
    let shift = Word::power(generator, e as i64);
    freegroup::ball(alphabet, n).map(|b| b.mul(&shift)).collect()
}
