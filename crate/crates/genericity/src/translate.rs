use freegroup::{all_words, ball_size, sphere, sphere_size, Alphabet, FiniteWordSet, Word};
use num_rational::BigRational;

use crate::density::ratio;
use crate::error::GenericityError;
use crate::predicate::SetPredicate;

/// First `y` in shortlex order with `F·y ⊆ S`, trying at most `budget`
/// candidates. Running out says nothing about existence.
pub fn find_translate(
    pred: &SetPredicate,
    f: &FiniteWordSet,
    alphabet: &Alphabet,
    budget: usize,
) -> Result<Word, GenericityError> {
    for y in all_words(alphabet).take(budget) {
        let mut inside = true;
        for w in f.iter() {
            if !pred.contains(&w.mul(&y))? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(y);
        }
    }
    Err(GenericityError::NotFoundWithinBudget(budget))
}

/// For each `ω ∈ S_m` in shortlex order, the first `a ∈ S_k` whose last
/// letter does not cancel the first letter of `ω`.
pub fn disjoint_translates(alphabet: &Alphabet, k: usize, m: usize) -> Vec<(Word, Word)> {
    let prefixes: Vec<Word> = sphere(alphabet, k).collect();
    sphere(alphabet, m)
        .map(|w| {
            let a = prefixes
                .iter()
                .find(|a| match (a.last(), w.first()) {
                    (Some(l), Some(r)) => l != r.inverse(),
                    _ => true,
                })
                .expect("some letter of S_k avoids one inverse")
                .clone();
            (w, a)
        })
        .collect()
}

/// `|S_{n-2k}| / |B_n|` for `d ≥ 2`. In rank one the spheres are too thin
/// for that count, and the ratio reported is the share of `B_n` filled by
/// disjoint copies of `B_k`, `⌊|B_n| / |B_k|⌋ / |B_n|`.
pub fn packing_ratio(alphabet: &Alphabet, k: usize, n: usize) -> Result<BigRational, GenericityError> {
    let d = alphabet.rank();
    if d == 0 {
        return Err(GenericityError::ZeroRank);
    }
    if n <= 2 * k {
        return Err(GenericityError::ShortRadius { n, k });
    }
    let b = ball_size(d, n);
    if d == 1 {
        return Ok(ratio(b / ball_size(1, k), b));
    }
    Ok(ratio(sphere_size(d, n - 2 * k), b))
}

/// Limit of [`packing_ratio`] as `n → ∞`: `(2d-2)/(2d-1)^{2k+1}` for
/// `d ≥ 2` and `1/(2k+1)` for `d = 1`.
pub fn packing_limit(rank: usize, k: usize) -> BigRational {
    if rank == 1 {
        return ratio(1, 2 * k as u128 + 1);
    }
    let base = 2 * rank as u128 - 1;
    ratio(2 * rank as u128 - 2, base.pow(2 * k as u32 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn everything_takes_the_empty_word() {
        let a = Alphabet::new(2).unwrap();
        let f: FiniteWordSet = freegroup::ball(&a, 2).collect();
        assert_eq!(find_translate(&SetPredicate::everything(), &f, &a, 1).unwrap(), Word::empty());
        assert_eq!(
            find_translate(&SetPredicate::nothing(), &f, &a, 50),
            Err(GenericityError::NotFoundWithinBudget(50))
        );
    }

    #[test]
    fn seam_never_cancels() {
        for d in 1..=3 {
            let a = Alphabet::new(d).unwrap();
            for k in 1..=2 {
                for m in 1..=3 {
                    for (w, t) in disjoint_translates(&a, k, m) {
                        assert_eq!(t.len(), k);
                        assert_eq!(t.mul(&w).len(), m + k);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_two_first_choice() {
        let a = Alphabet::new(2).unwrap();
        for (w, t) in disjoint_translates(&a, 1, 2) {
            let want = if w.first() == Some(freegroup::Letter::neg(0)) { "A" } else { "a" };
            assert_eq!(a.format_word(&t), want);
        }
    }

    #[test]
    fn packed_balls_are_disjoint() {
        for (d, k, m) in [(2, 1, 3), (2, 2, 2), (3, 1, 2)] {
            let a = Alphabet::new(d).unwrap();
            let pairs = disjoint_translates(&a, k, m);
            let bk: Vec<Word> = freegroup::ball(&a, k).collect();
            let mut seen = HashSet::new();
            for (w, t) in &pairs {
                let c = t.mul(w);
                for b in &bk {
                    let u = b.mul(&c);
                    assert!(u.len() <= m + 2 * k);
                    assert!(seen.insert(u));
                }
            }
            assert_eq!(seen.len() as u128, ball_size(d, k) * sphere_size(d, m));
        }
    }

    #[test]
    fn packing_values() {
        let a = Alphabet::new(2).unwrap();
        assert_eq!(packing_limit(2, 1), ratio(2, 27));
        assert_eq!(packing_ratio(&a, 1, 3).unwrap(), ratio(4, 53));
        assert!(packing_ratio(&a, 1, 2).is_err());
        let z = Alphabet::new(1).unwrap();
        assert_eq!(packing_ratio(&z, 1, 4).unwrap(), ratio(3, 9));
        assert_eq!(packing_limit(1, 3), ratio(1, 7));
    }
}
