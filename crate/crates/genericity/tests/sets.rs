use freegroup::{ball, ball_size, Alphabet, FiniteWordSet, Word};
use genericity::{
    density, find_translate, packing_limit, packing_ratio, ratio, t_f_set, translated_ball, GenericityError, Growth,
    SetPredicate,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn ball_formula_matches_enumeration() {
    for n in 0..=8usize {
        let two = Alphabet::new(2).unwrap();
        assert_eq!(ball(&two, n).count() as u128, 2 * 3u128.pow(n as u32) - 1);
        assert_eq!(ball_size(2, n), 2 * 3u128.pow(n as u32) - 1);
        let one = Alphabet::new(1).unwrap();
        assert_eq!(ball(&one, n).count() as u128, 2 * n as u128 + 1);
    }
}

#[test]
fn translate_away_from_a_cyclic_subgroup() {
    let a = Alphabet::with_names(&['x', 'y']).unwrap();
    let s = SetPredicate::powers_of(0).complement();
    let f: FiniteWordSet = ball(&a, 1).collect();
    let y = find_translate(&s, &f, &a, 1000).unwrap();
    assert_eq!(a.format_word(&y), "xy");
    for w in f.iter() {
        let fy = w.mul(&y);
        assert!(!fy.letters().iter().all(|l| l.generator() == 0));
    }
}

#[test]
fn translate_out_of_a_ball() {
    let a = Alphabet::new(2).unwrap();
    let s = SetPredicate::ball(3).complement();
    let f: FiniteWordSet = ball(&a, 1).collect();
    let y = find_translate(&s, &f, &a, 10_000).unwrap();
    assert_eq!(y.len(), 5);
    assert!(f.iter().all(|w| w.mul(&y).len() >= 4));
}

#[test]
fn t_f_with_f_zero_is_everything() {
    let a = Alphabet::new(2).unwrap();
    let t = t_f_set(|_| 0, 0, Growth { linear_from: u64::MAX });
    for n in 0..=5 {
        assert_eq!(density(&t, &a, n).unwrap(), ratio(1, 1));
    }
}

#[test]
fn t_f_square_is_sparse_but_holds_translated_balls() {
    let a = Alphabet::new(2).unwrap();
    let t = t_f_set(|n| n * n, 0, Growth { linear_from: 0 });
    let d12 = density(&t, &a, 12).unwrap();
    assert!(d12 < ratio(1, 20), "{d12}");
    for n in 0..=4usize {
        for w in translated_ball(&a, n, 0, (n * n) as u64) {
            assert!(t.contains(&w).unwrap());
        }
    }
    let f: FiniteWordSet = ball(&a, 2).collect();
    let y = find_translate(&t, &f, &a, 1000).unwrap();
    assert_eq!(a.format_word(&y), "aaaa");
    assert!(f.iter().all(|w| t.contains(&w.mul(&y)).unwrap()));
}

#[test]
fn t_f_growth_violation_is_reported() {
    let t = t_f_set(|n| if n < 3 { n * 10 } else { 5 }, 0, Growth { linear_from: 0 });
    let w = Word::power(1, 30);
    assert_eq!(t.contains(&w), Err(GenericityError::BoundViolated(2)));
}

#[test]
fn packing_converges_monotonically() {
    let a = Alphabet::new(2).unwrap();
    let limit = packing_limit(2, 1);
    assert_eq!(limit, ratio(2, 27));
    let mut prev_err: Option<f64> = None;
    for n in 3..=20 {
        let r = packing_ratio(&a, 1, n).unwrap();
        let err = (r - &limit).to_f64().unwrap();
        assert!(err > 0.0);
        if let Some(p) = prev_err {
            assert!(err <= p / 2.0, "n = {n}");
        }
        prev_err = Some(err);
    }
    assert!(prev_err.unwrap() < 1e-3);
    let z = Alphabet::new(1).unwrap();
    let r = packing_ratio(&z, 2, 2000).unwrap() - packing_limit(1, 2);
    assert!(r.to_f64().unwrap().abs() < 1e-3);
}

proptest! {
    #[test]
    fn translate_witness_rechecks(gen in 0usize..2, radius in 0usize..3, seed_len in 0usize..3) {
        let a = Alphabet::new(2).unwrap();
        let s = SetPredicate::powers_of(gen).complement();
        let f: FiniteWordSet = ball(&a, radius).chain(std::iter::once(Word::power(1 - gen, seed_len as i64))).collect();
        let y = find_translate(&s, &f, &a, 100_000).unwrap();
        for w in f.iter() {
            let fy = w.mul(&y);
            prop_assert!(!fy.letters().iter().all(|l| l.generator() == gen));
        }
    }
}
