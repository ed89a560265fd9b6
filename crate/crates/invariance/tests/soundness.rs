use std::collections::BTreeMap;

use freegroup::{ball, Word};
use invariance::{exact_invariance, KappaRun, WeightedSupport};
use presentations::{builtin_model, KernelKind, Q};
use proptest::prelude::*;

const MODELS: [&str; 9] = ["Z", "Z2", "Z3", "Z4", "heisenberg", "lamplighter", "bs12", "C6", "free2"];

fn case() -> impl Strategy<Value = (usize, Vec<(usize, i64)>, bool)> {
    (0..MODELS.len(), prop::collection::vec((0usize..400, 1i64..5), 1..10), any::<bool>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn runs_stay_above_the_exact_invariance((model, entries, syllable) in case()) {
        let name = MODELS[model];
        let m = builtin_model(name).unwrap();
        let words: Vec<Word> = ball(m.alphabet(), 3).collect();
        let entries: BTreeMap<Word, Q> =
            entries.iter().map(|&(i, w)| (words[i % words.len()].clone(), Q::from_integer(w.into()))).collect();
        let f = WeightedSupport::new(entries).unwrap();
        let exact = exact_invariance(&f, m.as_ref());
        let kind = if syllable { KernelKind::Syllable } else { KernelKind::Staged };
        let budget = if name == "C6" { 6 } else { 60 };

        let mut run = KappaRun::new(f, m.alphabet(), 1).unwrap();
        let mut last = run.m_values();
        for eta in kind.stream(&m).take(budget) {
            run.step(&eta);
            let now = run.m_values();
            for g in 0..now.len() {
                prop_assert!(now[g] <= last[g], "{name}: M went up");
                prop_assert!(now[g] >= exact[g], "{name}: M below exact");
            }
            last = now;
        }
        let mut partition = run.partition().clone();
        for block in partition.blocks() {
            for v in &block[1..] {
                prop_assert!(m.is_trivial(&block[0].inv().mul(v)), "{name}: merged distinct elements");
            }
        }
    }
}
