use folner::{is_folner, Witness};
use freegroup::{ball, Word};
use generic_ep::{enumerate_injective_families, generic_ep_to_wp, EpOracle, PipelineConfig, PipelineVerdict, Transcript};
use genericity::SetPredicate;
use presentations::{builtin_model, pushforward, ratio};

fn restricted_z2() -> (presentations::Model, EpOracle) {
    let m = builtin_model("Z2").unwrap();
    let o = EpOracle::excluding(m.clone(), &SetPredicate::nonempty_powers_of(0));
    (m, o)
}

#[test]
fn total_oracle_agrees_on_ball_six() {
    let m = builtin_model("Z2").unwrap();
    let mut d = generic_ep_to_wp(EpOracle::total(m.clone()), m.presentation().clone(), PipelineConfig::default());
    for w in ball(m.alphabet(), 6) {
        match d.decide(&w).unwrap() {
            PipelineVerdict::Decided(v) => assert_eq!(v.is_trivial(), m.is_trivial(&w), "{}", v.word),
            PipelineVerdict::Undecided { word, reason } => panic!("{word}: {reason}"),
        }
    }
}

#[test]
fn free_group_never_certifies() {
    let f = builtin_model("free2").unwrap();
    let config = PipelineConfig {
        max_rounds: 12,
        sigma_budget: 1000,
    };
    let mut d = generic_ep_to_wp(EpOracle::total(f.clone()), f.presentation().clone(), config);
    for w in ball(f.alphabet(), 2).filter(|w| !w.is_empty()) {
        assert!(matches!(d.decide(&w).unwrap(), PipelineVerdict::Undecided { .. }));
    }
    assert!(d.transcript().certificates.is_empty());
}

#[test]
fn emitted_families_are_injective() {
    let (m, o) = restricted_z2();
    for f in enumerate_injective_families(o, m.alphabet()).take(14) {
        let (_, injective) = folner::images(&f, m.as_ref());
        assert!(injective);
    }
    let h = builtin_model("heisenberg").unwrap();
    for f in enumerate_injective_families(EpOracle::total(h.clone()), h.alphabet()).take(14) {
        assert!(folner::images(&f, h.as_ref()).1);
    }
}

#[test]
fn families_contain_folner_sets() {
    let (m, o) = restricted_z2();
    let fams: Vec<_> = enumerate_injective_families(o, m.alphabet()).take(12).collect();
    for n in 1..=3 {
        assert!(fams.iter().any(|f| is_folner(f, m.as_ref(), n)), "n = {n}");
    }
}

#[test]
fn certificates_push_forward_to_characteristic_functions() {
    let (m, o) = restricted_z2();
    let mut d = generic_ep_to_wp(o, m.presentation().clone(), PipelineConfig::default());
    for level in [1, 4, 9] {
        let c = d.certify(level).unwrap();
        assert_eq!(c.certificate.n, 2 * level);
        let Witness::Reiter(inv) = &c.certificate.witness else {
            panic!("expected an invariance witness");
        };
        for class in pushforward(inv.function.iter(), m.as_ref()) {
            assert_eq!(class.mass, ratio::qi(1));
        }
        c.certificate.validate(m.as_ref()).unwrap();
    }
}

#[test]
fn excluded_words_are_decided_too() {
    let (m, o) = restricted_z2();
    let mut d = generic_ep_to_wp(o, m.presentation().clone(), PipelineConfig::default());
    let a = m.alphabet().clone();
    for (t, trivial) in [("xxx", false), ("x", false), ("xX", true), ("xyXY", true)] {
        let w: Word = a.parse_word(t).unwrap();
        match d.decide(&w).unwrap() {
            PipelineVerdict::Decided(v) => assert_eq!(v.is_trivial(), trivial, "{t}"),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn transcripts_replay() {
    let run = || {
        let (m, o) = restricted_z2();
        let mut d = generic_ep_to_wp(o, m.presentation().clone(), PipelineConfig::default());
        for w in ball(m.alphabet(), 2) {
            d.decide(&w).unwrap();
        }
        d.transcript().to_json()
    };
    let a = run();
    assert_eq!(a, run());
    let back: Transcript = serde_json::from_str(&a).unwrap();
    assert_eq!(back.to_json(), a);
}
