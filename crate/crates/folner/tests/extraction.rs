use folner::{folner_from_reiter, is_folner, reiter_search, universal_run, Member, SubsetOrder, UniversalOutcome};
use presentations::{builtin_model, pushforward, KernelKind};

#[test]
fn level_sets_of_reiter_certificates_are_folner() {
    let m = builtin_model("Z2").unwrap();
    for n in 1..=3 {
        let out = reiter_search(m.alphabet(), KernelKind::Syllable.stream(&m), n, SubsetOrder::Boxed, 20_000).unwrap();
        let cert = out.certificate().expect("Z2 is certified");
        let f = folner_from_reiter(cert, m.as_ref()).unwrap();
        f.validate(m.as_ref()).unwrap();
        assert!(is_folner(&f.words, m.as_ref(), n));
        assert!(f.len() <= pushforward(cert.function.iter(), m.as_ref()).len());
    }
}

#[test]
fn universal_runs_report_per_member() {
    let member = |name: &str| {
        let m = builtin_model(name).unwrap();
        Member {
            name: name.to_string(),
            alphabet: m.alphabet().clone(),
            kernel: KernelKind::Syllable.stream(&m),
        }
    };
    let out = universal_run(vec![member("Z"), member("Z2"), member("free2")], 2, SubsetOrder::Boxed, 2000).unwrap();
    let names: Vec<&str> = out.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["Z", "Z2", "free2"]);
    for (name, o) in &out[..2] {
        match o {
            UniversalOutcome::Accepted { certificate, support_bound } => {
                assert_eq!(*support_bound, certificate.function.len(), "{name}");
            }
            UniversalOutcome::Pending => panic!("{name} pending"),
        }
    }
    assert!(matches!(out[2].1, UniversalOutcome::Pending));
}
