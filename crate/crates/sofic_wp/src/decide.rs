use std::collections::HashMap;

use folner::{box_certificate, FolnerCertificate};
use freegroup::{Alphabet, Word};
use presentations::ratio::{self, Q};
use presentations::{translation_relations, KernelStream, Model, SeededKernel};
use serde::{Deserialize, Serialize};

use crate::error::SoficError;
use crate::perm::{complete_to_permutation, evaluate_word, hamming_length, Permutation};
use crate::sigma::{build_partial_injections, symmetrize, SymmetricCertificate};

/// Source of injective Følner certificates.
pub trait FolnerSupplier {
    fn alphabet(&self) -> &Alphabet;

    /// An injective certificate at level at least `n`.
    fn certificate(&mut self, n: u64) -> Result<FolnerCertificate, SoficError>;

    /// Kernel words the supplier vouches for; they are fed before the kernel
    /// stream.
    fn kernel_hints(&mut self, _cert: &SymmetricCertificate) -> Vec<Word> {
        Vec::new()
    }
}

/// Explicit boxes checked by a model's oracle. With hints on, it also hands
/// over the relations `l·f_i·f_j^-1` that its oracle sees inside the box.
pub struct BoxSupplier {
    model: Model,
    hints: bool,
}

impl BoxSupplier {
    pub fn new(model: Model) -> BoxSupplier {
        BoxSupplier { model, hints: true }
    }

    pub fn without_hints(model: Model) -> BoxSupplier {
        BoxSupplier { model, hints: false }
    }
}

impl FolnerSupplier for BoxSupplier {
    fn alphabet(&self) -> &Alphabet {
        self.model.alphabet()
    }

    fn certificate(&mut self, n: u64) -> Result<FolnerCertificate, SoficError> {
        Ok(box_certificate(self.model.as_ref(), n)?)
    }

    fn kernel_hints(&mut self, cert: &SymmetricCertificate) -> Vec<Word> {
        if !self.hints {
            return Vec::new();
        }
        translation_relations(&self.model, cert.letters(), cert.words())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpVerdict {
    pub word: String,
    pub verdict: Verdict,
    #[serde(with = "ratio::serde_q")]
    pub hamming: Q,
    pub n: u64,
    pub k: usize,
    pub kernel_consumed: usize,
}

impl WpVerdict {
    pub fn is_trivial(&self) -> bool {
        self.verdict == Verdict::Trivial
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

/// Permutations built from one `n²`-Følner certificate; they serve every
/// word with `max(|ω|, 3) = n`.
#[derive(Clone, Debug)]
pub struct SoficLevel {
    pub n: u64,
    pub k: usize,
    pub perms: Vec<Permutation>,
    pub kernel_consumed: usize,
}

pub fn word_level(w: &Word) -> u64 {
    (w.len() as u64).max(3)
}

pub fn prepare_level(
    supplier: &mut dyn FolnerSupplier,
    kernel: KernelStream,
    n: u64,
    budget: usize,
) -> Result<SoficLevel, SoficError> {
    let want = n * n;
    let cert = supplier.certificate(want)?;
    if cert.n < want {
        return Err(SoficError::WrongLevel { got: cert.n, want });
    }
    let sym = symmetrize(&cert, supplier.alphabet())?;
    let hints = supplier.kernel_hints(&sym);
    let mut stream = SeededKernel::new(hints, kernel);
    let built = build_partial_injections(&sym, &mut stream, n, budget)?;
    Ok(SoficLevel {
        n,
        k: sym.k(),
        perms: built.sigmas.iter().map(complete_to_permutation).collect(),
        kernel_consumed: built.consumed,
    })
}

/// Evaluates `w` on a prepared level and applies the cut at 1/2, rejecting
/// values inside the forbidden gap.
pub fn verdict_on(level: &SoficLevel, w: &Word, alphabet: &Alphabet) -> Result<WpVerdict, SoficError> {
    let sigma = evaluate_word(w, &level.perms, level.k)?;
    let h = hamming_length(&sigma);
    let n = level.n;
    if h > ratio::q(1, n as i64) && h < ratio::q(n as i64 - 1, n as i64) {
        return Err(SoficError::GapViolation {
            word: alphabet.format_word(w),
            value: ratio::to_string(&h),
            n,
        });
    }
    let verdict = if h < ratio::q(1, 2) {
        Verdict::Trivial
    } else {
        Verdict::Nontrivial
    };
    Ok(WpVerdict {
        word: alphabet.format_word(w),
        verdict,
        hamming: h,
        n,
        k: level.k,
        kernel_consumed: level.kernel_consumed,
    })
}

/// Decides one word from scratch.
pub fn decide_word(
    w: &Word,
    supplier: &mut dyn FolnerSupplier,
    kernel: KernelStream,
    budget: usize,
) -> Result<WpVerdict, SoficError> {
    let level = prepare_level(supplier, kernel, word_level(w), budget)?;
    verdict_on(&level, w, supplier.alphabet())
}

pub type KernelFactory = Box<dyn FnMut() -> KernelStream + Send>;

/// A decider that keeps the permutations of each level it has built.
pub struct SoficDecider<S: FolnerSupplier> {
    supplier: S,
    kernel: KernelFactory,
    budget: usize,
    levels: HashMap<u64, SoficLevel>,
}

impl<S: FolnerSupplier> SoficDecider<S> {
    pub fn new(supplier: S, kernel: KernelFactory, budget: usize) -> SoficDecider<S> {
        SoficDecider {
            supplier,
            kernel,
            budget,
            levels: HashMap::new(),
        }
    }

    pub fn level(&mut self, n: u64) -> Result<&SoficLevel, SoficError> {
        if !self.levels.contains_key(&n) {
            let level = prepare_level(&mut self.supplier, (self.kernel)(), n, self.budget)?;
            self.levels.insert(n, level);
        }
        Ok(&self.levels[&n])
    }

    pub fn decide(&mut self, w: &Word) -> Result<WpVerdict, SoficError> {
        let n = word_level(w);
        self.level(n)?;
        verdict_on(&self.levels[&n], w, self.supplier.alphabet())
    }

    pub fn supplier(&self) -> &S {
        &self.supplier
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::{builtin_model, StagedKernel};

    fn decider(name: &str) -> SoficDecider<BoxSupplier> {
        let model = builtin_model(name).unwrap();
        let pres = model.presentation().clone();
        SoficDecider::new(
            BoxSupplier::new(model),
            Box::new(move || Box::new(StagedKernel::new(&pres))),
            1_000_000,
        )
    }

    #[test]
    fn z2_examples() {
        let mut d = decider("Z2");
        let a = d.supplier().alphabet().clone();
        let comm = d.decide(&a.parse_word("xyXY").unwrap()).unwrap();
        assert!(comm.is_trivial());
        assert!(comm.hamming <= ratio::q(1, 4));
        let x = d.decide(&a.parse_word("x").unwrap()).unwrap();
        assert!(!x.is_trivial());
        assert!(x.hamming >= ratio::q(2, 3));
        let e = d.decide(&Word::empty()).unwrap();
        assert_eq!((e.verdict, e.n, e.hamming.clone()), (Verdict::Trivial, 3, ratio::qi(0)));
    }

    #[test]
    fn verdict_json() {
        let mut d = decider("Z");
        let a = d.supplier().alphabet().clone();
        let v = d.decide(&a.parse_word("xxX").unwrap()).unwrap();
        let text = v.to_json();
        assert!(text.contains("\"verdict\":\"nontrivial\""));
        let back: WpVerdict = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn corrupt_permutations_trip_the_gap_check() {
        let level = SoficLevel {
            n: 3,
            k: 4,
            perms: vec![Permutation::from_images(vec![1, 0, 2, 3]); 2],
            kernel_consumed: 0,
        };
        let a = Alphabet::with_names(&['x']).unwrap();
        let err = verdict_on(&level, &a.parse_word("x").unwrap(), &a).unwrap_err();
        assert!(matches!(err, SoficError::GapViolation { n: 3, .. }));
    }

    #[test]
    fn non_injective_certificates_are_refused() {
        struct Bad(Model);
        impl FolnerSupplier for Bad {
            fn alphabet(&self) -> &Alphabet {
                self.0.alphabet()
            }
            fn certificate(&mut self, n: u64) -> Result<FolnerCertificate, SoficError> {
                let mut c = box_certificate(self.0.as_ref(), n)?;
                c.injective = false;
                Ok(c)
            }
        }
        let model = builtin_model("Z").unwrap();
        let pres = model.presentation().clone();
        let err = decide_word(
            &Word::empty(),
            &mut Bad(model),
            Box::new(StagedKernel::new(&pres)),
            10,
        )
        .unwrap_err();
        assert_eq!(err, SoficError::NotInjective);
    }
}
