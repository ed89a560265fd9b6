use folner::{images, letter_ratios, FolnerCertificate};
use freegroup::{Alphabet, Letter, Word, WordIndex};
use presentations::{GroupModel, Q};

use crate::error::SoficError;
use crate::perm::PartialInjection;

/// An injective Følner word set read over the doubled alphabet: letter code
/// `c` is a generator of its own, so inverses get independent permutations.
#[derive(Clone, Debug)]
pub struct SymmetricCertificate {
    words: WordIndex,
    letters: Vec<Letter>,
    n: u64,
}

pub fn symmetrize(cert: &FolnerCertificate, alphabet: &Alphabet) -> Result<SymmetricCertificate, SoficError> {
    if !cert.injective {
        return Err(SoficError::NotInjective);
    }
    if cert.words.is_empty() {
        return Err(SoficError::EmptyCertificate);
    }
    let letters = (0..2 * alphabet.rank() as u16).map(Letter::from_code).collect();
    Ok(SymmetricCertificate {
        words: WordIndex::new(cert.words.iter().cloned().collect()),
        letters,
        n: cert.n,
    })
}

impl SymmetricCertificate {
    pub fn k(&self) -> usize {
        self.words.len()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        self.words.words()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `|Ω ∖ lΩ| / |Ω|` for all `2d` letters, via an oracle.
    pub fn ratios(&self, model: &dyn GroupModel) -> Vec<Q> {
        let set = self.words.words().iter().cloned().collect();
        let (omega, _) = images(&set, model);
        letter_ratios(&omega, model, &self.letters)
    }
}

#[derive(Clone, Debug)]
pub struct SigmaBuild {
    /// One partial injection per letter code.
    pub sigmas: Vec<PartialInjection>,
    /// Stream elements drawn; the empty word is always used first and is not
    /// counted.
    pub consumed: usize,
}

/// Least size every Σ must reach: `(1 - 1/n²) k`, rounded up.
pub fn sigma_target(k: usize, n: u64) -> usize {
    let n2 = (n as u128) * (n as u128);
    let need = (n2 - 1) * k as u128;
    need.div_ceil(n2) as usize
}

/// Fills `Σ_ℓ = {(i, j) : x_ℓ f_i f_j^-1 ∈ K}` while drawing kernel elements
/// into `K`, until every `|Σ_ℓ|` reaches [`sigma_target`].
///
/// A pair `(i, j)` is found from `η` as a solution of `η f_j = x_ℓ f_i`, so
/// one pass of [`WordIndex::left_products`] handles all letters at once.
pub fn build_partial_injections(
    cert: &SymmetricCertificate,
    kernel: &mut dyn Iterator<Item = Word>,
    n: u64,
    budget: usize,
) -> Result<SigmaBuild, SoficError> {
    let k = cert.k();
    let targets = WordIndex::new(
        cert.letters
            .iter()
            .flat_map(|&l| cert.words().iter().map(move |f| Word::letter(l).mul(f)))
            .collect(),
    );
    let mut sigmas = vec![PartialInjection::new(k); cert.letters.len()];
    let want = sigma_target(k, n);
    let done = |s: &[PartialInjection]| s.iter().all(|p| p.len() >= want);
    let feed = |eta: &Word, sigmas: &mut [PartialInjection]| -> Result<(), SoficError> {
        for (j, t) in cert.words.left_products(eta, &targets) {
            sigmas[t / k].insert(t % k, j)?;
        }
        Ok(())
    };
    feed(&Word::empty(), &mut sigmas)?;
    let mut consumed = 0;
    while !done(&sigmas) {
        if consumed >= budget {
            return Err(SoficError::KernelExhausted { consumed });
        }
        let Some(eta) = kernel.next() else {
            return Err(SoficError::KernelExhausted { consumed });
        };
        consumed += 1;
        feed(&eta, &mut sigmas)?;
    }
    Ok(SigmaBuild { sigmas, consumed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use folner::{box_certificate, power_box};
    use presentations::{builtin_model, ratio, FreeModel};

    #[test]
    fn targets() {
        assert_eq!(sigma_target(81, 3), 72);
        assert_eq!(sigma_target(80, 3), 72);
        assert_eq!(sigma_target(3, 3), 3);
        assert_eq!(sigma_target(10, 1), 0);
    }

    #[test]
    fn segment_is_symmetric() {
        let z = builtin_model("Z").unwrap();
        let cert = box_certificate(z.as_ref(), 7).unwrap();
        let sym = symmetrize(&cert, z.alphabet()).unwrap();
        assert_eq!(sym.letters().len(), 2);
        assert_eq!(sym.k(), cert.len());
        assert_eq!(sym.ratios(z.as_ref()), vec![ratio::q(1, 7), ratio::q(1, 7)]);
    }

    #[test]
    fn z_segment_needs_no_kernel() {
        let z = builtin_model("Z").unwrap();
        let cert = box_certificate(z.as_ref(), 9).unwrap();
        let sym = symmetrize(&cert, z.alphabet()).unwrap();
        let built = build_partial_injections(&sym, &mut std::iter::empty(), 3, 0).unwrap();
        assert_eq!(built.consumed, 0);
        let x: Vec<_> = built.sigmas[0].pairs().collect();
        assert_eq!(x.len(), 8);
        for (i, j) in x {
            assert_eq!(sym.words()[j], Word::letter(Letter::pos(0)).mul(&sym.words()[i]));
        }
    }

    #[test]
    fn free_pairs_are_literal() {
        let a = Alphabet::new(2).unwrap();
        let model = FreeModel::new(a.clone());
        let cert = FolnerCertificate::from_oracle(freegroup::ball(&a, 2).collect(), &model, 1).unwrap();
        let sym = symmetrize(&cert, &a).unwrap();
        let err = build_partial_injections(&sym, &mut std::iter::empty(), 2, 10).unwrap_err();
        assert_eq!(err, SoficError::KernelExhausted { consumed: 0 });
        let built = build_partial_injections(&sym, &mut std::iter::empty(), 1, 0).unwrap();
        let index = WordIndex::new(sym.words().to_vec());
        for (l, s) in sym.letters().iter().zip(&built.sigmas) {
            let literal: Vec<(usize, usize)> = sym
                .words()
                .iter()
                .enumerate()
                .filter_map(|(i, f)| index.position(&Word::letter(*l).mul(f)).map(|j| (i, j)))
                .collect();
            assert_eq!(s.pairs().collect::<Vec<_>>(), literal);
        }
    }

    #[test]
    fn pairs_agree_with_the_oracle() {
        let z2 = builtin_model("Z2").unwrap();
        let cert = FolnerCertificate::from_oracle(power_box(2, 4), z2.as_ref(), 4).unwrap();
        let sym = symmetrize(&cert, z2.alphabet()).unwrap();
        let mut kernel = presentations::OracleKernel::new(z2.clone());
        let built = build_partial_injections(&sym, &mut kernel, 2, 100_000).unwrap();
        for (l, s) in sym.letters().iter().zip(&built.sigmas) {
            assert!(s.len() >= sigma_target(16, 2));
            for (i, j) in s.pairs() {
                let lhs = z2.normal_form(&Word::letter(*l).mul(&sym.words()[i]));
                assert_eq!(lhs, z2.normal_form(&sym.words()[j]));
            }
        }
    }
}
