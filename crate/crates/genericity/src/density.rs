use std::io::Write;

use freegroup::{ball_size, sphere, sphere_size, Alphabet, Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenericityError;
use crate::predicate::SetPredicate;

/// Largest ball enumerated exhaustively.
pub const BALL_GUARD: u128 = 10_000_000;

pub fn ratio(p: u128, q: u128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn check_guard(alphabet: &Alphabet, radius: usize) -> Result<(), GenericityError> {
    let size = ball_size(alphabet.rank(), radius);
    if size > BALL_GUARD {
        return Err(GenericityError::Guard {
            radius,
            size,
            limit: BALL_GUARD,
        });
    }
    Ok(())
}

/// `|S ∩ B_n| / |B_n|` by enumeration.
pub fn density(pred: &SetPredicate, alphabet: &Alphabet, n: usize) -> Result<BigRational, GenericityError> {
    let report = density_report(pred, alphabet, n)?;
    Ok(report.rows.last().expect("radius 0 is always present").ratio())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRow {
    pub n: usize,
    pub hits: u128,
    pub ball: u128,
    pub sphere_hits: u128,
    pub sphere: u128,
}

impl DensityRow {
    pub fn ratio(&self) -> BigRational {
        ratio(self.hits, self.ball)
    }

    pub fn sphere_ratio(&self) -> BigRational {
        ratio(self.sphere_hits, self.sphere)
    }
}

/// Exact counts for every radius `0..=max_n`, by sphere and by ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub label: String,
    pub rows: Vec<DensityRow>,
}

pub fn density_report(pred: &SetPredicate, alphabet: &Alphabet, max_n: usize) -> Result<DensityReport, GenericityError> {
    check_guard(alphabet, max_n)?;
    let mut rows = Vec::with_capacity(max_n + 1);
    let mut hits = 0u128;
    for n in 0..=max_n {
        let mut sphere_hits = 0u128;
        for w in sphere(alphabet, n) {
            if pred.contains(&w)? {
                sphere_hits += 1;
            }
        }
        hits += sphere_hits;
        rows.push(DensityRow {
            n,
            hits,
            ball: ball_size(alphabet.rank(), n),
            sphere_hits,
            sphere: sphere_size(alphabet.rank(), n),
        });
    }
    Ok(DensityReport {
        label: pred.label().to_string(),
        rows,
    })
}

impl DensityReport {
    /// Columns `n,hits,ball,ratio,sphere_hits,sphere`; ratios as `p/q`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), GenericityError> {
        let err = |e: csv::Error| GenericityError::Csv(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "hits", "ball", "ratio", "sphere_hits", "sphere"]).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.hits.to_string(),
                r.ball.to_string(),
                r.ratio().to_string(),
                r.sphere_hits.to_string(),
                r.sphere.to_string(),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| GenericityError::Csv(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, GenericityError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// A uniformly random reduced word of length exactly `n`.
pub fn random_reduced_word<R: Rng>(alphabet: &Alphabet, n: usize, rng: &mut R) -> Word {
    let codes = 2 * alphabet.rank() as u16;
    let mut letters: Vec<Letter> = Vec::with_capacity(n);
    for _ in 0..n {
        let l = match letters.last() {
            None => Letter::from_code(rng.gen_range(0..codes)),
            Some(prev) => {
                let banned = prev.inverse().code();
                let r = rng.gen_range(0..codes - 1);
                Letter::from_code(if r < banned { r } else { r + 1 })
            }
        };
        letters.push(l);
    }
    Word::from_reduced(letters)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleEstimate {
    pub hits: u64,
    pub samples: u64,
}

impl SampleEstimate {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }
}

/// Monte-Carlo density on the sphere of radius `n`, deterministic per seed.
pub fn sample_density(
    pred: &SetPredicate,
    alphabet: &Alphabet,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate, GenericityError> {
    if samples == 0 {
        return Err(GenericityError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..samples {
        if pred.contains(&random_reduced_word(alphabet, n, &mut rng))? {
            hits += 1;
        }
    }
    Ok(SampleEstimate { hits, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn exact_examples() {
        let a = Alphabet::new(2).unwrap();
        assert_eq!(density(&SetPredicate::everything(), &a, 4).unwrap(), ratio(1, 1));
        assert_eq!(density(&SetPredicate::powers_of(0), &a, 5).unwrap(), ratio(11, 485));
        let big = Alphabet::new(3).unwrap();
        assert!(matches!(density(&SetPredicate::everything(), &big, 12), Err(GenericityError::Guard { .. })));
    }

    #[test]
    fn complement_adds_to_one() {
        let a = Alphabet::new(2).unwrap();
        for p in [SetPredicate::powers_of(1), SetPredicate::ball(2), SetPredicate::nonempty_powers_of(0)] {
            let s = density(&p, &a, 6).unwrap() + density(&p.complement(), &a, 6).unwrap();
            assert_eq!(s, ratio(1, 1));
        }
    }

    #[test]
    fn report_csv() {
        let a = Alphabet::new(1).unwrap();
        let r = density_report(&SetPredicate::ball(1), &a, 2).unwrap();
        assert_eq!(r.to_csv().unwrap(), "n,hits,ball,ratio,sphere_hits,sphere\n0,1,1,1,1,1\n1,3,3,1,2,2\n2,3,5,3/5,0,2\n");
    }

    #[test]
    fn samples_are_deterministic_and_extreme_cases_exact() {
        let a = Alphabet::new(2).unwrap();
        let p = SetPredicate::powers_of(0);
        assert_eq!(sample_density(&p, &a, 3, 500, 7).unwrap(), sample_density(&p, &a, 3, 500, 7).unwrap());
        assert_eq!(sample_density(&SetPredicate::everything(), &a, 6, 100, 1).unwrap().fraction(), 1.0);
        assert_eq!(sample_density(&SetPredicate::nothing(), &a, 6, 100, 1).unwrap().fraction(), 0.0);
        assert_eq!(sample_density(&p, &a, 3, 0, 1), Err(GenericityError::NoSamples));
    }

    #[test]
    fn sampling_is_uniform_on_the_sphere() {
        let a = Alphabet::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut counts: HashMap<Word, u64> = HashMap::new();
        let total = 100_000;
        for _ in 0..total {
            *counts.entry(random_reduced_word(&a, 2, &mut rng)).or_default() += 1;
        }
        let exact: Vec<Word> = sphere(&a, 2).collect();
        assert_eq!(exact.len(), 12);
        assert_eq!(counts.len(), 12);
        for w in exact {
            let f = counts[&w] as f64 / total as f64;
            assert!((f - 1.0 / 12.0).abs() < 0.01, "{w:?} {f}");
        }
    }
}
