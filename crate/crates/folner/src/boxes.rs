//! Explicit injective Følner sets for the built-in infinite models.

use freegroup::{FiniteWordSet, Word};
use presentations::GroupModel;

use crate::certificate::FolnerCertificate;
use crate::error::FolnerError;
use crate::search::power_box;

fn isqrt(m: u64) -> u64 {
    let mut r = (m as f64).sqrt() as u64;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

/// A word for the central element `[x,y]^m` of the Heisenberg group, built as
/// `[x^p, y^±q] · [x,y]^±r` with `pq + r = |m|`.
pub fn heisenberg_central(m: i64) -> Word {
    let x = |e: i64| Word::power(0, e);
    let y = |e: i64| Word::power(1, e);
    let s = m.signum();
    let a = m.unsigned_abs();
    let p = isqrt(a);
    let mut w = Word::empty();
    let mut rest = a as i64;
    if p > 0 {
        let q = (a / p) as i64;
        w = Word::commutator(&x(p as i64), &y(s * q));
        rest -= p as i64 * q;
    }
    let unit = if s >= 0 { Word::commutator(&x(1), &y(1)) } else { Word::commutator(&y(1), &x(1)) };
    w.mul(&unit.pow(rest))
}

/// The word `x^a y^b [x,y]^(c - ab)` for the element `(a, b, c)`.
pub fn heisenberg_word(a: i64, b: i64, c: i64) -> Word {
    Word::power(0, a).mul(&Word::power(1, b)).mul(&heisenberg_central(c - a * b))
}

/// `{(a, b, c) : 0 ≤ a < A, |b| ≤ B, c0 ≤ c < c0 + C}` with `c0 = -⌊C/2⌋`.
pub fn heisenberg_box(a_len: i64, b_half: i64, c_len: i64) -> FiniteWordSet {
    let c0 = -(c_len / 2);
    let mut out = FiniteWordSet::new();
    for a in 0..a_len {
        for b in -b_half..=b_half {
            for c in c0..c0 + c_len {
                out.insert(heisenberg_word(a, b, c));
            }
        }
    }
    out
}

/// Smallest box dimensions (over `A ≤ 4n`) whose ratios are at most `1/n`:
/// `1/(2B+1)` for `y` and `1/A + (A-1)B(B+1)/(A(2B+1)C)` for `x`.
pub fn heisenberg_dims(n: u64) -> (i64, i64, i64) {
    let n = n as i64;
    let b = n / 2;
    let width = 2 * b + 1;
    let mut best: Option<(i64, (i64, i64, i64))> = None;
    for a in n + 1..=4 * n.max(1) {
        // (A-1)B(B+1) n ≤ (A - n)(2B+1) C
        let num = (a - 1) * b * (b + 1) * n;
        let den = (a - n) * width;
        let c = if num == 0 { 1 } else { (num + den - 1) / den };
        let size = a * width * c;
        if best.is_none_or(|(s, _)| size < s) {
            best = Some((size, (a, b, c)));
        }
    }
    best.expect("non-empty range").1
}

/// `{(L, p) : 0 ≤ p < m, L ⊆ [p - m + 1, p]}`: lamps within reach behind the
/// lighter, which left multiplication by the lamp generator preserves.
pub fn lamplighter_box(m: i64) -> FiniteWordSet {
    let mut out = FiniteWordSet::new();
    for p in 0..m {
        for mask in 0u64..(1 << m) {
            let mut w = Word::empty();
            for bit in 0..m {
                if mask >> bit & 1 == 1 {
                    let q = p - m + 1 + bit;
                    let tq = Word::power(1, q);
                    w = w.mul(&tq).mul(&Word::power(0, 1)).mul(&tq.inv());
                }
            }
            out.insert(w.mul(&Word::power(1, p)));
        }
    }
    out
}

/// An injective `n`-Følner certificate from an explicit box, checked with the
/// model's oracle.
pub fn box_certificate(model: &dyn GroupModel, n: u64) -> Result<FolnerCertificate, FolnerError> {
    if n == 0 {
        return Err(FolnerError::ZeroN);
    }
    let name = model.name();
    let words = match name.as_str() {
        "Z" | "Z1" | "Z2" | "Z3" | "Z4" => power_box(model.alphabet().rank(), n as i64),
        "heisenberg" => {
            let (a, b, c) = heisenberg_dims(n);
            heisenberg_box(a, b, c)
        }
        "lamplighter" if n <= 12 => lamplighter_box(n as i64),
        _ => return Err(FolnerError::NoBoxes(name)),
    };
    match FolnerCertificate::from_oracle(words, model, n) {
        Some(c) if c.injective => Ok(c),
        _ => Err(FolnerError::Certificate(format!("box for {name} failed its check at n = {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::{builtin_model, Element};

    #[test]
    fn heisenberg_words_hit_their_elements() {
        let m = builtin_model("heisenberg").unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -40..=40 {
                    assert_eq!(m.normal_form(&heisenberg_word(a, b, c)), Element::Heisenberg(a, b, c));
                }
            }
        }
    }

    #[test]
    fn boxes_are_folner() {
        let h = builtin_model("heisenberg").unwrap();
        for n in [1, 2, 3, 9] {
            let c = box_certificate(h.as_ref(), n).unwrap();
            c.validate(h.as_ref()).unwrap();
        }
        assert_eq!(heisenberg_dims(9).1, 4);
        let l = builtin_model("lamplighter").unwrap();
        for n in 1..=5 {
            let c = box_certificate(l.as_ref(), n).unwrap();
            assert_eq!(c.len(), n as usize * (1 << n));
        }
        let z3 = builtin_model("Z3").unwrap();
        assert_eq!(box_certificate(z3.as_ref(), 4).unwrap().len(), 64);
        assert!(box_certificate(builtin_model("bs12").unwrap().as_ref(), 2).is_err());
    }
}
