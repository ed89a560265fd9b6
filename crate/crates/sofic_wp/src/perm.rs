use freegroup::Word;
use presentations::ratio::{self, Q};

use crate::error::SoficError;

/// A partial injection of `[k]`, stored by rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialInjection {
    row: Vec<Option<u32>>,
    col: Vec<Option<u32>>,
    size: usize,
}

impl PartialInjection {
    pub fn new(k: usize) -> PartialInjection {
        PartialInjection {
            row: vec![None; k],
            col: vec![None; k],
            size: 0,
        }
    }

    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<PartialInjection, SoficError> {
        let mut p = PartialInjection::new(k);
        for &(i, j) in pairs {
            p.insert(i, j)?;
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.row.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.row[i].map(|j| j as usize)
    }

    /// Adds `(i, j)`. Returns false if it was already present.
    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool, SoficError> {
        match (self.row[i], self.col[j]) {
            (Some(a), _) if a as usize == j => Ok(false),
            (None, None) => {
                self.row[i] = Some(j as u32);
                self.col[j] = Some(i as u32);
                self.size += 1;
                Ok(true)
            }
            _ => Err(SoficError::Conflict { i, j }),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j as usize)))
    }
}

/// A permutation of `[k]` as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(k: usize) -> Permutation {
        Permutation((0..k as u32).collect())
    }

    /// Panics unless `images` is a bijection of `[k]`.
    pub fn from_images(images: Vec<usize>) -> Permutation {
        let mut seen = vec![false; images.len()];
        for &j in &images {
            assert!(j < images.len() && !seen[j], "not a permutation");
            seen[j] = true;
        }
        Permutation(images.into_iter().map(|j| j as u32).collect())
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&j| j as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn moved(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i != j as usize).count()
    }
}

/// Extends `p` to a permutation: unmatched rows in ascending order go to
/// unmatched columns in ascending order.
pub fn complete_to_permutation(p: &PartialInjection) -> Permutation {
    let mut free_cols = p.col.iter().enumerate().filter(|(_, i)| i.is_none()).map(|(j, _)| j as u32);
    let images = p
        .row
        .iter()
        .map(|j| match j {
            Some(j) => *j,
            None => free_cols.next().expect("rows and columns are equinumerous"),
        })
        .collect();
    Permutation(images)
}

/// `ω(σ)` acting on the left: the last letter is applied first. Letter code
/// `c` of `ω` (generator `c / 2`, inverted when odd) selects `perms[c]`.
pub fn evaluate_word(w: &Word, perms: &[Permutation], k: usize) -> Result<Permutation, SoficError> {
    let mut images: Vec<u32> = (0..k as u32).collect();
    for l in w.letters().iter().rev() {
        let code = l.code();
        let p = perms.get(code as usize).ok_or(SoficError::LetterOutOfRange {
            code,
            count: perms.len(),
        })?;
        for x in images.iter_mut() {
            *x = p.0[*x as usize];
        }
    }
    Ok(Permutation(images))
}

/// Fraction of points moved.
pub fn hamming_length(p: &Permutation) -> Q {
    if p.k() == 0 {
        return ratio::qi(0);
    }
    ratio::q(p.moved() as i64, p.k() as i64)
}
