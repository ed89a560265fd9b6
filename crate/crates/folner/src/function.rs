use std::collections::HashSet;

use freegroup::ball;
use presentations::{Element, GroupModel};
use serde::Serialize;

use crate::certificate::{ratios_of, within};
use crate::error::FolnerError;

pub const SUBSET_GUARD: u64 = 1 << 20;

/// Result of a brute-force Følner-function evaluation on a group ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FolnerValue {
    pub n: u64,
    /// Smallest `n`-Følner subset of the ball, if any.
    pub value: Option<usize>,
    /// Whether the value is also the global minimum.
    pub certified: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Advances `c` to the next `c.len()`-combination of `0..m` in lexicographic
/// order; `false` after the last one.
pub fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum cardinality of an `n`-Følner subset of the group ball of the given
/// radius, scanning sizes upwards.
///
/// Refuses once the subsets to scan would exceed [`SUBSET_GUARD`]. The value
/// is certified globally when it equals the bound `n` forced by a generator of
/// infinite order (`|Ω ∖ xΩ| ≥ 1`), or when the ball is the whole group.
pub fn folner_function_bruteforce(model: &dyn GroupModel, n: u64, radius: usize) -> Result<FolnerValue, FolnerError> {
    if n == 0 {
        return Err(FolnerError::ZeroN);
    }
    let mut seen = HashSet::new();
    let elems: Vec<Element> = ball(model.alphabet(), radius)
        .map(|w| model.normal_form(&w))
        .filter(|g| seen.insert(g.clone()))
        .collect();
    let m = elems.len();
    let whole = model.order() == Some(m as u64);
    let mut scanned: u64 = 0;
    for size in 1..=m {
        scanned = scanned.saturating_add(binomial(m as u64, size as u64));
        if scanned > SUBSET_GUARD {
            return Err(FolnerError::Guard { limit: SUBSET_GUARD });
        }
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            let omega: HashSet<Element> = c.iter().map(|&i| elems[i].clone()).collect();
            if within(&ratios_of(&omega, model), n) {
                let lower = model.infinite_generator().is_some() && size as u64 == n;
                return Ok(FolnerValue {
                    n,
                    value: Some(size),
                    certified: lower || whole,
                });
            }
            if !next_combination(&mut c, m) {
                break;
            }
        }
    }
    Ok(FolnerValue {
        n,
        value: None,
        certified: false,
    })
}

/// Følner-function values for one model over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FolnerFunctionTable {
    pub model: String,
    pub radius: usize,
    pub entries: Vec<FolnerValue>,
}

impl FolnerFunctionTable {
    pub fn compute(model: &dyn GroupModel, ns: impl IntoIterator<Item = u64>, radius: usize) -> Result<FolnerFunctionTable, FolnerError> {
        let entries = ns
            .into_iter()
            .map(|n| folner_function_bruteforce(model, n, radius))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FolnerFunctionTable {
            model: model.name(),
            radius,
            entries,
        })
    }

    /// CSV with columns `n,value,exact`; `exact` is `global` when certified,
    /// `radius` otherwise, and the value is empty when none was found.
    pub fn to_csv(&self) -> Result<String, FolnerError> {
        let err = |e: csv::Error| FolnerError::Csv(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "value", "exact"]).map_err(err)?;
        for e in &self.entries {
            let value = e.value.map(|v| v.to_string()).unwrap_or_default();
            let flag = if e.certified { "global" } else { "radius" };
            w.write_record([e.n.to_string(), value, flag.to_string()]).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| FolnerError::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// `U(n) = max_{i ≤ n} f_i(n)` for functions sampled at `n = 1..=N`; `values[i][n-1]`
/// is `f_{i+1}(n)`.
pub fn uniform_bound(values: &[Vec<u64>]) -> Vec<u64> {
    let len = values.iter().map(Vec::len).min().unwrap_or(0);
    (1..=len)
        .map(|n| values.iter().take(n).map(|f| f[n - 1]).max().unwrap_or(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use presentations::builtin_model;
    use proptest::prelude::*;

    #[test]
    fn z_is_linear() {
        let m = builtin_model("Z").unwrap();
        for n in 1..=5 {
            let v = folner_function_bruteforce(m.as_ref(), n, 6).unwrap();
            assert_eq!(v.value, Some(n as usize));
            assert!(v.certified);
        }
    }

    #[test]
    fn cyclic_groups() {
        for k in 2..=8u64 {
            let m = builtin_model(&format!("C{k}")).unwrap();
            for n in 1..=4 {
                let v = folner_function_bruteforce(m.as_ref(), n, 8).unwrap();
                let s = v.value.unwrap() as u64;
                assert!(s <= k);
                assert!(s == k || s >= n);
            }
        }
    }

    #[test]
    fn z2_at_two_is_four() {
        let m = builtin_model("Z2").unwrap();
        let v = folner_function_bruteforce(m.as_ref(), 2, 3).unwrap();
        assert_eq!(v.value, Some(4));
        assert!(!v.certified);
        assert!(matches!(folner_function_bruteforce(m.as_ref(), 50, 3), Err(FolnerError::Guard { .. })));
    }

    #[test]
    fn csv_table() {
        let m = builtin_model("Z").unwrap();
        let t = FolnerFunctionTable::compute(m.as_ref(), 1..=3, 6).unwrap();
        assert_eq!(t.to_csv().unwrap(), "n,value,exact\n1,1,global\n2,2,global\n3,3,global\n");
    }

    #[test]
    fn bound_examples() {
        let f1: Vec<u64> = (1..=5).collect();
        let f2: Vec<u64> = (1..=5).map(|n| n * n).collect();
        assert_eq!(uniform_bound(&[f1.clone(), f2]), [1, 4, 9, 16, 25]);
        assert_eq!(uniform_bound(&[f1.clone()]), f1);
        assert!(uniform_bound(&[]).is_empty());
    }

    proptest! {
        #[test]
        fn bound_dominates(fs in prop::collection::vec(prop::collection::vec(0u64..1000, 8), 1..6)) {
            let u = uniform_bound(&fs);
            for n in 1..=8 {
                for f in fs.iter().take(n) {
                    prop_assert!(u[n - 1] >= f[n - 1]);
                }
            }
        }
    }
}
