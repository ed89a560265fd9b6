use freegroup::{ball, Alphabet, Letter, Word};

use crate::error::FolnerError;

/// Points not dominated coordinatewise by another.
fn prune(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v.dedup();
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for p in v {
        if !kept.iter().any(|k| k.iter().zip(&p).all(|(a, b)| a >= b)) {
            kept.push(p);
        }
    }
    kept
}

fn sums(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(p.iter().zip(q).map(|(x, y)| x + y).collect());
        }
    }
    prune(out)
}

struct Fronts {
    /// Subsets of the subtree containing its root.
    with_root: Vec<Vec<i64>>,
    /// Nonempty subsets of the subtree avoiding its root.
    without_root: Vec<Vec<i64>>,
}

struct Tree {
    rank: usize,
    radius: usize,
    n: i64,
}

impl Tree {
    fn children(&self, v: &Word) -> Vec<(Word, usize)> {
        if v.len() == self.radius {
            return Vec::new();
        }
        (0..2 * self.rank as u16)
            .map(Letter::from_code)
            .filter(|l| v.first() != Some(l.inverse()))
            .map(|l| (Word::letter(l).mul(v), l.generator()))
            .collect()
    }

    fn fronts(&self, v: &Word) -> Fronts {
        let zero = vec![0; self.rank];
        let mut with_root = vec![vec![1 - self.n; self.rank]];
        let mut nonempty: Vec<Vec<i64>> = Vec::new();
        for (c, g) in self.children(v) {
            let f = self.fronts(&c);
            let mut bonus = f.with_root.clone();
            for p in &mut bonus {
                p[g] += self.n;
            }
            let mut opts = vec![zero.clone()];
            opts.extend(f.without_root.iter().cloned());
            opts.extend(bonus);
            with_root = sums(&with_root, &prune(opts));

            let child: Vec<Vec<i64>> = prune(f.without_root.into_iter().chain(f.with_root).collect());
            let mut next = sums(&nonempty, &child);
            next.extend(nonempty);
            next.extend(child);
            nonempty = prune(next);
        }
        Fronts {
            with_root,
            without_root: nonempty,
        }
    }
}

/// `max min_x (n·|Ω ∩ xΩ| − (n−1)·|Ω|)` over nonempty `Ω ⊆ B_radius` of the
/// free group, `x` running over the generators. Some subset of the ball is
/// `n`-Følner exactly when this is `≥ 0`.
///
/// Left multiplication makes the ball a tree rooted at `ε` with parent
/// `w ↦ w` minus its first letter, and every term is additive over vertices
/// and tree edges, so a dynamic program over Pareto fronts of the per-generator
/// terms covers all `2^|B_radius|` subsets exactly.
pub fn free_ball_slack(alphabet: &Alphabet, radius: usize, n: u64) -> Result<i64, FolnerError> {
    if n == 0 {
        return Err(FolnerError::ZeroN);
    }
    let t = Tree {
        rank: alphabet.rank(),
        radius,
        n: n as i64,
    };
    let f = t.fronts(&Word::empty());
    Ok(f.with_root
        .iter()
        .chain(&f.without_root)
        .map(|p| *p.iter().min().expect("rank is positive"))
        .max()
        .expect("the root alone is a subset"))
}

/// The same quantity by listing every nonempty subset; for small balls.
pub fn free_ball_slack_bruteforce(alphabet: &Alphabet, radius: usize, n: u64) -> Result<i64, FolnerError> {
    let words: Vec<Word> = ball(alphabet, radius).collect();
    if words.len() > 24 {
        return Err(FolnerError::Guard { limit: 1 << 24 });
    }
    let n = n as i64;
    let index = |w: &Word| words.iter().position(|u| u == w);
    // shifted[g][i] = position of x_g · words[i] in the ball, if inside
    let shifted: Vec<Vec<Option<usize>>> = (0..alphabet.rank())
        .map(|g| words.iter().map(|w| index(&Word::letter(Letter::pos(g)).mul(w))).collect())
        .collect();
    let mut best = i64::MIN;
    for mask in 1u32..(1 << words.len()) {
        let size = mask.count_ones() as i64;
        let inside = |i: usize| mask >> i & 1 == 1;
        let slack = shifted
            .iter()
            .map(|s| {
                let e = (0..words.len()).filter(|&i| inside(i) && s[i].is_some_and(inside)).count() as i64;
                n * e - (n - 1) * size
            })
            .min()
            .expect("rank is positive");
        best = best.max(slack);
    }
    Ok(best)
}
