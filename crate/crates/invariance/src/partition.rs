use freegroup::{FiniteWordSet, Word, WordIndex};

/// Union-find with union by rank and path compression.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
    blocks: usize,
}

impl DisjointSet {
    pub fn new(n: usize) -> DisjointSet {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
            blocks: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Joins the blocks of `a` and `b`; returns the surviving root and the
    /// absorbed one, or `None` if they were already together.
    pub fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        if self.rank[keep] == self.rank[gone] {
            self.rank[keep] += 1;
        }
        self.parent[gone] = keep;
        self.blocks -= 1;
        Some((keep, gone))
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }
}

/// A partition of a finite word set, only ever coarsened by kernel evidence.
#[derive(Clone, Debug)]
pub struct BlockPartition {
    ground: WordIndex,
    sets: DisjointSet,
}

impl BlockPartition {
    /// Every ground word in its own block. Indices follow shortlex order.
    pub fn finest(ground: &FiniteWordSet) -> BlockPartition {
        let words = ground.to_vec();
        let n = words.len();
        BlockPartition {
            ground: WordIndex::new(words),
            sets: DisjointSet::new(n),
        }
    }

    pub fn ground(&self) -> &WordIndex {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.sets.block_count()
    }

    pub fn find(&mut self, i: usize) -> usize {
        self.sets.find(i)
    }

    pub fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.sets.union(a, b)
    }

    pub fn same_block(&mut self, a: &Word, b: &Word) -> bool {
        match (self.ground.position(a), self.ground.position(b)) {
            (Some(i), Some(j)) => self.sets.find(i) == self.sets.find(j),
            _ => false,
        }
    }

    /// Pairs `(ν, μ)` of ground indices with `reduce(η·ν) = μ`.
    pub fn witnessed_pairs(&self, eta: &Word) -> Vec<(usize, usize)> {
        self.ground.left_products(eta, &self.ground)
    }

    /// Blocks as lists of words, each in shortlex order, ordered by first word.
    pub fn blocks(&mut self) -> Vec<Vec<Word>> {
        let n = self.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<Word>> = Vec::new();
        for i in 0..n {
            let r = self.sets.find(i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(self.ground.get(i).clone());
        }
        out
    }
}

/// Unions every pair of ground words identified by `η`; returns the number
/// of unions.
pub fn merge_for_kernel_element(partition: &mut BlockPartition, eta: &Word) -> usize {
    let mut merges = 0;
    for (s, t) in partition.witnessed_pairs(eta) {
        if partition.union(s, t).is_some() {
            merges += 1;
        }
    }
    merges
}

#[cfg(test)]
mod tests {
    use super::*;
    use freegroup::Alphabet;

    #[test]
    fn union_find_counts_blocks() {
        let mut d = DisjointSet::new(5);
        assert!(d.union(0, 1).is_some());
        assert!(d.union(1, 0).is_none());
        d.union(3, 4);
        d.union(1, 4);
        assert_eq!(d.block_count(), 2);
        assert_eq!(d.find(0), d.find(3));
        assert_ne!(d.find(2), d.find(0));
    }

    #[test]
    fn commutator_merges_xy_and_yx() {
        let a = Alphabet::with_names(&['x', 'y']).unwrap();
        let ground: FiniteWordSet = ["xy", "yx"].iter().map(|t| a.parse_word(t).unwrap()).collect();
        let mut p = BlockPartition::finest(&ground);
        let eta = a.parse_word("xyXY").unwrap();
        assert_eq!(merge_for_kernel_element(&mut p, &eta), 1);
        assert_eq!(merge_for_kernel_element(&mut p, &eta), 0);
        assert_eq!(merge_for_kernel_element(&mut p, &Word::empty()), 0);
        assert!(p.same_block(&a.parse_word("xy").unwrap(), &a.parse_word("yx").unwrap()));
        assert_eq!(p.blocks().len(), 1);
    }
}
