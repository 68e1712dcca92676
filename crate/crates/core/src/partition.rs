//! Partitions of `0..n`, a union-find, and binary relations on `0..n`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition of `0..n` in canonical form: block ids are assigned in
/// order of each block's least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary labels; elements with equal labels
    /// share a block.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Self {
        let mut block_of = Vec::with_capacity(labels.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|&r| labels[r] == *l) {
                Some(b) => block_of.push(b),
                None => {
                    block_of.push(reps.len());
                    reps.push(i);
                }
            }
        }
        Self { block_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &e in block {
                if e >= n {
                    return Err(Error::InvalidPartition(format!("element {e} out of range 0..{n}")));
                }
                if label[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {e} appears twice")));
                }
                label[e] = b;
            }
        }
        if let Some(e) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {e} is not covered")));
        }
        Ok(Self::from_labels(&label))
    }

    /// Parses block notation such as `{{0,1},{2,3}}` or `0 1 | 2 3`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let blocks: Vec<Vec<usize>> = if text.contains('|') {
            text.split('|')
                .map(parse_elements)
                .collect::<Result<_>>()?
        } else {
            let inner = text
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| Error::InvalidPartition(format!("cannot parse `{text}`")))?;
            inner
                .split('}')
                .map(|b| b.trim().trim_start_matches(',').trim().trim_start_matches('{'))
                .filter(|b| !b.trim().is_empty())
                .map(parse_elements)
                .collect::<Result<_>>()?
        };
        Self::from_blocks(n, &blocks)
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Self {
            block_of: vec![0; n],
        }
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Blocks in canonical order, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (e, &b) in self.block_of.iter().enumerate() {
            out[b].push(e);
        }
        out
    }

    /// The block containing `e`.
    pub fn block_containing(&self, e: usize) -> Vec<usize> {
        let b = self.block_of[e];
        (0..self.size()).filter(|&i| self.block_of[i] == b).collect()
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self ⊆ other` as equivalence relations.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size());
        (0..self.size()).all(|a| {
            (a + 1..self.size())
                .all(|b| !self.same_block(a, b) || other.same_block(a, b))
        })
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&pairs)
    }

    /// Join as equivalence relations (transitive closure of the union).
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.size());
        for p in [self, other] {
            for block in p.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.to_partition()
    }

    pub fn to_relation(&self) -> Relation {
        let n = self.size();
        let mut r = Relation::empty(n);
        for a in 0..n {
            for b in 0..n {
                if self.same_block(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Formats with element labels in place of indices.
    pub fn display_with(&self, labels: &dyn Fn(usize) -> String) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|&e| labels(e)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("{{{}}}", blocks.join(","))
    }
}

fn parse_elements(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .map(|t| t.trim_matches(|c| c == '{' || c == '}'))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidPartition(format!("bad element `{t}`")))
        })
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&|e| e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already together.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn to_partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&roots)
    }
}

/// Iterator over all partitions of `0..n` as restricted growth strings,
/// starting from the total partition.
pub struct Partitions {
    rgs: Vec<usize>,
    max_prefix: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Self {
            rgs: vec![0; n],
            max_prefix: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition {
            block_of: self.rgs.clone(),
        };
        // advance: rightmost position that can be incremented
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let bound = self.max_prefix[i - 1] + 1;
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                self.max_prefix[i] = self.max_prefix[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max_prefix[j] = self.max_prefix[j - 1];
                }
                break;
            }
        }
        Some(out)
    }
}

/// A binary relation on `0..n`, stored as a dense bit matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n * self.n)
            .filter(|&i| self.bits[i])
            .map(|i| (i / self.n, i % self.n))
    }

    /// Relational composition: `a (self ∘ other) c` iff `a self b other c` for some `b`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut r = Relation::empty(n);
        for a in 0..n {
            for b in 0..n {
                if self.contains(a, b) {
                    for c in 0..n {
                        if other.contains(b, c) {
                            r.insert(a, c);
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn is_superset(&self, other: &Relation) -> bool {
        other.is_subset(self)
    }

    /// Interprets the relation as a partition if it is an equivalence.
    pub fn as_partition(&self) -> Option<Partition> {
        let n = self.n;
        for a in 0..n {
            if !self.contains(a, a) {
                return None;
            }
            for b in 0..n {
                if self.contains(a, b) && !self.contains(b, a) {
                    return None;
                }
            }
        }
        let p = Partition::from_labels(
            &(0..n)
                .map(|a| (0..n).position(|b| self.contains(a, b)).unwrap())
                .collect::<Vec<_>>(),
        );
        (p.to_relation() == *self).then_some(p)
    }
}
