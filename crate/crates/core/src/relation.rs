//! Equivalence relations on `0..n`, stored as canonical block labels.
//!
//! The label of `x` is the smallest member of its block, so two relations
//! are equal exactly when their label vectors are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::magma::ElementSet;

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; true if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn into_relation(mut self) -> EquivRelation {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        EquivRelation::from_labels(&labels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    block_of: Vec<usize>,
}

impl EquivRelation {
    /// The equality relation `1_A`.
    pub fn identity(n: usize) -> Self {
        EquivRelation {
            block_of: (0..n).collect(),
        }
    }

    /// The universal relation `A × A`.
    pub fn full(n: usize) -> Self {
        EquivRelation {
            block_of: vec![0; n],
        }
    }

    /// Relation whose blocks are the fibers of `labels` (any label values).
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let n = labels.len();
        let mut block_of = vec![usize::MAX; n];
        for x in 0..n {
            if block_of[x] != usize::MAX {
                continue;
            }
            for y in x..n {
                if labels[y] == labels[x] {
                    block_of[y] = x;
                }
            }
        }
        EquivRelation { block_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("element {x} out of range")));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {x} listed twice")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} missing")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The least equivalence containing `pairs`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_relation()
    }

    /// Builds the relation defined by `related`, failing if it is not an
    /// equivalence.
    pub fn from_predicate(n: usize, related: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut block_of = vec![0; n];
        for x in 0..n {
            block_of[x] = (0..n).find(|&y| related(x, y)).ok_or_else(|| {
                Error::InvalidPartition(format!("relation is not reflexive at {x}"))
            })?;
        }
        for x in 0..n {
            for y in 0..n {
                if related(x, y) != (block_of[x] == block_of[y]) {
                    return Err(Error::InvalidPartition(format!(
                        "relation is not an equivalence at ({x}, {y})"
                    )));
                }
            }
        }
        for x in 0..n {
            if block_of[block_of[x]] != block_of[x] {
                return Err(Error::InvalidPartition(format!(
                    "relation is not an equivalence at {x}"
                )));
            }
        }
        Ok(EquivRelation { block_of })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    /// The smallest member of the block containing `x`.
    #[inline]
    pub fn rep(&self, x: usize) -> usize {
        self.block_of[x]
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        (0..self.order()).filter(|&x| self.block_of[x] == x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.order()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn class(&self, x: usize) -> ElementSet {
        let r = self.block_of[x];
        (0..self.order()).filter(|&y| self.block_of[y] == r).collect()
    }

    /// Blocks ordered by smallest member.
    pub fn classes(&self) -> Vec<ElementSet> {
        (0..self.order())
            .filter(|&x| self.block_of[x] == x)
            .map(|x| self.class(x))
            .collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.classes().into_iter().map(|c| c.iter().collect()).collect()
    }

    /// The restricted growth string: block numbers in order of first appearance.
    pub fn growth_string(&self) -> Vec<usize> {
        let mut number = vec![usize::MAX; self.order()];
        let mut next = 0;
        self.block_of
            .iter()
            .map(|&r| {
                if number[r] == usize::MAX {
                    number[r] = next;
                    next += 1;
                }
                number[r]
            })
            .collect()
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_subset(&self, other: &EquivRelation) -> bool {
        (0..self.order()).all(|x| other.related(x, self.block_of[x]))
    }

    pub fn meet(&self, other: &EquivRelation) -> EquivRelation {
        let labels: Vec<(usize, usize)> = (0..self.order())
            .map(|x| (self.block_of[x], other.block_of[x]))
            .collect();
        Self::from_labels(&labels)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &EquivRelation) -> EquivRelation {
        let mut uf = UnionFind::new(self.order());
        for x in 0..self.order() {
            uf.union(x, self.block_of[x]);
            uf.union(x, other.block_of[x]);
        }
        uf.into_relation()
    }

    /// Relational product `self ∘ other`: row `a` holds every `b` with
    /// `a self c other b` for some `c`.
    pub fn compose(&self, other: &EquivRelation) -> Vec<ElementSet> {
        let other_classes: Vec<ElementSet> = (0..self.order()).map(|x| other.class(x)).collect();
        (0..self.order())
            .map(|a| {
                self.class(a)
                    .iter()
                    .fold(ElementSet::EMPTY, |acc, c| acc.union(other_classes[c]))
            })
            .collect()
    }

    /// The restriction to `members`, re-indexed as `0..members.len()`.
    pub fn restrict(&self, members: &[usize]) -> EquivRelation {
        let labels: Vec<usize> = members.iter().map(|&m| self.block_of[m]).collect();
        Self::from_labels(&labels)
    }

    /// Canonical partition syntax: `a e | b | f`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PartitionDisplay<'a> {
        PartitionDisplay { rel: self, names }
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let n = names.len();
        let mut labels = vec![usize::MAX; n];
        for (i, part) in text.split('|').enumerate() {
            let mut empty = true;
            for tok in part.split_whitespace() {
                let x = names.iter().position(|nm| nm == tok).ok_or_else(|| {
                    Error::InvalidPartition(format!("unknown label `{tok}`"))
                })?;
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {tok} listed twice")));
                }
                labels[x] = i;
                empty = false;
            }
            if empty {
                return Err(Error::InvalidPartition(format!("empty block in `{}`", text.trim())));
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {} missing", names[x])));
        }
        Ok(Self::from_labels(&labels))
    }
}

pub struct PartitionDisplay<'a> {
    rel: &'a EquivRelation,
    names: &'a [String],
}

impl fmt::Display for PartitionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.rel.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, &x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&self.names[x])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(list: &str) -> Vec<String> {
        list.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn canonical_labels() {
        let r = EquivRelation::from_labels(&['x', 'y', 'x', 'z']);
        assert_eq!(r.labels(), &[0, 1, 0, 3]);
        assert_eq!(r.num_blocks(), 3);
        assert_eq!(r.growth_string(), vec![0, 1, 0, 2]);
    }

    #[test]
    fn parse_and_display() {
        let nm = names("a b e f");
        let r = EquivRelation::parse("a e | b | f", &nm).unwrap();
        assert_eq!(r.display(&nm).to_string(), "a e | b | f");
        let s = EquivRelation::parse(" f |e   a|b ", &nm).unwrap();
        assert_eq!(r, s);
        assert!(EquivRelation::parse("a e | b", &nm).is_err());
        assert!(EquivRelation::parse("a e | b | f | a", &nm).is_err());
        assert!(EquivRelation::parse("a e || b f", &nm).is_err());
        let err = EquivRelation::parse("a e | b | g", &nm).unwrap_err();
        assert_eq!(err, Error::InvalidPartition("unknown label `g`".into()));
        let err = EquivRelation::parse("a e | b", &nm).unwrap_err();
        assert_eq!(err, Error::InvalidPartition("element f missing".into()));
    }

    #[test]
    fn meet_join_compose() {
        let nm = names("a b e f");
        let p = |s| EquivRelation::parse(s, &nm).unwrap();
        let sigma = p("a b | e f");
        let mu = p("a e | b f");
        assert_eq!(sigma.meet(&mu), EquivRelation::identity(4));
        assert_eq!(sigma.join(&mu), EquivRelation::full(4));
        let rho = p("a e | b | f");
        assert!(rho.is_subset(&mu));
        assert!(!mu.is_subset(&rho));
        let comp = rho.compose(&mu);
        assert_eq!(comp[0].bits(), 0b0101);
    }

    #[test]
    fn predicate_must_be_equivalence() {
        assert!(EquivRelation::from_predicate(3, |a, b| a <= b).is_err());
        assert!(EquivRelation::from_predicate(3, |a, b| a != b).is_err());
        let r = EquivRelation::from_predicate(4, |a, b| a % 2 == b % 2).unwrap();
        assert_eq!(r.labels(), &[0, 1, 0, 1]);
    }

    fn arb_relation() -> impl Strategy<Value = EquivRelation> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(0usize..n, n).prop_map(|l| EquivRelation::from_labels(&l))
        })
    }

    proptest! {
        #[test]
        fn partition_text_round_trips(r in arb_relation()) {
            let nm: Vec<String> = (0..r.order()).map(|i| format!("x{i}")).collect();
            let text = r.display(&nm).to_string();
            let back = EquivRelation::parse(&text, &nm).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(back.display(&nm).to_string(), text);
        }

        #[test]
        fn meet_and_join_are_bounds(labels in proptest::collection::vec((0usize..4, 0usize..4), 1..8)) {
            let a = EquivRelation::from_labels(&labels.iter().map(|p| p.0).collect::<Vec<_>>());
            let b = EquivRelation::from_labels(&labels.iter().map(|p| p.1).collect::<Vec<_>>());
            let m = a.meet(&b);
            let j = a.join(&b);
            prop_assert!(m.is_subset(&a) && m.is_subset(&b));
            prop_assert!(a.is_subset(&j) && b.is_subset(&j));
            prop_assert_eq!(a.meet(&j), a.clone());
            prop_assert_eq!(a.join(&m), a);
        }
    }
}
