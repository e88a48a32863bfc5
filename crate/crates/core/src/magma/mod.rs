//! Finite groupoids given by their Cayley table.
//!
//! Elements are dense indices `0..n`; labels exist only for input and
//! output. Every predicate in this module is an exhaustive table scan.

mod classify;
mod inverse;
mod laws;
mod mag;

use std::collections::HashMap;
use std::fmt;

pub use classify::{
    ag_group_by_left_inverses, ag_group_by_unique_solutions, ag_group_left_identity, classify,
    idempotents, inverses_of, is_e_unitary_direct, ClassificationReport,
};
pub use inverse::CompletelyInverse;
pub use laws::{check_identity, law_violation, Law};
pub use mag::parse_mag;
pub(crate) use mag::{content_lines, parse_mag_lines};

use crate::error::{Error, Result};

/// Largest supported carrier; [`ElementSet`] is a single machine word.
pub const MAX_ORDER: usize = 64;

/// A subset of the carrier `0..n`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        ElementSet(1u64 << x)
    }

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(x)
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite magma: `table[i * n + j]` is the index of `element_i · element_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Groupoid {
    names: Vec<String>,
    table: Vec<usize>,
}

impl Groupoid {
    /// Builds a groupoid from labels and a flattened row-major table.
    pub fn new(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidTable(format!(
                "order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                n * n,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(Error::InvalidTable(format!(
                "entry ({}, {}) = {} is out of range",
                pos / n,
                pos % n,
                table[pos]
            )));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidTable(format!("label {name:?} is not a token")));
            }
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::InvalidTable(format!(
                    "label {name} used for elements {j} and {i}"
                )));
            }
        }
        Ok(Groupoid { names, table })
    }

    /// Builds a groupoid labelled `0..n` from a flattened table.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        Self::new(default_names(n), table)
    }

    /// Builds a groupoid labelled `0..n` from a product function.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..n * n).map(|k| op(k / n, k % n)).collect();
        Self::from_table(n, table)
    }

    /// Same table, new labels.
    pub fn with_names<S: Into<String>>(self, names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(Into::into).collect(), self.table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// The product `a · b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    /// Relabels element `i` as `perm[i]`; labels travel with their elements.
    pub fn permute(&self, perm: &[usize]) -> Groupoid {
        let n = self.order();
        debug_assert_eq!(perm.len(), n);
        let mut table = vec![0; n * n];
        let mut names = vec![String::new(); n];
        for a in 0..n {
            names[perm[a]] = self.names[a].clone();
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        Groupoid { names, table }
    }

    /// The product of two subsets, `{ab : a in s, b in t}`.
    pub fn product_set(&self, s: ElementSet, t: ElementSet) -> ElementSet {
        s.iter()
            .flat_map(|a| t.iter().map(move |b| self.op(a, b)))
            .collect()
    }

    pub fn is_closed_under_product(&self, s: ElementSet) -> bool {
        self.product_set(s, s).is_subset(s)
    }

    /// The subgroupoid on `s`, with the embedding of its elements into `self`.
    pub fn subgroupoid(&self, s: ElementSet) -> Result<(Groupoid, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !self.is_closed_under_product(s) {
            return Err(Error::InvalidTable("subset is not closed under the product".into()));
        }
        let members: Vec<usize> = s.iter().collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let k = members.len();
        let table = (0..k * k)
            .map(|idx| local[self.op(members[idx / k], members[idx % k])])
            .collect();
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        Ok((Groupoid { names, table }, members))
    }

    /// True when both groupoids have the same labels and agree on every
    /// product by label, regardless of the order elements are listed in.
    pub fn same_table_by_labels(&self, other: &Groupoid) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let map: Option<Vec<usize>> = self.names.iter().map(|n| other.index_of(n)).collect();
        let Some(map) = map else { return false };
        self.elements()
            .all(|a| self.elements().all(|b| map[self.op(a, b)] == other.op(map[a], map[b])))
    }

    /// Renders a set of elements as `{a, b}`.
    pub fn fmt_set(&self, s: ElementSet) -> String {
        let labels: Vec<&str> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", labels.join(", "))
    }
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Groupoid(\n{self})")
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_set_basics() {
        let s: ElementSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.min(), Some(0));
        assert!(ElementSet::singleton(3).is_subset(s));
        assert_eq!(ElementSet::full(3).bits(), 0b111);
        assert_eq!(ElementSet::full(64).len(), 64);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Groupoid::from_table(2, vec![0, 1, 2, 0]).is_err());
        assert!(Groupoid::from_table(2, vec![0, 1, 1]).is_err());
        assert!(Groupoid::new(vec!["x".into(), "x".into()], vec![0; 4]).is_err());
        assert!(Groupoid::new(vec![], vec![]).is_err());
    }

    #[test]
    fn permute_preserves_structure() {
        let g = Groupoid::from_fn(3, |a, b| (b + 3 - a) % 3).unwrap();
        let h = g.permute(&[2, 0, 1]);
        assert!(g.same_table_by_labels(&h));
        assert_ne!(g.table(), h.table());
    }

    #[test]
    fn subgroupoid_requires_closure() {
        let g = Groupoid::from_fn(3, |a, b| (a + b) % 3).unwrap();
        assert!(g.subgroupoid(ElementSet::singleton(1)).is_err());
        let (h, emb) = g.subgroupoid(ElementSet::singleton(0)).unwrap();
        assert_eq!(h.order(), 1);
        assert_eq!(emb, vec![0]);
    }
}
