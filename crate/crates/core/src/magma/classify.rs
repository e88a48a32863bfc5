use std::fmt;

use super::{check_identity, CompletelyInverse, ElementSet, Groupoid, Law};
use crate::error::{Error, Result};

pub fn idempotents(g: &Groupoid) -> ElementSet {
    g.elements().filter(|&x| g.op(x, x) == x).collect()
}

/// `V(a)`: every `x` with `a = (ax)a` and `x = (xa)x`. Possibly empty.
pub fn inverses_of(g: &Groupoid, a: usize) -> ElementSet {
    g.elements()
        .filter(|&x| g.op(g.op(a, x), a) == a && g.op(g.op(x, a), x) == x)
        .collect()
}

fn left_identities(g: &Groupoid) -> ElementSet {
    g.elements()
        .filter(|&e| g.elements().all(|x| g.op(e, x) == x))
        .collect()
}

/// AG-group test through unique solvability of `xa = b`: every column of the
/// table is a permutation, and a left identity exists.
pub fn ag_group_by_unique_solutions(g: &Groupoid) -> bool {
    if !check_identity(g, Law::LeftInvertive) || left_identities(g).is_empty() {
        return false;
    }
    let n = g.order();
    g.elements().all(|a| {
        let column: ElementSet = g.elements().map(|x| g.op(x, a)).collect();
        column.len() == n
    })
}

/// AG-group test from the definition: a left identity and a left inverse
/// for every element.
pub fn ag_group_by_left_inverses(g: &Groupoid) -> bool {
    if !check_identity(g, Law::LeftInvertive) {
        return false;
    }
    let Some(e) = left_identities(g).min() else {
        return false;
    };
    g.elements()
        .all(|a| g.elements().any(|x| g.op(x, a) == e))
}

/// The left identity of an AG-group; it is also the only idempotent.
pub fn ag_group_left_identity(g: &Groupoid) -> Result<usize> {
    if !classify(g).is_ag_group {
        return Err(Error::NotAgGroup(format!(
            "{} idempotents, {} left identities",
            idempotents(g).len(),
            left_identities(g).len()
        )));
    }
    let ids = left_identities(g);
    debug_assert_eq!(ids.len(), 1);
    debug_assert_eq!(ids, idempotents(g));
    Ok(ids.min().expect("AG-group has a left identity"))
}

/// `E_A` is unitary: `ea ∈ E` or `ae ∈ E` with `e ∈ E` forces `a ∈ E`.
pub fn is_e_unitary_direct(g: &Groupoid) -> bool {
    let e = idempotents(g);
    !e.is_empty()
        && e.iter().all(|f| {
            g.elements()
                .all(|a| e.contains(a) || (!e.contains(g.op(f, a)) && !e.contains(g.op(a, f))))
        })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassificationReport {
    pub is_ag: bool,
    pub is_ag_star_star: bool,
    pub is_medial: bool,
    pub is_paramedial: bool,
    pub is_commutative: bool,
    pub is_associative: bool,
    pub is_ag_band: bool,
    pub is_ag_semilattice: bool,
    pub is_regular: bool,
    pub is_inverse_ag_star_star: bool,
    pub is_completely_inverse: bool,
    pub is_ag_group: bool,
    pub is_e_unitary: bool,
}

impl ClassificationReport {
    pub fn fields(&self) -> [(&'static str, bool); 13] {
        [
            ("is_ag", self.is_ag),
            ("is_ag_star_star", self.is_ag_star_star),
            ("is_medial", self.is_medial),
            ("is_paramedial", self.is_paramedial),
            ("is_commutative", self.is_commutative),
            ("is_associative", self.is_associative),
            ("is_ag_band", self.is_ag_band),
            ("is_ag_semilattice", self.is_ag_semilattice),
            ("is_regular", self.is_regular),
            ("is_inverse_ag_star_star", self.is_inverse_ag_star_star),
            ("is_completely_inverse", self.is_completely_inverse),
            ("is_ag_group", self.is_ag_group),
            ("is_e_unitary", self.is_e_unitary),
        ]
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.fields() {
            writeln!(f, "{name}: {value}")?;
        }
        Ok(())
    }
}

pub fn classify(g: &Groupoid) -> ClassificationReport {
    let is_ag = check_identity(g, Law::LeftInvertive);
    let is_ag_star_star = is_ag && check_identity(g, Law::AgStarStar);
    let is_commutative = check_identity(g, Law::Commutative);
    let idempotent = check_identity(g, Law::Idempotent);
    let inverse_sets: Vec<ElementSet> = g.elements().map(|a| inverses_of(g, a)).collect();
    let is_regular = inverse_sets.iter().all(|v| !v.is_empty());
    let is_inverse_ag_star_star = is_ag_star_star && inverse_sets.iter().all(|v| v.len() == 1);
    let is_completely_inverse = is_inverse_ag_star_star
        && g.elements().all(|a| {
            let inv = inverse_sets[a].min().unwrap();
            g.op(a, inv) == g.op(inv, a)
        });

    let is_ag_group = ag_group_by_unique_solutions(g);
    debug_assert_eq!(
        is_ag_group,
        ag_group_by_left_inverses(g),
        "AG-group characterizations disagree"
    );

    let is_e_unitary = if is_completely_inverse {
        let ci = CompletelyInverse::new(g).expect("classified as completely inverse");
        let by_kernel = ci.is_e_unitary();
        debug_assert_eq!(by_kernel, is_e_unitary_direct(g), "E-unitary criteria disagree");
        by_kernel
    } else {
        is_e_unitary_direct(g)
    };

    ClassificationReport {
        is_ag,
        is_ag_star_star,
        is_medial: check_identity(g, Law::Medial),
        is_paramedial: check_identity(g, Law::Paramedial),
        is_commutative,
        is_associative: check_identity(g, Law::Associative),
        is_ag_band: is_ag && idempotent,
        is_ag_semilattice: is_ag && idempotent && is_commutative,
        is_regular,
        is_inverse_ag_star_star,
        is_completely_inverse,
        is_ag_group,
        is_e_unitary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &Groupoid, labels: &[&str]) -> ElementSet {
        labels.iter().map(|l| g.index_of(l).unwrap()).collect()
    }

    #[test]
    fn idempotents_of_fixtures() {
        let f1 = fixtures::f1();
        assert_eq!(idempotents(&f1), set(&f1, &["e", "f"]));
        assert_eq!(idempotents(&fixtures::f2()), ElementSet::singleton(0));
        assert_eq!(idempotents(&fixtures::chain2()), ElementSet::full(2));
    }

    #[test]
    fn inverses_in_fixtures() {
        let f1 = fixtures::f1();
        let a = f1.index_of("a").unwrap();
        let b = f1.index_of("b").unwrap();
        assert_eq!(inverses_of(&f1, a), ElementSet::singleton(a));
        assert_eq!(inverses_of(&f1, b), ElementSet::singleton(b));
        assert_eq!(inverses_of(&fixtures::f2(), 1), ElementSet::singleton(1));
    }

    #[test]
    fn inverses_may_be_empty() {
        // x·y = 1 on {0, 1}: 0 has no inverse since (0x)0 = 1.
        let g = Groupoid::from_fn(2, |_, _| 1).unwrap();
        assert!(inverses_of(&g, 0).is_empty());
        assert!(!classify(&g).is_regular);
    }

    #[test]
    fn classify_f1() {
        let r = classify(&fixtures::f1());
        assert!(r.is_completely_inverse && r.is_commutative && r.is_associative);
        assert!(r.is_e_unitary);
        assert!(!r.is_ag_group);
    }

    #[test]
    fn classify_f2() {
        let r = classify(&fixtures::f2());
        assert!(r.is_ag_group && r.is_completely_inverse);
        assert!(!r.is_associative && !r.is_commutative);
    }

    #[test]
    fn classify_chain() {
        let r = classify(&fixtures::chain2());
        assert!(r.is_ag_band && r.is_ag_semilattice && r.is_completely_inverse);
        assert!(!r.is_ag_group);
    }

    #[test]
    fn left_identity_of_ag_groups() {
        assert_eq!(ag_group_left_identity(&fixtures::f2()), Ok(0));
        assert_eq!(ag_group_left_identity(&fixtures::z2()), Ok(0));
        assert!(matches!(
            ag_group_left_identity(&fixtures::f1()),
            Err(Error::NotAgGroup(_))
        ));
    }

    #[test]
    fn non_e_unitary_fixture() {
        let g = fixtures::collapsed_chain();
        let r = classify(&g);
        assert!(r.is_completely_inverse);
        assert!(!r.is_e_unitary);
    }
}
