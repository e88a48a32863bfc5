//! Small named groupoids used throughout the tests, the verification suite
//! and the documentation.

use crate::magma::{parse_mag, Groupoid};

fn table(text: &str) -> Groupoid {
    parse_mag(text).expect("fixture tables are well formed")
}

/// The 4-element commutative inverse semigroup on `{a, b, e, f}` with
/// semilattice of idempotents `e < f`.
pub fn f1() -> Groupoid {
    table(
        "4
a b e f
e e a a
e f a b
a a e e
a b e f",
    )
}

/// `Z3` with `a·b = (b − a) mod 3`: a non-associative AG-group.
pub fn f2() -> Groupoid {
    Groupoid::from_fn(3, |a, b| (b + 3 - a) % 3).unwrap()
}

pub fn z2() -> Groupoid {
    Groupoid::from_fn(2, |a, b| (a + b) % 2).unwrap()
}

pub fn z3() -> Groupoid {
    Groupoid::from_fn(3, |a, b| (a + b) % 3).unwrap()
}

/// The two-element chain `0 < 1` under meet.
pub fn chain2() -> Groupoid {
    Groupoid::from_fn(2, |a, b| a.min(b)).unwrap()
}

pub fn trivial() -> Groupoid {
    Groupoid::from_table(1, vec![0]).unwrap()
}

/// Two copies of `Z2` over the chain `e < f` where the structure map sends
/// all of `{b, f}` to `e`. Completely inverse but not E-unitary.
pub fn collapsed_chain() -> Groupoid {
    table(
        "4
a b e f
e a a a
a f e b
a e e e
a b e f",
    )
}

/// Every named fixture with a short identifier.
pub fn all() -> Vec<(&'static str, Groupoid)> {
    vec![
        ("f1", f1()),
        ("f2", f2()),
        ("z2", z2()),
        ("z3", z3()),
        ("chain2", chain2()),
        ("trivial", trivial()),
        ("collapsed-chain", collapsed_chain()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::classify;

    #[test]
    fn every_fixture_is_completely_inverse() {
        for (name, g) in all() {
            assert!(classify(&g).is_completely_inverse, "{name}");
        }
    }
}
