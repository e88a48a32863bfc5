use super::{classify::idempotents, inverses_of, ElementSet, Groupoid, Law, law_violation};
use crate::error::{Error, Result};

/// A groupoid validated to be a completely inverse AG**-groupoid, with the
/// inverse map and `a·a⁻¹` cached.
///
/// Every closed-form congruence in the crate is a method on this view.
#[derive(Clone, Debug)]
pub struct CompletelyInverse<'g> {
    g: &'g Groupoid,
    inverse: Vec<usize>,
    unit: Vec<usize>,
    idempotents: ElementSet,
}

impl<'g> CompletelyInverse<'g> {
    pub fn new(g: &'g Groupoid) -> Result<Self> {
        for law in [Law::LeftInvertive, Law::AgStarStar] {
            if let Some(v) = law_violation(g, law) {
                let labels: Vec<&str> = v.iter().map(|&x| g.name(x)).collect();
                return Err(Error::NotCompletelyInverse(format!(
                    "{law} law fails at ({})",
                    labels.join(", ")
                )));
            }
        }
        let mut inverse = Vec::with_capacity(g.order());
        for a in g.elements() {
            let v = inverses_of(g, a);
            if v.len() != 1 {
                return Err(Error::NotCompletelyInverse(format!(
                    "element {} has {} inverses",
                    g.name(a),
                    v.len()
                )));
            }
            let inv = v.min().unwrap();
            if g.op(a, inv) != g.op(inv, a) {
                return Err(Error::NotCompletelyInverse(format!(
                    "element {} does not commute with its inverse {}",
                    g.name(a),
                    g.name(inv)
                )));
            }
            inverse.push(inv);
        }
        let unit = g.elements().map(|a| g.op(a, inverse[a])).collect();
        Ok(CompletelyInverse {
            g,
            inverse,
            unit,
            idempotents: idempotents(g),
        })
    }

    #[inline]
    pub fn groupoid(&self) -> &'g Groupoid {
        self.g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.g.order()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.g.op(a, b)
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The idempotent `a·a⁻¹`.
    #[inline]
    pub fn unit(&self, a: usize) -> usize {
        self.unit[a]
    }

    pub fn idempotents(&self) -> ElementSet {
        self.idempotents
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.idempotents.contains(a)
    }

    /// The natural order on `E_A`: `f ≤ e` iff `f = fe`.
    pub fn idempotent_leq(&self, f: usize, e: usize) -> bool {
        self.op(f, e) == f
    }
}
