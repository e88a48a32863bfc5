use std::fmt;
use std::str::FromStr;

use super::Groupoid;

/// Identities decided by exhaustive substitution.
///
/// Costs are `n^k` table lookups for a law in `k` variables: the three-variable
/// laws are `O(n³)`, the medial and paramedial laws `O(n⁴)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `(xy)z = (zy)x`
    LeftInvertive,
    /// `x(yz) = y(xz)`; together with the left invertive law this defines AG**.
    AgStarStar,
    /// `(ab)(cd) = (ac)(bd)`
    Medial,
    /// `(wx)(yz) = (zx)(yw)`
    Paramedial,
    /// `xy = yx`
    Commutative,
    /// `(xy)z = x(yz)`
    Associative,
    /// `xx = x`
    Idempotent,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::LeftInvertive,
        Law::AgStarStar,
        Law::Medial,
        Law::Paramedial,
        Law::Commutative,
        Law::Associative,
        Law::Idempotent,
    ];

    pub fn arity(self) -> usize {
        match self {
            Law::Idempotent => 1,
            Law::Commutative => 2,
            Law::LeftInvertive | Law::AgStarStar | Law::Associative => 3,
            Law::Medial | Law::Paramedial => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::LeftInvertive => "left-invertive",
            Law::AgStarStar => "ag-star-star",
            Law::Medial => "medial",
            Law::Paramedial => "paramedial",
            Law::Commutative => "commutative",
            Law::Associative => "associative",
            Law::Idempotent => "idempotent",
        }
    }

    fn holds_at(self, g: &Groupoid, v: &[usize]) -> bool {
        let m = |a, b| g.op(a, b);
        match self {
            Law::LeftInvertive => m(m(v[0], v[1]), v[2]) == m(m(v[2], v[1]), v[0]),
            Law::AgStarStar => m(v[0], m(v[1], v[2])) == m(v[1], m(v[0], v[2])),
            Law::Medial => m(m(v[0], v[1]), m(v[2], v[3])) == m(m(v[0], v[2]), m(v[1], v[3])),
            Law::Paramedial => {
                m(m(v[0], v[1]), m(v[2], v[3])) == m(m(v[3], v[1]), m(v[2], v[0]))
            }
            Law::Commutative => m(v[0], v[1]) == m(v[1], v[0]),
            Law::Associative => m(m(v[0], v[1]), v[2]) == m(v[0], m(v[1], v[2])),
            Law::Idempotent => m(v[0], v[0]) == v[0],
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

/// The first substitution (in lexicographic order) falsifying `law`.
pub fn law_violation(g: &Groupoid, law: Law) -> Option<Vec<usize>> {
    let n = g.order();
    let k = law.arity();
    let mut v = vec![0; k];
    loop {
        if !law.holds_at(g, &v) {
            return Some(v);
        }
        // odometer increment
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

pub fn check_identity(g: &Groupoid, law: Law) -> bool {
    law_violation(g, law).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn f2_is_left_invertive() {
        // (b-a) mod 3: ((b-a) then c) = c-(b-a) = c-b+a, symmetric in a and c.
        assert!(check_identity(&fixtures::f2(), Law::LeftInvertive));
    }

    #[test]
    fn right_zero_band_is_not_left_invertive() {
        let g = Groupoid::from_fn(2, |_, b| b).unwrap();
        assert_eq!(law_violation(&g, Law::LeftInvertive), Some(vec![0, 0, 1]));
    }

    #[test]
    fn f1_is_associative_and_commutative() {
        let g = fixtures::f1();
        assert!(check_identity(&g, Law::Associative));
        assert!(check_identity(&g, Law::Commutative));
        assert!(!check_identity(&g, Law::Idempotent));
    }

    #[test]
    fn law_names_round_trip() {
        for law in Law::ALL {
            assert_eq!(law.name().parse::<Law>().unwrap(), law);
        }
        assert!("distributive".parse::<Law>().is_err());
    }

    #[test]
    fn f2_is_not_associative() {
        let g = fixtures::f2();
        assert_eq!(g.op(g.op(1, 1), 1), 1);
        assert_eq!(g.op(1, g.op(1, 1)), 2);
        assert!(!check_identity(&g, Law::Associative));
    }
}
