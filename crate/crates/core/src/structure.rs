//! Strong semilattices of AG-groups, the natural order, normal
//! subgroupoids and the derived constructions.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::magma::{
    check_identity, classify, content_lines, inverses_of, parse_mag_lines, CompletelyInverse,
    ElementSet, Groupoid, Law,
};
use crate::relation::EquivRelation;

/// `[Y; G_α; φ_{α,β}]`. Components are indexed by the elements of `Y`;
/// `maps` holds `φ_{α,β}` for `α > β` only, as local index vectors, and
/// `φ_{α,α}` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongSemilattice {
    pub y: Groupoid,
    pub components: Vec<Groupoid>,
    pub maps: BTreeMap<(usize, usize), Vec<usize>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidStructure(msg.into())
}

impl StrongSemilattice {
    /// `β ≤ α` in `Y`.
    pub fn below(&self, beta: usize, alpha: usize) -> bool {
        self.y.op(alpha, beta) == beta
    }

    /// `φ_{α,β}(x)` for `α ≥ β`.
    pub fn map(&self, alpha: usize, beta: usize, x: usize) -> usize {
        if alpha == beta {
            x
        } else {
            self.maps[&(alpha, beta)][x]
        }
    }

    pub fn validate(&self) -> Result<()> {
        let y = &self.y;
        for law in [Law::Commutative, Law::Associative, Law::Idempotent] {
            if !check_identity(y, law) {
                return Err(invalid(format!("Y is not a semilattice: {law} law fails")));
            }
        }
        if self.components.len() != y.order() {
            return Err(invalid(format!(
                "{} components for {} semilattice elements",
                self.components.len(),
                y.order()
            )));
        }
        let mut labels = HashSet::new();
        for (alpha, c) in self.components.iter().enumerate() {
            if !classify(c).is_ag_group {
                return Err(invalid(format!("component {} is not an AG-group", y.name(alpha))));
            }
            for name in c.names() {
                if !labels.insert(name.as_str()) {
                    return Err(invalid(format!("label {name} occurs in two components")));
                }
            }
        }
        for (&(alpha, beta), phi) in &self.maps {
            if alpha >= y.order() || beta >= y.order() {
                return Err(invalid("map indexed outside Y"));
            }
            if alpha == beta {
                return Err(invalid(format!(
                    "(a): φ for ({0}, {0}) must be left implicit as the identity",
                    y.name(alpha)
                )));
            }
            if !self.below(beta, alpha) {
                return Err(invalid(format!(
                    "map given for ({}, {}) but {} is not above {}",
                    y.name(alpha),
                    y.name(beta),
                    y.name(alpha),
                    y.name(beta)
                )));
            }
            let (ca, cb) = (&self.components[alpha], &self.components[beta]);
            if phi.len() != ca.order() || phi.iter().any(|&v| v >= cb.order()) {
                return Err(invalid(format!(
                    "map ({}, {}) is not a function between the components",
                    y.name(alpha),
                    y.name(beta)
                )));
            }
        }
        for alpha in y.elements() {
            for beta in y.elements() {
                if alpha != beta && self.below(beta, alpha) && !self.maps.contains_key(&(alpha, beta)) {
                    return Err(invalid(format!(
                        "missing map ({}, {})",
                        y.name(alpha),
                        y.name(beta)
                    )));
                }
            }
        }
        for (&(alpha, beta), phi) in &self.maps {
            let (ca, cb) = (&self.components[alpha], &self.components[beta]);
            for x in ca.elements() {
                for z in ca.elements() {
                    if phi[ca.op(x, z)] != cb.op(phi[x], phi[z]) {
                        return Err(invalid(format!(
                            "homomorphism condition fails for ({}, {}) at ({}, {})",
                            y.name(alpha),
                            y.name(beta),
                            ca.name(x),
                            ca.name(z)
                        )));
                    }
                }
            }
        }
        for alpha in y.elements() {
            for beta in y.elements() {
                for gamma in y.elements() {
                    if !(self.below(beta, alpha) && self.below(gamma, beta)) {
                        continue;
                    }
                    let ca = &self.components[alpha];
                    if let Some(x) = ca.elements().find(|&x| {
                        self.map(beta, gamma, self.map(alpha, beta, x)) != self.map(alpha, gamma, x)
                    }) {
                        return Err(invalid(format!(
                            "(b): composite ({}, {}, {}) disagrees at {}",
                            y.name(alpha),
                            y.name(beta),
                            y.name(gamma),
                            ca.name(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every `φ_{α,β}` is injective.
    pub fn maps_injective(&self) -> bool {
        self.maps
            .values()
            .all(|phi| phi.iter().collect::<HashSet<_>>().len() == phi.len())
    }

    /// The groupoid on the disjoint union of the components with
    /// `a_α · a_β = φ_{α,αβ}(a_α) · φ_{β,αβ}(a_β)`.
    pub fn compose(&self) -> Result<Groupoid> {
        self.validate()?;
        let mut offset = Vec::with_capacity(self.components.len());
        let mut names = Vec::new();
        let mut owner = Vec::new();
        for (alpha, c) in self.components.iter().enumerate() {
            offset.push(names.len());
            names.extend(c.names().iter().cloned());
            owner.extend(c.elements().map(|x| (alpha, x)));
        }
        let n = names.len();
        let mut table = Vec::with_capacity(n * n);
        for &(alpha, x) in &owner {
            for &(beta, z) in &owner {
                let gamma = self.y.op(alpha, beta);
                let c = &self.components[gamma];
                let v = c.op(self.map(alpha, gamma, x), self.map(beta, gamma, z));
                table.push(offset[gamma] + v);
            }
        }
        Groupoid::new(names, table)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines = content_lines(text, 1);
        let mut sections: Vec<(usize, &str, Vec<(usize, &str)>)> = Vec::new();
        for (ln, line) in lines {
            let t = line.trim();
            if t.starts_with('[') {
                let Some(header) = t.strip_prefix('[').and_then(|h| h.strip_suffix(']')) else {
                    return Err(Error::Parse {
                        line: ln,
                        token: t.into(),
                        message: "malformed section header".into(),
                    });
                };
                sections.push((ln, header, Vec::new()));
            } else if let Some(last) = sections.last_mut() {
                last.2.push((ln, line));
            } else {
                return Err(Error::Parse {
                    line: ln,
                    token: t.split_whitespace().next().unwrap_or("").into(),
                    message: "content before the first section".into(),
                });
            }
        }

        let mut y: Option<Groupoid> = None;
        let mut components: BTreeMap<usize, Groupoid> = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for (ln, header, body) in sections {
            let words: Vec<&str> = header.split_whitespace().collect();
            let y_index = |label: &str| -> Result<usize> {
                let y = y.as_ref().ok_or_else(|| Error::Parse {
                    line: ln,
                    token: label.into(),
                    message: "section before [Y]".into(),
                })?;
                y.index_of(label).ok_or_else(|| Error::Parse {
                    line: ln,
                    token: label.into(),
                    message: "not an element of Y".into(),
                })
            };
            match words.as_slice() {
                ["Y"] => {
                    if y.is_some() {
                        return Err(Error::Parse {
                            line: ln,
                            token: "Y".into(),
                            message: "duplicate [Y] section".into(),
                        });
                    }
                    y = Some(parse_mag_lines(&body, ln)?);
                }
                ["component", alpha] => {
                    let a = y_index(alpha)?;
                    if components.insert(a, parse_mag_lines(&body, ln)?).is_some() {
                        return Err(Error::Parse {
                            line: ln,
                            token: (*alpha).into(),
                            message: "duplicate component".into(),
                        });
                    }
                }
                ["map", alpha, beta] => {
                    let (a, b) = (y_index(alpha)?, y_index(beta)?);
                    let (Some(ca), Some(cb)) = (components.get(&a), components.get(&b)) else {
                        return Err(Error::Parse {
                            line: ln,
                            token: header.into(),
                            message: "map before its components".into(),
                        });
                    };
                    let mut phi = vec![usize::MAX; ca.order()];
                    for &(l, line) in &body {
                        let toks: Vec<&str> = line.split_whitespace().collect();
                        let [x, "->", z] = toks.as_slice() else {
                            return Err(Error::Parse {
                                line: l,
                                token: line.trim().into(),
                                message: "expected `x -> y`".into(),
                            });
                        };
                        let xi = ca.index_of(x).ok_or_else(|| Error::Parse {
                            line: l,
                            token: (*x).into(),
                            message: format!("not an element of component {alpha}"),
                        })?;
                        let zi = cb.index_of(z).ok_or_else(|| Error::Parse {
                            line: l,
                            token: (*z).into(),
                            message: format!("not an element of component {beta}"),
                        })?;
                        if phi[xi] != usize::MAX {
                            return Err(Error::Parse {
                                line: l,
                                token: (*x).into(),
                                message: "mapped twice".into(),
                            });
                        }
                        phi[xi] = zi;
                    }
                    if let Some(x) = phi.iter().position(|&v| v == usize::MAX) {
                        return Err(Error::Parse {
                            line: ln,
                            token: ca.name(x).into(),
                            message: "element has no image".into(),
                        });
                    }
                    if maps.insert((a, b), phi).is_some() {
                        return Err(Error::Parse {
                            line: ln,
                            token: header.into(),
                            message: "duplicate map".into(),
                        });
                    }
                }
                _ => {
                    return Err(Error::Parse {
                        line: ln,
                        token: header.into(),
                        message: "unknown section".into(),
                    })
                }
            }
        }
        let y = y.ok_or_else(|| Error::Parse {
            line: 1,
            token: String::new(),
            message: "missing [Y] section".into(),
        })?;
        let mut comps = Vec::with_capacity(y.order());
        for alpha in y.elements() {
            comps.push(components.remove(&alpha).ok_or_else(|| {
                invalid(format!("missing component {}", y.name(alpha)))
            })?);
        }
        let s = StrongSemilattice {
            y,
            components: comps,
            maps,
        };
        s.validate()?;
        Ok(s)
    }
}

impl fmt::Display for StrongSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Y]\n{}", self.y)?;
        for (alpha, c) in self.components.iter().enumerate() {
            write!(f, "\n[component {}]\n{}", self.y.name(alpha), c)?;
        }
        for (&(alpha, beta), phi) in &self.maps {
            write!(f, "\n[map {} {}]\n", self.y.name(alpha), self.y.name(beta))?;
            let (ca, cb) = (&self.components[alpha], &self.components[beta]);
            for (x, &z) in phi.iter().enumerate() {
                writeln!(f, "{} -> {}", ca.name(x), cb.name(z))?;
            }
        }
        Ok(())
    }
}

pub fn decompose(g: &Groupoid) -> Result<StrongSemilattice> {
    Ok(CompletelyInverse::new(g)?.decompose())
}

pub fn compose(s: &StrongSemilattice) -> Result<Groupoid> {
    s.compose()
}

/// `a · b = a⁻¹b` on a commutative inverse semigroup.
pub fn derived_groupoid(s: &Groupoid) -> Result<Groupoid> {
    let fail = |m: String| Error::NotCommutativeInverseSemigroup(m);
    if let Some(law) = [Law::Commutative, Law::Associative]
        .into_iter()
        .find(|&l| !check_identity(s, l))
    {
        return Err(fail(format!("{law} law fails")));
    }
    let mut inverse = Vec::with_capacity(s.order());
    for a in s.elements() {
        let v = inverses_of(s, a);
        if v.len() != 1 {
            return Err(fail(format!("{} has {} inverses", s.name(a), v.len())));
        }
        inverse.push(v.min().unwrap());
    }
    let table = (0..s.order() * s.order())
        .map(|k| s.op(inverse[k / s.order()], k % s.order()))
        .collect();
    let d = Groupoid::new(s.names().to_vec(), table)?;
    debug_assert!(CompletelyInverse::new(&d).is_ok());
    Ok(d)
}

/// `a ≤ b` iff `a ∈ E·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalOrder {
    below: Vec<ElementSet>,
}

impl NaturalOrder {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `{a : a ≤ b}`.
    pub fn down_set(&self, b: usize) -> ElementSet {
        self.below[b]
    }

    pub fn up_set(&self, a: usize) -> ElementSet {
        (0..self.below.len()).filter(|&b| self.leq(a, b)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.below.len())
            .flat_map(|b| self.below[b].iter().map(move |a| (a, b)))
            .collect()
    }

    /// Why this is not a compatible partial order on `g`, if it is not.
    pub fn violation(&self, g: &Groupoid) -> Option<String> {
        let n = self.below.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Some(format!("not reflexive at {}", g.name(a)));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Some(format!("not antisymmetric at ({}, {})", g.name(a), g.name(b)));
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Some(format!("not transitive at {}", g.name(b)));
                    }
                }
            }
        }
        for (a, b) in self.pairs() {
            for (c, d) in self.pairs() {
                if !self.leq(g.op(a, c), g.op(b, d)) {
                    return Some(format!(
                        "not compatible at {} ≤ {}, {} ≤ {}",
                        g.name(a),
                        g.name(b),
                        g.name(c),
                        g.name(d)
                    ));
                }
            }
        }
        None
    }
}

/// The first failed clause of normality, in checking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalViolation {
    NotSubgroupoid { x: String, y: String },
    NotInverseClosed { x: String },
    NotFull { e: String },
    NotSymmetric { x: String, y: String },
    NotClosed { x: String },
}

impl fmt::Display for NormalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalViolation::NotSubgroupoid { x, y } => {
                write!(f, "not a subgroupoid: {x}·{y} leaves the set")
            }
            NormalViolation::NotInverseClosed { x } => {
                write!(f, "not inverse-closed: the inverse of {x} is missing")
            }
            NormalViolation::NotFull { e } => write!(f, "not full: idempotent {e} is missing"),
            NormalViolation::NotSymmetric { x, y } => {
                write!(f, "not symmetric: {x}·{y} is in the set but {y}·{x} is not")
            }
            NormalViolation::NotClosed { x } => {
                write!(f, "not closed: {x} lies above a member but is missing")
            }
        }
    }
}

impl<'g> CompletelyInverse<'g> {
    pub fn decompose(&self) -> StrongSemilattice {
        let g = self.groupoid();
        let e = self.idempotents();
        let (y, e_list) = g.subgroupoid(e).expect("E is a nonempty subgroupoid");
        let classes: Vec<ElementSet> = e_list
            .iter()
            .map(|&f| g.elements().filter(|&a| self.unit(a) == f).collect())
            .collect();
        let mut components = Vec::with_capacity(e_list.len());
        let mut members = Vec::with_capacity(e_list.len());
        for &c in &classes {
            let (comp, m) = g.subgroupoid(c).expect("μ-classes are subgroupoids");
            components.push(comp);
            members.push(m);
        }
        let mut maps = BTreeMap::new();
        for (i, &ei) in e_list.iter().enumerate() {
            for (j, &fj) in e_list.iter().enumerate() {
                if i != j && self.idempotent_leq(fj, ei) {
                    let phi = members[i]
                        .iter()
                        .map(|&x| {
                            members[j]
                                .binary_search(&g.op(fj, x))
                                .expect("f·x lies in G_f")
                        })
                        .collect();
                    maps.insert((i, j), phi);
                }
            }
        }
        let s = StrongSemilattice {
            y,
            components,
            maps,
        };
        debug_assert_eq!(s.validate(), Ok(()));
        s
    }

    /// The subgroupoid on `{a² : a ∈ A}`.
    pub fn square_part(&self) -> Groupoid {
        let g = self.groupoid();
        let squares: ElementSet = g.elements().map(|a| g.op(a, a)).collect();
        g.subgroupoid(squares).expect("squares form a subgroupoid").0
    }

    pub fn natural_order(&self) -> NaturalOrder {
        let g = self.groupoid();
        let e = self.idempotents();
        NaturalOrder {
            below: g
                .elements()
                .map(|b| e.iter().map(|f| g.op(f, b)).collect())
                .collect(),
        }
    }

    /// `Bω`: every element above some member of `B`.
    pub fn closure_omega(&self, b: ElementSet) -> Result<ElementSet> {
        if b.is_empty() {
            return Err(Error::EmptySubset);
        }
        let order = self.natural_order();
        Ok(b.iter().fold(ElementSet::EMPTY, |acc, x| acc.union(order.up_set(x))))
    }

    /// `E_Aω` read as `{a : ea ∈ E for some e ∈ E}`.
    pub fn idempotent_closure_by_products(&self) -> ElementSet {
        let e = self.idempotents();
        self.groupoid()
            .elements()
            .filter(|&a| e.iter().any(|f| e.contains(self.op(f, a))))
            .collect()
    }

    pub fn normal_violation(&self, n: ElementSet) -> Option<NormalViolation> {
        let g = self.groupoid();
        let name = |x: usize| g.name(x).to_string();
        for x in n.iter() {
            for y in n.iter() {
                if !n.contains(g.op(x, y)) {
                    return Some(NormalViolation::NotSubgroupoid { x: name(x), y: name(y) });
                }
            }
        }
        if let Some(x) = n.iter().find(|&x| !n.contains(self.inverse(x))) {
            return Some(NormalViolation::NotInverseClosed { x: name(x) });
        }
        if let Some(e) = self.idempotents().iter().find(|&e| !n.contains(e)) {
            return Some(NormalViolation::NotFull { e: name(e) });
        }
        for x in g.elements() {
            for y in g.elements() {
                if n.contains(g.op(x, y)) && !n.contains(g.op(y, x)) {
                    return Some(NormalViolation::NotSymmetric { x: name(x), y: name(y) });
                }
            }
        }
        let up = self.closure_omega(n).unwrap_or(ElementSet::EMPTY);
        if let Some(x) = up.difference(n).min() {
            return Some(NormalViolation::NotClosed { x: name(x) });
        }
        None
    }

    pub fn is_normal(&self, n: ElementSet) -> bool {
        !n.is_empty() && self.normal_violation(n).is_none()
    }

    /// `ρ_N`: `a ρ_N b` iff `ab⁻¹ ∈ N`.
    pub fn rho_n(&self, n: ElementSet) -> Result<Congruence<'g>> {
        if n.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(v) = self.normal_violation(n) {
            return Err(Error::NotNormal(v));
        }
        let g = self.groupoid();
        let rel = EquivRelation::from_predicate(g.order(), |a, b| n.contains(g.op(a, self.inverse(b))))?;
        Congruence::new(g, rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::magma::parse_mag;

    fn set(g: &Groupoid, labels: &str) -> ElementSet {
        labels.split_whitespace().map(|l| g.index_of(l).unwrap()).collect()
    }

    #[test]
    fn decompose_f1() {
        let g = fixtures::f1();
        let s = decompose(&g).unwrap();
        assert_eq!(s.y.names(), ["e", "f"]);
        assert_eq!(s.components[0].names(), ["a", "e"]);
        assert_eq!(s.components[1].names(), ["b", "f"]);
        // φ_{f,e}: b ↦ a, f ↦ e
        assert_eq!(s.maps[&(1, 0)], vec![0, 1]);
        assert_eq!(s.maps.len(), 1);
        assert!(s.compose().unwrap().same_table_by_labels(&g));
        assert!(s.maps_injective());
    }

    #[test]
    fn decompose_small_fixtures() {
        let s = decompose(&fixtures::f2()).unwrap();
        assert_eq!(s.y.order(), 1);
        assert_eq!(s.components[0], fixtures::f2());
        let s = decompose(&fixtures::chain2()).unwrap();
        assert_eq!(s.y, fixtures::chain2());
        assert!(s.components.iter().all(|c| c.order() == 1));
    }

    #[test]
    fn collapsing_map_is_not_e_unitary() {
        let g = fixtures::collapsed_chain();
        let s = decompose(&g).unwrap();
        assert!(!s.maps_injective());
        assert!(s.compose().unwrap().same_table_by_labels(&g));
    }

    #[test]
    fn round_trip_for_fixtures() {
        for (name, g) in fixtures::all() {
            let s = decompose(&g).unwrap();
            let h = s.compose().unwrap();
            assert!(h.same_table_by_labels(&g), "{name}");
            assert_eq!(decompose(&h).unwrap(), s, "{name}");
            let text = s.to_string();
            let back = StrongSemilattice::parse(&text).unwrap();
            assert_eq!(back, s, "{name}");
            assert_eq!(back.to_string(), text, "{name}");
        }
    }

    #[test]
    fn text_format() {
        let s = decompose(&fixtures::f1()).unwrap();
        assert_eq!(
            s.to_string(),
            "[Y]\n2\ne f\ne e\ne f\n\n[component e]\n2\na e\ne a\na e\n\n\
             [component f]\n2\nb f\nf b\nb f\n\n[map f e]\nb -> a\nf -> e\n"
        );
    }

    #[test]
    fn validation_names_the_condition() {
        let base = decompose(&fixtures::f1()).unwrap();
        let mut s = base.clone();
        s.maps.insert((1, 0), vec![1, 0]);
        let err = s.compose().unwrap_err();
        assert!(err.to_string().contains("homomorphism"), "{err}");

        let mut s = base.clone();
        s.maps.insert((0, 0), vec![0, 1]);
        assert!(s.compose().unwrap_err().to_string().contains("(a)"));

        let mut s = base.clone();
        s.maps.clear();
        assert!(s.compose().unwrap_err().to_string().contains("missing map"));

        let mut s = base;
        s.components[1] = s.components[1].clone().with_names(["a", "f"]).unwrap();
        assert!(s.compose().unwrap_err().to_string().contains("two components"));
    }

    #[test]
    fn condition_b_is_checked() {
        // Y = 3-chain 0 < 1 < 2 with Z2 components; φ_{2,0} disagrees with φ_{1,0}∘φ_{2,1}
        let text = "[Y]\n3\n0 1 2\n0 0 0\n0 1 1\n0 1 2\n\
                    [component 0]\n2\nz0 u0\nu0 z0\nz0 u0\n\
                    [component 1]\n2\nz1 u1\nu1 z1\nz1 u1\n\
                    [component 2]\n2\nz2 u2\nu2 z2\nz2 u2\n\
                    [map 1 0]\nz1 -> z0\nu1 -> u0\n\
                    [map 2 1]\nz2 -> z1\nu2 -> u1\n\
                    [map 2 0]\nz2 -> u0\nu2 -> u0\n";
        let err = StrongSemilattice::parse(text).unwrap_err();
        assert!(err.to_string().contains("(b)"), "{err}");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = StrongSemilattice::parse("[Y]\n1\ne\ne\n[map e x]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, ref token, .. } if token == "x"));
        let err = StrongSemilattice::parse("[Q]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn derived_groupoids() {
        let d = derived_groupoid(&fixtures::z3()).unwrap();
        assert_eq!(d, fixtures::f2());
        assert_eq!(derived_groupoid(&fixtures::f1()).unwrap(), fixtures::f1());
        assert_eq!(derived_groupoid(&fixtures::chain2()).unwrap(), fixtures::chain2());
        assert!(matches!(
            derived_groupoid(&fixtures::f2()),
            Err(Error::NotCommutativeInverseSemigroup(_))
        ));
    }

    #[test]
    fn square_parts() {
        let g = fixtures::f2();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert_eq!(ci.square_part().order(), 1);
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert_eq!(ci.square_part().names(), ["e", "f"]);
        let g = fixtures::chain2();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert_eq!(ci.square_part(), g);
    }

    #[test]
    fn natural_orders() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let order = ci.natural_order();
        let strict: Vec<(usize, usize)> =
            order.pairs().into_iter().filter(|(a, b)| a != b).collect();
        assert_eq!(strict, vec![(0, 1), (2, 3)]);
        assert_eq!(order.violation(&g), None);
        let f2 = fixtures::f2();
        let ci = CompletelyInverse::new(&f2).unwrap();
        assert!(ci.natural_order().pairs().iter().all(|(a, b)| a == b));
    }

    #[test]
    fn omega_closures() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert_eq!(ci.closure_omega(set(&g, "e")), Ok(set(&g, "e f")));
        assert_eq!(ci.closure_omega(ci.idempotents()), Ok(set(&g, "e f")));
        assert_eq!(ci.idempotent_closure_by_products(), set(&g, "e f"));
        assert_eq!(ci.closure_omega(ElementSet::EMPTY), Err(Error::EmptySubset));
        let f2 = fixtures::f2();
        let ci = CompletelyInverse::new(&f2).unwrap();
        assert_eq!(ci.closure_omega(ElementSet::singleton(0)), Ok(ElementSet::singleton(0)));
    }

    #[test]
    fn normal_subgroupoids() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert!(ci.is_normal(set(&g, "e f")));
        assert_eq!(
            ci.normal_violation(set(&g, "e")),
            Some(NormalViolation::NotFull { e: "f".into() })
        );
        assert_eq!(
            ci.normal_violation(set(&g, "a e f")),
            Some(NormalViolation::NotClosed { x: "b".into() })
        );
        assert_eq!(
            ci.normal_violation(set(&g, "a f")),
            Some(NormalViolation::NotSubgroupoid { x: "a".into(), y: "a".into() })
        );
    }

    #[test]
    fn group_congruences_from_normal_sets() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert_eq!(ci.rho_n(set(&g, "e f")).unwrap(), ci.sigma());
        assert_eq!(ci.rho_n(g.all()).unwrap(), Congruence::full(&g));
        assert!(matches!(ci.rho_n(set(&g, "e")), Err(Error::NotNormal(_))));
        let f2 = fixtures::f2();
        let ci = CompletelyInverse::new(&f2).unwrap();
        assert_eq!(ci.rho_n(ElementSet::singleton(0)).unwrap(), Congruence::identity(&f2));
    }

    #[test]
    fn tables_parse_into_decomposable_groupoids() {
        let g = parse_mag("1\nx\nx\n").unwrap();
        let s = decompose(&g).unwrap();
        assert_eq!(s.to_string(), "[Y]\n1\nx\nx\n\n[component x]\n1\nx\nx\n");
    }
}
