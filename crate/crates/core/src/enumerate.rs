//! Small groupoids up to isomorphism.
//!
//! Two independent generators exist for the completely inverse class: a
//! backtracking filter over raw Cayley tables, and synthesis of strong
//! semilattices of AG-groups. AG-groups are synthesized from abelian groups
//! `(G, +)` with an involutive automorphism `φ` as `x·y = φ(x) + y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{classify, ClassificationReport, Groupoid};
use crate::structure::StrongSemilattice;

pub const FILTER_BOUND: usize = 4;
pub const SYNTHESIS_BOUND: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassFilter {
    Ag,
    AgStarStar,
    CompletelyInverse,
    AgGroup,
    AgBand,
}

impl ClassFilter {
    pub const ALL: [ClassFilter; 5] = [
        ClassFilter::Ag,
        ClassFilter::AgStarStar,
        ClassFilter::CompletelyInverse,
        ClassFilter::AgGroup,
        ClassFilter::AgBand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::Ag => "ag",
            ClassFilter::AgStarStar => "ag-star-star",
            ClassFilter::CompletelyInverse => "completely-inverse",
            ClassFilter::AgGroup => "ag-group",
            ClassFilter::AgBand => "ag-band",
        }
    }

    pub fn accepts(self, r: &ClassificationReport) -> bool {
        match self {
            ClassFilter::Ag => r.is_ag,
            ClassFilter::AgStarStar => r.is_ag_star_star,
            ClassFilter::CompletelyInverse => r.is_completely_inverse,
            ClassFilter::AgGroup => r.is_ag_group,
            ClassFilter::AgBand => r.is_ag_band,
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ClassFilter::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = ClassFilter::ALL.iter().map(|c| c.name()).collect();
                format!("unknown class `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Backtracking over Cayley tables with law pruning.
    Filter,
    /// Strong semilattices of synthesized AG-groups.
    Synthesis,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "filter" => Ok(Strategy::Filter),
            "synthesis" => Ok(Strategy::Synthesis),
            _ => Err(format!("unknown strategy `{s}` (expected filter or synthesis)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Filter => "filter",
            Strategy::Synthesis => "synthesis",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub order: usize,
    pub class: ClassFilter,
    pub up_to_isomorphism: bool,
    pub strategy: Strategy,
    pub bound: usize,
}

impl EnumerationSpec {
    /// Isomorphism classes by the filter strategy with the default bound.
    pub fn new(order: usize, class: ClassFilter) -> Self {
        EnumerationSpec {
            order,
            class,
            up_to_isomorphism: true,
            strategy: Strategy::Filter,
            bound: FILTER_BOUND,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self.bound = match strategy {
            Strategy::Filter => FILTER_BOUND,
            Strategy::Synthesis => SYNTHESIS_BOUND,
        };
        self
    }

    pub fn labeled(mut self) -> Self {
        self.up_to_isomorphism = false;
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }
}

/// Every groupoid matching `spec`, sorted by table. Isomorphism class
/// representatives are in canonical form.
pub fn enumerate(spec: &EnumerationSpec) -> Result<Vec<Groupoid>> {
    if spec.order == 0 {
        return Err(Error::InvalidTable("order must be positive".into()));
    }
    if spec.order > spec.bound {
        return Err(Error::OrderTooLarge {
            order: spec.order,
            bound: spec.bound,
        });
    }
    let classes: BTreeSet<Vec<usize>> = match spec.strategy {
        Strategy::Filter => filter_classes(spec.order, spec.class),
        Strategy::Synthesis => match spec.class {
            ClassFilter::CompletelyInverse => synthesize_completely_inverse(spec.order),
            ClassFilter::AgGroup => ag_groups(spec.order).into_iter().collect(),
            other => {
                return Err(Error::Unsupported(format!(
                    "synthesis covers completely-inverse and ag-group, not {other}"
                )))
            }
        },
    };
    let n = spec.order;
    let tables: BTreeSet<Vec<usize>> = if spec.up_to_isomorphism {
        classes
    } else {
        classes
            .into_par_iter()
            .flat_map_iter(|t| {
                (0..n)
                    .permutations(n)
                    .map(move |p| permute_table(&t, n, &p))
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    Ok(tables
        .into_iter()
        .map(|t| Groupoid::from_table(n, t).expect("generated tables are well formed"))
        .collect())
}

pub fn census(spec: &EnumerationSpec) -> Result<usize> {
    enumerate(spec).map(|v| v.len())
}

fn permute_table(t: &[usize], n: usize, perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[t[a * n + b]];
        }
    }
    out
}

fn canonical_table(t: &[usize], n: usize) -> Vec<usize> {
    (0..n)
        .permutations(n)
        .map(|p| permute_table(t, n, &p))
        .min()
        .unwrap_or_default()
}

/// The lexicographically least table over all relabelings, labelled `0..n`.
pub fn canonical_form(g: &Groupoid) -> Groupoid {
    Groupoid::from_table(g.order(), canonical_table(g.table(), g.order()))
        .expect("relabeling keeps a table well formed")
}

pub fn is_isomorphic(g: &Groupoid, h: &Groupoid) -> bool {
    g.order() == h.order() && canonical_form(g).table() == canonical_form(h).table()
}

// ---------------------------------------------------------------------------
// Filter strategy

#[derive(Clone, Copy, Default)]
struct Constraints {
    left_invertive: bool,
    ag_star_star: bool,
    associative: bool,
    commutative: bool,
    idempotent: bool,
    latin_columns: bool,
}

const UNSET: usize = usize::MAX;

struct Search {
    n: usize,
    c: Constraints,
    table: Vec<usize>,
}

impl Search {
    #[inline]
    fn at(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// No fully determined instance of an active law fails.
    fn consistent(&self) -> bool {
        let n = self.n;
        let c = self.c;
        for a in 0..n {
            for b in 0..n {
                let ab = self.at(a, b);
                if c.commutative {
                    let ba = self.at(b, a);
                    if ab != UNSET && ba != UNSET && ab != ba {
                        return false;
                    }
                }
                for z in 0..n {
                    if c.left_invertive {
                        let zb = self.at(z, b);
                        if ab != UNSET && zb != UNSET {
                            let (l, r) = (self.at(ab, z), self.at(zb, a));
                            if l != UNSET && r != UNSET && l != r {
                                return false;
                            }
                        }
                    }
                    if c.ag_star_star {
                        // a(bz) = b(az)
                        let (bz, az) = (self.at(b, z), self.at(a, z));
                        if bz != UNSET && az != UNSET {
                            let (l, r) = (self.at(a, bz), self.at(b, az));
                            if l != UNSET && r != UNSET && l != r {
                                return false;
                            }
                        }
                    }
                    if c.associative {
                        let bz = self.at(b, z);
                        if ab != UNSET && bz != UNSET {
                            let (l, r) = (self.at(ab, z), self.at(a, bz));
                            if l != UNSET && r != UNSET && l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn column_allows(&self, cell: usize, v: usize) -> bool {
        let (n, col) = (self.n, cell % self.n);
        (0..n).all(|row| self.table[row * n + col] != v)
    }

    fn run(&mut self, cell: usize, out: &mut BTreeSet<Vec<usize>>, accept: &dyn Fn(&[usize]) -> bool) {
        let n = self.n;
        if cell == n * n {
            if accept(&self.table) {
                out.insert(canonical_table(&self.table, n));
            }
            return;
        }
        if self.table[cell] != UNSET {
            return self.run(cell + 1, out, accept);
        }
        for v in 0..n {
            if self.c.latin_columns && !self.column_allows(cell, v) {
                continue;
            }
            self.table[cell] = v;
            if self.consistent() {
                self.run(cell + 1, out, accept);
            }
            self.table[cell] = UNSET;
        }
    }
}

fn search(n: usize, c: Constraints, accept: &(dyn Fn(&[usize]) -> bool + Sync)) -> BTreeSet<Vec<usize>> {
    let mut base = vec![UNSET; n * n];
    if c.idempotent {
        for x in 0..n {
            base[x * n + x] = x;
        }
    }
    // split the tree on the free cells of the first row
    let first_row: Vec<usize> = (0..n).filter(|&b| base[b] == UNSET).collect();
    let prefixes: Vec<Vec<usize>> = first_row
        .iter()
        .map(|_| 0..n)
        .multi_cartesian_product()
        .collect();
    let prefixes = if prefixes.is_empty() { vec![Vec::new()] } else { prefixes };
    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut s = Search {
                n,
                c,
                table: base.clone(),
            };
            for (&cell, &v) in first_row.iter().zip(&prefix) {
                if c.latin_columns && !s.column_allows(cell, v) {
                    return BTreeSet::new();
                }
                s.table[cell] = v;
            }
            let mut out = BTreeSet::new();
            if s.consistent() {
                s.run(0, &mut out, accept);
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn filter_classes(n: usize, class: ClassFilter) -> BTreeSet<Vec<usize>> {
    let mut c = Constraints {
        left_invertive: true,
        ..Constraints::default()
    };
    match class {
        ClassFilter::Ag => {}
        ClassFilter::AgStarStar | ClassFilter::CompletelyInverse => c.ag_star_star = true,
        ClassFilter::AgGroup => c.latin_columns = true,
        ClassFilter::AgBand => c.idempotent = true,
    }
    search(n, c, &|t| {
        let g = Groupoid::from_table(n, t.to_vec()).expect("complete table");
        class.accepts(&classify(&g))
    })
}

/// Semilattices of order `n` up to isomorphism, as tables.
pub fn semilattices(n: usize) -> Vec<Vec<usize>> {
    let c = Constraints {
        associative: true,
        commutative: true,
        idempotent: true,
        ..Constraints::default()
    };
    search(n, c, &|_| true).into_iter().collect()
}

// ---------------------------------------------------------------------------
// Synthesis strategy

/// Invariant factor lists `d1 | d2 | … | dk` with product `n`.
fn invariant_factors(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in (min.max(2))..=rest {
            if rest % d == 0 && prefix.last().map_or(true, |&p| d % p == 0) {
                prefix.push(d);
                go(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    go(n, 2, &mut Vec::new(), &mut out);
    out
}

/// The addition table of `Z_{d1} × … × Z_{dk}` in mixed-radix indexing.
fn abelian_group(factors: &[usize]) -> Vec<usize> {
    let n: usize = factors.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        factors
            .iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect()
    };
    let undigits = |ds: &[usize]| -> usize {
        ds.iter()
            .zip(factors)
            .rev()
            .fold(0, |acc, (&v, &d)| acc * d + v)
    };
    let mut t = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let sum: Vec<usize> = digits(a)
                .iter()
                .zip(digits(b))
                .zip(factors)
                .map(|((x, y), &d)| (x + y) % d)
                .collect();
            t[a * n + b] = undigits(&sum);
        }
    }
    t
}

/// AG-groups of order `n` up to isomorphism, as canonical tables.
pub fn ag_groups(n: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for factors in invariant_factors(n) {
        let add = abelian_group(&factors);
        for phi in (1..n).permutations(n - 1) {
            let phi: Vec<usize> = std::iter::once(0).chain(phi).collect();
            let involutive = (0..n).all(|x| phi[phi[x]] == x);
            let automorphism = (0..n)
                .all(|a| (0..n).all(|b| phi[add[a * n + b]] == add[phi[a] * n + phi[b]]));
            if involutive && automorphism {
                let t: Vec<usize> = (0..n * n).map(|k| add[phi[k / n] * n + k % n]).collect();
                out.insert(canonical_table(&t, n));
            }
        }
    }
    out
}

/// Homomorphisms between two AG-group tables, as image vectors.
fn homomorphisms(src: &Groupoid, dst: &Groupoid) -> Vec<Vec<usize>> {
    (0..src.order())
        .map(|_| 0..dst.order())
        .multi_cartesian_product()
        .filter(|phi| {
            src.elements().all(|x| {
                src.elements()
                    .all(|y| phi[src.op(x, y)] == dst.op(phi[x], phi[y]))
            })
        })
        .collect()
}

/// Compositions of `n` into `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (1..=n.saturating_sub(k - 1))
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn synthesize_completely_inverse(n: usize) -> BTreeSet<Vec<usize>> {
    let groups: BTreeMap<usize, Vec<Groupoid>> = (1..=n)
        .map(|m| {
            let gs = ag_groups(m)
                .into_iter()
                .map(|t| Groupoid::from_table(m, t).unwrap())
                .collect();
            (m, gs)
        })
        .collect();
    let mut jobs = Vec::new();
    for k in 1..=n {
        for y in semilattices(k) {
            for sizes in compositions(n, k) {
                jobs.push((k, y.clone(), sizes));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(k, y_table, sizes)| {
            let y = Groupoid::from_table(k, y_table).unwrap();
            let mut out = BTreeSet::new();
            let choices: Vec<&Vec<Groupoid>> = sizes.iter().map(|m| &groups[m]).collect();
            for picks in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
                synthesize_over(&y, &picks, &mut out);
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Every coherent family of structure maps over `y` with the given components.
fn synthesize_over(y: &Groupoid, picks: &[&Groupoid], out: &mut BTreeSet<Vec<usize>>) {
    let k = y.order();
    let below = |b: usize, a: usize| y.op(a, b) == b;
    // cover edges α ≻ β
    let covers: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            a != b && below(b, a) && !(0..k).any(|c| c != a && c != b && below(c, a) && below(b, c))
        })
        .collect();
    let mut offset = 0;
    let components: Vec<Groupoid> = picks
        .iter()
        .map(|g| {
            let names: Vec<String> = (0..g.order()).map(|i| (offset + i).to_string()).collect();
            offset += g.order();
            (*g).clone().with_names(names).unwrap()
        })
        .collect();
    let edge_homs: Vec<Vec<Vec<usize>>> = covers
        .iter()
        .map(|&(a, b)| homomorphisms(&components[a], &components[b]))
        .collect();
    for choice in edge_homs.iter().map(|h| h.iter()).multi_cartesian_product() {
        let mut maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (&(a, b), phi) in covers.iter().zip(&choice) {
            maps.insert((a, b), (*phi).clone());
        }
        // extend along chains of covers, longest gaps last
        let mut changed = true;
        while changed {
            changed = false;
            let known: Vec<((usize, usize), Vec<usize>)> =
                maps.iter().map(|(k, v)| (*k, v.clone())).collect();
            for ((a, b), phi) in &known {
                for &(c, d) in &covers {
                    if c == *b && !maps.contains_key(&(*a, d)) {
                        let psi = &maps[&(c, d)];
                        maps.insert((*a, d), phi.iter().map(|&x| psi[x]).collect());
                        changed = true;
                    }
                }
            }
        }
        let s = StrongSemilattice {
            y: y.clone(),
            components: components.clone(),
            maps,
        };
        if let Ok(g) = s.compose() {
            out.insert(canonical_table(g.table(), g.order()));
        }
    }
}
