//! Congruences: compatibility, generation, kernel and trace, quotients,
//! congruence pairs and the saturating congruences `τ^Q`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::magma::{check_identity, idempotents, CompletelyInverse, ElementSet, Groupoid, Law};
use crate::relation::{EquivRelation, UnionFind};

/// First `(a, b, x, y)` with `a ρ b` but not `x ρ y`, where `(x, y)` is a
/// one-sided translate of `(a, b)`.
pub fn compatibility_violation(
    g: &Groupoid,
    r: &EquivRelation,
) -> Option<(usize, usize, usize, usize)> {
    // checking each element against its block representative suffices
    for a in g.elements() {
        let b = r.rep(a);
        if a == b {
            continue;
        }
        for c in g.elements() {
            for (x, y) in [(g.op(c, a), g.op(c, b)), (g.op(a, c), g.op(b, c))] {
                if !r.related(x, y) {
                    return Some((a, b, x, y));
                }
            }
        }
    }
    None
}

pub fn is_congruence(g: &Groupoid, r: &EquivRelation) -> bool {
    r.order() == g.order() && compatibility_violation(g, r).is_none()
}

/// An equivalence relation on a groupoid that is compatible with its
/// operation on both sides.
#[derive(Clone)]
pub struct Congruence<'g> {
    over: &'g Groupoid,
    rel: EquivRelation,
}

impl PartialEq for Congruence<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && (std::ptr::eq(self.over, other.over) || self.over == other.over)
    }
}

impl Eq for Congruence<'_> {}

impl fmt::Debug for Congruence<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence({})", self)
    }
}

impl fmt::Display for Congruence<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rel.display(self.over.names()))
    }
}

impl<'g> Congruence<'g> {
    pub fn new(g: &'g Groupoid, rel: EquivRelation) -> Result<Self> {
        if rel.order() != g.order() {
            return Err(Error::InvalidPartition(format!(
                "relation on {} elements, groupoid of order {}",
                rel.order(),
                g.order()
            )));
        }
        if let Some((a, b, x, y)) = compatibility_violation(g, &rel) {
            return Err(Error::NotCongruence {
                a: g.name(a).into(),
                b: g.name(b).into(),
                x: g.name(x).into(),
                y: g.name(y).into(),
            });
        }
        Ok(Congruence { over: g, rel })
    }

    /// Wraps a relation the caller has already shown to be a congruence.
    pub(crate) fn trusted(g: &'g Groupoid, rel: EquivRelation) -> Self {
        debug_assert!(is_congruence(g, &rel), "not a congruence: {}", rel.display(g.names()));
        Congruence { over: g, rel }
    }

    /// Parses partition syntax against the groupoid's labels.
    pub fn parse(g: &'g Groupoid, text: &str) -> Result<Self> {
        Self::new(g, EquivRelation::parse(text, g.names())?)
    }

    pub fn identity(g: &'g Groupoid) -> Self {
        Congruence {
            over: g,
            rel: EquivRelation::identity(g.order()),
        }
    }

    pub fn full(g: &'g Groupoid) -> Self {
        Congruence {
            over: g,
            rel: EquivRelation::full(g.order()),
        }
    }

    /// The least congruence containing `pairs`.
    pub fn generated_by(g: &'g Groupoid, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(g.order());
        let mut queue: VecDeque<(usize, usize)> = pairs.into_iter().collect();
        while let Some((a, b)) = queue.pop_front() {
            if !uf.union(a, b) {
                continue;
            }
            for c in g.elements() {
                queue.push_back((g.op(c, a), g.op(c, b)));
                queue.push_back((g.op(a, c), g.op(b, c)));
            }
        }
        Self::trusted(g, uf.into_relation())
    }

    #[inline]
    pub fn groupoid(&self) -> &'g Groupoid {
        self.over
    }

    #[inline]
    pub fn relation(&self) -> &EquivRelation {
        &self.rel
    }

    pub fn into_relation(self) -> EquivRelation {
        self.rel
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rel.related(a, b)
    }

    pub fn is_subset(&self, other: &Congruence<'_>) -> bool {
        self.rel.is_subset(&other.rel)
    }

    pub fn meet(&self, other: &Congruence<'g>) -> Congruence<'g> {
        Self::trusted(self.over, self.rel.meet(&other.rel))
    }

    pub fn join(&self, other: &Congruence<'g>) -> Congruence<'g> {
        Self::trusted(self.over, self.rel.join(&other.rel))
    }

    /// Union of the classes containing an idempotent, checked against
    /// `{a : a ρ a²}`.
    pub fn kernel(&self) -> Result<ElementSet> {
        let g = self.over;
        let e = idempotents(g);
        let by_classes: ElementSet = g
            .elements()
            .filter(|&a| e.iter().any(|f| self.related(a, f)))
            .collect();
        let by_squares: ElementSet = g.elements().filter(|&a| self.related(a, g.op(a, a))).collect();
        match by_classes.difference(by_squares).union(by_squares.difference(by_classes)).min() {
            None => Ok(by_classes),
            Some(a) => Err(Error::KernelMismatch(g.name(a).into())),
        }
    }

    /// The restriction to `E`, indexed by the idempotents in increasing order.
    pub fn trace(&self) -> EquivRelation {
        let e: Vec<usize> = idempotents(self.over).iter().collect();
        self.rel.restrict(&e)
    }

    pub fn quotient(&self) -> Quotient {
        let g = self.over;
        let reps: Vec<usize> = g.elements().filter(|&x| self.rel.rep(x) == x).collect();
        let mut block = vec![0; g.order()];
        for x in g.elements() {
            block[x] = reps.binary_search(&self.rel.rep(x)).expect("rep is a block minimum");
        }
        let k = reps.len();
        let table = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| block[g.op(reps[i], reps[j])])
            .collect();
        let names = reps.iter().map(|&r| format!("[{}]", g.name(r))).collect();
        Quotient {
            groupoid: Groupoid::new(names, table).expect("quotient labels are distinct"),
            projection: block,
            rel: self.rel.clone(),
        }
    }
}

/// `A/ρ` with its projection `A → A/ρ`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub groupoid: Groupoid,
    pub projection: Vec<usize>,
    rel: EquivRelation,
}

impl Quotient {
    /// `υ/ρ` on `A/ρ`; requires `ρ ⊆ υ`.
    pub fn induced(&self, upsilon: &Congruence<'_>) -> Result<Congruence<'_>> {
        let g = upsilon.groupoid();
        for x in g.elements() {
            let r = self.rel.rep(x);
            if !upsilon.related(x, r) {
                return Err(Error::NotARefinement {
                    a: g.name(x).into(),
                    b: g.name(r).into(),
                });
            }
        }
        let k = self.groupoid.order();
        let mut labels = vec![0; k];
        for x in g.elements() {
            labels[self.projection[x]] = upsilon.relation().rep(x);
        }
        Ok(Congruence::trusted(&self.groupoid, EquivRelation::from_labels(&labels)))
    }
}

/// A kernel–trace pair; `trace` is indexed by the idempotents in increasing
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePair {
    pub kernel: ElementSet,
    pub trace: EquivRelation,
}

impl<'g> CompletelyInverse<'g> {
    /// Why `(K, τ)` fails to be a congruence pair, if it does.
    pub fn pair_violation(&self, k: ElementSet, tau: &EquivRelation) -> Option<String> {
        let g = self.groupoid();
        let e = self.idempotents();
        let e_list: Vec<usize> = e.iter().collect();
        let name_set = |s: ElementSet| g.fmt_set(s);
        if !k.is_subset(g.all()) {
            return Some("kernel lies outside the carrier".into());
        }
        if !e.is_subset(k) {
            return Some(format!("{} is not full", name_set(k)));
        }
        if !g.is_closed_under_product(k) {
            return Some(format!("{} is not a subgroupoid", name_set(k)));
        }
        if let Some(a) = k.iter().find(|&a| !k.contains(self.inverse(a))) {
            return Some(format!("{} lacks the inverse of {}", name_set(k), g.name(a)));
        }
        for x in g.elements() {
            for y in g.elements() {
                if k.contains(g.op(x, y)) && !k.contains(g.op(y, x)) {
                    return Some(format!(
                        "{} is not symmetric at ({}, {})",
                        name_set(k),
                        g.name(x),
                        g.name(y)
                    ));
                }
            }
        }
        if tau.order() != e_list.len() {
            return Some(format!(
                "trace has {} elements, E has {}",
                tau.order(),
                e_list.len()
            ));
        }
        let pos = |x: usize| e_list.binary_search(&x).expect("idempotents are closed");
        for (i, &f) in e_list.iter().enumerate() {
            let j = tau.rep(i);
            for &h in &e_list {
                if !tau.related(pos(g.op(h, f)), pos(g.op(h, e_list[j])))
                    || !tau.related(pos(g.op(f, h)), pos(g.op(e_list[j], h)))
                {
                    return Some("trace is not a congruence on E".into());
                }
            }
        }
        for (i, &f) in e_list.iter().enumerate() {
            for a in g.elements() {
                if k.contains(g.op(f, a)) && tau.related(i, pos(self.unit(a))) && !k.contains(a) {
                    return Some(format!(
                        "(CP) fails: {}·{} in the kernel but {} is not",
                        g.name(f),
                        g.name(a),
                        g.name(a)
                    ));
                }
            }
        }
        None
    }

    pub fn is_congruence_pair(&self, k: ElementSet, tau: &EquivRelation) -> bool {
        self.pair_violation(k, tau).is_none()
    }

    /// The unique congruence with kernel `K` and trace `τ`:
    /// `a ρ b` iff `aa⁻¹ τ bb⁻¹` and `ab⁻¹ ∈ K`.
    pub fn from_kernel_trace(&self, pair: &CongruencePair) -> Result<Congruence<'g>> {
        if let Some(why) = self.pair_violation(pair.kernel, &pair.trace) {
            return Err(Error::InvalidPair(why));
        }
        let g = self.groupoid();
        let e_list: Vec<usize> = self.idempotents().iter().collect();
        let pos = |x: usize| e_list.binary_search(&x).expect("a·a⁻¹ is idempotent");
        let rel = EquivRelation::from_predicate(g.order(), |a, b| {
            pair.trace.related(pos(self.unit(a)), pos(self.unit(b)))
                && pair.kernel.contains(g.op(a, self.inverse(b)))
        })
        .map_err(|e| Error::InvalidPair(format!("rule does not give an equivalence: {e}")))?;
        let rho = Congruence::new(g, rel)
            .map_err(|e| Error::InvalidPair(format!("rule does not give a congruence: {e}")))?;
        if rho.kernel()? != pair.kernel || rho.trace() != pair.trace {
            return Err(Error::InvalidPair(
                "reconstructed congruence has a different kernel or trace".into(),
            ));
        }
        Ok(rho)
    }

    pub fn pair_of(&self, rho: &Congruence<'_>) -> CongruencePair {
        CongruencePair {
            kernel: rho.kernel().expect("kernel readings agree on completely inverse carriers"),
            trace: rho.trace(),
        }
    }
}

/// `τ^Q`: `a ~ b` iff `x(ay) ∈ Q ⟺ x(by) ∈ Q` for all `x, y ∈ A¹`.
///
/// The adjoined identity is a probe convention only: an absent `x` probes
/// `ay`, an absent `y` probes `xa`, both absent probe `a`.
pub fn tau_q(g: &Groupoid, q: ElementSet) -> Result<Congruence<'_>> {
    if q.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !check_identity(g, Law::LeftInvertive) || !check_identity(g, Law::AgStarStar) {
        return Err(Error::NotAgStarStar("τ^Q needs the AG** laws".into()));
    }
    let probes: Vec<Option<usize>> = std::iter::once(None).chain(g.elements().map(Some)).collect();
    let signature = |a: usize| -> Vec<bool> {
        let mut sig = Vec::with_capacity(probes.len() * probes.len());
        for &x in &probes {
            for &y in &probes {
                let ay = y.map_or(a, |y| g.op(a, y));
                let v = x.map_or(ay, |x| g.op(x, ay));
                sig.push(q.contains(v));
            }
        }
        sig
    };
    let sigs: Vec<Vec<bool>> = g.elements().map(signature).collect();
    Congruence::new(g, EquivRelation::from_labels(&sigs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p<'g>(g: &'g Groupoid, s: &str) -> Congruence<'g> {
        Congruence::parse(g, s).unwrap()
    }

    fn set(g: &Groupoid, labels: &str) -> ElementSet {
        labels.split_whitespace().map(|l| g.index_of(l).unwrap()).collect()
    }

    /// Every congruence by brute force over all partitions.
    fn brute_congruences(g: &Groupoid) -> Vec<EquivRelation> {
        let n = g.order();
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        loop {
            let r = EquivRelation::from_labels(&labels);
            if r.growth_string() == labels && is_congruence(g, &r) {
                out.push(r);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if labels[i] + 1 < n {
                    labels[i] += 1;
                    break;
                }
                labels[i] = 0;
            }
        }
    }

    #[test]
    fn compatibility_examples() {
        let g = fixtures::f1();
        assert!(is_congruence(&g, &EquivRelation::parse("a e | b | f", g.names()).unwrap()));
        assert!(!is_congruence(&g, &EquivRelation::parse("b f | a | e", g.names()).unwrap()));
        assert!(is_congruence(&g, &EquivRelation::identity(4)));
        let err = Congruence::parse(&g, "b f | a | e").unwrap_err();
        assert!(matches!(err, Error::NotCongruence { .. }));
    }

    #[test]
    fn f1_has_five_congruences() {
        let g = fixtures::f1();
        let all: Vec<String> = brute_congruences(&g)
            .iter()
            .map(|r| r.display(g.names()).to_string())
            .collect();
        assert_eq!(
            all,
            ["a b e f", "a b | e f", "a e | b f", "a e | b | f", "a | b | e | f"]
        );
    }

    #[test]
    fn generation() {
        let g = fixtures::f1();
        let (a, b, e) = (0, 1, 2);
        assert_eq!(Congruence::generated_by(&g, [(a, e)]), p(&g, "a e | b | f"));
        assert_eq!(Congruence::generated_by(&g, [(a, e), (a, b)]), Congruence::full(&g));
        assert_eq!(Congruence::generated_by(&g, []), Congruence::identity(&g));
    }

    #[test]
    fn generated_is_least() {
        for (_, g) in fixtures::all() {
            let all = brute_congruences(&g);
            for a in g.elements() {
                for b in g.elements() {
                    let c = Congruence::generated_by(&g, [(a, b)]);
                    let least = all
                        .iter()
                        .filter(|r| r.related(a, b))
                        .fold(EquivRelation::full(g.order()), |acc, r| acc.meet(r));
                    assert_eq!(c.relation(), &least);
                }
            }
        }
    }

    #[test]
    fn kernels_and_traces() {
        let g = fixtures::f1();
        assert_eq!(p(&g, "a b | e f").kernel(), Ok(set(&g, "e f")));
        assert_eq!(p(&g, "a e | b f").kernel(), Ok(g.all()));
        assert_eq!(Congruence::identity(&g).kernel(), Ok(set(&g, "e f")));
        assert_eq!(p(&g, "a e | b | f").kernel(), Ok(set(&g, "a e f")));
        assert_eq!(p(&g, "a b | e f").trace(), EquivRelation::full(2));
        assert_eq!(p(&g, "a e | b f").trace(), EquivRelation::identity(2));
        assert_eq!(Congruence::identity(&g).trace(), EquivRelation::identity(2));
    }

    #[test]
    fn kernel_mismatch_off_the_completely_inverse_class() {
        // x·y = 1 − x has no idempotents, yet every a is related to a² under A×A
        let g = Groupoid::from_fn(2, |a, _| 1 - a).unwrap();
        let c = Congruence::full(&g);
        assert!(matches!(c.kernel(), Err(Error::KernelMismatch(_))));
    }

    #[test]
    fn reconstruction_examples() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let rho = |k, t| {
            ci.from_kernel_trace(&CongruencePair {
                kernel: k,
                trace: t,
            })
        };
        assert_eq!(rho(g.all(), EquivRelation::identity(2)), Ok(p(&g, "a e | b f")));
        assert_eq!(rho(set(&g, "e f"), EquivRelation::full(2)), Ok(p(&g, "a b | e f")));
        assert_eq!(rho(set(&g, "e f"), EquivRelation::identity(2)), Ok(Congruence::identity(&g)));
        assert!(ci.is_congruence_pair(set(&g, "e f"), &EquivRelation::full(2)));
        assert!(ci.is_congruence_pair(set(&g, "e f"), &EquivRelation::identity(2)));
        assert!(!ci.is_congruence_pair(set(&g, "a e"), &EquivRelation::identity(2)));
        assert!(matches!(
            rho(set(&g, "a e"), EquivRelation::identity(2)),
            Err(Error::InvalidPair(_))
        ));
    }

    #[test]
    fn kernel_trace_determines_congruence() {
        for (name, g) in fixtures::all() {
            let ci = CompletelyInverse::new(&g).unwrap();
            let all = brute_congruences(&g);
            for r in &all {
                let c = Congruence::new(&g, r.clone()).unwrap();
                let pair = ci.pair_of(&c);
                assert_eq!(ci.from_kernel_trace(&pair).as_ref(), Ok(&c), "{name}");
                for s in &all {
                    let d = Congruence::new(&g, s.clone()).unwrap();
                    let by_pair = c.trace().is_subset(&d.trace())
                        && c.kernel().unwrap().is_subset(d.kernel().unwrap());
                    assert_eq!(c.is_subset(&d), by_pair, "{name}");
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let g = fixtures::f1();
        let q = p(&g, "a b | e f").quotient();
        assert_eq!(q.groupoid.to_string(), "2\n[a] [e]\n[e] [a]\n[a] [e]\n");
        assert_eq!(q.projection, vec![0, 0, 1, 1]);
        let q = p(&g, "a e | b f").quotient();
        assert_eq!(q.groupoid.to_string(), "2\n[a] [b]\n[a] [a]\n[a] [b]\n");
        assert_eq!(Congruence::full(&g).quotient().groupoid.order(), 1);
    }

    #[test]
    fn induced_congruences() {
        let g = fixtures::f1();
        let rho = p(&g, "a e | b | f");
        let q = rho.quotient();
        let mu = p(&g, "a e | b f");
        let induced = q.induced(&mu).unwrap();
        assert_eq!(induced.to_string(), "[a] | [b] [f]");
        assert_eq!(q.induced(&rho).unwrap(), Congruence::identity(&q.groupoid));
        assert_eq!(q.induced(&Congruence::full(&g)).unwrap(), Congruence::full(&q.groupoid));
        let sigma = p(&g, "a b | e f");
        assert!(matches!(q.induced(&sigma), Err(Error::NotARefinement { .. })));
        // (A/ρ)/(μ/ρ) has the table of A/μ up to labels
        let double = induced.quotient().groupoid;
        let direct = mu.quotient().groupoid;
        assert_eq!(double.table(), direct.table());
    }

    #[test]
    fn saturating_congruences() {
        let g = fixtures::f1();
        assert_eq!(tau_q(&g, set(&g, "e f")), Ok(p(&g, "a b | e f")));
        assert_eq!(tau_q(&g, set(&g, "a e f")), Ok(p(&g, "a e | b | f")));
        let f2 = fixtures::f2();
        assert_eq!(tau_q(&f2, ElementSet::singleton(0)), Ok(Congruence::identity(&f2)));
        assert_eq!(tau_q(&g, ElementSet::EMPTY), Err(Error::EmptySubset));
    }

    #[test]
    fn tau_q_is_largest_saturating() {
        for (name, g) in fixtures::all() {
            let all = brute_congruences(&g);
            for bits in 1..(1u64 << g.order()) {
                let q = ElementSet::from_bits(bits);
                let t = tau_q(&g, q).unwrap();
                let saturates =
                    |r: &EquivRelation| g.elements().all(|a| q.contains(a) == q.contains(r.rep(a)));
                assert!(saturates(t.relation()), "{name}");
                for r in all.iter().filter(|r| saturates(r)) {
                    assert!(r.is_subset(t.relation()), "{name}");
                }
            }
        }
    }

    #[test]
    fn congruences_respect_inverses() {
        for (name, g) in fixtures::all() {
            let ci = CompletelyInverse::new(&g).unwrap();
            for r in brute_congruences(&g) {
                for a in g.elements() {
                    let b = r.rep(a);
                    assert!(r.related(ci.inverse(a), ci.inverse(b)), "{name}");
                }
            }
        }
    }
}
