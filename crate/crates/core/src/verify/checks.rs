//! One function per row of `checks.tsv`.
//!
//! Every check recomputes what it can from definitions (quotient tables,
//! brute-force lattices, subset scans) and compares against the library
//! routines, so a failure names which side disagrees.

use std::collections::{BTreeSet, HashSet};

use super::{Ctx, Mutation};
use crate::congruence::{is_congruence, tau_q, Congruence};
use crate::enumerate::{enumerate, is_isomorphic, ClassFilter, EnumerationSpec, Strategy};
use crate::lattice::{all_congruences, LatticeReport};
use crate::magma::{
    check_identity, classify, idempotents, law_violation, CompletelyInverse, ElementSet, Groupoid,
    Law,
};
use crate::relation::EquivRelation;
use crate::structure::{decompose, derived_groupoid};

pub(crate) type Outcome = std::result::Result<(), String>;
pub(crate) type EachFn = fn(&Ctx, &Groupoid) -> Outcome;
pub(crate) type CensusFn = fn(&Ctx, usize) -> std::result::Result<(), (String, Option<Groupoid>)>;

#[derive(Clone, Copy)]
pub(crate) enum Runner {
    Each(EachFn),
    Census(CensusFn),
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub(crate) fn registry() -> Vec<(&'static str, Runner)> {
    use Runner::{Census, Each};
    vec![
        ("thm-ag-medial", Each(ag_medial)),
        ("thm-ag-star-star-paramedial", Each(ag_star_star_paramedial)),
        ("thm-idempotent-left-distributive", Each(idempotent_left_distributive)),
        ("thm-idempotents-semilattice", Each(idempotents_semilattice)),
        ("thm-ag-group-equivalences", Each(ag_group_equivalences)),
        ("thm-ag-group-single-idempotent", Each(ag_group_single_idempotent)),
        ("thm-inverse-of-product", Each(inverse_of_product)),
        ("thm-idempotent-surjective", Each(idempotent_surjective)),
        ("thm-unipotent-ag-group", Each(unipotent_ag_group)),
        ("thm-mu-least-semilattice", Each(mu_least_semilattice)),
        ("thm-mu-classes-ag-groups", Each(mu_classes_ag_groups)),
        ("thm-mu-max-idempotent-separating", Each(mu_max_idempotent_separating)),
        ("thm-idempotent-separating-modular", Each(idempotent_separating_modular)),
        ("thm-ag-group-lattice-modular", Each(ag_group_lattice_modular)),
        ("thm-strong-semilattice", Each(strong_semilattice)),
        ("thm-central-idempotents", Each(central_idempotents)),
        ("thm-square-part", Each(square_part)),
        ("thm-natural-order", Each(natural_order)),
        ("thm-natural-order-meets-mu", Each(natural_order_meets_mu)),
        ("thm-omega-closure", Each(omega_closure)),
        ("thm-derived-groupoid", Each(derived)),
        ("thm-product-idempotent-commutes", Each(product_idempotent_commutes)),
        ("thm-kernel-definitions", Each(kernel_definitions)),
        ("thm-kernel-trace", Each(kernel_trace)),
        ("thm-containment-transfer", Each(containment_transfer)),
        ("thm-idempotent-classes", Each(idempotent_classes)),
        ("thm-e-unitary-sides", Each(e_unitary_sides)),
        ("thm-sigma-least-ag-group", Each(sigma_least_ag_group)),
        ("thm-normal-subgroupoids", Each(normal_subgroupoids)),
        ("thm-group-congruences-modular", Each(group_congruences_modular)),
        ("thm-idempotent-pure-below-sigma", Each(idempotent_pure_below_sigma)),
        ("thm-e-unitary-equivalences", Each(e_unitary_equivalences)),
        ("thm-e-unitary-factorization", Each(e_unitary_factorization)),
        ("thm-pi-least-e-unitary", Each(pi_least_e_unitary)),
        ("thm-u-meet-sublattice", Each(u_meet_sublattice)),
        ("thm-double-quotient", Each(double_quotient)),
        ("thm-e-unitary-iff-kernel-closed", Each(e_unitary_iff_kernel_closed)),
        ("thm-congruence-pairs", Each(congruence_pairs)),
        ("thm-e-unitary-pair-normal", Each(e_unitary_pair_normal)),
        ("thm-mu-of-closed-form", Each(mu_of_closed_form)),
        ("thm-rho-theta-minimum", Each(rho_theta_minimum)),
        ("thm-trace-homomorphism", Each(trace_homomorphism)),
        ("thm-trace-classes", Each(trace_classes)),
        ("thm-theta-operators", Each(theta_operators)),
        ("thm-e-unitary-theta", Each(e_unitary_theta)),
        ("thm-sigma-meet-homomorphism", Each(sigma_meet_homomorphism)),
        ("thm-fundamental-congruences", Each(fundamental_congruences)),
        ("thm-tau-q-largest", Each(tau_q_largest)),
        ("thm-tau-largest-idempotent-pure", Each(tau_largest_idempotent_pure)),
        ("thm-tau-of-quotient", Each(tau_of_quotient)),
        ("thm-kappa-classes", Each(kappa_classes)),
        ("thm-kappa-not-monotone", Each(kappa_not_monotone)),
        ("thm-rho-decomposition", Each(rho_decomposition)),
        ("thm-e-disjunctive-quotient", Each(e_disjunctive_quotient)),
        ("thm-ag-group-iff-e-unitary-e-disjunctive", Each(ag_group_iff_e_unitary_e_disjunctive)),
        ("thm-idempotent-pure-iff-meet-mu", Each(idempotent_pure_iff_meet_mu)),
        ("thm-subdirect-product", Each(subdirect_product)),
        ("thm-join-with-sigma", Each(join_with_sigma)),
        ("thm-join-with-sigma-homomorphism", Each(join_with_sigma_homomorphism)),
        ("thm-join-with-mu", Each(join_with_mu)),
        ("thm-pi-rho", Each(pi_rho)),
        ("thm-e-unitary-congruence-equivalences", Each(e_unitary_congruence_equivalences)),
        ("thm-kernel-class-of-rho-n", Each(kernel_class_of_rho_n)),
        ("thm-homomorphism-factorizations", Each(homomorphism_factorizations)),
        ("thm-final-equivalences", Each(final_equivalences)),
        ("thm-strategy-agreement", Census(strategy_agreement)),
    ]
}

// ---------------------------------------------------------------------------
// Shared helpers

fn labels(g: &Groupoid, xs: &[usize]) -> String {
    let v: Vec<&str> = xs.iter().map(|&x| g.name(x)).collect();
    format!("({})", v.join(", "))
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (1u64..(1u64 << n)).map(ElementSet::from_bits)
}

fn closed(g: &Groupoid, s: ElementSet) -> bool {
    g.is_closed_under_product(s)
}

fn left_unitary(g: &Groupoid, b: ElementSet) -> bool {
    b.iter().all(|x| g.elements().all(|a| !b.contains(g.op(x, a)) || b.contains(a)))
}

fn right_unitary(g: &Groupoid, b: ElementSet) -> bool {
    b.iter().all(|x| g.elements().all(|a| !b.contains(g.op(a, x)) || b.contains(a)))
}

/// `E` nonempty and unitary on both sides.
fn e_unitary(g: &Groupoid) -> bool {
    let e = idempotents(g);
    !e.is_empty() && left_unitary(g, e) && right_unitary(g, e)
}

fn is_semilattice(g: &Groupoid) -> bool {
    [Law::Associative, Law::Commutative, Law::Idempotent]
        .into_iter()
        .all(|l| check_identity(g, l))
}

fn is_ag_group(g: &Groupoid) -> bool {
    classify(g).is_ag_group
}

/// The identity congruence on `A/ρ`.
fn quotient_tau_trivial(rho: &Congruence<'_>) -> std::result::Result<bool, String> {
    let q = rho.quotient().groupoid;
    let ci = CompletelyInverse::new(&q).map_err(|e| format!("A/ρ: {e}"))?;
    Ok(ci.tau().relation().is_identity())
}

/// A completely inverse carrier with its full congruence lattice.
struct Ci<'g> {
    g: &'g Groupoid,
    ci: CompletelyInverse<'g>,
    lat: LatticeReport<'g>,
    e: ElementSet,
}

impl<'g> Ci<'g> {
    fn new(g: &'g Groupoid) -> std::result::Result<Self, String> {
        let ci = CompletelyInverse::new(g).map_err(|e| e.to_string())?;
        let lat = all_congruences(g, g.order()).map_err(|e| e.to_string())?;
        Ok(Ci {
            g,
            e: ci.idempotents(),
            ci,
            lat,
        })
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    fn c(&self, i: usize) -> Congruence<'g> {
        self.lat.congruence(i)
    }

    fn all(&self) -> Vec<Congruence<'g>> {
        (0..self.lat.len()).map(|i| self.c(i)).collect()
    }

    fn idx(&self, r: &Congruence<'_>) -> std::result::Result<usize, String> {
        self.lat
            .index_of(r.relation())
            .ok_or_else(|| format!("{} is missing from the lattice", self.show(r.relation())))
    }

    fn show(&self, r: &EquivRelation) -> String {
        r.display(self.g.names()).to_string()
    }

    fn rel(&self, related: impl Fn(usize, usize) -> bool) -> std::result::Result<EquivRelation, String> {
        EquivRelation::from_predicate(self.n(), related).map_err(|e| e.to_string())
    }

    fn inv(&self, a: usize) -> usize {
        self.ci.inverse(a)
    }

    fn unit(&self, a: usize) -> usize {
        self.ci.unit(a)
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.g.op(a, b)
    }

    fn kernel(&self, rho: &Congruence<'_>) -> ElementSet {
        self.g
            .elements()
            .filter(|&a| rho.related(a, self.op(a, a)))
            .collect()
    }

    fn trace_leq(&self, r: &Congruence<'_>, s: &Congruence<'_>) -> bool {
        self.e
            .iter()
            .all(|x| self.e.iter().all(|y| !r.related(x, y) || s.related(x, y)))
    }

    fn same_trace(&self, r: &Congruence<'_>, s: &Congruence<'_>) -> bool {
        self.trace_leq(r, s) && self.trace_leq(s, r)
    }

    fn idempotent_separating(&self, rho: &Congruence<'_>) -> bool {
        self.e
            .iter()
            .all(|x| self.e.iter().all(|y| x == y || !rho.related(x, y)))
    }

    fn idempotent_pure(&self, rho: &Congruence<'_>) -> bool {
        self.e.iter().all(|x| rho.relation().class(x).is_subset(self.e))
    }

    /// `{a : b ≤ a for some b ∈ B}` with `b ≤ a` iff `b = fa`, `f ∈ E`.
    fn up(&self, b: ElementSet) -> ElementSet {
        self.g
            .elements()
            .filter(|&a| self.e.iter().any(|f| b.contains(self.op(f, a))))
            .collect()
    }

    fn inverse_closed(&self, s: ElementSet) -> bool {
        s.iter().all(|x| s.contains(self.inv(x)))
    }

    fn symmetric(&self, s: ElementSet) -> bool {
        self.g.elements().all(|x| {
            self.g
                .elements()
                .all(|y| !s.contains(self.op(x, y)) || s.contains(self.op(y, x)))
        })
    }

    fn seminormal(&self, s: ElementSet) -> bool {
        closed(self.g, s) && self.inverse_closed(s) && self.e.is_subset(s) && self.symmetric(s)
    }

    fn normal(&self, s: ElementSet) -> bool {
        self.seminormal(s) && self.up(s) == s
    }

    fn e_unitary_congruence(&self, rho: &Congruence<'_>) -> bool {
        e_unitary(&rho.quotient().groupoid)
    }

    fn ag_group_congruence(&self, rho: &Congruence<'_>) -> bool {
        is_ag_group(&rho.quotient().groupoid)
    }

    fn semilattice_congruence(&self, rho: &Congruence<'_>) -> bool {
        is_semilattice(&rho.quotient().groupoid)
    }

    /// `outer ∘ inner ∘ outer` by definition.
    fn sandwich(&self, outer: &Congruence<'_>, inner: &Congruence<'_>) -> std::result::Result<EquivRelation, String> {
        let n = self.n();
        self.rel(|a, b| {
            (0..n).any(|c| {
                outer.related(a, c) && (0..n).any(|d| inner.related(c, d) && outer.related(d, b))
            })
        })
    }

    fn pull_back(&self, proj: &[usize], r: &Congruence<'_>) -> EquivRelation {
        let labels: Vec<usize> = proj.iter().map(|&x| r.relation().rep(x)).collect();
        EquivRelation::from_labels(&labels)
    }

    /// Congruences of the idempotent semilattice, in its own index order.
    fn trace_lattice(&self) -> std::result::Result<(Groupoid, Vec<EquivRelation>), String> {
        let (y, _) = self.g.subgroupoid(self.e).map_err(|e| e.to_string())?;
        let lat = all_congruences(&y, y.order()).map_err(|e| e.to_string())?;
        let congs = lat.congruences.clone();
        Ok((y, congs))
    }

    fn least_in(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&m| set.iter().all(|&x| self.lat.leq[m][x]))
    }

    fn greatest_in(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&m| set.iter().all(|&x| self.lat.leq[x][m]))
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

// ---------------------------------------------------------------------------
// Laws and AG-groups

fn ag_medial(_: &Ctx, g: &Groupoid) -> Outcome {
    match law_violation(g, Law::Medial) {
        None => Ok(()),
        Some(v) => Err(format!("medial law fails at {}", labels(g, &v))),
    }
}

fn ag_star_star_paramedial(_: &Ctx, g: &Groupoid) -> Outcome {
    match law_violation(g, Law::Paramedial) {
        None => Ok(()),
        Some(v) => Err(format!("paramedial law fails at {}", labels(g, &v))),
    }
}

fn idempotent_left_distributive(_: &Ctx, g: &Groupoid) -> Outcome {
    for e in idempotents(g).iter() {
        for a in g.elements() {
            for b in g.elements() {
                ensure!(
                    g.op(e, g.op(a, b)) == g.op(g.op(e, a), b),
                    "e(ab) ≠ (ea)b at {}",
                    labels(g, &[e, a, b])
                );
            }
        }
    }
    Ok(())
}

fn idempotents_semilattice(_: &Ctx, g: &Groupoid) -> Outcome {
    let e = idempotents(g);
    if e.is_empty() {
        return Ok(());
    }
    let (y, _) = g
        .subgroupoid(e)
        .map_err(|err| format!("idempotents are not closed: {err}"))?;
    ensure!(is_semilattice(&y), "idempotents {} do not form a semilattice", g.fmt_set(e));
    Ok(())
}

fn ag_group_equivalences(_: &Ctx, g: &Groupoid) -> Outcome {
    let ids: Vec<usize> = g
        .elements()
        .filter(|&e| g.elements().all(|x| g.op(e, x) == x))
        .collect();
    let Some(&e) = ids.first() else {
        return Ok(());
    };
    ensure!(ids.len() == 1, "several left identities {}", labels(g, &ids));
    let solutions = |a: usize, b: usize| g.elements().filter(|&x| g.op(x, a) == b).count();
    let left = g.elements().all(|a| solutions(a, e) > 0);
    let right = g.elements().all(|a| g.elements().any(|x| g.op(a, x) == e));
    let unique = g.elements().all(|a| {
        g.elements()
            .filter(|&x| g.op(x, a) == e && g.op(a, x) == e)
            .count()
            == 1
    });
    let solvable = g
        .elements()
        .all(|a| g.elements().all(|b| solutions(a, b) == 1));
    let library = is_ag_group(g);
    let all = [left, right, unique, solvable, library];
    ensure!(
        all.iter().all(|&v| v == left),
        "left inverses {left}, right inverses {right}, unique inverses {unique}, unique solutions {solvable}, classifier {library}"
    );
    Ok(())
}

fn ag_group_single_idempotent(_: &Ctx, g: &Groupoid) -> Outcome {
    if is_ag_group(g) {
        let e = idempotents(g);
        ensure!(e.len() == 1, "AG-group with idempotents {}", g.fmt_set(e));
    }
    Ok(())
}

fn inverse_of_product(_: &Ctx, g: &Groupoid) -> Outcome {
    let ci = CompletelyInverse::new(g).map_err(|e| e.to_string())?;
    for a in g.elements() {
        ensure!(ci.inverse(ci.inverse(a)) == a, "(a⁻¹)⁻¹ ≠ a at {}", g.name(a));
        for b in g.elements() {
            ensure!(
                ci.inverse(g.op(a, b)) == g.op(ci.inverse(a), ci.inverse(b)),
                "(ab)⁻¹ ≠ a⁻¹b⁻¹ at {}",
                labels(g, &[a, b])
            );
        }
    }
    Ok(())
}

fn idempotent_surjective(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        for a in g.elements() {
            if rho.related(a, g.op(a, a)) {
                ensure!(
                    x.e.iter().any(|f| rho.related(a, f)),
                    "class of {} under {} is idempotent but holds no idempotent",
                    g.name(a),
                    x.show(rho.relation())
                );
            }
        }
    }
    Ok(())
}

fn unipotent_ag_group(_: &Ctx, g: &Groupoid) -> Outcome {
    if idempotents(g).len() == 1 {
        ensure!(is_ag_group(g), "one idempotent but not an AG-group");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// μ

fn mu_under_test<'g>(ctx: &Ctx, x: &Ci<'g>) -> std::result::Result<Congruence<'g>, String> {
    match ctx.mutation {
        None => Ok(x.ci.mu()),
        Some(Mutation::CorruptMu) => {
            let squares: Vec<usize> = x.g.elements().map(|a| x.op(a, a)).collect();
            Congruence::new(x.g, EquivRelation::from_labels(&squares))
                .map_err(|e| format!("μ under test is not a congruence: {e}"))
        }
    }
}

fn mu_least_semilattice(ctx: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = mu_under_test(ctx, &x)?;
    ensure!(
        x.semilattice_congruence(&mu),
        "A/μ is not a semilattice for μ = {}",
        x.show(mu.relation())
    );
    for rho in x.all() {
        if x.semilattice_congruence(&rho) {
            ensure!(
                mu.is_subset(&rho),
                "μ = {} is not below the semilattice congruence {}",
                x.show(mu.relation()),
                x.show(rho.relation())
            );
        }
    }
    Ok(())
}

fn mu_classes_ag_groups(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = x.ci.mu();
    for class in mu.relation().classes() {
        let (sub, _) = g
            .subgroupoid(class)
            .map_err(|e| format!("μ-class {} is not closed: {e}", g.fmt_set(class)))?;
        ensure!(is_ag_group(&sub), "μ-class {} is not an AG-group", g.fmt_set(class));
    }
    let q = mu.quotient();
    let image: BTreeSet<usize> = x.e.iter().map(|f| q.projection[f]).collect();
    ensure!(
        image.len() == x.e.len() && image.len() == q.groupoid.order(),
        "e ↦ eμ is not a bijection from E onto A/μ"
    );
    for e in x.e.iter() {
        for f in x.e.iter() {
            ensure!(
                q.projection[x.op(e, f)] == q.groupoid.op(q.projection[e], q.projection[f]),
                "e ↦ eμ is not multiplicative at {}",
                labels(g, &[e, f])
            );
        }
    }
    Ok(())
}

fn mu_max_idempotent_separating(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = x.ci.mu();
    ensure!(x.idempotent_separating(&mu), "μ does not separate idempotents");
    for rho in x.all() {
        if x.idempotent_separating(&rho) {
            ensure!(
                rho.is_subset(&mu),
                "idempotent-separating {} is not below μ",
                x.show(rho.relation())
            );
        }
    }
    Ok(())
}

fn modular_permuting(x: &Ci<'_>, set: &[usize], what: &str) -> Outcome {
    let pentagon = x.lat.pentagon(set).map_err(|e| format!("{what}: {e}"))?;
    if let Some(p) = pentagon {
        let names: Vec<String> = p.iter().map(|&i| x.show(&x.lat.congruences[i])).collect();
        return Err(format!("{what} contains a pentagon [{}]", names.join("; ")));
    }
    ensure!(
        x.lat.satisfies_modular_law(set).map_err(|e| e.to_string())?,
        "{what} violates the modular law"
    );
    ensure!(x.lat.commuting_check(set), "{what} has non-permuting congruences");
    Ok(())
}

fn idempotent_separating_modular(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = x.idx(&x.ci.mu())?;
    let interval = x.lat.interval(x.lat.bottom(), mu);
    let separating: Vec<usize> = (0..x.lat.len())
        .filter(|&i| x.idempotent_separating(&x.c(i)))
        .collect();
    ensure!(
        interval == separating,
        "[1, μ] = {interval:?} but the idempotent-separating congruences are {separating:?}"
    );
    modular_permuting(&x, &interval, "[1, μ]")
}

fn ag_group_lattice_modular(_: &Ctx, g: &Groupoid) -> Outcome {
    if !is_ag_group(g) {
        return Ok(());
    }
    let x = Ci::new(g)?;
    let all: Vec<usize> = (0..x.lat.len()).collect();
    modular_permuting(&x, &all, "C(A)")
}

// ---------------------------------------------------------------------------
// Structure

fn strong_semilattice(_: &Ctx, g: &Groupoid) -> Outcome {
    let completely_inverse = classify(g).is_completely_inverse;
    let decomposed = decompose(g);
    ensure!(
        completely_inverse == decomposed.is_ok(),
        "completely inverse {completely_inverse} but decompose gives {:?}",
        decomposed.as_ref().err()
    );
    let lat = all_congruences(g, g.order()).map_err(|e| e.to_string())?;
    let semilattice_of_groups = lat.congruences.iter().any(|r| {
        let rho = Congruence::new(g, r.clone()).expect("listed as a congruence");
        is_semilattice(&rho.quotient().groupoid)
            && r.classes().into_iter().all(|c| {
                g.subgroupoid(c)
                    .map(|(sub, _)| is_ag_group(&sub))
                    .unwrap_or(false)
            })
    });
    ensure!(
        semilattice_of_groups == completely_inverse,
        "semilattice of AG-groups {semilattice_of_groups}, completely inverse {completely_inverse}"
    );
    if let Ok(s) = decomposed {
        let h = s.compose().map_err(|e| format!("compose: {e}"))?;
        ensure!(h.same_table_by_labels(g), "compose(decompose(A)) differs from A");
        ensure!(
            check_identity(&h, Law::AgStarStar),
            "the composed strong semilattice is not AG**"
        );
    }
    Ok(())
}

fn central_idempotents(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let central = x
        .e
        .iter()
        .all(|e| g.elements().all(|a| x.op(a, e) == x.op(e, a)));
    let law = g.elements().all(|a| a == x.op(a, x.op(x.inv(a), a)));
    ensure!(central == law, "central idempotents {central}, a = a(a⁻¹a) {law}");
    if central {
        ensure!(
            check_identity(g, Law::Commutative) && check_identity(g, Law::Associative),
            "central idempotents but not a commutative semigroup"
        );
    }
    Ok(())
}

fn square_part(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let squares: ElementSet = g.elements().map(|a| x.op(a, a)).collect();
    for a in g.elements() {
        for b in g.elements() {
            let ab = x.op(a, b);
            ensure!(
                x.op(x.op(a, a), x.op(b, b)) == x.op(ab, ab),
                "a²b² ≠ (ab)² at {}",
                labels(g, &[a, b])
            );
        }
    }
    let (sub, members) = g
        .subgroupoid(squares)
        .map_err(|e| format!("squares are not closed: {e}"))?;
    CompletelyInverse::new(&sub).map_err(|e| format!("A² is not completely inverse: {e}"))?;
    ensure!(
        check_identity(&sub, Law::Commutative) && check_identity(&sub, Law::Associative),
        "A² is not a commutative semigroup"
    );
    let e_sub: ElementSet = idempotents(&sub).iter().map(|i| members[i]).collect();
    ensure!(e_sub == x.e, "E(A²) = {} but E(A) = {}", g.fmt_set(e_sub), g.fmt_set(x.e));
    ensure!(
        x.ci.square_part().same_table_by_labels(&sub),
        "library square part differs"
    );
    Ok(())
}

fn natural_order(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let order = x.ci.natural_order();
    let leq = |a: usize, b: usize| x.e.iter().any(|f| x.op(f, b) == a);
    for a in g.elements() {
        for b in g.elements() {
            ensure!(order.leq(a, b) == leq(a, b), "order disagrees at {}", labels(g, &[a, b]));
            if leq(a, b) {
                ensure!(
                    leq(x.inv(a), x.inv(b)),
                    "a ≤ b but a⁻¹ ≰ b⁻¹ at {}",
                    labels(g, &[a, b])
                );
            }
        }
    }
    if let Some(v) = order.violation(g) {
        return Err(v);
    }
    for e in x.e.iter() {
        for f in x.e.iter() {
            ensure!(
                leq(e, f) == (x.op(e, f) == e),
                "order on E is not ef = e at {}",
                labels(g, &[e, f])
            );
        }
    }
    Ok(())
}

fn natural_order_meets_mu(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let order = x.ci.natural_order();
    for (a, b) in order.pairs() {
        ensure!(
            a == b || x.unit(a) != x.unit(b),
            "{} ≤ {} inside one μ-class",
            g.name(a),
            g.name(b)
        );
    }
    Ok(())
}

fn omega_closure(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for b in subsets(g.order()) {
        if !(closed(g, b) && x.inverse_closed(b)) {
            continue;
        }
        let w = x.up(b);
        ensure!(x.up(w) == w, "{}ω is not closed", g.fmt_set(b));
        ensure!(
            closed(g, w) && x.inverse_closed(w),
            "{}ω = {} is not an inverse-closed subgroupoid",
            g.fmt_set(b),
            g.fmt_set(w)
        );
        let lib = x.ci.closure_omega(b).map_err(|e| e.to_string())?;
        ensure!(lib == w, "library closure of {} is {}", g.fmt_set(b), g.fmt_set(lib));
    }
    let by_products: ElementSet = g
        .elements()
        .filter(|&a| x.e.iter().any(|f| x.e.contains(x.op(f, a))))
        .collect();
    ensure!(
        x.up(x.e) == by_products,
        "Eω = {} but {{a : ea ∈ E}} = {}",
        g.fmt_set(x.up(x.e)),
        g.fmt_set(by_products)
    );
    Ok(())
}

fn derived(_: &Ctx, g: &Groupoid) -> Outcome {
    let d = derived_groupoid(g).map_err(|e| e.to_string())?;
    let dci = CompletelyInverse::new(&d).map_err(|e| format!("derived groupoid: {e}"))?;
    let gci = CompletelyInverse::new(g).map_err(|e| e.to_string())?;
    ensure!(idempotents(&d) == idempotents(g), "idempotents change");
    for a in g.elements() {
        ensure!(dci.inverse(a) == a, "{} is not self-inverse in the derived groupoid", g.name(a));
        let ia = gci.inverse(a);
        for b in g.elements() {
            ensure!(d.op(ia, b) == g.op(a, b), "ab is not recovered at {}", labels(g, &[a, b]));
        }
    }
    let lg = all_congruences(g, g.order()).map_err(|e| e.to_string())?;
    let ld = all_congruences(&d, d.order()).map_err(|e| e.to_string())?;
    ensure!(lg.congruences == ld.congruences, "congruence lattices differ");
    for (i, r) in lg.congruences.iter().enumerate() {
        let kg = lg.congruence(i).kernel().map_err(|e| e.to_string())?;
        let kd = Congruence::new(&d, r.clone())
            .and_then(|c| c.kernel())
            .map_err(|e| e.to_string())?;
        ensure!(kg == kd, "kernels differ for {}", r.display(g.names()));
    }
    Ok(())
}

fn product_idempotent_commutes(_: &Ctx, g: &Groupoid) -> Outcome {
    let e = idempotents(g);
    for a in g.elements() {
        for b in g.elements() {
            if e.contains(g.op(a, b)) {
                ensure!(g.op(a, b) == g.op(b, a), "ab ∈ E but ab ≠ ba at {}", labels(g, &[a, b]));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Kernel and trace

fn kernel_definitions(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        let squares = x.kernel(&rho);
        let classes = x
            .e
            .iter()
            .fold(ElementSet::EMPTY, |acc, f| acc.union(rho.relation().class(f)));
        ensure!(
            squares == classes,
            "for {}: {{a : a ρ a²}} = {} but the idempotent classes cover {}",
            x.show(rho.relation()),
            g.fmt_set(squares),
            g.fmt_set(classes)
        );
        let lib = rho.kernel().map_err(|e| e.to_string())?;
        ensure!(lib == squares, "library kernel of {} differs", x.show(rho.relation()));
    }
    Ok(())
}

fn kernel_trace(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        let k = x.kernel(&rho);
        for a in g.elements() {
            for b in g.elements() {
                let via = rho.related(x.unit(a), x.unit(b)) && k.contains(x.op(a, x.inv(b)));
                ensure!(
                    rho.related(a, b) == via,
                    "kernel–trace criterion fails for {} at {}",
                    x.show(rho.relation()),
                    labels(g, &[a, b])
                );
                let ab = k.contains(x.op(a, x.inv(b)));
                ensure!(
                    ab == k.contains(x.op(x.inv(a), b)) && ab == k.contains(x.op(x.inv(b), a)),
                    "ab⁻¹, a⁻¹b, b⁻¹a disagree on membership in ker {} at {}",
                    x.show(rho.relation()),
                    labels(g, &[a, b])
                );
            }
        }
        let rebuilt = x
            .ci
            .from_kernel_trace(&x.ci.pair_of(&rho))
            .map_err(|e| e.to_string())?;
        ensure!(rebuilt == rho, "kernel and trace rebuild {}", x.show(rebuilt.relation()));
    }
    Ok(())
}

fn containment_transfer(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let kernels: Vec<ElementSet> = all.iter().map(|r| x.kernel(r)).collect();
    for (i, r) in all.iter().enumerate() {
        for (j, s) in all.iter().enumerate() {
            let via = x.trace_leq(r, s) && kernels[i].is_subset(kernels[j]);
            ensure!(
                r.is_subset(s) == via,
                "containment of {} in {} is {} but kernel and trace say {via}",
                x.show(r.relation()),
                x.show(s.relation()),
                r.is_subset(s)
            );
        }
    }
    Ok(())
}

fn idempotent_classes(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for r in &all {
        for s in &all {
            let via = x
                .e
                .iter()
                .all(|f| r.relation().class(f).is_subset(s.relation().class(f)));
            ensure!(
                r.is_subset(s) == via,
                "idempotent classes misjudge {} ⊆ {}",
                x.show(r.relation()),
                x.show(s.relation())
            );
        }
    }
    Ok(())
}

fn e_unitary_sides(_: &Ctx, g: &Groupoid) -> Outcome {
    let e = idempotents(g);
    if e.is_empty() {
        return Ok(());
    }
    let (l, r) = (left_unitary(g, e), right_unitary(g, e));
    if l {
        ensure!(r, "E is left unitary but not right unitary");
    }
    if check_identity(g, Law::AgStarStar) {
        ensure!(l == r, "AG** with left unitary {l}, right unitary {r}");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// σ, normal subgroupoids, E-unitary

fn sigma_least_ag_group(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    ensure!(x.ag_group_congruence(&sigma), "A/σ is not an AG-group");
    for rho in x.all() {
        let group = x.ag_group_congruence(&rho);
        let full_trace = x.e.iter().all(|f| x.e.iter().all(|h| rho.related(f, h)));
        ensure!(
            group == full_trace,
            "{}: AG-group quotient {group}, full trace {full_trace}",
            x.show(rho.relation())
        );
        if group {
            ensure!(
                sigma.is_subset(&rho),
                "σ is not below the AG-group congruence {}",
                x.show(rho.relation())
            );
        }
    }
    let omega = x.up(x.e);
    ensure!(
        x.kernel(&sigma) == omega,
        "ker σ = {} but Eω = {}",
        g.fmt_set(x.kernel(&sigma)),
        g.fmt_set(omega)
    );
    for a in g.elements() {
        for b in g.elements() {
            ensure!(
                sigma.related(a, b) == omega.contains(x.op(a, x.inv(b))),
                "a σ b is not ab⁻¹ ∈ Eω at {}",
                labels(g, &[a, b])
            );
        }
    }
    ensure!(x.symmetric(omega), "Eω is not symmetric");
    Ok(())
}

fn normal_subgroupoids(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mut normals = Vec::new();
    for s in subsets(g.order()) {
        let own = x.normal(s);
        ensure!(own == x.ci.is_normal(s), "normality of {} disputed", g.fmt_set(s));
        if own {
            normals.push(s);
        }
    }
    let groups: Vec<usize> = (0..x.lat.len())
        .filter(|&i| x.ag_group_congruence(&x.c(i)))
        .collect();
    let mut image = Vec::with_capacity(normals.len());
    for &n in &normals {
        ensure!(x.up(x.e).is_subset(n), "normal {} misses Eω", g.fmt_set(n));
        let rho = x.ci.rho_n(n).map_err(|e| e.to_string())?;
        ensure!(x.ag_group_congruence(&rho), "ρ_N is not an AG-group congruence for N = {}", g.fmt_set(n));
        ensure!(x.kernel(&rho) == n, "ker ρ_N ≠ N for N = {}", g.fmt_set(n));
        let same: Vec<usize> = groups
            .iter()
            .copied()
            .filter(|&i| x.kernel(&x.c(i)) == n)
            .collect();
        ensure!(same.len() == 1, "{} AG-group congruences have kernel {}", same.len(), g.fmt_set(n));
        image.push(x.idx(&rho)?);
    }
    for &i in &groups {
        let k = x.kernel(&x.c(i));
        ensure!(x.normal(k), "kernel {} of an AG-group congruence is not normal", g.fmt_set(k));
    }
    ensure!(sorted(image.clone()) == groups, "N ↦ ρ_N does not hit every AG-group congruence");
    for (p, &n1) in normals.iter().enumerate() {
        for (q, &n2) in normals.iter().enumerate() {
            ensure!(
                n1.is_subset(n2) == x.lat.leq[image[p]][image[q]],
                "N ↦ ρ_N is not an order isomorphism at {} and {}",
                g.fmt_set(n1),
                g.fmt_set(n2)
            );
            ensure!(x.normal(n1.intersection(n2)), "normal subgroupoids are not meet-closed");
        }
    }
    Ok(())
}

fn group_congruences_modular(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let s = x.idx(&sigma)?;
    let gc = x.lat.interval(s, x.lat.top());
    let groups: Vec<usize> = (0..x.lat.len())
        .filter(|&i| x.ag_group_congruence(&x.c(i)))
        .collect();
    ensure!(gc == groups, "[σ, A×A] = {gc:?} but AG-group congruences are {groups:?}");
    let q = sigma.quotient();
    let qlat = all_congruences(&q.groupoid, q.groupoid.order()).map_err(|e| e.to_string())?;
    ensure!(qlat.len() == gc.len(), "|C(A/σ)| = {} but |[σ, A×A]| = {}", qlat.len(), gc.len());
    let mut image = Vec::new();
    for &i in &gc {
        let induced = q.induced(&x.c(i)).map_err(|e| e.to_string())?;
        image.push(qlat.index_of(induced.relation()).ok_or("induced relation is not a congruence")?);
    }
    for (p, &i) in gc.iter().enumerate() {
        for (r, &j) in gc.iter().enumerate() {
            ensure!(
                x.lat.leq[i][j] == qlat.leq[image[p]][image[r]],
                "ρ ↦ ρ/σ is not an order isomorphism"
            );
        }
    }
    modular_permuting(&x, &gc, "[σ, A×A]")
}

fn idempotent_pure_below_sigma(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    for rho in x.all() {
        if x.idempotent_pure(&rho) {
            ensure!(rho.is_subset(&sigma), "idempotent pure {} is not below σ", x.show(rho.relation()));
        }
    }
    Ok(())
}

fn e_unitary_equivalences(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let a = e_unitary(g);
    let b = x.kernel(&sigma) == x.e;
    let c = x.idempotent_pure(&sigma)
        && x.all().iter().all(|r| !x.idempotent_pure(r) || r.is_subset(&sigma));
    let d = sigma.meet(&x.ci.mu()).relation().is_identity();
    let s = x.ci.decompose();
    let e = s
        .maps
        .values()
        .all(|m| m.iter().collect::<BTreeSet<_>>().len() == m.len());
    ensure!(
        [b, c, d, e].iter().all(|&v| v == a),
        "E-unitary {a}, ker σ = E {b}, σ maximum idempotent pure {c}, σ ∩ μ = 1 {d}, injective maps {e}"
    );
    Ok(())
}

fn e_unitary_factorization(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let groups: Vec<usize> = (0..all.len()).filter(|&i| x.ag_group_congruence(&all[i])).collect();
    let semis: Vec<usize> = (0..all.len())
        .filter(|&i| x.semilattice_congruence(&all[i]))
        .collect();
    let mut pairs_of = vec![Vec::new(); all.len()];
    for &a in &groups {
        for &b in &semis {
            let m = x.lat.meet[a][b];
            ensure!(
                x.e_unitary_congruence(&all[m]),
                "{} ∩ {} is not E-unitary",
                x.show(all[a].relation()),
                x.show(all[b].relation())
            );
            pairs_of[m].push((a, b));
        }
    }
    for (i, rho) in all.iter().enumerate() {
        if !x.e_unitary_congruence(rho) {
            continue;
        }
        ensure!(
            pairs_of[i].len() == 1,
            "E-unitary {} is a meet of an AG-group and a semilattice congruence in {} ways",
            x.show(rho.relation()),
            pairs_of[i].len()
        );
        let (a, b) = pairs_of[i][0];
        let (ga, sb) = x.ci.eunitary_factorize(rho).map_err(|e| e.to_string())?;
        ensure!(
            ga == all[a] && sb == all[b],
            "library factors of {} differ",
            x.show(rho.relation())
        );
    }
    Ok(())
}

fn e_unitary_set(x: &Ci<'_>) -> Vec<usize> {
    (0..x.lat.len())
        .filter(|&i| x.e_unitary_congruence(&x.c(i)))
        .collect()
}

fn pi_least_e_unitary(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let pi = x.ci.pi();
    ensure!(
        pi == x.ci.sigma().meet(&x.ci.mu()),
        "π ≠ σ ∩ μ: π = {}",
        x.show(pi.relation())
    );
    ensure!(x.e_unitary_congruence(&pi), "π is not E-unitary");
    let u = e_unitary_set(&x);
    ensure!(
        x.least_in(&u) == Some(x.idx(&pi)?),
        "π is not the least E-unitary congruence"
    );
    Ok(())
}

fn u_meet_sublattice(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let u = e_unitary_set(&x);
    for &i in &u {
        for &j in &u {
            ensure!(
                u.contains(&x.lat.meet[i][j]),
                "{} ∩ {} is not E-unitary",
                x.show(&x.lat.congruences[i]),
                x.show(&x.lat.congruences[j])
            );
        }
    }
    ensure!(u.contains(&x.lat.top()), "A×A is not E-unitary");
    ensure!(x.least_in(&u) == Some(x.idx(&x.ci.pi())?), "least E-unitary congruence is not π");
    let lib = x.lat.e_unitary_congruences(&x.ci);
    ensure!(lib.members == u, "library U(A) = {:?} but quotients give {u:?}", lib.members);
    Ok(())
}

fn double_quotient(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for (i, rho) in all.iter().enumerate() {
        let q = rho.quotient();
        let above = x.lat.interval(i, x.lat.top());
        let qlat = all_congruences(&q.groupoid, q.groupoid.order()).map_err(|e| e.to_string())?;
        ensure!(
            qlat.len() == above.len(),
            "|C(A/ρ)| = {} but {} congruences lie above {}",
            qlat.len(),
            above.len(),
            x.show(rho.relation())
        );
        let mut seen = HashSet::new();
        for &j in &above {
            let induced = q.induced(&all[j]).map_err(|e| e.to_string())?;
            seen.insert(induced.relation().clone());
            let qq = induced.quotient();
            ensure!(
                is_isomorphic(&qq.groupoid, &all[j].quotient().groupoid),
                "(A/ρ)/(υ/ρ) ≇ A/υ for ρ = {}, υ = {}",
                x.show(rho.relation()),
                x.show(all[j].relation())
            );
        }
        ensure!(seen.len() == qlat.len(), "υ ↦ υ/ρ is not onto C(A/ρ)");
    }
    Ok(())
}

fn e_unitary_iff_kernel_closed(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        let k = x.kernel(&rho);
        ensure!(
            x.e_unitary_congruence(&rho) == (x.up(k) == k),
            "{}: E-unitary {} but kernel closed {}",
            x.show(rho.relation()),
            x.e_unitary_congruence(&rho),
            x.up(k) == k
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Congruence pairs

fn pair_condition(x: &Ci<'_>, k: ElementSet, tau: &EquivRelation, pos: &dyn Fn(usize) -> usize) -> bool {
    x.seminormal(k)
        && x.g.elements().all(|a| {
            x.e.iter().all(|f| {
                !(k.contains(x.op(f, a)) && tau.related(pos(f), pos(x.unit(a)))) || k.contains(a)
            })
        })
}

fn congruence_pairs(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let (_, traces) = x.trace_lattice()?;
    let e_list: Vec<usize> = x.e.iter().collect();
    let pos = |f: usize| e_list.binary_search(&f).expect("idempotent");
    let actual: HashSet<(ElementSet, EquivRelation)> =
        x.all().iter().map(|r| (x.kernel(r), r.trace())).collect();
    for k in subsets(g.order()) {
        for tau in &traces {
            let own = pair_condition(&x, k, tau, &pos);
            let lib = x.ci.is_congruence_pair(k, tau);
            let real = actual.contains(&(k, tau.clone()));
            ensure!(
                own == lib && lib == real,
                "K = {}, τ = {}: condition {own}, library {lib}, realized {real}",
                g.fmt_set(k),
                tau.display(&e_list.iter().map(|&f| g.name(f).to_string()).collect::<Vec<_>>())
            );
            if lib {
                let pair = crate::congruence::CongruencePair {
                    kernel: k,
                    trace: tau.clone(),
                };
                let rho = x.ci.from_kernel_trace(&pair).map_err(|e| e.to_string())?;
                ensure!(
                    x.kernel(&rho) == k && rho.trace() == *tau,
                    "ρ_(K,τ) has the wrong kernel or trace for K = {}",
                    g.fmt_set(k)
                );
            }
        }
    }
    Ok(())
}

fn e_unitary_pair_normal(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        if x.e_unitary_congruence(&rho) {
            let k = x.kernel(&rho);
            ensure!(x.normal(k), "E-unitary {} has non-normal kernel", x.show(rho.relation()));
        }
    }
    let (_, traces) = x.trace_lattice()?;
    for k in subsets(g.order()).filter(|&k| x.normal(k)) {
        for tau in &traces {
            let pair = crate::congruence::CongruencePair {
                kernel: k,
                trace: tau.clone(),
            };
            let rho = x
                .ci
                .from_kernel_trace(&pair)
                .map_err(|e| format!("normal {} with a trace: {e}", g.fmt_set(k)))?;
            ensure!(
                x.e_unitary_congruence(&rho),
                "ρ_(K,τ) with normal K = {} is not E-unitary",
                g.fmt_set(k)
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Trace classes

fn mu_of_closed_form(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for rho in &all {
        let lib = x.ci.mu_of(rho);
        let formula = x.rel(|a, b| rho.related(x.unit(a), x.unit(b)))?;
        let q = rho.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| format!("A/ρ: {e}"))?;
        let pulled = x.pull_back(&q.projection, &qci.mu());
        ensure!(
            *lib.relation() == formula && formula == pulled,
            "μ(ρ) for ρ = {}: library {}, formula {}, quotient {}",
            x.show(rho.relation()),
            x.show(lib.relation()),
            x.show(&formula),
            x.show(&pulled)
        );
        for other in &all {
            if x.same_trace(rho, other) {
                ensure!(
                    other.is_subset(&lib),
                    "{} shares the trace of {} but is not below μ(ρ)",
                    x.show(other.relation()),
                    x.show(rho.relation())
                );
            }
        }
    }
    Ok(())
}

fn rho_theta_minimum(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for rho in &all {
        let lib = x.ci.rho_theta(rho);
        let formula = x.rel(|a, b| {
            rho.related(x.unit(a), x.unit(b))
                && x
                    .e
                    .iter()
                    .any(|f| rho.related(f, x.unit(a)) && x.op(f, a) == x.op(f, b))
        })?;
        ensure!(
            *lib.relation() == formula,
            "ρ_θ for ρ = {}: library {}, formula {}",
            x.show(rho.relation()),
            x.show(lib.relation()),
            x.show(&formula)
        );
        ensure!(x.same_trace(&lib, rho), "ρ_θ changes the trace of {}", x.show(rho.relation()));
        for other in &all {
            if x.same_trace(rho, other) {
                ensure!(
                    lib.is_subset(other),
                    "ρ_θ of {} is not below {}",
                    x.show(rho.relation()),
                    x.show(other.relation())
                );
            }
        }
    }
    let full = Congruence::full(g);
    ensure!(x.ci.rho_theta(&full) == x.ci.sigma(), "(A×A)_θ ≠ σ");
    Ok(())
}

fn trace_homomorphism(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let th = x.lat.trace_homomorphism(&x.ci).map_err(|e| e.to_string())?;
    ensure!(th.preserves_meet, "Θ does not preserve meets");
    ensure!(th.preserves_join, "Θ does not preserve joins");
    ensure!(th.is_surjective(), "Θ misses a congruence on E");
    let (_, traces) = x.trace_lattice()?;
    let hit: BTreeSet<EquivRelation> = x.all().iter().map(|r| r.trace()).collect();
    let target: BTreeSet<EquivRelation> = traces.into_iter().collect();
    ensure!(hit == target, "traces of C(A) are not exactly C(E)");
    Ok(())
}

/// Congruences on `A/γ` from `[γ, A×A]` that satisfy `keep`, counted from
/// the quotient's own lattice.
fn quotient_count(
    gamma: &Congruence<'_>,
    keep: impl Fn(&CompletelyInverse<'_>, &Congruence<'_>) -> bool,
) -> std::result::Result<usize, String> {
    let q = gamma.quotient();
    let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| format!("A/γ: {e}"))?;
    let qlat = all_congruences(&q.groupoid, q.groupoid.order()).map_err(|e| e.to_string())?;
    Ok((0..qlat.len()).filter(|&i| keep(&qci, &qlat.congruence(i))).count())
}

fn separating_in(ci: &CompletelyInverse<'_>, r: &Congruence<'_>) -> bool {
    let e = ci.idempotents();
    e.iter().all(|x| e.iter().all(|y| x == y || !r.related(x, y)))
}

fn pure_in(ci: &CompletelyInverse<'_>, r: &Congruence<'_>) -> bool {
    let e = ci.idempotents();
    e.iter().all(|x| r.relation().class(x).is_subset(e))
}

fn trace_classes(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for (i, rho) in all.iter().enumerate() {
        let class = x.lat.theta_class(i);
        let lo = x.ci.rho_theta(rho);
        let hi = x.ci.mu_of(rho);
        let interval = x.lat.interval(x.idx(&lo)?, x.idx(&hi)?);
        ensure!(
            class == interval,
            "trace class of {} is not [ρ_θ, μ(ρ)]",
            x.show(rho.relation())
        );
        modular_permuting(&x, &class, "a trace class")?;
        let q = lo.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| e.to_string())?;
        for &j in &class {
            let induced = q.induced(&all[j]).map_err(|e| e.to_string())?;
            ensure!(
                separating_in(&qci, &induced),
                "{}/ρ_θ is not idempotent-separating",
                x.show(all[j].relation())
            );
        }
        let count = quotient_count(&lo, separating_in)?;
        ensure!(
            count == class.len(),
            "A/ρ_θ has {count} idempotent-separating congruences but the trace class of {} has {}",
            x.show(rho.relation()),
            class.len()
        );
    }
    Ok(())
}

fn theta_operators(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let lows: Vec<Congruence<'_>> = all.iter().map(|r| x.ci.rho_theta(r)).collect();
    let highs: Vec<Congruence<'_>> = all.iter().map(|r| x.ci.mu_of(r)).collect();
    for i in 0..all.len() {
        for j in 0..all.len() {
            let t = x.trace_leq(&all[i], &all[j]);
            ensure!(
                t == lows[i].is_subset(&lows[j]) && t == highs[i].is_subset(&highs[j]),
                "ρ_θ, μ(ρ) and traces order {} and {} differently",
                x.show(all[i].relation()),
                x.show(all[j].relation())
            );
            let join = x.c(x.lat.join[i][j]);
            ensure!(
                x.ci.rho_theta(&join) == lows[i].join(&lows[j]),
                "(ρ ∨ γ)_θ ≠ ρ_θ ∨ γ_θ"
            );
            let meet = x.c(x.lat.meet[i][j]);
            ensure!(
                x.ci.mu_of(&meet) == highs[i].meet(&highs[j]),
                "μ(ρ ∩ γ) ≠ μ(ρ) ∩ μ(γ)"
            );
        }
    }
    Ok(())
}

fn e_unitary_theta(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let a = e_unitary(g);
    let all = x.all();
    let b = all.iter().all(|r| x.ci.rho_theta(r) == r.meet(&sigma));
    let c = all.iter().all(|r| x.idempotent_pure(&x.ci.rho_theta(r)));
    ensure!(
        a == b && b == c,
        "E-unitary {a}, ρ_θ = ρ ∩ σ always {b}, ρ_θ always idempotent pure {c}"
    );
    Ok(())
}

fn sigma_meet_homomorphism(_: &Ctx, g: &Groupoid) -> Outcome {
    if !e_unitary(g) {
        return Ok(());
    }
    let x = Ci::new(g)?;
    let s = x.idx(&x.ci.sigma())?;
    let chi = |i: usize| x.lat.meet[i][s];
    let n = x.lat.len();
    for i in 0..n {
        for j in 0..n {
            ensure!(chi(x.lat.join[i][j]) == x.lat.join[chi(i)][chi(j)], "χ does not preserve joins");
            ensure!(chi(x.lat.meet[i][j]) == x.lat.meet[chi(i)][chi(j)], "χ does not preserve meets");
        }
    }
    let image = sorted((0..n).map(chi).collect());
    let pure: Vec<usize> = (0..n).filter(|&i| x.idempotent_pure(&x.c(i))).collect();
    ensure!(image == pure, "image of χ is {image:?}, idempotent pure congruences are {pure:?}");
    ensure!(pure == x.lat.interval(x.lat.bottom(), s), "idempotent pure congruences are not [1, σ]");
    Ok(())
}

fn fundamental_congruences(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let mut fc = Vec::new();
    for (i, rho) in all.iter().enumerate() {
        let q = rho.quotient().groupoid;
        let qci = CompletelyInverse::new(&q).map_err(|e| e.to_string())?;
        let fundamental = qci.mu().relation().is_identity();
        let fixed = x.ci.mu_of(rho) == *rho;
        ensure!(
            fundamental == fixed,
            "{}: A/ρ fundamental {fundamental}, ρ = μ(ρ) {fixed}",
            x.show(rho.relation())
        );
        if fixed {
            fc.push(i);
        }
    }
    ensure!(fc == x.lat.fundamental_congruences(&x.ci), "library FC(A) differs");
    let mu = x.idx(&x.ci.mu())?;
    ensure!(x.least_in(&fc) == Some(mu), "μ is not the least fundamental congruence");
    ensure!(x.greatest_in(&fc) == Some(x.lat.top()), "A×A is not fundamental");
    for &i in &fc {
        for &j in &fc {
            ensure!(fc.contains(&x.lat.meet[i][j]), "FC(A) is not meet-closed");
            let above: Vec<usize> = fc
                .iter()
                .copied()
                .filter(|&k| x.lat.leq[i][k] && x.lat.leq[j][k])
                .collect();
            let join_in_fc = x.least_in(&above);
            let formula = x.idx(&x.ci.mu_of(&x.c(x.lat.join[i][j])))?;
            ensure!(join_in_fc == Some(formula), "join in FC(A) is not μ(ρ ∨ γ)");
        }
    }
    let (_, traces) = x.trace_lattice()?;
    let images: BTreeSet<EquivRelation> = fc.iter().map(|&i| all[i].trace()).collect();
    ensure!(
        images.len() == fc.len() && images.len() == traces.len(),
        "tr restricted to FC(A) is not a bijection onto C(E)"
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// τ and kernel classes

fn tau_q_largest(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for q in subsets(g.order()) {
        let t = tau_q(g, q).map_err(|e| e.to_string())?;
        ensure!(is_congruence(g, t.relation()), "τ^Q is not a congruence for Q = {}", g.fmt_set(q));
        let saturates = |r: &Congruence<'_>| q.iter().all(|a| r.relation().class(a).is_subset(q));
        ensure!(saturates(&t), "τ^Q does not saturate Q = {}", g.fmt_set(q));
        for r in &all {
            if saturates(r) {
                ensure!(
                    r.is_subset(&t),
                    "{} saturates {} but is not below τ^Q",
                    x.show(r.relation()),
                    g.fmt_set(q)
                );
            }
        }
    }
    Ok(())
}

fn tau_largest_idempotent_pure(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let tau = x.ci.tau();
    ensure!(x.idempotent_pure(&tau), "τ is not idempotent pure");
    for r in x.all() {
        if x.idempotent_pure(&r) {
            ensure!(r.is_subset(&tau), "idempotent pure {} is not below τ", x.show(r.relation()));
        }
    }
    Ok(())
}

fn tau_of_quotient(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    for rho in &all {
        let k = x.kernel(rho);
        let lib = x.ci.tau_of(rho);
        let q = rho.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| e.to_string())?;
        let pulled = x.pull_back(&q.projection, &qci.tau());
        let by_kernel = tau_q(g, k).map_err(|e| e.to_string())?;
        ensure!(
            *lib.relation() == pulled && pulled == *by_kernel.relation(),
            "τ(ρ) for ρ = {}: library {}, quotient {}, τ^ker {}",
            x.show(rho.relation()),
            x.show(lib.relation()),
            x.show(&pulled),
            x.show(by_kernel.relation())
        );
        ensure!(x.kernel(&lib) == k, "τ(ρ) changes the kernel of {}", x.show(rho.relation()));
        for other in &all {
            if x.kernel(other) == k {
                ensure!(
                    other.is_subset(&lib),
                    "{} has the kernel of {} but is not below τ(ρ)",
                    x.show(other.relation()),
                    x.show(rho.relation())
                );
            }
        }
    }
    Ok(())
}

fn kappa_classes(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let kernels: BTreeSet<ElementSet> = all.iter().map(|r| x.kernel(r)).collect();
    let seminormal: BTreeSet<ElementSet> = subsets(g.order()).filter(|&s| x.seminormal(s)).collect();
    ensure!(kernels == seminormal, "kernels are not exactly the seminormal subgroupoids");
    let mu = x.ci.mu();
    for (i, rho) in all.iter().enumerate() {
        for (j, other) in all.iter().enumerate() {
            let m = x.c(x.lat.meet[i][j]);
            ensure!(
                x.kernel(&m) == x.kernel(rho).intersection(x.kernel(other)),
                "ker(ρ ∩ γ) ≠ ker ρ ∩ ker γ"
            );
        }
        let class = x.lat.kappa_class(i).map_err(|e| e.to_string())?;
        let lo = rho.meet(&mu);
        ensure!(x.ci.rho_kappa(rho) == lo, "library ρ_κ ≠ ρ ∩ μ");
        let interval = x.lat.interval(x.idx(&lo)?, x.idx(&x.ci.tau_of(rho))?);
        ensure!(
            class == interval,
            "kernel class of {} is not [ρ ∩ μ, τ(ρ)]",
            x.show(rho.relation())
        );
        for &a in &class {
            for &b in &class {
                ensure!(
                    class.contains(&x.lat.meet[a][b]) && class.contains(&x.lat.join[a][b]),
                    "kernel class of {} is not a sublattice",
                    x.show(rho.relation())
                );
            }
        }
        let q = lo.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| e.to_string())?;
        for &a in &class {
            let induced = q.induced(&all[a]).map_err(|e| e.to_string())?;
            ensure!(pure_in(&qci, &induced), "γ/ρ_κ is not idempotent pure");
        }
        let count = quotient_count(&lo, pure_in)?;
        ensure!(
            count == class.len(),
            "A/ρ_κ has {count} idempotent pure congruences but the kernel class of {} has {}",
            x.show(rho.relation()),
            class.len()
        );
    }
    Ok(())
}

fn kappa_not_monotone(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let rho = Congruence::parse(g, "a e | b | f").map_err(|e| e.to_string())?;
    let one = Congruence::identity(g);
    ensure!(one.is_subset(&rho), "1 ⊄ ρ");
    ensure!(x.kernel(&one).is_subset(x.kernel(&rho)), "ker 1 ⊄ ker ρ");
    let t1 = x.ci.tau_of(&one);
    let tr = x.ci.tau_of(&rho);
    let expected = Congruence::parse(g, "a b | e f").map_err(|e| e.to_string())?;
    ensure!(t1 == x.ci.tau() && t1 == expected, "τ(1) = {}", x.show(t1.relation()));
    ensure!(!t1.is_subset(&tr), "τ(1) ⊆ τ(ρ) = {}", x.show(tr.relation()));
    ensure!(t1.meet(&tr).relation().is_identity(), "τ ∩ τ(ρ) ≠ 1");
    let disjunctive: Vec<usize> = (0..x.lat.len())
        .filter(|&i| x.ci.tau_of(&x.c(i)) == x.c(i))
        .collect();
    let closed = disjunctive
        .iter()
        .all(|&i| disjunctive.iter().all(|&j| disjunctive.contains(&x.lat.meet[i][j])));
    ensure!(!closed, "E-disjunctive congruences are meet-closed");
    Ok(())
}

fn rho_decomposition(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        let lower = x.ci.rho_theta(&rho).join(&x.ci.rho_kappa(&rho));
        let upper = x.ci.mu_of(&rho).meet(&x.ci.tau_of(&rho));
        ensure!(
            lower == rho && upper == rho,
            "ρ = {}: ρ_θ ∨ ρ_κ = {}, μ(ρ) ∩ τ(ρ) = {}",
            x.show(rho.relation()),
            x.show(lower.relation()),
            x.show(upper.relation())
        );
    }
    Ok(())
}

fn e_disjunctive_quotient(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    for rho in x.all() {
        let disjunctive = quotient_tau_trivial(&rho)?;
        let fixed = x.ci.tau_of(&rho) == rho;
        ensure!(
            disjunctive == fixed,
            "{}: A/ρ E-disjunctive {disjunctive}, ρ = τ(ρ) {fixed}",
            x.show(rho.relation())
        );
    }
    Ok(())
}

fn ag_group_iff_e_unitary_e_disjunctive(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let group = is_ag_group(g);
    let eu = e_unitary(g);
    let ed = x.ci.tau().relation().is_identity();
    ensure!(group == (eu && ed), "AG-group {group}, E-unitary {eu}, E-disjunctive {ed}");
    Ok(())
}

fn idempotent_pure_iff_meet_mu(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = x.ci.mu();
    for rho in x.all() {
        let pure = x.idempotent_pure(&rho);
        let meet = rho.meet(&mu).relation().is_identity();
        ensure!(pure == meet, "{}: idempotent pure {pure}, ρ ∩ μ = 1 {meet}", x.show(rho.relation()));
    }
    Ok(())
}

fn subdirect_product(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let tau = x.ci.tau();
    ensure!(tau.meet(&x.ci.mu()).relation().is_identity(), "τ ∩ μ ≠ 1");
    let images: BTreeSet<(usize, usize)> = g
        .elements()
        .map(|a| (tau.relation().rep(a), x.unit(a)))
        .collect();
    ensure!(images.len() == g.order(), "a ↦ (aτ, aa⁻¹) is not injective");
    Ok(())
}

// ---------------------------------------------------------------------------
// Joins with σ and μ

fn join_with_sigma(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let s = x.idx(&sigma)?;
    for (i, rho) in x.all().iter().enumerate() {
        let join = x.c(x.lat.join[i][s]);
        let sandwich = x.sandwich(&sigma, rho)?;
        let criterion = x.rel(|a, b| x.e.iter().any(|f| rho.related(x.op(f, a), x.op(f, b))))?;
        let lib = x.ci.join_with_sigma(rho);
        ensure!(
            *join.relation() == sandwich && sandwich == criterion && *lib.relation() == criterion,
            "ρ ∨ σ for ρ = {}: lattice {}, σρσ {}, criterion {}, library {}",
            x.show(rho.relation()),
            x.show(join.relation()),
            x.show(&sandwich),
            x.show(&criterion),
            x.show(lib.relation())
        );
        ensure!(
            x.kernel(&join) == x.up(x.kernel(rho)),
            "ker(ρ ∨ σ) ≠ (ker ρ)ω for ρ = {}",
            x.show(rho.relation())
        );
    }
    Ok(())
}

fn homomorphism_onto(x: &Ci<'_>, c: usize, what: &str) -> Outcome {
    let phi = |i: usize| x.lat.join[i][c];
    let n = x.lat.len();
    for i in 0..n {
        for j in 0..n {
            ensure!(
                phi(x.lat.join[i][j]) == x.lat.join[phi(i)][phi(j)],
                "ρ ↦ ρ ∨ {what} does not preserve the join of {} and {}",
                x.show(&x.lat.congruences[i]),
                x.show(&x.lat.congruences[j])
            );
            ensure!(
                phi(x.lat.meet[i][j]) == x.lat.meet[phi(i)][phi(j)],
                "ρ ↦ ρ ∨ {what} does not preserve the meet of {} and {}",
                x.show(&x.lat.congruences[i]),
                x.show(&x.lat.congruences[j])
            );
        }
    }
    let image = sorted((0..n).map(phi).collect());
    ensure!(image == x.lat.interval(c, x.lat.top()), "ρ ↦ ρ ∨ {what} is not onto its interval");
    Ok(())
}

fn join_with_sigma_homomorphism(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let s = x.idx(&sigma)?;
    homomorphism_onto(&x, s, "σ")?;
    for (i, rho) in x.all().iter().enumerate() {
        let pi = x.ci.pi_of(rho);
        let join = x.c(x.lat.join[i][s]);
        ensure!(
            rho.is_subset(&pi) && pi.is_subset(&join),
            "ρ ⊆ π_ρ ⊆ ρ ∨ σ fails for {}",
            x.show(rho.relation())
        );
        ensure!(pi.join(&sigma) == join, "π_ρ ∨ σ ≠ ρ ∨ σ for {}", x.show(rho.relation()));
    }
    Ok(())
}

fn join_with_mu(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let mu = x.ci.mu();
    let m = x.idx(&mu)?;
    for (i, rho) in x.all().iter().enumerate() {
        let join = x.c(x.lat.join[i][m]);
        let sandwich = x.sandwich(&mu, rho)?;
        let criterion = x.rel(|a, b| rho.related(x.unit(a), x.unit(b)))?;
        let lib = x.ci.join_with_mu(rho);
        ensure!(
            *join.relation() == sandwich && sandwich == criterion && *lib.relation() == criterion,
            "ρ ∨ μ for ρ = {}: lattice {}, μρμ {}, criterion {}, library {}",
            x.show(rho.relation()),
            x.show(join.relation()),
            x.show(&sandwich),
            x.show(&criterion),
            x.show(lib.relation())
        );
    }
    homomorphism_onto(&x, m, "μ")
}

fn pi_rho(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let mu = x.ci.mu();
    let u = e_unitary_set(&x);
    for (i, rho) in x.all().iter().enumerate() {
        let formula = x.sandwich(&sigma, rho)?.meet(&x.sandwich(&mu, rho)?);
        let lib = x.ci.pi_of(rho);
        ensure!(
            *lib.relation() == formula,
            "π_ρ for ρ = {}: library {}, σρσ ∩ μρμ {}",
            x.show(rho.relation()),
            x.show(lib.relation()),
            x.show(&formula)
        );
        let above: Vec<usize> = u.iter().copied().filter(|&j| x.lat.leq[i][j]).collect();
        ensure!(
            x.least_in(&above) == Some(x.idx(&lib)?),
            "π_ρ is not the least E-unitary congruence above {}",
            x.show(rho.relation())
        );
    }
    Ok(())
}

fn e_unitary_congruence_equivalences(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    for rho in x.all() {
        let k = x.kernel(&rho);
        let join = rho.join(&sigma);
        let tau = x.ci.tau_of(&rho);
        let a = x.e_unitary_congruence(&rho);
        let b = x.up(k) == k;
        let c = k == x.kernel(&join);
        let d = join == tau;
        let e = x.ag_group_congruence(&tau);
        ensure!(
            [b, c, d, e].iter().all(|&v| v == a),
            "{}: E-unitary {a}, kernel closed {b}, ker ρ = ker(ρ ∨ σ) {c}, ρ ∨ σ = τ(ρ) {d}, τ(ρ) AG-group {e}",
            x.show(rho.relation())
        );
    }
    Ok(())
}

fn kernel_class_of_rho_n(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let all = x.all();
    let mu = x.ci.mu();
    let m = x.idx(&mu)?;
    let semis = x.lat.interval(m, x.lat.top());
    let mut covered = Vec::new();
    for n in subsets(g.order()).filter(|&s| x.normal(s)) {
        let rn = x.ci.rho_n(n).map_err(|e| e.to_string())?;
        let r = x.idx(&rn)?;
        let with_kernel: Vec<usize> = (0..all.len()).filter(|&i| x.kernel(&all[i]) == n).collect();
        let meets = sorted(semis.iter().map(|&v| x.lat.meet[r][v]).collect());
        let interval = x.lat.interval(x.lat.meet[r][m], r);
        ensure!(
            with_kernel == meets && meets == interval,
            "N = {}: kernel class {with_kernel:?}, meets {meets:?}, interval {interval:?}",
            g.fmt_set(n)
        );
        covered.extend(with_kernel);
    }
    ensure!(sorted(covered) == e_unitary_set(&x), "the families U_N do not exhaust U(A)");
    Ok(())
}

fn homomorphism_factorizations(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let sigma = x.ci.sigma();
    let mu = x.ci.mu();
    let a_sigma = sigma.quotient().groupoid;
    let a_mu = mu.quotient().groupoid;
    for rho in x.all() {
        let lo = x.ci.rho_theta(&rho);
        ensure!(lo.is_subset(&rho) && lo.is_subset(&sigma), "ρ_θ ⊄ ρ ∩ σ for {}", x.show(rho.relation()));
        let q = lo.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| e.to_string())?;
        let induced = q.induced(&rho).map_err(|e| e.to_string())?;
        ensure!(separating_in(&qci, &induced), "ρ/ρ_θ is not idempotent-separating");
        let lo = x.ci.rho_kappa(&rho);
        ensure!(lo.is_subset(&rho) && lo.is_subset(&mu), "ρ_κ ⊄ ρ ∩ μ for {}", x.show(rho.relation()));
        let q = lo.quotient();
        let qci = CompletelyInverse::new(&q.groupoid).map_err(|e| e.to_string())?;
        let induced = q.induced(&rho).map_err(|e| e.to_string())?;
        ensure!(pure_in(&qci, &induced), "ρ/ρ_κ is not idempotent pure");
        let over = rho.quotient().groupoid;
        let oci = CompletelyInverse::new(&over).map_err(|e| e.to_string())?;
        if rho.is_subset(&sigma) {
            ensure!(
                is_isomorphic(&oci.sigma().quotient().groupoid, &a_sigma),
                "(A/ρ)/σ ≇ A/σ for ρ = {}",
                x.show(rho.relation())
            );
        }
        if rho.is_subset(&mu) {
            ensure!(
                is_isomorphic(&oci.mu().quotient().groupoid, &a_mu),
                "(A/ρ)/μ ≇ A/μ for ρ = {}",
                x.show(rho.relation())
            );
        }
    }
    Ok(())
}

fn final_equivalences(_: &Ctx, g: &Groupoid) -> Outcome {
    let x = Ci::new(g)?;
    let tau = x.ci.tau();
    let all = x.all();
    let a = e_unitary(g);
    let b = x.ci.sigma() == tau;
    let c = all
        .iter()
        .all(|r| !x.idempotent_pure(r) || x.e_unitary_congruence(r));
    let d = all
        .iter()
        .any(|r| x.idempotent_pure(r) && x.e_unitary_congruence(r));
    let e = x.e_unitary_congruence(&tau);
    ensure!(
        [b, c, d, e].iter().all(|&v| v == a),
        "E-unitary {a}, σ = τ {b}, all idempotent pure E-unitary {c}, some idempotent pure E-unitary {d}, τ E-unitary {e}"
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Census

fn strategy_agreement(_: &Ctx, n: usize) -> std::result::Result<(), (String, Option<Groupoid>)> {
    let run = |s: Strategy| {
        enumerate(&EnumerationSpec::new(n, ClassFilter::CompletelyInverse).with_strategy(s))
            .map_err(|e| (format!("order {n}: {e}"), None))
    };
    let filtered = run(Strategy::Filter)?;
    let synthesized = run(Strategy::Synthesis)?;
    if filtered == synthesized {
        return Ok(());
    }
    let only_filter = filtered.iter().find(|g| !synthesized.contains(g));
    let only_synth = synthesized.iter().find(|g| !filtered.contains(g));
    let (side, g) = match (only_filter, only_synth) {
        (Some(g), _) => ("filter", g.clone()),
        (None, Some(g)) => ("synthesis", g.clone()),
        (None, None) => unreachable!("sorted lists differ"),
    };
    Err((
        format!(
            "order {n}: filter finds {}, synthesis {}; this table comes only from {side}",
            filtered.len(),
            synthesized.len()
        ),
        Some(g),
    ))
}
