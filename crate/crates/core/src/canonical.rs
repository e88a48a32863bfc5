//! Closed-form congruences on a completely inverse AG**-groupoid and the
//! operators that move between them.

use crate::congruence::{tau_q, Congruence};
use crate::error::{Error, Result};
use crate::magma::{is_e_unitary_direct, CompletelyInverse, ElementSet};
use crate::relation::EquivRelation;

/// `μ`, `σ`, `τ` and `π` of one carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSuite<'g> {
    pub mu: Congruence<'g>,
    pub sigma: Congruence<'g>,
    pub tau: Congruence<'g>,
    pub pi: Congruence<'g>,
}

/// `outer ∘ inner ∘ outer` as a relation.
pub fn sandwich(outer: &EquivRelation, inner: &EquivRelation) -> Vec<ElementSet> {
    let n = outer.order();
    let rows = outer.compose(inner);
    (0..n)
        .map(|a| {
            rows[a]
                .iter()
                .fold(ElementSet::EMPTY, |acc, c| acc.union(outer.class(c)))
        })
        .collect()
}

/// Rows of a relation given as sets, read as an equivalence.
pub(crate) fn rows_to_relation(rows: &[ElementSet]) -> Option<EquivRelation> {
    EquivRelation::from_predicate(rows.len(), |a, b| rows[a].contains(b)).ok()
}

impl<'g> CompletelyInverse<'g> {
    fn formula(&self, related: impl Fn(usize, usize) -> bool) -> Congruence<'g> {
        let rel = EquivRelation::from_predicate(self.order(), related)
            .expect("closed-form relation is an equivalence");
        Congruence::trusted(self.groupoid(), rel)
    }

    /// `a μ b` iff `aa⁻¹ = bb⁻¹`.
    pub fn mu(&self) -> Congruence<'g> {
        let units: Vec<usize> = (0..self.order()).map(|a| self.unit(a)).collect();
        Congruence::trusted(self.groupoid(), EquivRelation::from_labels(&units))
    }

    /// `a σ b` iff `ea = eb` for some idempotent `e`.
    pub fn sigma(&self) -> Congruence<'g> {
        let e = self.idempotents();
        self.formula(|a, b| e.iter().any(|f| self.op(f, a) == self.op(f, b)))
    }

    /// `τ^E`, the largest idempotent pure congruence.
    pub fn tau(&self) -> Congruence<'g> {
        tau_q(self.groupoid(), self.idempotents()).expect("E is nonempty and the carrier is AG**")
    }

    pub fn pi(&self) -> Congruence<'g> {
        self.sigma().meet(&self.mu())
    }

    pub fn suite(&self) -> CanonicalSuite<'g> {
        let mu = self.mu();
        let sigma = self.sigma();
        let pi = sigma.meet(&mu);
        CanonicalSuite {
            mu,
            sigma,
            tau: self.tau(),
            pi,
        }
    }

    /// `ρ^θ = μ(ρ)`: `(aa⁻¹, bb⁻¹) ∈ ρ`.
    pub fn mu_of(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        let labels: Vec<usize> = (0..self.order())
            .map(|a| rho.relation().rep(self.unit(a)))
            .collect();
        Congruence::trusted(self.groupoid(), EquivRelation::from_labels(&labels))
    }

    /// `ρ_θ`: `(aa⁻¹, bb⁻¹) ∈ ρ` and `ea = eb` for an idempotent `e ρ aa⁻¹`.
    pub fn rho_theta(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        let e = self.idempotents();
        self.formula(|a, b| {
            let ua = self.unit(a);
            rho.related(ua, self.unit(b))
                && e
                    .iter()
                    .any(|f| rho.related(f, ua) && self.op(f, a) == self.op(f, b))
        })
    }

    /// `ρ_κ = ρ ∩ μ`.
    pub fn rho_kappa(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        Congruence::trusted(self.groupoid(), rho.relation().meet(self.mu().relation()))
    }

    /// `ρ^κ = τ(ρ) = τ^{ker ρ}`.
    pub fn tau_of(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        let k = rho.kernel().expect("kernel readings agree on completely inverse carriers");
        tau_q(self.groupoid(), k).expect("kernels contain E")
    }

    /// `ρ ∨ σ`: `(ea) ρ (eb)` for some idempotent `e`.
    pub fn join_with_sigma(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        let e = self.idempotents();
        let joined = self.formula(|a, b| e.iter().any(|f| rho.related(self.op(f, a), self.op(f, b))));
        debug_assert_eq!(
            rows_to_relation(&sandwich(self.sigma().relation(), rho.relation())).as_ref(),
            Some(joined.relation())
        );
        debug_assert_eq!(&rho.relation().join(self.sigma().relation()), joined.relation());
        joined
    }

    /// `ρ ∨ μ`: `(aa⁻¹) ρ (bb⁻¹)`.
    pub fn join_with_mu(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        let joined = self.mu_of(rho);
        debug_assert_eq!(
            rows_to_relation(&sandwich(self.mu().relation(), rho.relation())).as_ref(),
            Some(joined.relation())
        );
        debug_assert_eq!(&rho.relation().join(self.mu().relation()), joined.relation());
        joined
    }

    /// `π_ρ = (ρ ∨ σ) ∩ (ρ ∨ μ)`, the least E-unitary congruence containing `ρ`.
    pub fn pi_of(&self, rho: &Congruence<'_>) -> Congruence<'g> {
        self.join_with_sigma(rho).meet(&self.join_with_mu(rho))
    }

    /// `A/ρ` is E-unitary.
    pub fn is_e_unitary_congruence(&self, rho: &Congruence<'_>) -> bool {
        is_e_unitary_direct(&rho.quotient().groupoid)
    }

    /// `ρ = (ρ ∨ σ) ∩ (ρ ∨ μ)` with an AG-group and a semilattice factor.
    pub fn eunitary_factorize(
        &self,
        rho: &Congruence<'_>,
    ) -> Result<(Congruence<'g>, Congruence<'g>)> {
        if !self.is_e_unitary_congruence(rho) {
            return Err(Error::NotEUnitary);
        }
        let group_part = self.join_with_sigma(rho);
        let semilattice_part = self.join_with_mu(rho);
        debug_assert_eq!(
            group_part.meet(&semilattice_part).relation(),
            rho.relation()
        );
        Ok((group_part, semilattice_part))
    }

    /// `ker σ = E`.
    pub fn is_e_unitary(&self) -> bool {
        self.sigma().kernel().expect("kernel readings agree") == self.idempotents()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::magma::Groupoid;

    fn p<'g>(g: &'g Groupoid, s: &str) -> Congruence<'g> {
        Congruence::parse(g, s).unwrap()
    }

    #[test]
    fn suite_of_f1() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let s = ci.suite();
        assert_eq!(s.mu, p(&g, "a e | b f"));
        assert_eq!(s.sigma, p(&g, "a b | e f"));
        assert_eq!(s.tau, p(&g, "a b | e f"));
        assert_eq!(s.pi, Congruence::identity(&g));
        assert!(ci.is_e_unitary());
    }

    #[test]
    fn suite_of_f2_and_chain() {
        let g = fixtures::f2();
        let ci = CompletelyInverse::new(&g).unwrap();
        let s = ci.suite();
        assert_eq!(s.mu, Congruence::full(&g));
        assert_eq!(s.sigma, Congruence::identity(&g));
        assert_eq!(s.tau, Congruence::identity(&g));
        assert_eq!(s.pi, Congruence::identity(&g));

        let g = fixtures::chain2();
        let ci = CompletelyInverse::new(&g).unwrap();
        let s = ci.suite();
        assert_eq!(s.mu, Congruence::identity(&g));
        assert_eq!(s.sigma, Congruence::full(&g));
        assert_eq!(s.tau, Congruence::full(&g));
    }

    #[test]
    fn pi_of_non_e_unitary_fixture() {
        let g = fixtures::collapsed_chain();
        let ci = CompletelyInverse::new(&g).unwrap();
        assert!(!ci.is_e_unitary());
        assert_ne!(ci.pi(), Congruence::identity(&g));
        assert_ne!(ci.tau(), ci.sigma());
    }

    #[test]
    fn theta_operators_on_f1() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let id = Congruence::identity(&g);
        let full = Congruence::full(&g);
        let sigma = p(&g, "a b | e f");
        let mu = p(&g, "a e | b f");
        let rho = p(&g, "a e | b | f");
        assert_eq!(ci.mu_of(&id), mu);
        assert_eq!(ci.mu_of(&sigma), full);
        assert_eq!(ci.mu_of(&rho), mu);
        assert_eq!(ci.rho_theta(&mu), id);
        assert_eq!(ci.rho_theta(&full), sigma);
        let f2 = fixtures::f2();
        let ci2 = CompletelyInverse::new(&f2).unwrap();
        assert_eq!(ci2.rho_theta(&Congruence::full(&f2)), Congruence::identity(&f2));
    }

    #[test]
    fn kappa_operators_on_f1() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let id = Congruence::identity(&g);
        let full = Congruence::full(&g);
        let sigma = p(&g, "a b | e f");
        let mu = p(&g, "a e | b f");
        let rho = p(&g, "a e | b | f");
        assert_eq!(ci.rho_kappa(&sigma), id);
        assert_eq!(ci.rho_kappa(&full), mu);
        assert_eq!(ci.rho_kappa(&mu), mu);
        assert_eq!(ci.tau_of(&id), sigma);
        assert_eq!(ci.tau_of(&mu), full);
        // ker ρ = {a, e, f}, and ρ is already the largest congruence with it
        assert_eq!(ci.tau_of(&rho), rho);
        assert!(!ci.tau_of(&id).is_subset(&ci.tau_of(&rho)));
        assert_eq!(ci.tau_of(&id).meet(&ci.tau_of(&rho)), id);
    }

    #[test]
    fn joins_on_f1() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let id = Congruence::identity(&g);
        let full = Congruence::full(&g);
        let sigma = p(&g, "a b | e f");
        let mu = p(&g, "a e | b f");
        let rho = p(&g, "a e | b | f");
        assert_eq!(ci.join_with_sigma(&id), sigma);
        assert_eq!(ci.join_with_sigma(&mu), full);
        assert_eq!(ci.join_with_mu(&sigma), full);
        assert_eq!(ci.join_with_mu(&id), mu);
        assert_eq!(ci.join_with_mu(&rho), mu);
        assert_eq!(ci.pi_of(&id), id);
        assert_eq!(ci.pi_of(&rho), mu);
        let f2 = fixtures::f2();
        let ci2 = CompletelyInverse::new(&f2).unwrap();
        let id2 = Congruence::identity(&f2);
        assert_eq!(ci2.join_with_sigma(&id2), id2);
        assert_eq!(ci2.pi_of(&id2), id2);
    }

    #[test]
    fn factorizations_on_f1() {
        let g = fixtures::f1();
        let ci = CompletelyInverse::new(&g).unwrap();
        let full = Congruence::full(&g);
        let sigma = p(&g, "a b | e f");
        let mu = p(&g, "a e | b f");
        let rho = p(&g, "a e | b | f");
        assert_eq!(
            ci.eunitary_factorize(&Congruence::identity(&g)),
            Ok((sigma.clone(), mu.clone()))
        );
        assert_eq!(ci.eunitary_factorize(&mu), Ok((full.clone(), mu.clone())));
        assert_eq!(ci.eunitary_factorize(&sigma), Ok((sigma.clone(), full)));
        assert_eq!(ci.eunitary_factorize(&rho), Err(Error::NotEUnitary));
    }

    #[test]
    fn sandwich_matches_join() {
        let g = fixtures::f1();
        let sigma = p(&g, "a b | e f");
        let rho = p(&g, "a e | b | f");
        let rows = sandwich(sigma.relation(), rho.relation());
        assert_eq!(
            rows_to_relation(&rows),
            Some(sigma.relation().join(rho.relation()))
        );
    }
}
