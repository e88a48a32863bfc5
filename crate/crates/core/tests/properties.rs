use std::collections::BTreeMap;

use agroupoid::enumerate::{ag_groups, enumerate, is_isomorphic, semilattices, ClassFilter, EnumerationSpec, Strategy as Search};
use agroupoid::lattice::all_congruences;
use agroupoid::magma::ag_group_left_identity;
use agroupoid::verify::{catalog, check_instance, Status, Universe};
use agroupoid::{classify, decompose, CompletelyInverse, EquivRelation, Groupoid, StrongSemilattice};
use proptest::prelude::*;
use proptest::sample::Index;

fn ci_tables() -> Vec<Groupoid> {
    (1..=4)
        .flat_map(|n| {
            enumerate(&EnumerationSpec::new(n, ClassFilter::CompletelyInverse).with_strategy(Search::Synthesis)).unwrap()
        })
        .collect()
}

fn relabel(r: &EquivRelation, perm: &[usize]) -> EquivRelation {
    let n = perm.len();
    let mut labels = vec![0; n];
    for x in 0..n {
        labels[perm[x]] = r.rep(x);
    }
    EquivRelation::from_labels(&labels)
}

fn random_group(pick: Index, n: usize) -> Groupoid {
    let groups: Vec<Vec<usize>> = ag_groups(n).into_iter().collect();
    Groupoid::from_table(n, pick.get(&groups).clone()).unwrap()
}

/// `[Y; G_α; φ]` where `φ_{α,β}` is the identity when `β` lies in an up-closed
/// set `K` (all components there are one group) and otherwise sends
/// everything to the identity of `G_β`.
fn strong_semilattice(y_order: usize, y_pick: Index, k_seed: Index, group_picks: Vec<(usize, Index)>) -> StrongSemilattice {
    let ys = semilattices(y_order);
    let y = Groupoid::from_table(y_order, y_pick.get(&ys).clone()).unwrap();
    let top = (0..y_order).find(|&a| (0..y_order).all(|b| y.op(a, b) == b)).unwrap_or(0);
    let below = |b: usize, a: usize| y.op(a, b) == b;
    let generators: Vec<usize> = (0..y_order).filter(|&a| a != top).collect();
    let k: Vec<bool> = if generators.is_empty() {
        vec![true]
    } else {
        let g0 = *k_seed.get(&generators);
        (0..y_order).map(|a| below(g0, a)).collect()
    };
    let shared = random_group(group_picks[0].1, group_picks[0].0);
    let components: Vec<Groupoid> = (0..y_order)
        .map(|a| {
            let (n, pick) = group_picks[a];
            let g = if k[a] { shared.clone() } else { random_group(pick, n) };
            let names: Vec<String> = g.elements().map(|x| format!("g{a}_{x}")).collect();
            g.with_names(names).unwrap()
        })
        .collect();
    let mut maps = BTreeMap::new();
    for a in 0..y_order {
        for b in 0..y_order {
            if a != b && below(b, a) {
                let phi = if k[b] {
                    components[a].elements().collect()
                } else {
                    let e = ag_group_left_identity(&components[b]).unwrap();
                    vec![e; components[a].order()]
                };
                maps.insert((a, b), phi);
            }
        }
    }
    StrongSemilattice { y, components, maps }
}

fn strong_semilattice_strategy() -> impl Strategy<Value = StrongSemilattice> {
    (1usize..=3)
        .prop_flat_map(|m| {
            (
                Just(m),
                any::<Index>(),
                any::<Index>(),
                proptest::collection::vec((1usize..=3, any::<Index>()), m),
            )
        })
        .prop_map(|(m, y, k, picks)| strong_semilattice(m, y, k, picks))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_everything(pick in any::<Index>(), perm_seed in any::<Index>()) {
        let tables = ci_tables();
        let g = pick.get(&tables);
        let n = g.order();
        let perms: Vec<Vec<usize>> = itertools::Itertools::permutations(0..n, n).collect();
        let perm = perm_seed.get(&perms);
        let h = g.permute(perm);
        prop_assert_eq!(classify(g), classify(&h));
        prop_assert!(is_isomorphic(g, &h));

        let lg = all_congruences(g, 4).unwrap();
        let lh = all_congruences(&h, 4).unwrap();
        prop_assert_eq!(lg.len(), lh.len());
        for r in &lg.congruences {
            prop_assert!(lh.index_of(&relabel(r, perm)).is_some());
        }

        let (sg, sh) = (CompletelyInverse::new(g).unwrap(), CompletelyInverse::new(&h).unwrap());
        let (a, b) = (sg.suite(), sh.suite());
        prop_assert_eq!(relabel(a.mu.relation(), perm), b.mu.relation().clone());
        prop_assert_eq!(relabel(a.sigma.relation(), perm), b.sigma.relation().clone());
        prop_assert_eq!(relabel(a.tau.relation(), perm), b.tau.relation().clone());
        prop_assert_eq!(relabel(a.pi.relation(), perm), b.pi.relation().clone());
    }

    #[test]
    fn composed_strong_semilattices(s in strong_semilattice_strategy()) {
        let g = s.compose().unwrap();
        let report = classify(&g);
        prop_assert!(report.is_completely_inverse);
        prop_assert_eq!(report.is_e_unitary, s.maps_injective());

        let back = decompose(&g).unwrap();
        prop_assert_eq!(back.y.order(), s.y.order());
        prop_assert!(back.compose().unwrap().same_table_by_labels(&g));
        prop_assert_eq!(back.maps_injective(), s.maps_injective());

        if g.order() <= 6 {
            for spec in catalog().iter().filter(|c| c.universe == Universe::CompletelyInverse) {
                let status = check_instance(spec.id, &g).unwrap();
                prop_assert!(status == Status::Pass, "{}: {:?}", spec.id, status);
            }
        }
    }
}
