//! The full congruence lattice of a small groupoid, by exhaustive search
//! over set partitions.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::congruence::{is_congruence, Congruence};
use crate::error::{Error, Result};
use crate::magma::{classify, idempotents, is_e_unitary_direct, CompletelyInverse, ElementSet, Groupoid};
use crate::relation::EquivRelation;

pub const DEFAULT_LATTICE_BOUND: usize = 6;

/// Every restricted growth string of length `n`, in lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for v in 0..=limit {
            prefix.push(v);
            extend(prefix, max.max(v), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Markers {
    pub idempotent_separating: bool,
    pub idempotent_pure: bool,
    pub semilattice: bool,
    pub ag_group: bool,
    pub e_unitary: bool,
    pub fundamental: bool,
    pub e_disjunctive: bool,
}

impl Markers {
    pub fn fields(&self) -> [(&'static str, bool); 7] {
        [
            ("idempotent-separating", self.idempotent_separating),
            ("idempotent-pure", self.idempotent_pure),
            ("semilattice", self.semilattice),
            ("ag-group", self.ag_group),
            ("e-unitary", self.e_unitary),
            ("fundamental", self.fundamental),
            ("e-disjunctive", self.e_disjunctive),
        ]
    }
}

/// `C(A)` with its order, operation tables and per-congruence markers.
///
/// Congruences are listed by decreasing number of blocks, then by growth
/// string, so index 0 is `1_A` and the last index is `A × A`.
#[derive(Clone, Debug)]
pub struct LatticeReport<'g> {
    pub groupoid: &'g Groupoid,
    pub congruences: Vec<EquivRelation>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub markers: Vec<Markers>,
    index: HashMap<EquivRelation, usize>,
}

pub fn all_congruences(g: &Groupoid, bound: usize) -> Result<LatticeReport<'_>> {
    if g.order() > bound {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            bound,
        });
    }
    let mut congruences: Vec<EquivRelation> = set_partitions(g.order())
        .into_par_iter()
        .map(|rgs| EquivRelation::from_labels(&rgs))
        .filter(|r| is_congruence(g, r))
        .collect();
    congruences.sort_by_cached_key(|r| (std::cmp::Reverse(r.num_blocks()), r.growth_string()));
    Ok(LatticeReport::from_congruences(g, congruences))
}

impl<'g> LatticeReport<'g> {
    fn from_congruences(g: &'g Groupoid, congruences: Vec<EquivRelation>) -> Self {
        let index: HashMap<EquivRelation, usize> = congruences
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let k = congruences.len();
        let table = |op: &(dyn Fn(&EquivRelation, &EquivRelation) -> EquivRelation + Sync)| -> Vec<Vec<usize>> {
            (0..k)
                .into_par_iter()
                .map(|i| {
                    (0..k)
                        .map(|j| index[&op(&congruences[i], &congruences[j])])
                        .collect()
                })
                .collect()
        };
        let meet = table(&|a, b| a.meet(b));
        let join = table(&|a, b| a.join(b));
        let leq = (0..k)
            .map(|i| (0..k).map(|j| meet[i][j] == i).collect())
            .collect();
        let mut report = LatticeReport {
            groupoid: g,
            congruences,
            leq,
            meet,
            join,
            markers: Vec::new(),
            index,
        };
        report.markers = report.compute_markers();
        report
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn index_of(&self, r: &EquivRelation) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn congruence(&self, i: usize) -> Congruence<'g> {
        Congruence::new(self.groupoid, self.congruences[i].clone()).expect("listed as a congruence")
    }

    /// Indices `x` with `lo ≤ x ≤ hi`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.leq[lo][x] && self.leq[x][hi])
            .collect()
    }

    /// Idempotent classes of `A/ρ`, as element sets of `A`: elements `a`
    /// with `a ρ a²`.
    fn quotient_idempotents(&self, r: &EquivRelation) -> ElementSet {
        let g = self.groupoid;
        g.elements().filter(|&a| r.related(a, g.op(a, a))).collect()
    }

    /// `υ/ρ` separates the idempotents of `A/ρ`, for `ρ ⊆ υ`.
    fn separates_over(&self, upsilon: &EquivRelation, rho: &EquivRelation, ide: ElementSet) -> bool {
        ide.iter()
            .all(|x| ide.iter().all(|y| !upsilon.related(x, y) || rho.related(x, y)))
    }

    /// `υ/ρ` is idempotent pure on `A/ρ`, for `ρ ⊆ υ`.
    fn pure_over(&self, upsilon: &EquivRelation, ide: ElementSet) -> bool {
        self.groupoid
            .elements()
            .all(|a| ide.contains(a) || ide.iter().all(|x| !upsilon.related(a, x)))
    }

    fn compute_markers(&self) -> Vec<Markers> {
        let e = idempotents(self.groupoid);
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let r = &self.congruences[i];
                let q = self.congruence(i).quotient().groupoid;
                let class = classify(&q);
                let ide = self.quotient_idempotents(r);
                let above = || (0..self.len()).filter(move |&j| j != i && self.leq[i][j]);
                Markers {
                    idempotent_separating: e
                        .iter()
                        .all(|x| e.iter().all(|y| x == y || !r.related(x, y))),
                    idempotent_pure: self
                        .groupoid
                        .elements()
                        .all(|a| e.contains(a) || e.iter().all(|x| !r.related(a, x))),
                    semilattice: class.is_ag_semilattice,
                    ag_group: class.is_ag_group,
                    e_unitary: is_e_unitary_direct(&q),
                    fundamental: above()
                        .all(|j| !self.separates_over(&self.congruences[j], r, ide)),
                    e_disjunctive: above().all(|j| !self.pure_over(&self.congruences[j], ide)),
                }
            })
            .collect()
    }

    pub fn with_marker(&self, pick: impl Fn(&Markers) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pick(&self.markers[i])).collect()
    }

    fn check_closed(&self, subset: &[usize]) -> Result<()> {
        for &x in subset {
            for &y in subset {
                for (what, z) in [("meet", self.meet[x][y]), ("join", self.join[x][y])] {
                    if !subset.contains(&z) {
                        return Err(Error::NotASublattice(format!(
                            "{what} of congruences {x} and {y} is {z}, outside the subset"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A pentagon `[a∧b, a, c, b, a∨b]` with `a < c`, `a∨b = c∨b` and
    /// `a∧b = c∧b`, if the sublattice on `subset` has one.
    pub fn pentagon(&self, subset: &[usize]) -> Result<Option<[usize; 5]>> {
        self.check_closed(subset)?;
        for &a in subset {
            for &c in subset {
                if a == c || !self.leq[a][c] {
                    continue;
                }
                for &b in subset {
                    if self.join[a][b] == self.join[c][b] && self.meet[a][b] == self.meet[c][b] {
                        return Ok(Some([self.meet[a][b], a, c, b, self.join[a][b]]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_modular_sublattice(&self, subset: &[usize]) -> Result<bool> {
        Ok(self.pentagon(subset)?.is_none())
    }

    /// `x ≤ z ⟹ x ∨ (y ∧ z) = (x ∨ y) ∧ z` over all triples.
    pub fn satisfies_modular_law(&self, subset: &[usize]) -> Result<bool> {
        self.check_closed(subset)?;
        Ok(subset.iter().all(|&x| {
            subset.iter().all(|&y| {
                subset.iter().all(|&z| {
                    !self.leq[x][z] || self.join[x][self.meet[y][z]] == self.meet[self.join[x][y]][z]
                })
            })
        }))
    }

    /// Relational products commute for every pair in `subset`.
    pub fn commuting_check(&self, subset: &[usize]) -> bool {
        subset.iter().all(|&x| {
            subset.iter().all(|&y| {
                let (rx, ry) = (&self.congruences[x], &self.congruences[y]);
                rx.compose(ry) == ry.compose(rx)
            })
        })
    }

    /// Congruences with the same trace as `rho`.
    pub fn theta_class(&self, rho: usize) -> Vec<usize> {
        let t = self.congruence(rho).trace();
        (0..self.len())
            .filter(|&i| self.congruence(i).trace() == t)
            .collect()
    }

    /// Congruences with the same kernel as `rho`.
    pub fn kappa_class(&self, rho: usize) -> Result<Vec<usize>> {
        let k = self.congruence(rho).kernel()?;
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.congruence(i).kernel()? == k {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Fixed points of `ρ ↦ μ(ρ)`.
    pub fn fundamental_congruences(&self, ci: &CompletelyInverse<'_>) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let c = self.congruence(i);
                ci.mu_of(&c).relation() == c.relation()
            })
            .collect()
    }

    /// `U(A)`: congruences with a closed kernel, grouped by kernel.
    pub fn e_unitary_congruences(&self, ci: &CompletelyInverse<'_>) -> EUnitaryFamilies {
        let mut members = Vec::new();
        let mut families: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        for i in 0..self.len() {
            let k = self.congruence(i).kernel().expect("kernel readings agree");
            if ci.closure_omega(k).ok() != Some(k) {
                continue;
            }
            members.push(i);
            match families.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, list)) => list.push(i),
                None => families.push((k, vec![i])),
            }
        }
        let least = members
            .iter()
            .copied()
            .find(|&m| members.iter().all(|&x| self.leq[m][x]));
        EUnitaryFamilies {
            members,
            families,
            least,
        }
    }

    pub fn trace_homomorphism(&self, ci: &CompletelyInverse<'_>) -> Result<TraceHomomorphism> {
        let g = self.groupoid;
        let (y, e_list) = g.subgroupoid(ci.idempotents())?;
        let target = all_congruences(&y, y.order())?;
        let image: Vec<usize> = (0..self.len())
            .map(|i| {
                target
                    .index_of(&self.congruence(i).trace())
                    .expect("the trace is a congruence on E")
            })
            .collect();
        let preserves_meet = (0..self.len()).all(|i| {
            (0..self.len()).all(|j| image[self.meet[i][j]] == target.meet[image[i]][image[j]])
        });
        let preserves_join = (0..self.len()).all(|i| {
            (0..self.len()).all(|j| image[self.join[i][j]] == target.join[image[i]][image[j]])
        });
        let pos = |x: usize| e_list.binary_search(&x).expect("a·a⁻¹ is idempotent");
        let mut witnesses = Vec::with_capacity(target.len());
        for tau in &target.congruences {
            let rel = EquivRelation::from_labels(
                &g.elements().map(|a| tau.rep(pos(ci.unit(a)))).collect::<Vec<_>>(),
            );
            witnesses.push(self.index_of(&rel).filter(|&w| image[w] == target.index_of(tau).unwrap()));
        }
        Ok(TraceHomomorphism {
            target: target.congruences,
            image,
            preserves_meet,
            preserves_join,
            witnesses,
        })
    }

    /// Structured text: congruences, meet and join tables, markers.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LatticeReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.groupoid.names();
        writeln!(f, "congruences {}", self.len())?;
        for (i, r) in self.congruences.iter().enumerate() {
            writeln!(f, "{i}: {}", r.display(names))?;
        }
        for (title, table) in [("meet", &self.meet), ("join", &self.join)] {
            writeln!(f, "{title}")?;
            for row in table {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
        }
        writeln!(f, "markers")?;
        for (i, m) in self.markers.iter().enumerate() {
            let set: Vec<&str> = m.fields().iter().filter(|(_, v)| *v).map(|(n, _)| *n).collect();
            if set.is_empty() {
                writeln!(f, "{i}: -")?;
            } else {
                writeln!(f, "{i}: {}", set.join(" "))?;
            }
        }
        Ok(())
    }
}

/// `U(A)` and its kernel families `U_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EUnitaryFamilies {
    pub members: Vec<usize>,
    pub families: Vec<(ElementSet, Vec<usize>)>,
    pub least: Option<usize>,
}

/// `Θ: ρ ↦ tr(ρ)` from `C(A)` to `C(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceHomomorphism {
    /// `C(E)` in report order.
    pub target: Vec<EquivRelation>,
    /// `image[i]` indexes `target`.
    pub image: Vec<usize>,
    pub preserves_meet: bool,
    pub preserves_join: bool,
    /// For each `τ ∈ C(E)`, the congruence `(aa⁻¹) τ (bb⁻¹)` if it is in `C(A)`
    /// and has trace `τ`.
    pub witnesses: Vec<Option<usize>>,
}

impl TraceHomomorphism {
    pub fn is_surjective(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }

    pub fn is_lattice_homomorphism(&self) -> bool {
        self.preserves_meet && self.preserves_join
    }
}
