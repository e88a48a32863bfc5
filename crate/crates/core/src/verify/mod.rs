//! Exhaustive checks of the theory on every small groupoid of a class.
//!
//! The catalog lives in `checks.tsv`; each row names a universe and a
//! statement, and `checks.rs` holds one function per row.

mod checks;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumerate::{enumerate, ClassFilter, EnumerationSpec, Strategy, FILTER_BOUND, SYNTHESIS_BOUND};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::magma::{check_identity, classify, Groupoid, Law};
use checks::Runner;

/// Deliberate faults for checking that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Replaces `μ` by the kernel of `a ↦ a²`.
    CorruptMu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub bound: usize,
    pub only: Option<String>,
    pub mutation: Option<Mutation>,
}

impl VerifyConfig {
    pub fn new(bound: usize) -> Self {
        VerifyConfig {
            bound,
            only: None,
            mutation: None,
        }
    }

    pub fn only(mut self, id: impl Into<String>) -> Self {
        self.only = Some(id.into());
        self
    }

    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Universe {
    Ag,
    AgStarStar,
    CompletelyInverse,
    CommutativeInverseSemigroups,
    F1,
    Census,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::Ag => "ag",
            Universe::AgStarStar => "ag-star-star",
            Universe::CompletelyInverse => "ci",
            Universe::CommutativeInverseSemigroups => "commutative-inverse-semigroups",
            Universe::F1 => "f1",
            Universe::Census => "census",
        }
    }

    /// Tables the check runs on, smallest first. Census checks get none.
    pub fn instances(self, bound: usize) -> Result<Vec<Groupoid>> {
        let class = |c: ClassFilter, strategy: Strategy, top: usize| -> Result<Vec<Groupoid>> {
            let mut out = Vec::new();
            for n in 1..=bound.min(top) {
                out.extend(enumerate(&EnumerationSpec::new(n, c).with_strategy(strategy))?);
            }
            Ok(out)
        };
        let with_fixtures = |mut tables: Vec<Groupoid>, keep: &dyn Fn(&Groupoid) -> bool| {
            tables.extend(
                fixtures::all()
                    .into_iter()
                    .map(|(_, g)| g)
                    .filter(|g| g.order() <= bound.max(4) && keep(g)),
            );
            tables.sort_by(|a, b| (a.order(), a.table()).cmp(&(b.order(), b.table())));
            tables.dedup_by(|a, b| a.table() == b.table());
            tables
        };
        Ok(match self {
            Universe::Ag => with_fixtures(
                class(ClassFilter::Ag, Strategy::Filter, FILTER_BOUND)?,
                &|g| classify(g).is_ag,
            ),
            Universe::AgStarStar => with_fixtures(
                class(ClassFilter::AgStarStar, Strategy::Filter, FILTER_BOUND)?,
                &|g| classify(g).is_ag_star_star,
            ),
            Universe::CompletelyInverse => with_fixtures(
                class(ClassFilter::CompletelyInverse, Strategy::Synthesis, SYNTHESIS_BOUND)?,
                &|g| classify(g).is_completely_inverse,
            ),
            Universe::CommutativeInverseSemigroups => {
                let semigroup = |g: &Groupoid| {
                    classify(g).is_completely_inverse
                        && check_identity(g, Law::Commutative)
                        && check_identity(g, Law::Associative)
                };
                let ci = class(ClassFilter::CompletelyInverse, Strategy::Synthesis, SYNTHESIS_BOUND)?;
                with_fixtures(ci.into_iter().filter(semigroup).collect(), &semigroup)
            }
            Universe::F1 => vec![fixtures::f1()],
            Universe::Census => Vec::new(),
        })
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Universe::Ag,
            Universe::AgStarStar,
            Universe::CompletelyInverse,
            Universe::CommutativeInverseSemigroups,
            Universe::F1,
            Universe::Census,
        ]
        .into_iter()
        .find(|u| u.name() == s)
        .ok_or_else(|| Error::Unsupported(format!("unknown universe `{s}`")))
    }
}

/// One catalog row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub id: &'static str,
    pub universe: Universe,
    pub statement: &'static str,
}

pub fn catalog() -> Vec<CheckSpec> {
    include_str!("checks.tsv")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut cols = l.splitn(3, '\t');
            let (id, universe, statement) = (
                cols.next().expect("id column"),
                cols.next().expect("universe column"),
                cols.next().expect("statement column"),
            );
            CheckSpec {
                id,
                universe: universe.parse().expect("known universe"),
                statement,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail {
        message: String,
        counterexample: Option<Groupoid>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub universe: Universe,
    pub statement: &'static str,
    pub instances: usize,
    pub status: Status,
}

impl TheoremCheck {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS {} [{}] {} instances", self.id, self.universe, self.instances),
            Status::Fail { message, counterexample } => {
                write!(f, "FAIL {} [{}] {}", self.id, self.universe, message)?;
                if let Some(g) = counterexample {
                    for line in g.to_string().lines() {
                        write!(f, "\n    {line}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub bound: usize,
    pub checks: Vec<TheoremCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(TheoremCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} passed, {} failed (orders 1..={})",
            self.checks.len(),
            self.checks.len() - failed,
            failed,
            self.bound
        )
    }
}

/// State shared by every check of one run.
pub(crate) struct Ctx {
    pub(crate) mutation: Option<Mutation>,
}

pub fn run_all(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.bound == 0 || config.bound > SYNTHESIS_BOUND {
        return Err(Error::OrderTooLarge {
            order: config.bound,
            bound: SYNTHESIS_BOUND,
        });
    }
    let registry = checks::registry();
    let mut selected = catalog();
    if let Some(only) = &config.only {
        selected.retain(|c| c.id == only);
        if selected.is_empty() {
            return Err(Error::UnknownCheck(only.clone()));
        }
    }
    let universes: BTreeSet<Universe> = selected.iter().map(|c| c.universe).collect();
    let tables: Vec<(Universe, Vec<Groupoid>)> = universes
        .into_iter()
        .map(|u| u.instances(config.bound).map(|t| (u, t)))
        .collect::<Result<_>>()?;
    let tables_of = |u: Universe| &tables.iter().find(|(v, _)| *v == u).expect("built above").1;
    let ctx = Ctx {
        mutation: config.mutation,
    };
    let checks = selected
        .par_iter()
        .map(|spec| {
            let runner = registry
                .iter()
                .find(|(id, _)| *id == spec.id)
                .map(|(_, r)| *r)
                .expect("every catalog row is registered");
            run_one(&ctx, spec, runner, tables_of(spec.universe), config.bound)
        })
        .collect();
    Ok(VerifyReport {
        bound: config.bound,
        checks,
    })
}

/// Runs one per-table check on a single groupoid outside any universe.
pub fn check_instance(id: &str, g: &Groupoid) -> Result<Status> {
    let runner = checks::registry()
        .into_iter()
        .find(|(name, _)| *name == id)
        .map(|(_, r)| r)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    match runner {
        Runner::Each(f) => Ok(match f(&Ctx { mutation: None }, g) {
            Ok(()) => Status::Pass,
            Err(message) => Status::Fail {
                message,
                counterexample: Some(g.clone()),
            },
        }),
        Runner::Census(_) => Err(Error::Unsupported(format!("{id} runs on a census, not a table"))),
    }
}

fn run_one(ctx: &Ctx, spec: &CheckSpec, runner: Runner, tables: &[Groupoid], bound: usize) -> TheoremCheck {
    let mut instances = 0;
    let mut status = Status::Pass;
    match runner {
        Runner::Each(f) => {
            for g in tables {
                instances += 1;
                if let Err(message) = f(ctx, g) {
                    status = Status::Fail {
                        message,
                        counterexample: Some(g.clone()),
                    };
                    break;
                }
            }
        }
        Runner::Census(f) => {
            for n in 1..=bound.min(FILTER_BOUND) {
                instances += 1;
                if let Err((message, counterexample)) = f(ctx, n) {
                    status = Status::Fail { message, counterexample };
                    break;
                }
            }
        }
    }
    TheoremCheck {
        id: spec.id,
        universe: spec.universe,
        statement: spec.statement,
        instances,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalog_and_registry_agree() {
        let cat = catalog();
        let reg = checks::registry();
        let ids: HashSet<&str> = cat.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), cat.len(), "duplicate catalog ids");
        let reg_ids: HashSet<&str> = reg.iter().map(|(id, _)| *id).collect();
        assert_eq!(reg_ids.len(), reg.len(), "duplicate registry ids");
        assert_eq!(ids, reg_ids);
        for (id, runner) in reg {
            let spec = cat.iter().find(|c| c.id == id).unwrap();
            let census = matches!(runner, Runner::Census(_));
            assert_eq!(census, spec.universe == Universe::Census, "{id}");
        }
    }

    #[test]
    fn order_one_passes() {
        let r = run_all(&VerifyConfig::new(1)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn order_three_passes() {
        let r = run_all(&VerifyConfig::new(3)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.len() >= 30);
        assert!(r.checks.iter().all(|c| c.instances > 0));
    }

    #[test]
    fn corrupted_mu_is_caught() {
        let config = VerifyConfig::new(4)
            .only("thm-mu-least-semilattice")
            .with_mutation(Mutation::CorruptMu);
        let r = run_all(&config).unwrap();
        let c = &r.checks[0];
        assert!(!c.passed());
        assert!(matches!(&c.status, Status::Fail { counterexample: Some(_), .. }));
        assert!(run_all(&VerifyConfig::new(4).only("thm-mu-least-semilattice")).unwrap().passed());
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(run_all(&VerifyConfig::new(1).only("nope")), Err(Error::UnknownCheck(_))));
        assert!(matches!(run_all(&VerifyConfig::new(9)), Err(Error::OrderTooLarge { .. })));
    }
}
