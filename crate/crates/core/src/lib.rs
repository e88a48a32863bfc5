//! Congruences on finite completely inverse AG**-groupoids.
//!
//! A groupoid is a finite Cayley table ([`Groupoid`]). The crate classifies
//! tables against the AG-groupoid laws, computes congruences (closed forms
//! and brute force), decomposes completely inverse AG**-groupoids into strong
//! semilattices of AG-groups, enumerates small groupoids, and checks the
//! theory against all of them.

pub mod canonical;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod magma;
pub mod relation;
pub mod structure;
pub mod verify;

pub use canonical::CanonicalSuite;
pub use congruence::{is_congruence, tau_q, Congruence, CongruencePair, Quotient};
pub use error::{Error, Result};
pub use magma::{classify, parse_mag, ClassificationReport, CompletelyInverse, ElementSet, Groupoid, Law};
pub use relation::EquivRelation;
pub use structure::{compose, decompose, derived_groupoid, NaturalOrder, NormalViolation, StrongSemilattice};
pub use verify::{run_all, Mutation, TheoremCheck, VerifyConfig, VerifyReport};
