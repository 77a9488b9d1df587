//! Finite semigroups with zero, presented by generators and relations, and
//! their commuting graphs.
//!
//! The enumeration kernel certifies that a presented semigroup is finite
//! (every long enough word collapses to zero), materializes the quotient as
//! a Cayley table, and hands it to exact graph solvers: maximum clique,
//! girth, diameter, chromatic number, star-freeness, plus semigroup-side
//! invariants like center, rank, nilpotency and knit degree.
//!
//! ```
//! use comsem::enumerate::{enumerate, EnumerationBudget};
//! use comsem::graph::commuting_graph;
//! use comsem::presentation::Presentation;
//!
//! let p = Presentation::parse(
//!     "gens: a b\nrel: a^2 = 0\nrel: b^2 = 0\nrel: a b a = 0\nrel: b a b = 0\n",
//! ).unwrap();
//! let (s, _) = enumerate(&p, &EnumerationBudget::default()).unwrap();
//! assert_eq!(s.order(), 5);
//! assert_eq!(commuting_graph(&s).order(), 2);
//! ```
//!
//! Everything is deterministic: element order is shortlex on canonical
//! words, graph output orders are canonical, and the parallel feature only
//! changes how work is scheduled, never what is returned.

pub mod construct;
pub mod enumerate;
pub mod error;
pub mod explore;
pub mod graph;
pub mod invariants;
pub mod knit;
mod par;
pub mod presentation;
pub mod report;
pub mod semigroup;
pub mod verify;
pub mod word;

pub use error::{Error, Result};

/// Prefixes distinguishing the two sides of a null union (and of a graph
/// join, so that the commuting graph of a null union equals the join of the
/// commuting graphs by vertex-name equality).
pub(crate) const LEFT_TAG: &str = "L:";
pub(crate) const RIGHT_TAG: &str = "R:";
