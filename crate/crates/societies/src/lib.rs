//! Exact and asymptotic counting of hierarchies, hierarchical orderings
//! ("societies"), and their unlabeled shapes.
//!
//! A *hierarchy* on a label set is an ordered partition of the labels into
//! nonempty blocks: the first block is rank 1 (the bottom), the next rank 2,
//! and so on. A *hierarchical ordering* is an unordered collection of
//! hierarchies on disjoint label sets covering {1..n}. Erasing labels turns a
//! hierarchy into a composition of its size and a hierarchical ordering into a
//! multiset of compositions.
//!
//! The crate computes these families four independent ways and cross-checks
//! them against each other:
//!
//! * [`sequences`]: big-integer recurrences and memoized tables,
//! * [`series`]: exact rational power series (e.g.f. / o.g.f. identities),
//! * [`explicit`]: a closed partition-indexed sum, term by term,
//! * [`enumerate`]: exhaustive structure enumeration and uniform sampling.
//!
//! [`asymptotics`] provides log-space growth estimates with exact-ratio
//! diagnostics, [`rank`] the distribution of an element's rank, and
//! [`verify`] a named cross-module check suite.

pub mod asymptotics;
pub mod enumerate;
pub mod error;
pub mod explicit;
pub mod rank;
pub mod sequences;
pub mod series;
pub mod verify;

pub use asymptotics::{AsymptoticEstimate, SaddlePoint};
pub use enumerate::{Composition, HierarchicalOrdering, Hierarchy, UnlabeledOrdering};
pub use error::{Error, Result};
pub use explicit::PartitionMultiplicity;
pub use rank::RankDistribution;
pub use sequences::{Count, SequenceKind, SequenceTable};
pub use series::{Flavor, Rational, Series};
