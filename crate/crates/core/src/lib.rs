//! Rewriting and coherence for presentations of monoids and categories.
//!
//! A [`Polygraph`] holds generators, rules and optional 3-cells. From a
//! convergent presentation the crate decides the word problem, completes
//! non-confluent systems, builds a coherent presentation with one 3-cell per
//! critical branching, fills any 2-sphere with those 3-cells, and computes the
//! free resolution of the trivial module up to length 3.
//!
//! The runnable programs in `examples/` walk through each capability.

pub mod branchings;
pub mod cli;
pub mod coherence;
pub mod completion;
pub mod homology;
pub mod presentation;
pub mod rewrite;

pub use branchings::{ConvergentPolygraph, TerminationEvidence};
pub use presentation::{Polygraph, RuleRef, Word};
pub use rewrite::{Limits, Strategy, TwoCellPath, ZigZag};
