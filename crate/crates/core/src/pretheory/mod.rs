//! Presentations of pretheories by generators and word equations, and the
//! bounded word problem for the categories they present.

pub mod closure;
pub mod presentation;
pub mod signature;
pub mod word;

pub use closure::{congruence_closure, congruence_closure_with, hom_classes, ClassId, ClosureOptions, HomSummary, HomTable, DEFAULT_BOUND};
pub use presentation::{Pretheory, BUNDLED};
pub use signature::{pretheory_from_signature, Signature};
pub use word::{Generator, Letter, ShowWord, Word};
