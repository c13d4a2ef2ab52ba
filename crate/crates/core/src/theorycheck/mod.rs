//! The theory condition on bounded hom tables, theory completion through
//! bounded free models, and bounded isomorphism of completed theories.

mod completion;
mod iso;
mod verdict;

pub use completion::{complete_to_theory, complete_to_theory_with, CompletionOptions, TheoryTable, TheoryTableSummary, DEFAULT_DEPTH};
pub use iso::{theories_isomorphic_bounded, IsoOptions, IsoStatus, IsoVerdict};
pub use verdict::{
    hom_family, is_theory, OUT_OF_BOUND, is_theory_with, theory_verdict, TheoryStatus, TheoryVerdict, TheoryWitness, WitnessKind, CENSUS_MAX,
};
