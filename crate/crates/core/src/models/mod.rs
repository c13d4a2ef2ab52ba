//! Concrete models: carriers with generator interpretations, their
//! enumeration, nerve and Segal checks, and bounded free models.

pub mod enumerate;
pub mod free;
pub mod model;
pub mod nerve;
pub mod separate;
pub mod space;

pub use enumerate::{arity_window, count_models, enumerate_models, enumerate_models_with, model_space, visit_models};
pub use model::{check_model, evaluate_word, ConcreteModel, ModelCheck};
pub use space::{carriers, multisets, ModelSpace};
pub use nerve::{category_catalogue, duplicate_cell, is_nerve, limit_tuples, limit_tuples_capped, nerve_diagrams, remove_cell, represented, segal_check, segal_failure, FiniteCategory, NerveFailure, NerveVerdict};
pub use separate::{model_separates, ModelCensus};
pub use free::{free_model_bounded, free_model_with, FreeModel, FreeModelSummary, DEFAULT_SLACK};
