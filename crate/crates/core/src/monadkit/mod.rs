//! Computable monads on finite presheaves, their arity categories, and
//! experiments probing arities and pushout preservation.

mod category;
mod experiments;
mod graph;
mod monad;
mod set;

pub use category::{arity_category, ArityCategory, ArityCategorySummary};
pub use experiments::{
    algebra_structures, catalan_census, coequalizer_experiment, factor_through, hom_census_formulas, nerve_arity_probe,
    pushout_preservation, ArityProbeVerdict, CatalanCensus, Cell, CoequalizerReport, CoequalizerRow, HomCensus, PointedMonad,
    PreservationVerdict, PushoutProbe,
};
pub use graph::{FreeCategory, FreeGroupoid, Identity, Involution, Involutive, Pointing};
pub use monad::{default_names, kleisli_laws_hold, ComputableMonad, MonadObject, Term, DEFAULT_MONAD_DEPTH};
pub use set::{free_monad_from_signature, FreeModelMonad, FreeMonoid, TermMonad};

use crate::base::Shape;
use crate::error::MonadError;

/// Names accepted by [`builtin`].
pub const BUILTIN_MONADS: &[&str] = &[
    "identity",
    "identity-set",
    "free-category",
    "free-groupoid",
    "pointing",
    "involution",
    "involutive",
    "free-monoid",
    "binary-terms",
];

pub fn builtin(name: &str) -> Result<Box<dyn ComputableMonad>, MonadError> {
    Ok(match name {
        "identity" => Box::new(Identity(Shape::Graph)),
        "identity-set" => Box::new(Identity(Shape::Terminal)),
        "free-category" => Box::new(FreeCategory::default()),
        "free-groupoid" => Box::new(FreeGroupoid::default()),
        "pointing" | "P" => Box::new(Pointing),
        "involution" | "Q" => Box::new(Involution),
        "involutive" => Box::new(Involutive),
        "free-monoid" => Box::new(FreeMonoid::default()),
        "binary-terms" | "catalan" => Box::new(TermMonad::binary(DEFAULT_MONAD_DEPTH)),
        _ => return Err(MonadError::UnknownName(name.into())),
    })
}

#[cfg(test)]
mod tests;
