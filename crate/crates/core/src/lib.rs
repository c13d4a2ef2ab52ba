//! Finite presentations of algebraic theories over arity families, their
//! concrete models, and computable monads on finite presheaves.

pub mod base;
pub mod error;
pub mod models;
pub mod monadkit;
pub mod pretheory;
pub mod theorycheck;
pub mod util;

pub use error::Error;
