//! Finite presheaves, their homs and colimits, and the arity families.

pub mod arity;
pub mod colimit;
pub mod presheaf;
pub mod shape;

pub use arity::{nerve, ArityFamily, ArityIndexedFamily, BaseMap, DensityDiagram, Junction, LimitShape};
pub use colimit::{coproduct, pushout, wide_pushout, Colimit, Pushout};
pub use presheaf::{find_isomorphism, hom_set, CostBound, FinPresheaf, HomSearch, PresheafMap};
pub use shape::{Shape, ShapeArrow, ShapeCategory};
