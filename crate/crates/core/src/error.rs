use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("component count does not match the shape category")]
    ShapeMismatch,
    #[error("action of `{generator}` is not a total function into the declared set")]
    ActionNotTotal { generator: String },
    #[error("colimit of an empty diagram needs an explicit shape")]
    EmptyDiagram,
    #[error("arrow is not a presheaf map between the declared objects")]
    NotAMap,
    #[error("legs do not form a cocone on the diagram")]
    NotACocone,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PretheoryError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("`{0}` is not an arity object of this family")]
    BadArity(usize),
    #[error("words are not parallel: {0} vs {1}")]
    NonParallel(String, String),
    #[error("letters do not compose: {0}")]
    NotComposable(String),
    #[error("unknown bundled presentation `{0}`")]
    UnknownName(String),
    #[error("signature presheaf does not live over the family's shape")]
    SignatureShape,
    #[error("congruence closure exceeded its budget")]
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("carrier/generator mismatch: {0}")]
    Mismatch(String),
    #[error("enumeration budget exceeded after {partial} results")]
    BudgetExceeded { partial: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("unknown monad `{0}`")]
    UnknownName(String),
    #[error("input outside the monad's domain: {0}")]
    Unsupported(String),
    #[error("budget exceeded")]
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Pretheory(#[from] PretheoryError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
