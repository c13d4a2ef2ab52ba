use std::collections::HashMap;
use std::sync::Arc;

use crate::base::{FinPresheaf, PresheafMap, Shape};
use crate::error::MonadError;
use crate::models::FreeModel;

/// Default truncation depth for monads with infinite values.
pub const DEFAULT_MONAD_DEPTH: usize = 6;

/// An element of `T(X)`, shared across the bundled monads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// An element of `X` in the same component.
    Var(usize),
    /// A path from a vertex along edges of `X`.
    Path(usize, Vec<usize>),
    /// A reduced zigzag from a vertex: edges with an inversion flag.
    Zigzag(usize, Vec<(usize, bool)>),
    /// A vertex `u(e)` adjoined for an edge.
    Point(usize),
    /// A formally inverted edge `i(e)`, and its fresh endpoints.
    Inv(usize),
    InvSrc(usize),
    InvTgt(usize),
    /// An edge reversed in place.
    Rev(usize),
    /// A word in the carrier.
    List(Vec<usize>),
    /// An operation applied to arguments.
    Op(usize, Vec<Term>),
    /// An element of a free model, by index.
    Free(usize),
}

/// `T(X)` for a finite `X`, with its unit and the terms naming its elements.
#[derive(Debug, Clone)]
pub struct MonadObject {
    pub carrier: FinPresheaf,
    pub object: FinPresheaf,
    pub unit: PresheafMap,
    /// False when the value was cut off at the depth bound.
    pub exact: bool,
    pub terms: Vec<Vec<Term>>,
    pub labels: Vec<Vec<String>>,
    index: Vec<HashMap<Term, usize>>,
    pub(crate) free: Option<Arc<FreeModel>>,
}

impl MonadObject {
    /// Builds the index; `unit_term(c, x)` names the unit's image of `x`.
    pub fn new(
        carrier: FinPresheaf,
        object: FinPresheaf,
        terms: Vec<Vec<Term>>,
        labels: Vec<Vec<String>>,
        exact: bool,
        unit_term: impl Fn(usize, usize) -> Term,
    ) -> Self {
        let index: Vec<HashMap<Term, usize>> =
            terms.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
        let unit = PresheafMap::new(
            (0..carrier.num_components()).map(|c| (0..carrier.size(c)).map(|x| index[c][&unit_term(c, x)]).collect()).collect(),
        );
        MonadObject { carrier, object, unit, exact, terms, labels, index, free: None }
    }

    pub fn lookup(&self, c: usize, t: &Term) -> Option<usize> {
        self.index[c].get(t).copied()
    }

    /// Elements of `T(X)` that are not in the image of the unit.
    pub fn fresh(&self, c: usize) -> Vec<usize> {
        (0..self.object.size(c)).filter(|&i| !matches!(self.terms[c][i], Term::Var(_))).collect()
    }
}

/// Names `v0, v1, …` and `e0, e1, …` (or `x0, …` for sets).
pub fn default_names(x: &FinPresheaf) -> Vec<Vec<String>> {
    match x.shape() {
        Shape::Terminal => vec![(0..x.size(0)).map(|i| format!("x{i}")).collect()],
        Shape::Graph => vec![
            (0..x.size(0)).map(|i| format!("v{i}")).collect(),
            (0..x.size(1)).map(|i| format!("e{i}")).collect(),
        ],
    }
}

/// A monad on finite presheaves, computed on finite inputs and truncated
/// where its values are infinite.
pub trait ComputableMonad {
    fn name(&self) -> String;

    fn shape(&self) -> Shape;

    /// `T(X)`, labelling carrier elements with `names`.
    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError>;

    /// Kleisli extension of `f: X → T(Y)` to `T(X) → T(Y)`. `None` when an
    /// image falls outside the truncation of `T(Y)`.
    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap>;

    fn object(&self, x: &FinPresheaf) -> Result<MonadObject, MonadError> {
        self.build(x, &default_names(x))
    }

    /// Functorial action `T(g): T(X) → T(Y)` for `g: X → Y`.
    fn fmap(&self, tx: &MonadObject, ty: &MonadObject, g: &PresheafMap) -> Option<PresheafMap> {
        self.extend(tx, ty, &g.then(&ty.unit))
    }

    /// Multiplication `T(T(X)) → T(X)`, given `T(X)` and `T(T(X))`.
    fn multiply(&self, tx: &MonadObject, ttx: &MonadObject) -> Option<PresheafMap> {
        self.extend(ttx, tx, &PresheafMap::identity(&tx.object))
    }
}

pub(crate) fn check_shape(m: &dyn ComputableMonad, x: &FinPresheaf) -> Result<(), MonadError> {
    if x.shape() != m.shape() {
        return Err(MonadError::Unsupported(format!("{} expects {:?} presheaves", m.name(), m.shape())));
    }
    Ok(())
}

/// Evaluates both monad laws on a single pair of Kleisli maps.
pub fn kleisli_laws_hold(
    m: &dyn ComputableMonad,
    tx: &MonadObject,
    ty: &MonadObject,
    tz: &MonadObject,
    f: &PresheafMap,
    g: &PresheafMap,
) -> bool {
    // Unit: the extension of the unit is the identity, and extension
    // restricts along the unit.
    let Some(eta) = m.extend(tx, tx, &tx.unit) else { return false };
    if eta != PresheafMap::identity(&tx.object) {
        return false;
    }
    let Some(fs) = m.extend(tx, ty, f) else { return true };
    if tx.unit.then(&fs) != *f {
        return false;
    }
    let Some(gs) = m.extend(ty, tz, g) else { return true };
    match m.extend(tx, tz, &f.then(&gs)) {
        Some(fgs) => fgs == fs.then(&gs),
        None => true,
    }
}
