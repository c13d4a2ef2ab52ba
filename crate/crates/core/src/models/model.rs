use std::sync::Arc;

use serde::Serialize;

use super::space::ModelSpace;
use crate::error::ModelError;
use crate::pretheory::{Letter, Pretheory, Word};

/// A carrier together with an interpretation `[g]: hom(K b, X) → hom(K a, X)`
/// of every generator `g: a → b`.
#[derive(Debug, Clone)]
pub struct ConcreteModel {
    pub space: Arc<ModelSpace>,
    pub endpoints: Vec<(usize, usize)>,
    pub tables: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelCheck {
    pub ok: bool,
    pub violated: Vec<usize>,
}

impl ConcreteModel {
    pub fn new(space: Arc<ModelSpace>, p: &Pretheory, tables: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        if tables.len() != p.generators.len() {
            return Err(ModelError::Mismatch(format!("{} tables for {} generators", tables.len(), p.generators.len())));
        }
        if space.family != p.family {
            return Err(ModelError::Mismatch("arity family".into()));
        }
        for (g, t) in p.generators.iter().zip(&tables) {
            if !space.has_arity(g.src) || !space.has_arity(g.dst) {
                return Err(ModelError::Mismatch(format!("arity window misses `{}`", g.name)));
            }
            if t.len() != space.size(g.dst) || t.iter().any(|&v| v >= space.size(g.src)) {
                return Err(ModelError::Mismatch(format!("table of `{}` has the wrong shape", g.name)));
            }
        }
        let endpoints = p.generators.iter().map(|g| (g.src, g.dst)).collect();
        Ok(ConcreteModel { space, endpoints, tables })
    }

    fn apply_letter(&self, l: Letter, x: usize) -> usize {
        match l {
            Letter::Gen(g) => self.tables[g][x],
            Letter::Base(f) => self.space.base_table(f)[x],
        }
    }

    /// Image of `x ∈ hom(K dst, X)` under the word's interpretation.
    pub fn eval_at(&self, w: &Word, x: usize) -> usize {
        w.letters.iter().rev().fold(x, |y, &l| self.apply_letter(l, y))
    }

    pub fn covers(&self, w: &Word) -> bool {
        self.space.has_arity(w.src)
            && self.space.has_arity(w.dst)
            && w.letters.iter().all(|l| match l {
                Letter::Gen(g) => *g < self.tables.len(),
                Letter::Base(f) => self.space.has_arity(f.src) && self.space.has_arity(f.dst),
            })
    }
}

/// The function `hom(K dst, X) → hom(K src, X)` of a word, letters applied
/// right to left so that `l1 ; l2` means `[l1] ∘ [l2]`.
pub fn evaluate_word(m: &ConcreteModel, w: &Word) -> Result<Vec<usize>, ModelError> {
    if !m.covers(w) {
        return Err(ModelError::Mismatch("word leaves the model's arity window".into()));
    }
    Ok((0..m.space.size(w.dst)).map(|x| m.eval_at(w, x)).collect())
}

pub fn check_model(p: &Pretheory, m: &ConcreteModel) -> Result<ModelCheck, ModelError> {
    if m.tables.len() != p.generators.len()
        || p.generators.iter().zip(&m.endpoints).any(|(g, &e)| (g.src, g.dst) != e)
    {
        return Err(ModelError::Mismatch("generators differ from the pretheory".into()));
    }
    let mut violated = Vec::new();
    for (k, (l, r)) in p.equations.iter().enumerate() {
        if evaluate_word(m, l)? != evaluate_word(m, r)? {
            violated.push(k);
        }
    }
    Ok(ModelCheck { ok: violated.is_empty(), violated })
}
