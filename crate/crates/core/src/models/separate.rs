use std::ops::ControlFlow;

use super::enumerate::{model_space, visit_models};
use super::model::{evaluate_word, ConcreteModel};
use super::space::carriers;
use crate::error::ModelError;
use crate::pretheory::{Pretheory, Word};
use crate::util::Budget;

/// A model on which the two words evaluate differently, searching carriers
/// with at most `max` elements per component.
pub fn model_separates(p: &Pretheory, w1: &Word, w2: &Word, max: usize) -> Option<ConcreteModel> {
    if w1.src != w2.src || w1.dst != w2.dst {
        return None;
    }
    let extra = [w1.src, w1.dst, w2.src, w2.dst];
    let extra: Vec<usize> = extra.into_iter().chain(letter_arities(w1)).chain(letter_arities(w2)).collect();
    for x in carriers(p.family.shape(), max) {
        let space = model_space(p, &x, &extra);
        let budget = Budget::from_env();
        let mut found = None;
        let _ = visit_models(p, &space, &budget, |m| {
            if evaluate_word(&m, w1).ok() != evaluate_word(&m, w2).ok() {
                found = Some(m);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn letter_arities(w: &Word) -> impl Iterator<Item = usize> + '_ {
    w.letters.iter().flat_map(|l| match l {
        crate::pretheory::Letter::Base(f) => vec![f.src, f.dst],
        crate::pretheory::Letter::Gen(_) => vec![],
    })
}

/// Every model on every carrier up to a size, for signature comparisons.
#[derive(Debug, Clone)]
pub struct ModelCensus {
    pub max: usize,
    pub models: Vec<ConcreteModel>,
    /// Model counts per carrier, in carrier order.
    pub counts: Vec<usize>,
    /// True when no carrier hit the budget.
    pub complete: bool,
}

impl ModelCensus {
    pub fn new(p: &Pretheory, max: usize, extra: &[usize]) -> Self {
        let mut models = Vec::new();
        let mut counts = Vec::new();
        let mut complete = true;
        for x in carriers(p.family.shape(), max) {
            let space = model_space(p, &x, extra);
            let budget = Budget::from_env();
            let before = models.len();
            let r = visit_models(p, &space, &budget, |m| {
                models.push(m);
                ControlFlow::Continue(())
            });
            if let Err(ModelError::BudgetExceeded { .. }) = r {
                complete = false;
            }
            counts.push(models.len() - before);
        }
        ModelCensus { max, models, counts, complete }
    }

    /// Concatenated evaluation tables of a word across the census.
    pub fn signature(&self, w: &Word) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for m in &self.models {
            let t = evaluate_word(m, w).ok()?;
            out.push(usize::MAX);
            out.extend(t);
        }
        Some(out)
    }
}
