use std::collections::BTreeMap;

use serde::Serialize;

use crate::base::{hom_set, nerve, ArityFamily, HomSearch, PresheafMap};
use crate::error::ModelError;
use crate::models::{arity_window, free_model_with, is_nerve, FreeModel, DEFAULT_SLACK};
use crate::pretheory::{Pretheory, Word};
use crate::util::Budget;

use super::verdict::{TheoryStatus, TheoryVerdict};

/// Default depth of the free models behind a completed theory.
pub const DEFAULT_DEPTH: usize = 4;

#[derive(Debug, Clone)]
pub struct CompletionOptions {
    pub bound: usize,
    pub depth: usize,
    pub extra_arities: Vec<usize>,
    pub slack: usize,
}

impl CompletionOptions {
    pub fn new(bound: usize, depth: usize) -> Self {
        CompletionOptions { bound, depth, extra_arities: Vec::new(), slack: DEFAULT_SLACK }
    }

    pub fn with_arities(mut self, arities: &[usize]) -> Self {
        self.extra_arities = arities.to_vec();
        self
    }
}

/// The completed theory truncated at a depth: `hom(a, b)` is the set of maps
/// from `K a` into the bounded free model on `K b`.
#[derive(Debug, Clone)]
pub struct TheoryTable {
    pub family: ArityFamily,
    pub bound: usize,
    pub depth: usize,
    pub arities: Vec<usize>,
    pub free: BTreeMap<usize, FreeModel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryTableSummary {
    pub depth: usize,
    pub exact: bool,
    pub homs: Vec<(usize, usize, usize)>,
}

pub fn complete_to_theory(p: &Pretheory, l: usize, d: usize) -> Result<TheoryTable, ModelError> {
    complete_to_theory_with(p, &CompletionOptions::new(l, d))
}

pub fn complete_to_theory_with(p: &Pretheory, opts: &CompletionOptions) -> Result<TheoryTable, ModelError> {
    let budget = Budget::from_env();
    let arities = arity_window(p, &opts.extra_arities);
    let mut free = BTreeMap::new();
    for &b in &arities {
        let fm = free_model_with(p, &p.family.realise(b), opts.depth, opts.slack, &budget)?;
        free.insert(b, fm);
    }
    Ok(TheoryTable { family: p.family, bound: opts.bound, depth: opts.depth, arities, free })
}

impl TheoryTable {
    pub fn hom(&self, a: usize, b: usize) -> Vec<PresheafMap> {
        hom_set(&self.family.realise(a), &self.free[&b].object)
    }

    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        HomSearch::new(&self.family.realise(a), &self.free[&b].object).count()
    }

    /// Every free model saturated below its exploration cap.
    pub fn is_exact(&self) -> bool {
        self.free.values().all(|f| f.exact)
    }

    /// The unit: a word `a → b` evaluated at the generic element of `K b`.
    pub fn unit(&self, w: &Word) -> Option<PresheafMap> {
        let fm = self.free.get(&w.dst)?;
        fm.eval_word_at(w, &fm.unit)
    }

    /// Kleisli composite of `f: a → b` and `g: b → c`, diagrammatic order.
    pub fn compose(&self, f: &PresheafMap, b: usize, g: &PresheafMap, c: usize) -> Option<PresheafMap> {
        let ext = self.free[&b].extend(g, &self.free[&c]);
        let parts: Option<Vec<Vec<usize>>> =
            f.parts.iter().enumerate().map(|(k, part)| part.iter().map(|&x| ext[k][x]).collect()).collect();
        Some(PresheafMap::new(parts?))
    }

    pub fn identity(&self, a: usize) -> PresheafMap {
        self.free[&a].unit.clone()
    }

    /// Nerve check on each `hom(-, b)`; a theory verdict needs exactness.
    pub fn verdict(&self) -> TheoryVerdict {
        let mut passed = Vec::new();
        let mut failed = false;
        for (&b, fm) in &self.free {
            if is_nerve(self.family, &nerve(self.family, &fm.object, &self.arities)).pass {
                passed.push(b);
            } else {
                failed = true;
            }
        }
        let status = if !failed && self.is_exact() { TheoryStatus::Theory } else { TheoryStatus::UnknownAtBound };
        TheoryVerdict { status, witness: None, bound: self.depth, passed, incomplete: Vec::new() }
    }

    pub fn summary(&self) -> TheoryTableSummary {
        let mut homs = Vec::new();
        for &a in &self.arities {
            for &b in &self.arities {
                homs.push((a, b, self.hom_count(a, b)));
            }
        }
        TheoryTableSummary { depth: self.depth, exact: self.is_exact(), homs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    #[test]
    fn completed_monoid_counts_words() {
        let p = Pretheory::bundled("monoid").unwrap();
        let t = complete_to_theory(&p, 4, 2).unwrap();
        for n in 0..=3usize {
            let expected: usize = (0..=3).map(|k| n.pow(k)).sum();
            assert_eq!(t.hom_count(1, n), expected);
        }
        assert_eq!(t.verdict().passed, vec![0, 1, 2, 3]);
        assert_eq!(t.verdict().status, TheoryStatus::UnknownAtBound);
    }

    #[test]
    fn completed_initial_is_initial() {
        for fam in [ArityFamily::Fin, ArityFamily::Delta0] {
            let p = Pretheory::initial(fam);
            let t = complete_to_theory_with(&p, &CompletionOptions::new(3, 2).with_arities(&[0, 1, 2, 3])).unwrap();
            assert!(t.is_exact());
            for a in 0..=3 {
                for b in 0..=3 {
                    let units: Vec<PresheafMap> = fam.homs(a, b).map(|f| t.unit(&Word::base(f)).unwrap()).collect();
                    let mut sorted = units.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), units.len());
                    assert_eq!(units.len(), t.hom_count(a, b));
                }
            }
            assert_eq!(t.verdict().status, TheoryStatus::Theory);
        }
    }

    #[test]
    fn completed_category_counts_monotone_maps() {
        let p = Pretheory::bundled("category").unwrap();
        let t = complete_to_theory_with(&p, &CompletionOptions::new(4, 3).with_arities(&[3])).unwrap();
        assert!(t.is_exact());
        for m in 0..=3u64 {
            for n in 0..=3u64 {
                assert_eq!(t.hom_count(m as usize, n as usize) as u64, binomial(m + n + 1, m + 1), "{m} {n}");
            }
        }
        assert_eq!(t.verdict().status, TheoryStatus::Theory);
    }

    #[test]
    fn kleisli_composition_is_unital() {
        let p = Pretheory::bundled("monoid").unwrap();
        let t = complete_to_theory(&p, 4, 2).unwrap();
        let m = t.unit(&p.gen_word("m").unwrap()).unwrap();
        assert_eq!(t.compose(&t.identity(1), 1, &m, 2), Some(m.clone()));
        assert_eq!(t.compose(&m, 2, &t.identity(2), 2), Some(m));
    }
}
