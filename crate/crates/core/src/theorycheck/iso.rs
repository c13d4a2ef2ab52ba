use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::ModelError;
use crate::models::{arity_window, free_model_with, FreeModel, ModelCensus, DEFAULT_SLACK};
use crate::pretheory::Pretheory;
use crate::util::Budget;

use super::verdict::CENSUS_MAX;

/// Generator renamings tried before giving up.
const MAX_TRANSLATIONS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct IsoOptions {
    pub depth: usize,
    /// Largest arity whose free models are compared.
    pub max_arity: usize,
    pub census_max: usize,
}

impl IsoOptions {
    pub fn new(depth: usize, max_arity: usize) -> Self {
        IsoOptions { depth, max_arity, census_max: CENSUS_MAX }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoStatus {
    Isomorphic,
    NotIsomorphic,
    UnknownAtBound,
    /// The arity families differ.
    Rejected,
}

impl std::fmt::Display for IsoStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IsoStatus::Isomorphic => "isomorphic",
            IsoStatus::NotIsomorphic => "not-isomorphic",
            IsoStatus::UnknownAtBound => "unknown-at-bound",
            IsoStatus::Rejected => "rejected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub status: IsoStatus,
    /// Generator renaming from one side into the other, when found.
    pub translation: Vec<(String, String)>,
    pub census: (Vec<usize>, Vec<usize>),
    /// Arities whose truncated free models were matched.
    pub checked: Vec<usize>,
    pub depth: usize,
}

fn candidates(p1: &Pretheory, p2: &Pretheory) -> Vec<Vec<usize>> {
    p1.generators
        .iter()
        .map(|g| {
            let mut cs: Vec<usize> =
                (0..p2.generators.len()).filter(|&h| (p2.generators[h].src, p2.generators[h].dst) == (g.src, g.dst)).collect();
            cs.sort_by_key(|&h| (p2.generators[h].name != g.name, h));
            cs
        })
        .collect()
}

fn bijective_at(f1: &FreeModel, f2: &FreeModel, gens: &[usize]) -> bool {
    if f1.object.sizes() != f2.object.sizes() {
        return false;
    }
    let Some(image) = f1.translate(&f2.unit, f2, gens) else { return false };
    image.iter().enumerate().all(|(c, row)| {
        let mut seen = vec![false; f2.object.size(c)];
        row.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })
}

/// Searches a generator renaming of `p1` into `p2` inducing bijections of
/// the truncated free models on every compared arity.
fn search(p1: &Pretheory, p2: &Pretheory, f1: &BTreeMap<usize, FreeModel>, f2: &BTreeMap<usize, FreeModel>) -> Option<Vec<usize>> {
    let cands = candidates(p1, p2);
    if cands.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut choice = vec![0usize; cands.len()];
    for _ in 0..MAX_TRANSLATIONS {
        let gens: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        if f1.iter().all(|(b, m)| bijective_at(m, &f2[b], &gens)) {
            return Some(gens);
        }
        let mut k = 0;
        loop {
            if k == cands.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    None
}

/// Bounded isomorphism check between the completions of two pretheories.
/// Model censuses must agree; a positive answer needs a generator renaming
/// that matches the truncated free models on all compared arities.
pub fn theories_isomorphic_bounded(p1: &Pretheory, p2: &Pretheory, opts: &IsoOptions) -> Result<IsoVerdict, ModelError> {
    let mut verdict = IsoVerdict {
        status: IsoStatus::Rejected,
        translation: Vec::new(),
        census: (Vec::new(), Vec::new()),
        checked: Vec::new(),
        depth: opts.depth,
    };
    if p1.family != p2.family {
        return Ok(verdict);
    }
    let c1 = ModelCensus::new(p1, opts.census_max, &[]);
    let c2 = ModelCensus::new(p2, opts.census_max, &[]);
    verdict.census = (c1.counts.clone(), c2.counts.clone());
    if c1.complete && c2.complete && c1.counts != c2.counts {
        verdict.status = IsoStatus::NotIsomorphic;
        return Ok(verdict);
    }
    let arities: Vec<usize> = arity_window(p1, &[opts.max_arity]).into_iter().filter(|&b| b <= opts.max_arity).collect();
    let budget = Budget::from_env();
    let build = |p: &Pretheory| -> Result<BTreeMap<usize, FreeModel>, ModelError> {
        arities
            .iter()
            .map(|&b| Ok((b, free_model_with(p, &p.family.realise(b), opts.depth, DEFAULT_SLACK, &budget)?)))
            .collect()
    };
    let (f1, f2) = (build(p1)?, build(p2)?);
    let found = search(p1, p2, &f1, &f2)
        .map(|g| (p1, p2, g))
        .or_else(|| search(p2, p1, &f2, &f1).map(|g| (p2, p1, g)));
    verdict.status = IsoStatus::UnknownAtBound;
    if let Some((a, b, gens)) = found {
        verdict.status = IsoStatus::Isomorphic;
        verdict.checked = arities;
        verdict.translation =
            gens.iter().enumerate().map(|(g, &h)| (a.generators[g].name.clone(), b.generators[h].name.clone())).collect();
    }
    Ok(verdict)
}
