use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::base::{ArityIndexedFamily, DensityDiagram};
use crate::models::{limit_tuples_capped, nerve_diagrams, represented, ModelCensus};
use crate::pretheory::{congruence_closure_with, ClosureOptions, HomTable, Pretheory, ShowWord, Word};

/// Carrier size used for model signatures when certifying witnesses.
pub const CENSUS_MAX: usize = 3;

/// Limits with more tuples than this are left unchecked.
pub const LIMIT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryStatus {
    Theory,
    NotTheory,
    UnknownAtBound,
}

impl std::fmt::Display for TheoryStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoryStatus::Theory => "theory",
            TheoryStatus::NotTheory => "not-theory",
            TheoryStatus::UnknownAtBound => "unknown-at-bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    NotSurjective,
    NotInjective,
}

/// A failing limit comparison for the family `hom(-, target)` at `apex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryWitness {
    pub target: usize,
    pub apex: usize,
    pub kind: WitnessKind,
    /// Limit tuple components, or the two colliding elements.
    pub components: Vec<String>,
    /// Every bounded candidate is separated from the tuple by a model.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryVerdict {
    pub status: TheoryStatus,
    pub witness: Option<TheoryWitness>,
    pub bound: usize,
    /// Targets whose family passed the nerve check.
    pub passed: Vec<usize>,
    /// Hom tables without a completeness certificate.
    pub incomplete: Vec<(usize, usize)>,
}

/// Marks an action whose composite leaves the bound.
pub const OUT_OF_BOUND: usize = usize::MAX;

/// The family `hom(-, t)` over the table's arities, with base maps acting by
/// precomposition. Composites beyond the bound act as [`OUT_OF_BOUND`].
pub fn hom_family(table: &HomTable, t: usize) -> ArityIndexedFamily {
    let fam = table.family;
    let pos: HashMap<usize, HashMap<usize, usize>> = table
        .arities
        .iter()
        .map(|&n| (n, table.classes(n, t).iter().enumerate().map(|(i, &c)| (c, i)).collect()))
        .collect();
    let mut actions = std::collections::BTreeMap::new();
    for &n in &table.arities {
        for &m in &table.arities {
            let tabs = fam
                .homs(n, m)
                .map(|f| {
                    table
                        .classes(m, t)
                        .iter()
                        .map(|&x| {
                            Word::base(f)
                                .then(&table.rep(x))
                                .and_then(|w| table.class_of(&w))
                                .map_or(OUT_OF_BOUND, |c| pos[&n][&c])
                        })
                        .collect()
                })
                .collect();
            actions.insert((n, m), tabs);
        }
    }
    ArityIndexedFamily {
        family: fam,
        arities: table.arities.clone(),
        sets: table.arities.iter().map(|&n| (n, table.classes(n, t).len())).collect(),
        actions,
    }
}

struct Signatures<'a> {
    p: &'a Pretheory,
    extra: Vec<usize>,
    census: Option<ModelCensus>,
    ids: HashMap<Vec<usize>, usize>,
    by_word: HashMap<Word, usize>,
}

impl<'a> Signatures<'a> {
    fn id(&mut self, w: &Word) -> usize {
        let w = w.normalize(self.p.family);
        if let Some(&i) = self.by_word.get(&w) {
            return i;
        }
        let census = self.census.get_or_insert_with(|| ModelCensus::new(self.p, CENSUS_MAX, &self.extra));
        let sig = census.signature(&w).unwrap_or_default();
        let n = self.ids.len();
        let i = *self.ids.entry(sig).or_insert(n);
        self.by_word.insert(w, i);
        i
    }
}

fn show(p: &Pretheory, w: &Word) -> String {
    ShowWord { family: p.family, generators: &p.generators, word: w }.to_string()
}

/// A limit tuple no bounded candidate matches on the census.
struct Candidate {
    size: usize,
    target: usize,
    diagram: usize,
    words: Vec<Word>,
}

/// Checks one diagram. Returns the first uncertified failure and the
/// tuples certified at this bound.
fn check(
    p: &Pretheory,
    table: &HomTable,
    t: usize,
    f: &ArityIndexedFamily,
    (di, d): (usize, &DensityDiagram),
    sigs: &mut Signatures,
) -> Option<(Option<TheoryWitness>, Vec<Candidate>)> {
    let tuples = limit_tuples_capped(f, d, LIMIT_CAP)?;
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut hit = vec![false; tuples.len()];
    let mut failure = None;
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for x in 0..f.size(d.apex) {
        let image: Vec<usize> = d.cocone.iter().map(|&c| f.act(c, x)).collect();
        let Some(&k) = index.get(&image) else { continue };
        if let Some(&y) = seen.get(&k) {
            if failure.is_none() {
                let cls = table.classes(d.apex, t);
                failure = Some(TheoryWitness {
                    target: t,
                    apex: d.apex,
                    kind: WitnessKind::NotInjective,
                    components: vec![show(p, &table.rep(cls[y])), show(p, &table.rep(cls[x]))],
                    certified: false,
                });
            }
        }
        seen.insert(k, x);
        hit[k] = true;
    }
    let unhit: Vec<usize> = (0..tuples.len()).filter(|&k| !hit[k]).collect();
    if unhit.is_empty() {
        return Some((failure, Vec::new()));
    }
    let class = |node: usize, x: usize| table.classes(d.nodes[node], t)[x];
    let reached = reached_keys(table, t, d, sigs);
    let mut certified = Vec::new();
    for k in unhit {
        let words: Vec<Word> = tuples[k].iter().enumerate().map(|(i, &x)| table.rep(class(i, x))).collect();
        let key: Vec<usize> = words.iter().map(|w| sigs.id(w)).collect();
        if reached.contains(&key) {
            if failure.is_none() {
                failure = Some(TheoryWitness {
                    target: t,
                    apex: d.apex,
                    kind: WitnessKind::NotSurjective,
                    components: words.iter().map(|w| show(p, w)).collect(),
                    certified: false,
                });
            }
        } else {
            certified.push(Candidate { size: words.iter().map(|w| w.len()).sum(), target: t, diagram: di, words });
        }
    }
    Some((failure, certified))
}

/// Census signature tuples of the legs of every class `apex → t`.
fn reached_keys(table: &HomTable, t: usize, d: &DensityDiagram, sigs: &mut Signatures) -> HashSet<Vec<usize>> {
    let mut reached = HashSet::new();
    for &u in table.classes(d.apex, t) {
        let rep = table.rep(u);
        let key = d.cocone.iter().map(|&c| sigs.id(&Word::base(c).then(&rep).expect("cocone leg ends at apex"))).collect();
        reached.insert(key);
    }
    reached
}

/// Decides the theory condition on bounded hom tables. A not-theory verdict
/// carries a limit tuple that no candidate matches on any model of the
/// census, both at the bound and at the bound plus two.
pub fn is_theory(p: &Pretheory, l: usize) -> TheoryVerdict {
    is_theory_with(p, &ClosureOptions::new(l))
}

pub fn is_theory_with(p: &Pretheory, opts: &ClosureOptions) -> TheoryVerdict {
    let table = congruence_closure_with(p, &opts.clone().verify(true));
    theory_verdict(p, &table)
}

pub fn theory_verdict(p: &Pretheory, table: &HomTable) -> TheoryVerdict {
    let mut sigs = Signatures { p, extra: table.arities.clone(), census: None, ids: HashMap::new(), by_word: HashMap::new() };
    let mut passed = Vec::new();
    let mut uncertified: Option<TheoryWitness> = None;
    let mut candidates = Vec::new();
    let mut unbuilt = false;
    let mut unchecked = false;
    let top = table.arities.iter().copied().max().unwrap_or(0);
    let diagrams: Vec<DensityDiagram> = nerve_diagrams(p.family, top).into_values().flatten().collect();
    for &t in &table.arities {
        let f = hom_family(table, t);
        unbuilt |= f.actions.values().flatten().flatten().any(|&x| x == OUT_OF_BOUND);
        let mut ok = true;
        for (di, d) in diagrams.iter().enumerate().filter(|(_, d)| represented(&f, d)) {
            let Some((failure, certified)) = check(p, table, t, &f, (di, d), &mut sigs) else {
                unchecked = true;
                ok = false;
                continue;
            };
            ok &= failure.is_none() && certified.is_empty();
            if let Some(w) = failure {
                uncertified.get_or_insert(w);
            }
            candidates.extend(certified);
        }
        if ok {
            passed.push(t);
        }
    }
    let incomplete = incomplete(table);
    if !candidates.is_empty() {
        candidates.sort_by(|a, b| (a.size, a.target, diagrams[a.diagram].apex, &a.words).cmp(&(b.size, b.target, diagrams[b.diagram].apex, &b.words)));
        let larger = congruence_closure_with(p, &ClosureOptions::new(table.bound + 2).with_arities(&table.arities).verify(false));
        let mut cache: HashMap<(usize, usize), HashSet<Vec<usize>>> = HashMap::new();
        for c in &candidates {
            let d = &diagrams[c.diagram];
            let reached = cache.entry((c.target, c.diagram)).or_insert_with(|| reached_keys(&larger, c.target, d, &mut sigs));
            let key: Vec<usize> = c.words.iter().map(|w| sigs.id(w)).collect();
            if !reached.contains(&key) {
                let witness = TheoryWitness {
                    target: c.target,
                    apex: d.apex,
                    kind: WitnessKind::NotSurjective,
                    components: c.words.iter().map(|w| show(p, w)).collect(),
                    certified: true,
                };
                return TheoryVerdict { status: TheoryStatus::NotTheory, witness: Some(witness), bound: table.bound, passed, incomplete };
            }
        }
        if uncertified.is_none() {
            let c = &candidates[0];
            uncertified = Some(TheoryWitness {
                target: c.target,
                apex: diagrams[c.diagram].apex,
                kind: WitnessKind::NotSurjective,
                components: c.words.iter().map(|w| show(p, w)).collect(),
                certified: false,
            });
        }
    }
    let status = if uncertified.is_none() && !unbuilt && !unchecked && incomplete.is_empty() && !table.exhausted {
        TheoryStatus::Theory
    } else {
        TheoryStatus::UnknownAtBound
    };
    TheoryVerdict { status, witness: uncertified, bound: table.bound, passed, incomplete }
}

fn incomplete(table: &HomTable) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &a in &table.arities {
        for &b in &table.arities {
            if !table.is_complete(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::ArityFamily;

    #[test]
    fn initial_pretheories_are_theories() {
        for fam in [ArityFamily::Fin, ArityFamily::Delta0] {
            let p = Pretheory::initial(fam);
            let v = is_theory_with(&p, &ClosureOptions::new(3).with_arities(&[0, 1, 2, 3]));
            assert_eq!(v.status, TheoryStatus::Theory, "{fam:?}");
            assert_eq!(v.passed, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn monoid_is_not_a_theory() {
        let p = Pretheory::bundled("monoid").unwrap();
        let v = is_theory(&p, crate::pretheory::DEFAULT_BOUND);
        assert_eq!(v.status, TheoryStatus::NotTheory, "{v:?}");
        let w = v.witness.unwrap();
        assert!(w.certified);
        assert_eq!(w.kind, WitnessKind::NotSurjective);
    }
}
