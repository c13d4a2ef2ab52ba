use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::presentation::Pretheory;
use super::word::{Letter, Word};
use crate::base::ArityFamily;
use crate::util::{Budget, UnionFind};

/// Default word-length bound for [`congruence_closure`].
pub const DEFAULT_BOUND: usize = 4;

/// Knobs for [`congruence_closure_with`].
#[derive(Debug, Clone)]
pub struct ClosureOptions {
    pub bound: usize,
    /// Arities to include in the window beyond those the presentation mentions.
    pub extra_arities: Vec<usize>,
    /// Rerun at `bound + 2` to decide the completeness flags.
    pub verify: bool,
    /// Node cap; `None` reads `LAWKIT_BUDGET`.
    pub budget: Option<u64>,
}

impl ClosureOptions {
    pub fn new(bound: usize) -> Self {
        ClosureOptions { bound, extra_arities: Vec::new(), verify: true, budget: None }
    }

    pub fn with_arities(mut self, arities: &[usize]) -> Self {
        self.extra_arities.extend_from_slice(arities);
        self
    }

    pub fn verify(mut self, yes: bool) -> Self {
        self.verify = yes;
        self
    }

    pub fn budget(mut self, limit: u64) -> Self {
        self.budget = Some(limit);
        self
    }

    fn make_budget(&self) -> Budget {
        self.budget.map(Budget::new).unwrap_or_else(Budget::from_env)
    }
}

pub type ClassId = usize;

/// Normal-form words up to a length bound, partitioned into congruence
/// classes. Class ids are the index of the canonical representative, which
/// is the shortest and then lexicographically least member.
#[derive(Debug, Clone)]
pub struct HomTable {
    pub family: ArityFamily,
    pub bound: usize,
    pub arities: Vec<usize>,
    letters: Vec<Letter>,
    srcs: Vec<u32>,
    dsts: Vec<u32>,
    offsets: Vec<u32>,
    data: Vec<u32>,
    index: HashMap<Vec<u32>, u32>,
    root: Vec<u32>,
    homs: BTreeMap<(usize, usize), Vec<ClassId>>,
    complete: BTreeMap<(usize, usize), bool>,
    /// The budget ran out; the table covers only a prefix of the window.
    pub exhausted: bool,
    /// Equations with a side longer than the bound, by index.
    pub skipped_equations: Vec<usize>,
}

/// A summary of one hom-set of a table, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct HomSummary {
    pub src: usize,
    pub dst: usize,
    pub words: usize,
    pub classes: usize,
    pub complete: bool,
}

struct Raw {
    letters: Vec<Letter>,
    srcs: Vec<u32>,
    dsts: Vec<u32>,
    offsets: Vec<u32>,
    data: Vec<u32>,
    index: HashMap<Vec<u32>, u32>,
    uf: UnionFind,
    exhausted: bool,
    skipped: Vec<usize>,
}

impl Raw {
    fn word(&self, w: usize) -> &[u32] {
        &self.data[self.offsets[w] as usize..self.offsets[w + 1] as usize]
    }

    fn key(src: u32, letters: &[u32]) -> Vec<u32> {
        let mut k = Vec::with_capacity(letters.len() + 1);
        k.push(src);
        k.extend_from_slice(letters);
        k
    }
}

fn window(p: &Pretheory, extra: &[usize]) -> Vec<usize> {
    match p.family {
        ArityFamily::FinSingleton(k) => vec![k],
        _ => {
            let top = extra.iter().copied().chain([p.max_arity()]).max().unwrap_or(0);
            (0..=top).collect()
        }
    }
}

fn build(p: &Pretheory, arities: &[usize], bound: usize, budget: &Budget) -> Raw {
    let fam = p.family;
    let mut letters: Vec<Letter> = (0..p.generators.len()).map(Letter::Gen).collect();
    for &a in arities {
        for &b in arities {
            for f in fam.homs(a, b) {
                if !fam.is_identity(f) {
                    letters.push(Letter::Base(f));
                }
            }
        }
    }
    letters.sort();
    let ends: Vec<(usize, usize)> = letters.iter().map(|&l| p.letter_endpoints(l)).collect();
    let is_base: Vec<bool> = letters.iter().map(|l| matches!(l, Letter::Base(_))).collect();
    let letter_id: HashMap<Letter, u32> = letters.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
    let top = arities.iter().copied().max().unwrap_or(0);
    let mut from = vec![Vec::new(); top + 1];
    let mut into = vec![Vec::new(); top + 1];
    for (i, &(s, d)) in ends.iter().enumerate() {
        from[s].push(i as u32);
        into[d].push(i as u32);
    }
    // Composite of two base letters: `None` for an identity.
    let mut base_comp: HashMap<(u32, u32), Option<u32>> = HashMap::new();
    for (i, l) in letters.iter().enumerate() {
        if let Letter::Base(f) = l {
            for &j in &from[f.dst] {
                if let Letter::Base(g) = letters[j as usize] {
                    let fg = fam.compose(*f, g);
                    let c = if fam.is_identity(fg) { None } else { Some(letter_id[&Letter::Base(fg)]) };
                    base_comp.insert((i as u32, j), c);
                }
            }
        }
    }

    let mut raw = Raw {
        letters: letters.clone(),
        srcs: Vec::new(),
        dsts: Vec::new(),
        offsets: vec![0],
        data: Vec::new(),
        index: HashMap::new(),
        uf: UnionFind::new(0),
        exhausted: false,
        skipped: Vec::new(),
    };
    let push = |raw: &mut Raw, src: u32, dst: u32, ls: &[u32]| {
        let id = raw.srcs.len() as u32;
        raw.srcs.push(src);
        raw.dsts.push(dst);
        raw.data.extend_from_slice(ls);
        raw.offsets.push(raw.data.len() as u32);
        raw.index.insert(Raw::key(src, ls), id);
    };
    for &a in arities {
        push(&mut raw, a as u32, a as u32, &[]);
    }
    let mut level = 0..raw.srcs.len();
    'grow: for _ in 0..bound {
        let start = raw.srcs.len();
        for w in level.clone() {
            let d = raw.dsts[w] as usize;
            let prev: Vec<u32> = raw.word(w).to_vec();
            let last_base = prev.last().map(|&l| is_base[l as usize]).unwrap_or(false);
            for &l in &from[d] {
                if last_base && is_base[l as usize] {
                    continue;
                }
                if !budget.charge(1) {
                    raw.exhausted = true;
                    break 'grow;
                }
                let mut ls = prev.clone();
                ls.push(l);
                let src = raw.srcs[w];
                push(&mut raw, src, ends[l as usize].1 as u32, &ls);
            }
        }
        level = start..raw.srcs.len();
    }
    let n = raw.srcs.len();
    raw.uf = UnionFind::new(n);

    let normal = |ls: &mut Vec<u32>, at: usize| {
        // Collapse the junction at `at - 1, at` if both are base letters.
        if at == 0 || at >= ls.len() {
            return;
        }
        let (x, y) = (ls[at - 1], ls[at]);
        if is_base[x as usize] && is_base[y as usize] {
            match base_comp[&(x, y)] {
                Some(c) => {
                    ls[at - 1] = c;
                    ls.remove(at);
                }
                None => {
                    ls.drain(at - 1..=at);
                }
            }
        }
    };

    // Extension edges keyed by (letter, side).
    let mut exts: Vec<Vec<(u32, u32)>> = vec![Vec::new(); 2 * letters.len()];
    if !raw.exhausted {
        let mut key = Vec::new();
        'ext: for w in 0..n {
            let (s, d) = (raw.srcs[w], raw.dsts[w]);
            let word = raw.word(w).to_vec();
            for &l in &from[d as usize] {
                let mut ls = word.clone();
                ls.push(l);
                normal(&mut ls, word.len());
                key.clear();
                key.push(s);
                key.extend_from_slice(&ls);
                if let Some(&t) = raw.index.get(&key) {
                    exts[2 * l as usize].push((w as u32, t));
                }
            }
            for &l in &into[s as usize] {
                let mut ls = Vec::with_capacity(word.len() + 1);
                ls.push(l);
                ls.extend_from_slice(&word);
                normal(&mut ls, 1);
                key.clear();
                key.push(ends[l as usize].0 as u32);
                key.extend_from_slice(&ls);
                if let Some(&t) = raw.index.get(&key) {
                    exts[2 * l as usize + 1].push((w as u32, t));
                }
            }
            if !budget.charge((from[d as usize].len() + into[s as usize].len()) as u64) {
                raw.exhausted = true;
                break 'ext;
            }
        }
    }

    for (k, (lhs, rhs)) in p.equations.iter().enumerate() {
        let find = |w: &Word| -> Option<u32> {
            let w = w.normalize(fam);
            let mut key = vec![w.src as u32];
            for l in &w.letters {
                key.push(*letter_id.get(l)?);
            }
            raw.index.get(&key).copied()
        };
        match (find(lhs), find(rhs)) {
            (Some(a), Some(b)) => {
                raw.uf.union_min(a as usize, b as usize);
            }
            _ => raw.skipped.push(k),
        }
    }

    if raw.exhausted {
        return raw;
    }
    let mut sig: HashMap<u32, u32> = HashMap::new();
    loop {
        let mut changed = false;
        for edges in &exts {
            sig.clear();
            for &(w, t) in edges {
                let cw = raw.uf.find(w as usize) as u32;
                let ct = raw.uf.find(t as usize) as u32;
                match sig.get(&cw) {
                    Some(&prev) => {
                        let prev = raw.uf.find(prev as usize) as u32;
                        if prev != ct {
                            raw.uf.union_min(prev as usize, ct as usize);
                            changed = true;
                        }
                    }
                    None => {
                        sig.insert(cw, ct);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    raw
}

/// Bounded congruence closure at the default options for bound `l`.
pub fn congruence_closure(p: &Pretheory, l: usize) -> HomTable {
    congruence_closure_with(p, &ClosureOptions::new(l))
}

pub fn congruence_closure_with(p: &Pretheory, opts: &ClosureOptions) -> HomTable {
    let arities = window(p, &opts.extra_arities);
    let budget = opts.make_budget();
    let mut raw = build(p, &arities, opts.bound, &budget);
    let n = raw.srcs.len();
    let root: Vec<u32> = (0..n).map(|w| raw.uf.find(w) as u32).collect();
    let mut homs: BTreeMap<(usize, usize), Vec<ClassId>> = BTreeMap::new();
    for &a in &arities {
        for &b in &arities {
            homs.insert((a, b), Vec::new());
        }
    }
    for w in 0..n {
        if root[w] as usize == w {
            homs.get_mut(&(raw.srcs[w] as usize, raw.dsts[w] as usize)).unwrap().push(w);
        }
    }
    let mut complete: BTreeMap<(usize, usize), bool> = homs.keys().map(|&k| (k, false)).collect();
    if !raw.exhausted && raw.skipped.is_empty() && opts.verify {
        let budget2 = opts.make_budget();
        let mut big = build(p, &arities, opts.bound + 2, &budget2);
        if !big.exhausted {
            let mut ok: BTreeMap<(usize, usize), bool> = homs.keys().map(|&k| (k, true)).collect();
            for w in 0..big.srcs.len() {
                let key = (big.srcs[w] as usize, big.dsts[w] as usize);
                let r = big.uf.find(w);
                let same = if w < n { r == root[w] as usize } else { r < n };
                if !same {
                    ok.insert(key, false);
                }
            }
            complete = ok;
        }
    }
    HomTable {
        family: p.family,
        bound: opts.bound,
        arities,
        letters: std::mem::take(&mut raw.letters),
        srcs: raw.srcs,
        dsts: raw.dsts,
        offsets: raw.offsets,
        data: raw.data,
        index: raw.index,
        root,
        homs,
        complete,
        exhausted: raw.exhausted,
        skipped_equations: raw.skipped,
    }
}

impl HomTable {
    pub fn num_words(&self) -> usize {
        self.srcs.len()
    }

    pub fn word(&self, w: usize) -> Word {
        let ls = &self.data[self.offsets[w] as usize..self.offsets[w + 1] as usize];
        Word {
            src: self.srcs[w] as usize,
            dst: self.dsts[w] as usize,
            letters: ls.iter().map(|&l| self.letters[l as usize]).collect(),
        }
    }

    fn lookup(&self, w: &Word) -> Option<usize> {
        let w = w.normalize(self.family);
        let mut key = vec![w.src as u32];
        for l in &w.letters {
            key.push(self.letters.binary_search(l).ok()? as u32);
        }
        self.index.get(&key).map(|&i| i as usize)
    }

    /// Class of a word, if its normal form lies within the bound.
    pub fn class_of(&self, w: &Word) -> Option<ClassId> {
        self.lookup(w).map(|i| self.root[i] as usize)
    }

    /// `Some(true)` if united, `Some(false)` if not, `None` if out of window.
    pub fn same_class(&self, a: &Word, b: &Word) -> Option<bool> {
        Some(self.class_of(a)? == self.class_of(b)?)
    }

    pub fn rep(&self, c: ClassId) -> Word {
        self.word(c)
    }

    pub fn classes(&self, a: usize, b: usize) -> &[ClassId] {
        self.homs.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// All words of a class, in canonical order.
    pub fn members(&self, c: ClassId) -> Vec<Word> {
        (0..self.num_words()).filter(|&w| self.root[w] as usize == c).map(|w| self.word(w)).collect()
    }

    /// Words of each class with endpoints `(a, b)`, grouped by class.
    pub fn partition(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for w in 0..self.num_words() {
            if self.srcs[w] as usize == a && self.dsts[w] as usize == b {
                groups.entry(self.root[w]).or_default().push(w);
            }
        }
        groups.into_values().collect()
    }

    pub fn class_of_id(&self, w: usize) -> ClassId {
        self.root[w] as usize
    }

    /// Class of `rep(c1) ; rep(c2)`, when that composite is within the bound.
    pub fn compose(&self, c1: ClassId, c2: ClassId) -> Option<ClassId> {
        self.class_of(&self.rep(c1).then(&self.rep(c2))?)
    }

    pub fn is_complete(&self, a: usize, b: usize) -> bool {
        self.complete.get(&(a, b)).copied().unwrap_or(false)
    }

    pub fn all_complete(&self) -> bool {
        self.complete.values().all(|&c| c)
    }

    pub fn summary(&self) -> Vec<HomSummary> {
        self.homs
            .iter()
            .map(|(&(a, b), cs)| HomSummary {
                src: a,
                dst: b,
                words: (0..self.num_words()).filter(|&w| self.srcs[w] as usize == a && self.dsts[w] as usize == b).count(),
                classes: cs.len(),
                complete: self.is_complete(a, b),
            })
            .collect()
    }
}

/// Canonical representatives of the classes `a → b`.
pub fn hom_classes(table: &HomTable, a: usize, b: usize) -> Vec<Word> {
    table.classes(a, b).iter().map(|&c| table.rep(c)).collect()
}
