use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::model::ConcreteModel;
use super::space::ModelSpace;
use crate::base::{ArityFamily, FinPresheaf};
use crate::error::ModelError;
use crate::pretheory::{Letter, Pretheory};
use crate::util::Budget;

/// The arity window a pretheory's models need: every arity it mentions.
pub fn arity_window(p: &Pretheory, extra: &[usize]) -> Vec<usize> {
    match p.family {
        ArityFamily::FinSingleton(k) => vec![k],
        _ => {
            let top = extra.iter().copied().chain([p.max_arity()]).max().unwrap_or(0);
            (0..=top).collect()
        }
    }
}

pub fn model_space(p: &Pretheory, carrier: &FinPresheaf, extra: &[usize]) -> Arc<ModelSpace> {
    Arc::new(ModelSpace::new(p.family, carrier.clone(), &arity_window(p, extra)))
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Known(usize),
    Blocked { var: usize, at: usize },
}

struct Solver<'a> {
    p: &'a Pretheory,
    space: &'a ModelSpace,
    offsets: Vec<usize>,
    var_gen: Vec<usize>,
    words: usize,
    dom: Vec<u64>,
    dom_size: Vec<u32>,
    value: Vec<Option<u32>>,
    cons: Vec<(usize, usize)>,
    watches: Vec<Vec<u32>>,
    watched: HashSet<(u32, u32)>,
    trail: Vec<Undo>,
    queue: Vec<usize>,
    budget: &'a Budget,
}

enum Undo {
    Dom { var: usize, old: Vec<u64>, size: u32 },
    Assign(usize),
}

impl<'a> Solver<'a> {
    fn new(p: &'a Pretheory, space: &'a ModelSpace, budget: &'a Budget) -> Self {
        let mut offsets = vec![0];
        let mut var_gen = Vec::new();
        for (gi, g) in p.generators.iter().enumerate() {
            let n = space.size(g.dst);
            var_gen.extend(std::iter::repeat_n(gi, n));
            offsets.push(offsets.last().unwrap() + n);
        }
        let nvars = var_gen.len();
        let max_dom = p.generators.iter().map(|g| space.size(g.src)).max().unwrap_or(0);
        let words = max_dom.div_ceil(64).max(1);
        let mut dom = vec![0u64; nvars * words];
        let mut dom_size = vec![0u32; nvars];
        for v in 0..nvars {
            let n = space.size(p.generators[var_gen[v]].src);
            for i in 0..n {
                dom[v * words + i / 64] |= 1 << (i % 64);
            }
            dom_size[v] = n as u32;
        }
        let mut cons = Vec::new();
        for (k, (l, _)) in p.equations.iter().enumerate() {
            for x in 0..space.size(l.dst) {
                cons.push((k, x));
            }
        }
        Solver {
            p,
            space,
            offsets,
            var_gen,
            words,
            dom,
            dom_size,
            value: vec![None; nvars],
            cons,
            watches: vec![Vec::new(); nvars],
            watched: HashSet::new(),
            trail: Vec::new(),
            queue: Vec::new(),
            budget,
        }
    }

    fn side(&self, word: &crate::pretheory::Word, x: usize) -> Side {
        let mut y = x;
        for (i, &l) in word.letters.iter().enumerate().rev() {
            match l {
                Letter::Base(f) => y = self.space.base_table(f)[y],
                Letter::Gen(g) => {
                    let var = self.offsets[g] + y;
                    match self.value[var] {
                        Some(v) => y = v as usize,
                        None => return Side::Blocked { var, at: i },
                    }
                }
            }
        }
        Side::Known(y)
    }

    fn watch(&mut self, var: usize, c: usize) {
        if self.watched.insert((var as u32, c as u32)) {
            self.watches[var].push(c as u32);
        }
    }

    fn has(&self, var: usize, i: usize) -> bool {
        self.dom[var * self.words + i / 64] >> (i % 64) & 1 == 1
    }

    fn assign(&mut self, var: usize, val: usize) {
        let start = var * self.words;
        let old = self.dom[start..start + self.words].to_vec();
        self.trail.push(Undo::Dom { var, old, size: self.dom_size[var] });
        for w in &mut self.dom[start..start + self.words] {
            *w = 0;
        }
        self.dom[start + val / 64] |= 1 << (val % 64);
        self.dom_size[var] = 1;
        self.value[var] = Some(val as u32);
        self.trail.push(Undo::Assign(var));
        self.queue.push(var);
    }

    /// Restricts the domain of `var` to values `u` whose image along the base
    /// letters `prefix` is `target`. Returns false on a wipe-out.
    fn restrict(&mut self, var: usize, prefix: &[Letter], target: usize) -> bool {
        let n = self.space.size(self.p.generators[self.var_gen[var]].src);
        let start = var * self.words;
        let old = self.dom[start..start + self.words].to_vec();
        let mut keep = vec![0u64; self.words];
        let mut size = 0u32;
        for u in 0..n {
            if !self.has(var, u) {
                continue;
            }
            let img = prefix.iter().rev().fold(u, |y, l| match l {
                Letter::Base(f) => self.space.base_table(*f)[y],
                Letter::Gen(_) => unreachable!(),
            });
            if img == target {
                keep[u / 64] |= 1 << (u % 64);
                size += 1;
            }
        }
        if size == self.dom_size[var] {
            return true;
        }
        self.trail.push(Undo::Dom { var, old, size: self.dom_size[var] });
        self.dom[start..start + self.words].copy_from_slice(&keep);
        self.dom_size[var] = size;
        if size == 1 {
            let val = (0..n).find(|&u| self.has(var, u)).unwrap();
            self.value[var] = Some(val as u32);
            self.trail.push(Undo::Assign(var));
            self.queue.push(var);
        }
        size > 0
    }

    fn check(&mut self, c: usize) -> bool {
        let (k, x) = self.cons[c];
        let (l, r) = &self.p.equations[k];
        let (sl, sr) = (self.side(l, x), self.side(r, x));
        match (sl, sr) {
            (Side::Known(a), Side::Known(b)) => a == b,
            (Side::Known(v), Side::Blocked { var, at }) => self.blocked_one(c, var, &r.letters[..at], v),
            (Side::Blocked { var, at }, Side::Known(v)) => self.blocked_one(c, var, &l.letters[..at], v),
            (Side::Blocked { var: a, .. }, Side::Blocked { var: b, .. }) => {
                self.watch(a, c);
                self.watch(b, c);
                true
            }
        }
    }

    fn blocked_one(&mut self, c: usize, var: usize, prefix: &[Letter], v: usize) -> bool {
        self.watch(var, c);
        if prefix.iter().all(|l| matches!(l, Letter::Base(_))) {
            let prefix = prefix.to_vec();
            return self.restrict(var, &prefix, v);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some(var) = self.queue.pop() {
            let mut i = 0;
            while i < self.watches[var].len() {
                let c = self.watches[var][i] as usize;
                if !self.check(c) {
                    self.queue.clear();
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Dom { var, old, size } => {
                    let start = var * self.words;
                    self.dom[start..start + self.words].copy_from_slice(&old);
                    self.dom_size[var] = size;
                }
                Undo::Assign(var) => self.value[var] = None,
            }
        }
    }

    fn search<F>(&mut self, emit: &mut F) -> Result<ControlFlow<()>, ()>
    where
        F: FnMut(&[Option<u32>]) -> ControlFlow<()>,
    {
        if !self.budget.charge(1) {
            return Err(());
        }
        let pick = (0..self.value.len()).filter(|&v| self.value[v].is_none()).min_by_key(|&v| (self.dom_size[v], v));
        let Some(var) = pick else {
            return Ok(emit(&self.value));
        };
        let n = self.space.size(self.p.generators[self.var_gen[var]].src);
        let candidates: Vec<usize> = (0..n).filter(|&u| self.has(var, u)).collect();
        for u in candidates {
            let mark = self.trail.len();
            self.assign(var, u);
            if self.propagate() {
                if let ControlFlow::Break(()) = self.search(emit)? {
                    self.undo(mark);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo(mark);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Visits every model on the given space; returns the number visited.
pub fn visit_models<F>(p: &Pretheory, space: &Arc<ModelSpace>, budget: &Budget, mut visit: F) -> Result<usize, ModelError>
where
    F: FnMut(ConcreteModel) -> ControlFlow<()>,
{
    for g in &p.generators {
        if !space.has_arity(g.src) || !space.has_arity(g.dst) {
            return Err(ModelError::Mismatch(format!("arity window misses `{}`", g.name)));
        }
    }
    let mut solver = Solver::new(p, space, budget);
    let mut count = 0usize;
    for c in 0..solver.cons.len() {
        if !solver.check(c) || !solver.propagate() {
            return Ok(0);
        }
    }
    let offsets = solver.offsets.clone();
    let mut emit = |vals: &[Option<u32>]| {
        count += 1;
        let tables = (0..p.generators.len())
            .map(|g| vals[offsets[g]..offsets[g + 1]].iter().map(|v| v.unwrap() as usize).collect())
            .collect();
        let endpoints = p.generators.iter().map(|g| (g.src, g.dst)).collect();
        visit(ConcreteModel { space: space.clone(), endpoints, tables })
    };
    match solver.search(&mut emit) {
        Ok(_) => Ok(count),
        Err(()) => Err(ModelError::BudgetExceeded { partial: count }),
    }
}

/// All models of `p` on carrier `x`, sorted by their tables.
pub fn enumerate_models(p: &Pretheory, x: &FinPresheaf) -> Result<Vec<ConcreteModel>, ModelError> {
    enumerate_models_with(p, x, &Budget::from_env())
}

pub fn enumerate_models_with(p: &Pretheory, x: &FinPresheaf, budget: &Budget) -> Result<Vec<ConcreteModel>, ModelError> {
    if x.shape() != p.family.shape() {
        return Err(ModelError::Mismatch("carrier shape differs from the arity family".into()));
    }
    let space = model_space(p, x, &[]);
    let mut out = Vec::new();
    visit_models(p, &space, budget, |m| {
        out.push(m);
        ControlFlow::Continue(())
    })?;
    out.sort_by(|a, b| a.tables.cmp(&b.tables));
    Ok(out)
}

pub fn count_models(p: &Pretheory, x: &FinPresheaf, budget: &Budget) -> Result<usize, ModelError> {
    if x.shape() != p.family.shape() {
        return Err(ModelError::Mismatch("carrier shape differs from the arity family".into()));
    }
    let space = model_space(p, x, &[]);
    visit_models(p, &space, budget, |_| ControlFlow::Continue(()))
}
