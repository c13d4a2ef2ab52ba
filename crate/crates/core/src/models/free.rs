use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::base::{ArityFamily, BaseMap, CostBound, FinPresheaf, HomSearch, PresheafMap};
use crate::error::ModelError;
use crate::pretheory::{Letter, Pretheory, Word};
use crate::util::{Budget, UnionFind};

/// Extra weight explored beyond the reported depth.
pub const DEFAULT_SLACK: usize = 2;

/// The cells of a realised arity, flattened component by component.
#[derive(Debug, Clone)]
struct Cells {
    offsets: Vec<usize>,
    comp: Vec<usize>,
    /// Flat faces of each flat cell, one per applicable shape generator.
    faces: Vec<Vec<usize>>,
    /// Cells that are not a face of another cell.
    free: Vec<bool>,
}

impl Cells {
    fn of(x: &FinPresheaf) -> Cells {
        let cat = x.shape().category();
        let mut offsets = vec![0];
        for c in 0..x.num_components() {
            offsets.push(offsets[c] + x.size(c));
        }
        let total = *offsets.last().unwrap();
        let mut comp = vec![0; total];
        let mut faces = vec![Vec::new(); total];
        let mut free = vec![true; total];
        for c in 0..x.num_components() {
            for i in 0..x.size(c) {
                comp[offsets[c] + i] = c;
            }
        }
        for (u, g) in cat.generators.iter().enumerate() {
            for i in 0..x.size(g.dst) {
                let f = offsets[g.src] + x.face(u, i);
                faces[offsets[g.dst] + i].push(f);
                free[f] = false;
            }
        }
        Cells { offsets, comp, faces, free }
    }

    fn len(&self) -> usize {
        self.comp.len()
    }

    fn flatten(&self, m: &PresheafMap) -> Vec<usize> {
        m.parts.iter().flatten().copied().collect()
    }

    fn unflatten(&self, flat: &[usize]) -> PresheafMap {
        PresheafMap::new((0..self.offsets.len() - 1).map(|c| flat[self.offsets[c]..self.offsets[c + 1]].to_vec()).collect())
    }
}

#[derive(Debug, Clone)]
struct Node {
    gen: usize,
    inputs: Vec<u32>,
    outputs: Vec<u32>,
}

/// Saturation state: element classes per shape component, application nodes
/// keyed by generator and input classes.
#[derive(Debug, Clone)]
struct EGraph {
    uf: UnionFind,
    comp: Vec<u8>,
    faces: Vec<Vec<u32>>,
    leaf: Vec<bool>,
    weight: Vec<usize>,
    nodes: Vec<Node>,
    memo: HashMap<(u32, Vec<u32>), u32>,
    pending: Vec<(u32, u32)>,
    merges: usize,
}

impl EGraph {
    fn new_elem(&mut self, comp: usize, faces: Vec<u32>, leaf: bool, weight: usize) -> u32 {
        let id = self.uf.push() as u32;
        self.comp.push(comp as u8);
        self.faces.push(faces);
        self.leaf.push(leaf);
        self.weight.push(weight);
        id
    }

    fn find(&mut self, e: u32) -> u32 {
        self.uf.find(e as usize) as u32
    }

    fn union(&mut self, a: u32, b: u32) {
        self.pending.push((a, b));
    }

    /// Processes pending unions, merging faces and congruent nodes.
    fn rebuild(&mut self) {
        loop {
            while let Some((a, b)) = self.pending.pop() {
                let (ra, rb) = (self.find(a), self.find(b));
                if ra == rb {
                    continue;
                }
                let (keep, gone) = self.uf.union_min(ra as usize, rb as usize).unwrap();
                self.merges += 1;
                let (fk, fg) = (self.faces[keep].clone(), self.faces[gone].clone());
                for (x, y) in fk.into_iter().zip(fg) {
                    self.pending.push((x, y));
                }
                self.weight[keep] = self.weight[keep].min(self.weight[gone]);
                self.leaf[keep] |= self.leaf[gone];
            }
            let mut memo: HashMap<(u32, Vec<u32>), u32> = HashMap::with_capacity(self.nodes.len());
            for n in 0..self.nodes.len() {
                let key: Vec<u32> = self.nodes[n].inputs.iter().map(|&e| self.uf.find(e as usize) as u32).collect();
                self.nodes[n].inputs.clone_from(&key);
                let k = (self.nodes[n].gen as u32, key);
                if let Some(&other) = memo.get(&k) {
                    let pairs: Vec<(u32, u32)> = self.nodes[other as usize]
                        .outputs
                        .iter()
                        .copied()
                        .zip(self.nodes[n].outputs.iter().copied())
                        .filter(|&(x, y)| self.uf.find_const(x as usize) != self.uf.find_const(y as usize))
                        .collect();
                    self.pending.extend(pairs);
                } else {
                    memo.insert(k, n as u32);
                }
            }
            self.memo = memo;
            if self.pending.is_empty() {
                break;
            }
        }
    }
}

/// The bounded free model of a pretheory on a carrier.
#[derive(Debug, Clone)]
pub struct FreeModel {
    pub family: ArityFamily,
    pub depth: usize,
    pub cap: usize,
    /// Classes of weight at most `depth`.
    pub object: FinPresheaf,
    /// The inclusion of the generating carrier.
    pub unit: PresheafMap,
    /// Weight of each class of `object`, per component.
    pub weights: Vec<Vec<usize>>,
    /// No class has weight in `(depth, cap]`.
    pub exact: bool,
    generators: Vec<(usize, usize)>,
    gen_names: Vec<String>,
    cells: HashMap<usize, Arc<Cells>>,
    graph: EGraph,
    /// Object index per component of each canonical e-graph element.
    index: HashMap<u32, usize>,
    /// Canonical e-graph element per object element, per component.
    elems: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeModelSummary {
    pub depth: usize,
    pub sizes: Vec<usize>,
    pub exact: bool,
}

struct Builder<'a> {
    p: &'a Pretheory,
    cap: usize,
    g: EGraph,
    cells: HashMap<usize, Arc<Cells>>,
    base_cells: HashMap<BaseMap, Vec<usize>>,
    budget: &'a Budget,
}

impl<'a> Builder<'a> {
    fn cells(&mut self, a: usize) -> Arc<Cells> {
        let fam = self.p.family;
        self.cells.entry(a).or_insert_with(|| Arc::new(Cells::of(&fam.realise(a)))).clone()
    }

    fn base_cells(&mut self, f: BaseMap) -> Vec<usize> {
        if let Some(v) = self.base_cells.get(&f) {
            return v.clone();
        }
        let fam = self.p.family;
        let kf = fam.realisation(f);
        let dst_cells = self.cells(f.dst);
        let v: Vec<usize> = kf
            .parts
            .iter()
            .enumerate()
            .flat_map(|(c, part)| part.iter().map(move |&i| (c, i)))
            .map(|(c, i)| dst_cells.offsets[c] + i)
            .collect();
        self.base_cells.insert(f, v.clone());
        v
    }

    fn node_weight(&mut self, gen: usize, inputs: &[u32]) -> usize {
        let b = self.p.generators[gen].dst;
        let cells = self.cells(b);
        if cells.len() == 0 {
            return 0;
        }
        1 + inputs
            .iter()
            .enumerate()
            .filter(|&(i, _)| cells.free[i])
            .map(|(_, &e)| {
                let r = self.g.find(e);
                self.g.weight[r as usize]
            })
            .sum::<usize>()
    }

    /// The outputs of `gen` on canonical inputs, creating the node if its
    /// weight is within the cap.
    fn apply(&mut self, gen: usize, inputs: Vec<u32>) -> Result<Option<Vec<u32>>, ModelError> {
        let inputs: Vec<u32> = inputs.iter().map(|&e| self.g.find(e)).collect();
        let key = (gen as u32, inputs);
        if let Some(&n) = self.g.memo.get(&key) {
            return Ok(Some(self.g.nodes[n as usize].outputs.clone()));
        }
        let w = self.node_weight(gen, &key.1);
        if w > self.cap {
            return Ok(None);
        }
        if !self.budget.charge(1) {
            return Err(ModelError::BudgetExceeded { partial: self.g.nodes.len() });
        }
        let a = self.p.generators[gen].src;
        let cells = self.cells(a);
        // Faces point to lower components, which come first in the layout.
        let mut outputs: Vec<u32> = Vec::with_capacity(cells.len());
        for i in 0..cells.len() {
            let faces = cells.faces[i].iter().map(|&f| outputs[f]).collect();
            outputs.push(self.g.new_elem(cells.comp[i], faces, false, w));
        }
        let n = self.g.nodes.len() as u32;
        self.g.nodes.push(Node { gen, inputs: key.1.clone(), outputs: outputs.clone() });
        self.g.memo.insert(key, n);
        Ok(Some(outputs))
    }

    fn eval(&mut self, w: &Word, phi: Vec<u32>) -> Result<Option<Vec<u32>>, ModelError> {
        let mut cur = phi;
        for &l in w.letters.iter().rev() {
            cur = match l {
                Letter::Base(f) => self.base_cells(f).iter().map(|&i| cur[i]).collect(),
                Letter::Gen(g) => match self.apply(g, cur)? {
                    Some(out) => out,
                    None => return Ok(None),
                },
            };
        }
        Ok(Some(cur))
    }

    /// Current canonical classes with weight at most the cap.
    fn snapshot(&mut self) -> (FinPresheaf, Vec<Vec<u32>>, Vec<Vec<u64>>) {
        let shape = self.p.family.shape();
        let ncomp = shape.num_objects();
        let mut elems: Vec<Vec<u32>> = vec![Vec::new(); ncomp];
        let mut pos: HashMap<u32, usize> = HashMap::new();
        for e in 0..self.g.comp.len() as u32 {
            if self.g.find(e) == e && self.g.weight[e as usize] <= self.cap {
                let c = self.g.comp[e as usize] as usize;
                pos.insert(e, elems[c].len());
                elems[c].push(e);
            }
        }
        let cat = shape.category();
        let faces: Vec<Vec<usize>> = cat
            .generators
            .iter()
            .enumerate()
            .map(|(u, g)| {
                elems[g.dst]
                    .iter()
                    .map(|&e| {
                        let f = self.g.faces[e as usize][u];
                        pos[&self.g.find(f)]
                    })
                    .collect()
            })
            .collect();
        let sizes = elems.iter().map(|v| v.len()).collect();
        let costs = elems.iter().map(|v| v.iter().map(|&e| self.g.weight[e as usize] as u64).collect()).collect();
        (FinPresheaf::new(shape, sizes, faces).expect("faces of live classes are live"), elems, costs)
    }

    fn recompute_weights(&mut self) {
        let n = self.g.comp.len();
        let mut w = vec![usize::MAX; n];
        for e in 0..n {
            if self.g.leaf[e] {
                let r = self.g.find(e as u32) as usize;
                w[r] = 0;
            }
        }
        loop {
            let mut changed = false;
            for k in 0..self.g.nodes.len() {
                let gen = self.g.nodes[k].gen;
                let b = self.p.generators[gen].dst;
                let cells = self.cells(b);
                let nw = if cells.len() == 0 {
                    Some(0)
                } else {
                    let mut s = 1usize;
                    let mut ok = true;
                    let inputs = self.g.nodes[k].inputs.clone();
                    for (i, &e) in inputs.iter().enumerate() {
                        if cells.free[i] {
                            let r = self.g.find(e) as usize;
                            if w[r] == usize::MAX {
                                ok = false;
                                break;
                            }
                            s += w[r];
                        }
                    }
                    ok.then_some(s)
                };
                if let Some(nw) = nw {
                    for o in self.g.nodes[k].outputs.clone() {
                        let r = self.g.find(o) as usize;
                        if nw < w[r] {
                            w[r] = nw;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for e in 0..n {
            let r = self.g.find(e as u32) as usize;
            if r == e {
                self.g.weight[e] = w[e];
            }
        }
    }

    fn saturate(&mut self) -> Result<(), ModelError> {
        loop {
            let before = (self.g.nodes.len(), self.g.merges);
            let (snap, elems, costs) = self.snapshot();
            for gen in 0..self.p.generators.len() {
                let b = self.p.generators[gen].dst;
                let kb = self.p.family.realise(b);
                let limit = (self.cap as u64).saturating_sub(1);
                let cells = self.cells(b);
                for phi in self.inputs(&kb, &snap, &costs, limit) {
                    let flat = cells.flatten(&phi);
                    let input = flat.iter().enumerate().map(|(i, &x)| elems[cells.comp[i]][x]).collect();
                    self.apply(gen, input)?;
                }
            }
            for (l, r) in &self.p.equations {
                let kb = self.p.family.realise(l.dst);
                for phi in self.inputs(&kb, &snap, &costs, self.cap as u64) {
                    if !self.budget.charge(1) {
                        return Err(ModelError::BudgetExceeded { partial: self.g.nodes.len() });
                    }
                    let cells = self.cells(l.dst);
                    let input: Vec<u32> =
                        cells.flatten(&phi).iter().enumerate().map(|(i, &x)| elems[cells.comp[i]][x]).collect();
                    let lv = self.eval(l, input.clone())?;
                    let rv = self.eval(r, input)?;
                    if let (Some(lv), Some(rv)) = (lv, rv) {
                        for (x, y) in lv.into_iter().zip(rv) {
                            self.g.union(x, y);
                        }
                    }
                }
            }
            self.g.rebuild();
            self.recompute_weights();
            if (self.g.nodes.len(), self.g.merges) == before {
                return Ok(());
            }
        }
    }

    fn inputs(&self, kb: &FinPresheaf, snap: &FinPresheaf, costs: &[Vec<u64>], limit: u64) -> Vec<PresheafMap> {
        if kb.is_empty() {
            return vec![PresheafMap::from_empty(kb.shape())];
        }
        let mut out = Vec::new();
        let _ = HomSearch::new(kb, snap).with_cost(CostBound { costs, limit }).visit(|m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        });
        out
    }
}

/// Builds the free model of `p` on `x`, exploring weights up to
/// `depth + slack` and reporting classes of weight at most `depth`.
pub fn free_model_bounded(p: &Pretheory, x: &FinPresheaf, depth: usize) -> Result<FreeModel, ModelError> {
    free_model_with(p, x, depth, DEFAULT_SLACK, &Budget::from_env())
}

pub fn free_model_with(
    p: &Pretheory,
    x: &FinPresheaf,
    depth: usize,
    slack: usize,
    budget: &Budget,
) -> Result<FreeModel, ModelError> {
    if x.shape() != p.family.shape() {
        return Err(ModelError::Mismatch("carrier shape differs from the arity family".into()));
    }
    let graph = EGraph {
        uf: UnionFind::new(0),
        comp: Vec::new(),
        faces: Vec::new(),
        leaf: Vec::new(),
        weight: Vec::new(),
        nodes: Vec::new(),
        memo: HashMap::new(),
        pending: Vec::new(),
        merges: 0,
    };
    let mut b = Builder { p, cap: depth + slack, g: graph, cells: HashMap::new(), base_cells: HashMap::new(), budget };
    let xcells = Cells::of(x);
    let mut leaves: Vec<u32> = Vec::with_capacity(xcells.len());
    for i in 0..xcells.len() {
        let faces = xcells.faces[i].iter().map(|&f| leaves[f]).collect();
        leaves.push(b.g.new_elem(xcells.comp[i], faces, true, 0));
    }
    b.saturate()?;

    let shape = p.family.shape();
    let ncomp = shape.num_objects();
    let mut elems: Vec<Vec<u32>> = vec![Vec::new(); ncomp];
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut exact = true;
    let mut order: Vec<u32> = (0..b.g.comp.len() as u32).filter(|&e| b.g.find(e) == e).collect();
    order.sort_by_key(|&e| (b.g.weight[e as usize], e));
    for e in order {
        let w = b.g.weight[e as usize];
        if w <= depth {
            let c = b.g.comp[e as usize] as usize;
            index.insert(e, elems[c].len());
            elems[c].push(e);
        } else if w <= b.cap {
            exact = false;
        }
    }
    let cat = shape.category();
    let faces: Vec<Vec<usize>> = cat
        .generators
        .iter()
        .enumerate()
        .map(|(u, g)| {
            elems[g.dst]
                .iter()
                .map(|&e| {
                    let f = b.g.faces[e as usize][u];
                    index[&b.g.find(f)]
                })
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = elems.iter().map(|v| v.len()).collect();
    let object = FinPresheaf::new(shape, sizes, faces).expect("faces stay within the depth");
    let unit_flat: Vec<usize> = leaves.iter().map(|&l| index[&b.g.find(l)]).collect();
    let unit = xcells.unflatten(&unit_flat);
    let weights = elems.iter().map(|v| v.iter().map(|&e| b.g.weight[e as usize]).collect()).collect();
    Ok(FreeModel {
        family: p.family,
        depth,
        cap: b.cap,
        object,
        unit,
        weights,
        exact,
        generators: p.generators.iter().map(|g| (g.src, g.dst)).collect(),
        gen_names: p.generators.iter().map(|g| g.name.clone()).collect(),
        cells: b.cells,
        graph: b.g,
        index,
        elems,
    })
}

impl FreeModel {
    pub fn summary(&self) -> FreeModelSummary {
        FreeModelSummary { depth: self.depth, sizes: self.object.sizes().to_vec(), exact: self.exact }
    }

    fn cells(&self, a: usize) -> Arc<Cells> {
        self.cells.get(&a).cloned().unwrap_or_else(|| Arc::new(Cells::of(&self.family.realise(a))))
    }

    fn canon(&self, e: u32) -> u32 {
        self.graph.uf.find_const(e as usize) as u32
    }

    /// `[g]` applied to a map `K b → object`, if the result stays in `object`.
    pub fn apply(&self, gen: usize, phi: &PresheafMap) -> Option<PresheafMap> {
        let (a, b) = self.generators[gen];
        let cb = self.cells(b);
        let inputs: Vec<u32> = cb.flatten(phi).iter().enumerate().map(|(i, &x)| self.elems[cb.comp[i]][x]).collect();
        let key = (gen as u32, inputs.iter().map(|&e| self.canon(e)).collect::<Vec<_>>());
        let n = *self.graph.memo.get(&key)?;
        let outs = &self.graph.nodes[n as usize].outputs;
        let flat: Option<Vec<usize>> = outs.iter().map(|&o| self.index.get(&self.canon(o)).copied()).collect();
        Some(self.cells(a).unflatten(&flat?))
    }

    /// Interprets a word on a map `K dst → object`.
    pub fn eval_word_at(&self, w: &Word, phi: &PresheafMap) -> Option<PresheafMap> {
        let mut cur = phi.clone();
        for &l in w.letters.iter().rev() {
            cur = match l {
                Letter::Base(f) => self.family.realisation(f).then(&cur),
                Letter::Gen(g) => self.apply(g, &cur)?,
            };
        }
        Some(cur)
    }

    /// Kleisli extension: the substitution `object → target.object` induced
    /// by `v: carrier → target.object`. Elements whose image leaves the
    /// target's depth map to `None`.
    pub fn extend(&self, v: &PresheafMap, target: &FreeModel) -> Vec<Vec<Option<usize>>> {
        let ids: Vec<usize> = (0..self.generators.len()).collect();
        self.substitute(v, target, &ids).0
    }

    /// Substitution along a generator renaming `gens[g]` into `target`.
    /// Returns `None` if an element is out of range or two defining terms
    /// disagree.
    pub fn translate(&self, v: &PresheafMap, target: &FreeModel, gens: &[usize]) -> Option<Vec<Vec<usize>>> {
        let (image, conflict) = self.substitute(v, target, gens);
        if conflict {
            return None;
        }
        image.into_iter().map(|row| row.into_iter().collect()).collect()
    }

    fn substitute(&self, v: &PresheafMap, target: &FreeModel, gens: &[usize]) -> (Vec<Vec<Option<usize>>>, bool) {
        let ncomp = self.object.num_components();
        let mut image: Vec<Vec<Option<usize>>> = (0..ncomp).map(|c| vec![None; self.object.size(c)]).collect();
        let mut done: Vec<Vec<bool>> = (0..ncomp).map(|c| vec![false; self.object.size(c)]).collect();
        let mut conflict = false;
        for (c, part) in self.unit.parts.iter().enumerate() {
            for (i, &u) in part.iter().enumerate() {
                let t = v.parts[c][i];
                if done[c][u] && image[c][u] != Some(t) {
                    conflict = true;
                }
                image[c][u] = Some(t);
                done[c][u] = true;
            }
        }
        let mut by_elem: HashMap<u32, Vec<usize>> = HashMap::new();
        for (n, node) in self.graph.nodes.iter().enumerate() {
            for &o in &node.outputs {
                by_elem.entry(self.canon(o)).or_default().push(n);
            }
        }
        let mut order: Vec<(usize, usize, usize)> = Vec::new();
        for c in 0..ncomp {
            for i in 0..self.object.size(c) {
                order.push((self.weights[c][i], c, i));
            }
        }
        order.sort();
        for (_, c, i) in order {
            if done[c][i] {
                continue;
            }
            let e = self.elems[c][i];
            let mut result: Option<usize> = None;
            for &n in by_elem.get(&e).map(|v| v.as_slice()).unwrap_or(&[]) {
                let node = &self.graph.nodes[n];
                let (a, b) = self.generators[node.gen];
                let cb = self.cells(b);
                let mapped: Option<Vec<usize>> = node
                    .inputs
                    .iter()
                    .enumerate()
                    .map(|(k, &inp)| {
                        let j = *self.index.get(&self.canon(inp))?;
                        let cc = cb.comp[k];
                        if self.elems[cc].get(j).map(|&x| self.canon(x)) != Some(self.canon(inp)) || !done[cc][j] {
                            return None;
                        }
                        image[cc][j]
                    })
                    .collect();
                let Some(mapped) = mapped else { continue };
                let Some(out) = target.apply(gens[node.gen], &cb.unflatten(&mapped)) else { continue };
                let pos = node.outputs.iter().position(|&o| self.canon(o) == e).unwrap();
                let t = self.cells(a).flatten(&out)[pos];
                match result {
                    None => result = Some(t),
                    Some(r) if r != t => conflict = true,
                    _ => {}
                }
            }
            image[c][i] = result;
            done[c][i] = true;
        }
        (image, conflict)
    }

    /// A readable term for an element of `object`.
    pub fn describe(&self, c: usize, i: usize) -> String {
        let e = self.elems[c][i];
        self.describe_elem(e, 0)
    }

    fn describe_elem(&self, e: u32, depth: usize) -> String {
        let e = self.canon(e);
        if let Some(pos) = (0..self.graph.leaf.len()).find(|&l| self.graph.leaf[l] && self.canon(l as u32) == e) {
            return format!("x{pos}");
        }
        if depth > 8 {
            return "…".into();
        }
        let w = self.graph.weight[e as usize];
        for node in &self.graph.nodes {
            if let Some(pos) = node.outputs.iter().position(|&o| self.canon(o) == e) {
                let (_, b) = self.generators[node.gen];
                let cb = self.cells(b);
                let nw: usize = 1 + node
                    .inputs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| cb.free[k])
                    .map(|(_, &x)| self.graph.weight[self.canon(x) as usize])
                    .sum::<usize>();
                if cb.len() > 0 && nw != w {
                    continue;
                }
                let args: Vec<String> = node
                    .inputs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| cb.free[k])
                    .map(|(_, &x)| self.describe_elem(x, depth + 1))
                    .collect();
                return format!("{}[{}]({})", self.gen_names[node.gen], pos, args.join(", "));
            }
        }
        "?".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_pretheory_free_model_is_carrier() {
        for d in 0..3 {
            let x = FinPresheaf::graph(2, &[(0, 1), (1, 1)]);
            let fm = free_model_bounded(&Pretheory::initial(ArityFamily::Delta0), &x, d).unwrap();
            assert_eq!(fm.object, x);
            assert!(fm.exact);
        }
    }

    #[test]
    fn monoid_on_one_generator() {
        let p = Pretheory::bundled("monoid").unwrap();
        for d in 0..4 {
            let fm = free_model_bounded(&p, &FinPresheaf::set(1), d).unwrap();
            assert_eq!(fm.object.size(0), d + 2, "depth {d}");
            assert!(!fm.exact);
        }
    }

    #[test]
    fn category_on_path_of_length_two() {
        let p = Pretheory::bundled("category").unwrap();
        let x = ArityFamily::Delta0.realise(2);
        let fm = free_model_bounded(&p, &x, 2).unwrap();
        // Vertices stay put; edges are the six paths including identities.
        assert_eq!(fm.object.sizes(), &[3, 6]);
        assert!(fm.exact);
    }

    #[test]
    fn monoid_words_up_to_length() {
        let p = Pretheory::bundled("monoid").unwrap();
        for (n, d) in [(2usize, 2usize), (3, 2), (2, 3)] {
            let fm = free_model_bounded(&p, &FinPresheaf::set(n), d).unwrap();
            let expected: usize = (0..=d + 1).map(|k| n.pow(k as u32)).sum();
            assert_eq!(fm.object.size(0), expected);
            let sq = Word { src: 1, dst: 1, letters: vec![] };
            let x = PresheafMap::new(vec![vec![fm.unit.parts[0][0]]]);
            assert_eq!(fm.eval_word_at(&sq, &x).unwrap(), x);
        }
    }

    #[test]
    fn extension_along_identity_substitution() {
        let p = Pretheory::bundled("monoid").unwrap();
        let fm = free_model_bounded(&p, &FinPresheaf::set(2), 2).unwrap();
        let img = fm.extend(&fm.unit, &fm);
        for (i, v) in img[0].iter().enumerate() {
            if fm.weights[0][i] <= 2 {
                assert_eq!(*v, Some(i), "{}", fm.describe(0, i));
            }
        }
    }
}
