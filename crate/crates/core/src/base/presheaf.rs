use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::shape::Shape;
use crate::error::BaseError;

/// A finite presheaf over a bundled shape category.
///
/// Component `c` is the set `{0, .., sizes[c]-1}`. For each shape generator
/// `u: c → c'`, `faces[u]` tabulates the action `X(c') → X(c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinPresheaf {
    shape: Shape,
    sizes: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl FinPresheaf {
    pub fn new(shape: Shape, sizes: Vec<usize>, faces: Vec<Vec<usize>>) -> Result<Self, BaseError> {
        let cat = shape.category();
        if sizes.len() != cat.objects.len() || faces.len() != cat.generators.len() {
            return Err(BaseError::ShapeMismatch);
        }
        for (u, g) in cat.generators.iter().enumerate() {
            if faces[u].len() != sizes[g.dst] || faces[u].iter().any(|&x| x >= sizes[g.src]) {
                return Err(BaseError::ActionNotTotal { generator: g.name.to_string() });
            }
        }
        Ok(FinPresheaf { shape, sizes, faces })
    }

    /// The finite set `{0, .., n-1}` as a presheaf on the terminal shape.
    pub fn set(n: usize) -> Self {
        FinPresheaf { shape: Shape::Terminal, sizes: vec![n], faces: vec![] }
    }

    /// A directed multigraph with `vertices` vertices and the listed edges.
    pub fn graph(vertices: usize, edges: &[(usize, usize)]) -> Self {
        assert!(edges.iter().all(|&(s, t)| s < vertices && t < vertices), "edge endpoint out of range");
        FinPresheaf {
            shape: Shape::Graph,
            sizes: vec![vertices, edges.len()],
            faces: vec![edges.iter().map(|e| e.0).collect(), edges.iter().map(|e| e.1).collect()],
        }
    }

    /// The initial presheaf: every component empty.
    pub fn empty(shape: Shape) -> Self {
        FinPresheaf {
            shape,
            sizes: vec![0; shape.num_objects()],
            faces: vec![Vec::new(); shape.num_generators()],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    /// Action of shape generator `u` on element `x` of its target component.
    pub fn face(&self, u: usize, x: usize) -> usize {
        self.faces[u][x]
    }

    pub fn face_table(&self, u: usize) -> &[usize] {
        &self.faces[u]
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.iter().all(|&s| s == 0)
    }

    // Graph conveniences. Vertices are component 0, edges component 1.

    pub fn num_vertices(&self) -> usize {
        debug_assert_eq!(self.shape, Shape::Graph);
        self.sizes[0]
    }

    pub fn num_edges(&self) -> usize {
        debug_assert_eq!(self.shape, Shape::Graph);
        self.sizes[1]
    }

    pub fn src(&self, e: usize) -> usize {
        self.faces[0][e]
    }

    pub fn tgt(&self, e: usize) -> usize {
        self.faces[1][e]
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.num_edges()).map(|e| (self.src(e), self.tgt(e))).collect()
    }
}

impl fmt::Display for FinPresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Terminal => write!(f, "{{{} elements}}", self.sizes[0]),
            Shape::Graph => {
                write!(f, "graph({} vertices; ", self.sizes[0])?;
                let edges: Vec<String> = self.edge_list().iter().map(|(s, t)| format!("{s}->{t}")).collect();
                write!(f, "{})", edges.join(", "))
            }
        }
    }
}

/// A natural transformation between finite presheaves: one function per
/// shape object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PresheafMap {
    pub parts: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        PresheafMap { parts }
    }

    pub fn identity(x: &FinPresheaf) -> Self {
        PresheafMap { parts: x.sizes.iter().map(|&n| (0..n).collect()).collect() }
    }

    /// The unique map out of an initial presheaf.
    pub fn from_empty(shape: Shape) -> Self {
        PresheafMap { parts: vec![Vec::new(); shape.num_objects()] }
    }

    pub fn apply(&self, c: usize, x: usize) -> usize {
        self.parts[c][x]
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &PresheafMap) -> PresheafMap {
        PresheafMap {
            parts: self
                .parts
                .iter()
                .zip(&next.parts)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    /// Checks totality and naturality as a map `x → y`.
    pub fn is_map(&self, x: &FinPresheaf, y: &FinPresheaf) -> bool {
        if x.shape != y.shape || self.parts.len() != x.sizes.len() {
            return false;
        }
        for (c, part) in self.parts.iter().enumerate() {
            if part.len() != x.sizes[c] || part.iter().any(|&v| v >= y.sizes[c]) {
                return false;
            }
        }
        let cat = x.shape.category();
        cat.generators.iter().enumerate().all(|(u, g)| {
            (0..x.sizes[g.dst]).all(|e| self.parts[g.src][x.face(u, e)] == y.face(u, self.parts[g.dst][e]))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.parts.iter().all(|p| {
            let mut seen = std::collections::HashSet::new();
            p.iter().all(|v| seen.insert(*v))
        })
    }

    pub fn is_surjective(&self, y: &FinPresheaf) -> bool {
        self.parts.iter().enumerate().all(|(c, p)| {
            let mut hit = vec![false; y.size(c)];
            p.iter().for_each(|&v| hit[v] = true);
            hit.into_iter().all(|h| h)
        })
    }

    pub fn is_bijective(&self, y: &FinPresheaf) -> bool {
        self.is_injective() && self.is_surjective(y)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self, y: &FinPresheaf) -> Option<PresheafMap> {
        if !self.is_bijective(y) {
            return None;
        }
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(c, p)| {
                let mut inv = vec![0; y.size(c)];
                for (x, &v) in p.iter().enumerate() {
                    inv[v] = x;
                }
                inv
            })
            .collect();
        Some(PresheafMap { parts })
    }
}

/// Per-element costs on the codomain with an upper bound on the total cost
/// of the freely chosen elements of a map.
#[derive(Debug, Clone, Copy)]
pub struct CostBound<'a> {
    pub costs: &'a [Vec<u64>],
    pub limit: u64,
}

/// Backtracking enumeration of presheaf maps `src → dst`.
///
/// Components are assigned top-down (edges before vertices), elements in
/// increasing order, candidates in increasing order, so the output order is
/// lexicographic in that variable order. Faces of an assigned element are
/// forced; only unforced elements branch. With a [`CostBound`] the cost of
/// a map is the sum over its freely chosen elements, candidates are tried in
/// (cost, index) order and the output order changes accordingly.
pub struct HomSearch<'a> {
    src: &'a FinPresheaf,
    dst: &'a FinPresheaf,
    injective: bool,
    cost: Option<CostBound<'a>>,
    order: Vec<(usize, usize)>,
    /// For each dst generator `u`, dst elements grouped by their face.
    preimages: Vec<Vec<Vec<usize>>>,
    all: Vec<Vec<usize>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(src: &'a FinPresheaf, dst: &'a FinPresheaf) -> Self {
        assert_eq!(src.shape, dst.shape, "hom between presheaves of different shapes");
        let cat = src.shape.category();
        let mut order = Vec::with_capacity(src.total_size());
        for c in cat.top_down_order() {
            for x in 0..src.size(c) {
                order.push((c, x));
            }
        }
        let preimages = cat
            .generators
            .iter()
            .enumerate()
            .map(|(u, g)| {
                let mut buckets = vec![Vec::new(); dst.size(g.src)];
                for e in 0..dst.size(g.dst) {
                    buckets[dst.face(u, e)].push(e);
                }
                buckets
            })
            .collect();
        let all = (0..dst.num_components()).map(|c| (0..dst.size(c)).collect()).collect();
        HomSearch { src, dst, injective: false, cost: None, order, preimages, all }
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn with_cost(mut self, bound: CostBound<'a>) -> Self {
        let by_cost = |list: &mut Vec<usize>, c: usize| list.sort_by_key(|&y| (bound.costs[c][y], y));
        let cat = self.src.shape.category();
        for (u, g) in cat.generators.iter().enumerate() {
            for bucket in self.preimages[u].iter_mut() {
                by_cost(bucket, g.dst);
            }
        }
        for (c, list) in self.all.iter_mut().enumerate() {
            by_cost(list, c);
        }
        self.cost = Some(bound);
        self
    }

    /// Visits every map; the visitor may stop early with `Break`.
    pub fn visit<F>(&self, mut visitor: F) -> ControlFlow<()>
    where
        F: FnMut(&PresheafMap) -> ControlFlow<()>,
    {
        const UNSET: usize = usize::MAX;
        let mut assign = PresheafMap { parts: self.src.sizes.iter().map(|&n| vec![UNSET; n]).collect() };
        let mut used: Vec<Vec<bool>> = self.dst.sizes.iter().map(|&n| vec![false; n]).collect();
        self.step(0, 0, &mut assign, &mut used, &mut visitor)
    }

    pub fn collect(&self) -> Vec<PresheafMap> {
        let mut out = Vec::new();
        let _ = self.visit(|m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        let _ = self.visit(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    pub fn first(&self) -> Option<PresheafMap> {
        let mut out = None;
        let _ = self.visit(|m| {
            out = Some(m.clone());
            ControlFlow::Break(())
        });
        out
    }

    fn step<F>(
        &self,
        idx: usize,
        spent: u64,
        assign: &mut PresheafMap,
        used: &mut [Vec<bool>],
        visitor: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&PresheafMap) -> ControlFlow<()>,
    {
        const UNSET: usize = usize::MAX;
        let Some(&(c, x)) = self.order.get(idx) else {
            return visitor(assign);
        };
        if assign.parts[c][x] != UNSET {
            // Forced as a face of an earlier element.
            return self.step(idx + 1, spent, assign, used, visitor);
        }
        let cat = self.src.shape.category();
        // Candidates: restrict by an already-assigned face when possible.
        let mut candidates: &[usize] = &self.all[c];
        for (u, g) in cat.generators.iter().enumerate() {
            if g.dst == c {
                let f = self.src.face(u, x);
                let v = assign.parts[g.src][f];
                if v != UNSET && self.preimages[u][v].len() < candidates.len() {
                    candidates = &self.preimages[u][v];
                }
            }
        }
        let mut forced: Vec<(usize, usize)> = Vec::new();
        for &y in candidates {
            let cost = match self.cost {
                Some(b) => {
                    let c_y = b.costs[c][y];
                    if spent + c_y > b.limit {
                        break;
                    }
                    c_y
                }
                None => 0,
            };
            if self.injective && used[c][y] {
                continue;
            }
            // Assign y and force faces.
            forced.clear();
            let mut ok = true;
            assign.parts[c][x] = y;
            if self.injective {
                used[c][y] = true;
            }
            for (u, g) in cat.generators.iter().enumerate() {
                if g.dst != c {
                    continue;
                }
                let fx = self.src.face(u, x);
                let fy = self.dst.face(u, y);
                let cur = assign.parts[g.src][fx];
                if cur == UNSET {
                    if self.injective && used[g.src][fy] {
                        ok = false;
                        break;
                    }
                    assign.parts[g.src][fx] = fy;
                    if self.injective {
                        used[g.src][fy] = true;
                    }
                    forced.push((g.src, fx));
                } else if cur != fy {
                    ok = false;
                    break;
                }
            }
            let flow = if ok { self.step(idx + 1, spent + cost, assign, used, visitor) } else { ControlFlow::Continue(()) };
            for &(fc, fx) in forced.iter().rev() {
                if self.injective {
                    used[fc][assign.parts[fc][fx]] = false;
                }
                assign.parts[fc][fx] = UNSET;
            }
            if self.injective {
                used[c][y] = false;
            }
            assign.parts[c][x] = UNSET;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Every presheaf map `x → y`, each exactly once, in deterministic order.
pub fn hom_set(x: &FinPresheaf, y: &FinPresheaf) -> Vec<PresheafMap> {
    HomSearch::new(x, y).collect()
}

/// Searches for an isomorphism `x ≅ y`.
pub fn find_isomorphism(x: &FinPresheaf, y: &FinPresheaf) -> Option<PresheafMap> {
    if x.shape != y.shape || x.sizes != y.sizes {
        return None;
    }
    HomSearch::new(x, y).injective(true).first()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::arity::ArityFamily;

    fn brute_force_graph_homs(x: &FinPresheaf, y: &FinPresheaf) -> usize {
        // Independent oracle: enumerate vertex maps, then count edge choices.
        let nv = x.num_vertices();
        let mut count = 0;
        let total = y.num_vertices().pow(nv as u32);
        for code in 0..total {
            let mut vm = Vec::with_capacity(nv);
            let mut c = code;
            for _ in 0..nv {
                vm.push(c % y.num_vertices());
                c /= y.num_vertices();
            }
            let mut ways = 1;
            for e in 0..x.num_edges() {
                let (s, t) = (vm[x.src(e)], vm[x.tgt(e)]);
                ways *= (0..y.num_edges()).filter(|&f| y.src(f) == s && y.tgt(f) == t).count();
            }
            count += ways;
        }
        if nv == 0 && y.num_vertices() == 0 {
            return if x.num_edges() == 0 { 1 } else { 0 };
        }
        count
    }

    #[test]
    fn hom_between_linear_graphs() {
        for n in 0..5 {
            for m in 0..5 {
                let homs = hom_set(&ArityFamily::Delta0.realise(n), &ArityFamily::Delta0.realise(m));
                assert_eq!(homs.len(), (m + 1).saturating_sub(n), "[{n}] -> [{m}]");
            }
        }
    }

    #[test]
    fn hom_of_sets_counts_functions() {
        for n in 0..4 {
            for m in 0..4 {
                let homs = hom_set(&FinPresheaf::set(n), &FinPresheaf::set(m));
                assert_eq!(homs.len(), m.pow(n as u32));
                for h in &homs {
                    assert!(h.is_map(&FinPresheaf::set(n), &FinPresheaf::set(m)));
                }
            }
        }
    }

    #[test]
    fn hom_contains_identity_and_is_duplicate_free() {
        let x = FinPresheaf::graph(3, &[(0, 1), (2, 1), (1, 1)]);
        let homs = hom_set(&x, &x);
        assert!(homs.contains(&PresheafMap::identity(&x)));
        let set: std::collections::HashSet<_> = homs.iter().collect();
        assert_eq!(set.len(), homs.len());
    }

    #[test]
    fn hom_from_initial_is_singleton() {
        let y = FinPresheaf::graph(2, &[(0, 1)]);
        assert_eq!(hom_set(&FinPresheaf::empty(Shape::Graph), &y).len(), 1);
        assert_eq!(hom_set(&FinPresheaf::set(0), &FinPresheaf::set(0)).len(), 1);
        assert_eq!(hom_set(&y, &FinPresheaf::empty(Shape::Graph)).len(), 0);
    }

    #[test]
    fn graph_homs_match_brute_force() {
        let graphs = [
            FinPresheaf::graph(1, &[(0, 0)]),
            FinPresheaf::graph(2, &[(0, 1), (1, 0)]),
            FinPresheaf::graph(3, &[(0, 1), (2, 1)]),
            FinPresheaf::graph(2, &[(0, 1), (0, 1), (1, 1)]),
            FinPresheaf::graph(2, &[]),
        ];
        for x in &graphs {
            for y in &graphs {
                assert_eq!(hom_set(x, y).len(), brute_force_graph_homs(x, y), "{x} -> {y}");
            }
        }
    }

    #[test]
    fn cost_bounded_search_filters() {
        let y = FinPresheaf::set(3);
        let costs = vec![vec![0, 1, 2]];
        let x = FinPresheaf::set(2);
        let bounded = HomSearch::new(&x, &y).with_cost(CostBound { costs: &costs, limit: 1 }).collect();
        // Pairs with cost sum <= 1: (0,0), (0,1), (1,0).
        assert_eq!(bounded.len(), 3);
    }

    #[test]
    fn isomorphism_search() {
        let a = FinPresheaf::graph(3, &[(0, 1), (2, 1)]);
        let b = FinPresheaf::graph(3, &[(1, 0), (2, 0)]);
        let iso = find_isomorphism(&a, &b).unwrap();
        assert!(iso.is_map(&a, &b) && iso.is_bijective(&b));
        let c = FinPresheaf::graph(3, &[(0, 1), (1, 2)]);
        assert!(find_isomorphism(&a, &c).is_none());
    }
}
