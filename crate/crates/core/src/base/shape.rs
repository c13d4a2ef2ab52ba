use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

/// The two bundled shape categories.
///
/// `Terminal` has one object and only its identity, so presheaves on it are
/// finite sets. `Graph` is the category freely generated by `0 ⇉ 1`
/// (source and target), so presheaves on it are directed multigraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    Terminal,
    Graph,
}

/// A generating arrow `u: src → dst` of a shape category. A presheaf acts
/// contravariantly, `X(dst) → X(src)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeArrow {
    pub name: &'static str,
    pub src: usize,
    pub dst: usize,
}

/// A finite shape category with complete hom tables.
///
/// Morphisms are stored as generator words in diagrammatic order. Neither
/// bundled shape has relations, so words are pairwise distinct.
#[derive(Debug, Clone)]
pub struct ShapeCategory {
    pub objects: Vec<&'static str>,
    pub generators: Vec<ShapeArrow>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
    /// `homs[c][d]`: morphisms `c → d`.
    pub homs: Vec<Vec<Vec<Vec<usize>>>>,
}

impl ShapeCategory {
    fn build(objects: Vec<&'static str>, generators: Vec<ShapeArrow>) -> Self {
        let n = objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (c, row) in homs.iter_mut().enumerate() {
            row[c].push(Vec::new());
        }
        // Both shapes are finite-depth, so repeated extension terminates.
        let mut frontier: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|c| (c, c, Vec::new())).collect();
        while let Some((c, d, w)) = frontier.pop() {
            for (gi, g) in generators.iter().enumerate() {
                if g.src == d {
                    let mut w2 = w.clone();
                    w2.push(gi);
                    homs[c][g.dst].push(w2.clone());
                    frontier.push((c, g.dst, w2));
                }
            }
        }
        for row in homs.iter_mut() {
            for h in row.iter_mut() {
                h.sort();
            }
        }
        ShapeCategory { objects, generators, relations: Vec::new(), homs }
    }

    /// Composite of two morphisms given as word indices, diagrammatic order.
    pub fn compose(&self, c: usize, d: usize, e: usize, f: usize, g: usize) -> usize {
        let mut w = self.homs[c][d][f].clone();
        w.extend_from_slice(&self.homs[d][e][g]);
        self.homs[c][e].iter().position(|x| *x == w).expect("composite present in hom table")
    }

    /// Objects ordered so that every generator's target precedes its source.
    pub fn top_down_order(&self) -> Vec<usize> {
        let mut height = vec![0usize; self.objects.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for g in &self.generators {
                if height[g.dst] < height[g.src] + 1 {
                    height[g.dst] = height[g.src] + 1;
                    changed = true;
                }
            }
        }
        let mut order: Vec<usize> = (0..self.objects.len()).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(height[c]), c));
        order
    }
}

static TERMINAL: Lazy<ShapeCategory> = Lazy::new(|| ShapeCategory::build(vec!["*"], vec![]));

static GRAPH: Lazy<ShapeCategory> = Lazy::new(|| {
    ShapeCategory::build(
        vec!["0", "1"],
        vec![
            ShapeArrow { name: "sigma", src: 0, dst: 1 },
            ShapeArrow { name: "tau", src: 0, dst: 1 },
        ],
    )
});

impl Shape {
    pub fn category(self) -> &'static ShapeCategory {
        match self {
            Shape::Terminal => &TERMINAL,
            Shape::Graph => &GRAPH,
        }
    }

    pub fn num_objects(self) -> usize {
        self.category().objects.len()
    }

    pub fn num_generators(self) -> usize {
        self.category().generators.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_shape_homs() {
        let g = Shape::Graph.category();
        assert_eq!(g.homs[0][1].len(), 2);
        assert_eq!(g.homs[1][0].len(), 0);
        assert_eq!(g.homs[0][0].len(), 1);
        assert_eq!(g.top_down_order(), vec![1, 0]);
    }

    #[test]
    fn shape_composition_unital_and_associative() {
        for shape in [Shape::Terminal, Shape::Graph] {
            let cat = shape.category();
            let n = cat.objects.len();
            for a in 0..n {
                for b in 0..n {
                    for f in 0..cat.homs[a][b].len() {
                        let id_a = cat.homs[a][a].iter().position(|w| w.is_empty()).unwrap();
                        let id_b = cat.homs[b][b].iter().position(|w| w.is_empty()).unwrap();
                        assert_eq!(cat.compose(a, a, b, id_a, f), f);
                        assert_eq!(cat.compose(a, b, b, f, id_b), f);
                        for c in 0..n {
                            for g in 0..cat.homs[b][c].len() {
                                for d in 0..n {
                                    for h in 0..cat.homs[c][d].len() {
                                        let l = cat.compose(a, c, d, cat.compose(a, b, c, f, g), h);
                                        let r = cat.compose(a, b, d, f, cat.compose(b, c, d, g, h));
                                        assert_eq!(l, r);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
