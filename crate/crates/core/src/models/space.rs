use std::collections::{BTreeMap, HashMap};

use crate::base::{find_isomorphism, hom_set, ArityFamily, BaseMap, FinPresheaf, PresheafMap, Shape};

/// The nerve of a carrier over a window of arities, with every arity map's
/// precomposition tabulated. Elements of `hom(K a, X)` are indexed in
/// [`hom_set`] order.
#[derive(Debug, Clone)]
pub struct ModelSpace {
    pub family: ArityFamily,
    pub carrier: FinPresheaf,
    pub arities: Vec<usize>,
    homs: BTreeMap<usize, Vec<PresheafMap>>,
    index: BTreeMap<usize, HashMap<PresheafMap, usize>>,
    base: HashMap<BaseMap, Vec<usize>>,
}

impl ModelSpace {
    pub fn new(family: ArityFamily, carrier: FinPresheaf, arities: &[usize]) -> Self {
        let homs: BTreeMap<usize, Vec<PresheafMap>> =
            arities.iter().map(|&a| (a, hom_set(&family.realise(a), &carrier))).collect();
        let index: BTreeMap<usize, HashMap<PresheafMap, usize>> = homs
            .iter()
            .map(|(&a, hs)| (a, hs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect()))
            .collect();
        let mut base = HashMap::new();
        for &a in arities {
            for &b in arities {
                for f in family.homs(a, b) {
                    let kf = family.realisation(f);
                    let table = homs[&b].iter().map(|x| index[&a][&kf.then(x)]).collect();
                    base.insert(f, table);
                }
            }
        }
        ModelSpace { family, carrier, arities: arities.to_vec(), homs, index, base }
    }

    pub fn has_arity(&self, a: usize) -> bool {
        self.homs.contains_key(&a)
    }

    pub fn size(&self, a: usize) -> usize {
        self.homs[&a].len()
    }

    pub fn element(&self, a: usize, i: usize) -> &PresheafMap {
        &self.homs[&a][i]
    }

    pub fn index_of(&self, a: usize, x: &PresheafMap) -> Option<usize> {
        self.index.get(&a)?.get(x).copied()
    }

    /// Precomposition along `f`: `hom(K dst, X) → hom(K src, X)`.
    pub fn base_table(&self, f: BaseMap) -> &[usize] {
        &self.base[&f]
    }
}

/// Carriers up to isomorphism with at most `max` elements per component.
pub fn carriers(shape: Shape, max: usize) -> Vec<FinPresheaf> {
    match shape {
        Shape::Terminal => (0..=max).map(FinPresheaf::set).collect(),
        Shape::Graph => {
            let mut out: Vec<FinPresheaf> = Vec::new();
            for v in 0..=max {
                let pairs: Vec<(usize, usize)> = (0..v).flat_map(|s| (0..v).map(move |t| (s, t))).collect();
                for e in 0..=max {
                    if v == 0 && e > 0 {
                        break;
                    }
                    for multiset in multisets(pairs.len(), e) {
                        let edges: Vec<(usize, usize)> = multiset.iter().map(|&k| pairs[k]).collect();
                        let g = FinPresheaf::graph(v, &edges);
                        if !out.iter().any(|h| h.sizes() == g.sizes() && find_isomorphism(h, &g).is_some()) {
                            out.push(g);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Non-decreasing sequences of length `k` over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in lo..n {
            cur.push(x);
            go(n, k, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_census() {
        // Unlabelled directed multigraphs with at most 1 vertex and 1 edge:
        // empty, point, loop.
        assert_eq!(carriers(Shape::Graph, 1).len(), 3);
        let two = carriers(Shape::Graph, 2);
        assert!(two.iter().all(|g| g.num_vertices() <= 2 && g.num_edges() <= 2));
    }

    #[test]
    fn base_tables_are_precomposition() {
        let sp = ModelSpace::new(ArityFamily::Fin, FinPresheaf::set(2), &[0, 1, 2]);
        let swap = ArityFamily::Fin.fin_from_images(2, 2, &[1, 0]);
        let t = sp.base_table(swap);
        for (i, &j) in t.iter().enumerate() {
            let x = sp.element(2, i);
            let y = sp.element(2, j);
            assert_eq!(y.parts[0], vec![x.parts[0][1], x.parts[0][0]]);
        }
    }
}
