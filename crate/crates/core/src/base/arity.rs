use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::colimit::Colimit;
use super::presheaf::{find_isomorphism, hom_set, FinPresheaf, PresheafMap};
use super::shape::Shape;
use crate::error::BaseError;

/// A dense full subcategory of arities, with realisations generated on demand.
///
/// * `Fin`: finite cardinals `n` inside finite sets.
/// * `Delta0`: the linear graphs `[n]` (`n+1` vertices, `n` consecutive
///   edges) inside directed graphs.
/// * `FinSingleton(k)`: the one-object family on the `k`-element set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArityFamily {
    Fin,
    Delta0,
    FinSingleton(usize),
}

/// A morphism of the arity family. `code` is the index of its realisation in
/// `hom_set(K src, K dst)`: the lexicographic rank of the image list for the
/// finite-set families and the shift amount for `Delta0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseMap {
    pub src: usize,
    pub dst: usize,
    pub code: u64,
}

impl ArityFamily {
    pub fn shape(self) -> Shape {
        match self {
            ArityFamily::Delta0 => Shape::Graph,
            _ => Shape::Terminal,
        }
    }

    pub fn is_object(self, a: usize) -> bool {
        match self {
            ArityFamily::FinSingleton(k) => a == k,
            _ => true,
        }
    }

    /// The `cell` arity whose tuples the nerve criterion compares against.
    pub fn cell(self) -> usize {
        match self {
            ArityFamily::Fin | ArityFamily::Delta0 => 1,
            ArityFamily::FinSingleton(k) => k,
        }
    }

    pub fn name(self) -> String {
        match self {
            ArityFamily::Fin => "fin".into(),
            ArityFamily::Delta0 => "graph".into(),
            ArityFamily::FinSingleton(k) => format!("fin{{{k}}}"),
        }
    }

    pub fn arity_label(self, a: usize) -> String {
        match self {
            ArityFamily::Delta0 => format!("[{a}]"),
            _ => a.to_string(),
        }
    }

    pub fn realise(self, a: usize) -> FinPresheaf {
        match self {
            ArityFamily::Delta0 => {
                let edges: Vec<(usize, usize)> = (0..a).map(|i| (i, i + 1)).collect();
                FinPresheaf::graph(a + 1, &edges)
            }
            _ => FinPresheaf::set(a),
        }
    }

    pub fn hom_count(self, a: usize, b: usize) -> u64 {
        if !self.is_object(a) || !self.is_object(b) {
            return 0;
        }
        match self {
            ArityFamily::Delta0 => (b + 1).saturating_sub(a) as u64,
            _ => (b as u64).pow(a as u32),
        }
    }

    pub fn homs(self, a: usize, b: usize) -> impl Iterator<Item = BaseMap> {
        (0..self.hom_count(a, b)).map(move |code| BaseMap { src: a, dst: b, code })
    }

    pub fn identity(self, a: usize) -> BaseMap {
        match self {
            ArityFamily::Delta0 => BaseMap { src: a, dst: a, code: 0 },
            _ => self.fin_from_images(a, a, &(0..a).collect::<Vec<_>>()),
        }
    }

    pub fn is_identity(self, f: BaseMap) -> bool {
        f.src == f.dst && f == self.identity(f.src)
    }

    /// Image list of a finite-set map.
    pub fn fin_images(self, f: BaseMap) -> Vec<usize> {
        debug_assert_ne!(self, ArityFamily::Delta0);
        let mut out = vec![0; f.src];
        let mut c = f.code;
        for slot in out.iter_mut().rev() {
            *slot = (c % f.dst as u64) as usize;
            c /= f.dst as u64;
        }
        out
    }

    pub fn fin_from_images(self, a: usize, b: usize, images: &[usize]) -> BaseMap {
        let code = images.iter().fold(0u64, |acc, &i| acc * b as u64 + i as u64);
        BaseMap { src: a, dst: b, code }
    }

    /// The finite-set map `ι: m → n` placing `m` at offset `k`.
    pub fn injection(self, m: usize, n: usize, k: usize) -> BaseMap {
        match self {
            ArityFamily::Delta0 => BaseMap { src: m, dst: n, code: k as u64 },
            _ => self.fin_from_images(m, n, &(k..k + m).collect::<Vec<_>>()),
        }
    }

    /// Diagrammatic composite `f ; g`.
    pub fn compose(self, f: BaseMap, g: BaseMap) -> BaseMap {
        assert_eq!(f.dst, g.src, "non-composable arity maps");
        match self {
            ArityFamily::Delta0 => BaseMap { src: f.src, dst: g.dst, code: f.code + g.code },
            _ => {
                let fi = self.fin_images(f);
                let gi = self.fin_images(g);
                let images: Vec<usize> = fi.iter().map(|&x| gi[x]).collect();
                self.fin_from_images(f.src, g.dst, &images)
            }
        }
    }

    /// Precomposition action on realisations: the map `K f`.
    pub fn realisation(self, f: BaseMap) -> PresheafMap {
        match self {
            ArityFamily::Delta0 => {
                let k = f.code as usize;
                let vertices = (0..=f.src).map(|v| v + k).collect();
                let edges = (0..f.src).map(|e| e + k).collect();
                PresheafMap::new(vec![vertices, edges])
            }
            _ => PresheafMap::new(vec![self.fin_images(f)]),
        }
    }

    /// Recovers the arity map realised by a presheaf map, if any.
    pub fn from_realisation(self, a: usize, b: usize, m: &PresheafMap) -> Option<BaseMap> {
        if !m.is_map(&self.realise(a), &self.realise(b)) || !self.is_object(a) || !self.is_object(b) {
            return None;
        }
        match self {
            ArityFamily::Delta0 => Some(BaseMap { src: a, dst: b, code: m.parts[0][0] as u64 }),
            _ => Some(self.fin_from_images(a, b, &m.parts[0])),
        }
    }

    /// Named maps of the graph family: `sigma`, `tau: [0] → [1]`.
    pub fn base_map_by_name(self, name: &str) -> Option<BaseMap> {
        match (self, name) {
            (ArityFamily::Delta0, "sigma") => Some(BaseMap { src: 0, dst: 1, code: 0 }),
            (ArityFamily::Delta0, "tau") => Some(BaseMap { src: 0, dst: 1, code: 1 }),
            _ => None,
        }
    }

    /// Renders an arity map in the file syntax.
    pub fn show(self, f: BaseMap) -> String {
        match self {
            ArityFamily::Delta0 => format!("shift({})[{}->{}]", f.code, f.src, f.dst),
            _ => {
                let imgs: Vec<String> = self.fin_images(f).iter().map(|i| i.to_string()).collect();
                format!("map({})[{}->{}]", imgs.join(","), f.src, f.dst)
            }
        }
    }

    /// The projections `cell → n` used by the nerve criterion, with the
    /// gluing conditions `(u ; p_i) = (v ; p_j)` between consecutive ones.
    pub fn limit_shape(self, n: usize) -> LimitShape {
        match self {
            ArityFamily::Fin => LimitShape {
                cell: 1,
                projections: (0..n).map(|j| self.injection(1, n, j)).collect(),
                junction: None,
            },
            ArityFamily::Delta0 => LimitShape {
                cell: 1,
                projections: (0..n).map(|j| self.injection(1, n, j)).collect(),
                junction: Some(Junction {
                    arity: 0,
                    left: BaseMap { src: 0, dst: 1, code: 1 },
                    right: BaseMap { src: 0, dst: 1, code: 0 },
                }),
            },
            ArityFamily::FinSingleton(k) => {
                // Projections along the constant maps; the retract of 1 in k.
                let projections = (0..k).map(|j| self.fin_from_images(k, k, &vec![j; k])).collect();
                LimitShape { cell: k, projections, junction: None }
            }
        }
    }

    /// A density presentation up to arity `max`: colimit diagrams in the
    /// family whose colimits in the ambient category realise their apex.
    pub fn density_presentation(self, max: usize) -> Vec<DensityDiagram> {
        let mut out = Vec::new();
        match self {
            ArityFamily::Fin => {
                // Copowers of 1.
                for n in 0..=max {
                    out.push(DensityDiagram {
                        apex: n,
                        nodes: vec![1; n],
                        edges: vec![],
                        cocone: (0..n).map(|j| self.injection(1, n, j)).collect(),
                    });
                }
                // Binary coproducts p + q.
                for n in 0..=max {
                    for p in 0..=n {
                        let q = n - p;
                        out.push(DensityDiagram {
                            apex: n,
                            nodes: vec![p, q],
                            edges: vec![],
                            cocone: vec![self.injection(p, n, 0), self.injection(q, n, p)],
                        });
                    }
                }
            }
            ArityFamily::Delta0 => {
                for n in 1..=max {
                    // Nodes: edges e_0..e_{n-1}, then junctions j_1..j_{n-1}.
                    let mut nodes = vec![1; n];
                    nodes.extend(std::iter::repeat_n(0, n - 1));
                    let mut edges = Vec::new();
                    let mut cocone: Vec<BaseMap> = (0..n).map(|j| self.injection(1, n, j)).collect();
                    for j in 0..n - 1 {
                        let junction = n + j;
                        edges.push((junction, j, BaseMap { src: 0, dst: 1, code: 1 }));
                        edges.push((junction, j + 1, BaseMap { src: 0, dst: 1, code: 0 }));
                        cocone.push(BaseMap { src: 0, dst: n, code: (j + 1) as u64 });
                    }
                    out.push(DensityDiagram { apex: n, nodes, edges, cocone });
                }
            }
            ArityFamily::FinSingleton(_) => {}
        }
        out
    }
}

impl BaseMap {
    pub fn realisation(self, family: &ArityFamily) -> PresheafMap {
        family.realisation(self)
    }
}

/// Gluing condition between consecutive projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Junction {
    pub arity: usize,
    /// `left: junction → cell` applied to projection `j`.
    pub left: BaseMap,
    /// `right: junction → cell` applied to projection `j + 1`.
    pub right: BaseMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitShape {
    pub cell: usize,
    pub projections: Vec<BaseMap>,
    pub junction: Option<Junction>,
}

/// A colimit diagram inside the arity family with a designated apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityDiagram {
    pub apex: usize,
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, BaseMap)>,
    pub cocone: Vec<BaseMap>,
}

impl DensityDiagram {
    /// Colimit of the realised diagram in the ambient category.
    pub fn colimit(&self, family: &ArityFamily) -> Result<Colimit, BaseError> {
        let objects: Vec<FinPresheaf> = self.nodes.iter().map(|&a| family.realise(a)).collect();
        let arrows: Vec<_> = self.edges.iter().map(|&(i, j, f)| (i, j, family.realisation(f))).collect();
        if objects.is_empty() {
            return super::colimit::coproduct(&[], family.shape());
        }
        Colimit::of(&objects, &arrows)
    }

    /// Checks that the cocone exhibits `K apex` as the colimit.
    pub fn is_sound(&self, family: &ArityFamily) -> Result<bool, BaseError> {
        let colim = self.colimit(family)?;
        let apex = family.realise(self.apex);
        if self.nodes.is_empty() {
            return Ok(apex.is_empty());
        }
        let legs: Vec<PresheafMap> = self.cocone.iter().map(|&f| family.realisation(f)).collect();
        let mediator = colim.factor(&legs, &apex)?;
        Ok(mediator.is_bijective(&apex) && find_isomorphism(&colim.object, &apex).is_some())
    }
}

impl fmt::Display for BaseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}[{}->{}]", self.code, self.src, self.dst)
    }
}

/// A presheaf on the arity family restricted to finitely many arities:
/// sets `F(a)` and, for every arity map `f: a → b`, the action `F(b) → F(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityIndexedFamily {
    pub family: ArityFamily,
    pub arities: Vec<usize>,
    pub sets: BTreeMap<usize, usize>,
    /// `actions[(a, b)][code]` tabulates `F(b) → F(a)`.
    pub actions: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl ArityIndexedFamily {
    pub fn size(&self, a: usize) -> usize {
        self.sets[&a]
    }

    pub fn act(&self, f: BaseMap, x: usize) -> usize {
        self.actions[&(f.src, f.dst)][f.code as usize][x]
    }

    /// Contravariant functoriality on all represented arities.
    pub fn is_functorial(&self) -> bool {
        let fam = self.family;
        for &a in &self.arities {
            let id = fam.identity(a);
            if (0..self.size(a)).any(|x| self.act(id, x) != x) {
                return false;
            }
            for &b in &self.arities {
                for &c in &self.arities {
                    for f in fam.homs(a, b) {
                        for g in fam.homs(b, c) {
                            let fg = fam.compose(f, g);
                            for x in 0..self.size(c) {
                                if self.act(fg, x) != self.act(f, self.act(g, x)) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// The nerve `F(a) = E(K a, X)` with precomposition action, restricted to
/// the listed arities. Elements of `F(a)` follow [`hom_set`] order.
pub fn nerve(family: ArityFamily, x: &FinPresheaf, arities: &[usize]) -> ArityIndexedFamily {
    let homs: BTreeMap<usize, Vec<PresheafMap>> = arities.iter().map(|&a| (a, hom_set(&family.realise(a), x))).collect();
    let index: BTreeMap<usize, std::collections::HashMap<&PresheafMap, usize>> =
        homs.iter().map(|(&a, hs)| (a, hs.iter().enumerate().map(|(i, h)| (h, i)).collect())).collect();
    let mut actions = BTreeMap::new();
    for &a in arities {
        for &b in arities {
            let tables = family
                .homs(a, b)
                .map(|f| {
                    let kf = family.realisation(f);
                    homs[&b].iter().map(|phi| index[&a][&kf.then(phi)]).collect()
                })
                .collect();
            actions.insert((a, b), tables);
        }
    }
    ArityIndexedFamily {
        family,
        arities: arities.to_vec(),
        sets: homs.iter().map(|(&a, hs)| (a, hs.len())).collect(),
        actions,
    }
}
