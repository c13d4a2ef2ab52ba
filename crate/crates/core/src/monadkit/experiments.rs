use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::base::{hom_set, pushout, ArityFamily, FinPresheaf, PresheafMap, Shape};
use crate::error::MonadError;
use crate::models::carriers;

use super::graph::{Involution, Involutive, Pointing};
use super::monad::{ComputableMonad, MonadObject};

fn path_count(n: usize, x: &FinPresheaf) -> usize {
    hom_set(&ArityFamily::Delta0.realise(n), x).len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointedMonad {
    P,
    Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomCensus {
    pub monad: PointedMonad,
    pub n: usize,
    pub direct: usize,
    pub formula: usize,
}

impl HomCensus {
    pub fn agrees(&self) -> bool {
        self.direct == self.formula
    }
}

/// `|Grph([n], T X)|` counted directly and by the closed forms in terms of
/// `g(k) = |Grph([k], X)|`.
pub fn hom_census_formulas(t: PointedMonad, n: usize, x: &FinPresheaf) -> Result<HomCensus, MonadError> {
    let tx = match t {
        PointedMonad::P => Pointing.object(x)?,
        PointedMonad::Q => Involution.object(x)?,
    };
    let direct = path_count(n, &tx.object);
    let g = |k| path_count(k, x);
    let formula = match (t, n) {
        (PointedMonad::P, 0) => g(0) + g(1),
        (PointedMonad::P, _) => g(n),
        (PointedMonad::Q, 0) => g(0) + 2 * g(1),
        (PointedMonad::Q, 1) => 2 * g(1),
        (PointedMonad::Q, _) => g(n),
    };
    Ok(HomCensus { monad: t, n, direct, formula })
}

/// A pushout square `X ← Z → Y` with names for the cells of its apex.
#[derive(Debug, Clone)]
pub struct PushoutProbe {
    pub z: FinPresheaf,
    pub x: FinPresheaf,
    pub y: FinPresheaf,
    pub f: PresheafMap,
    pub g: PresheafMap,
    pub apex: FinPresheaf,
    pub inl: PresheafMap,
    pub inr: PresheafMap,
    pub names: Vec<Vec<String>>,
}

impl PushoutProbe {
    pub fn new(z: FinPresheaf, x: FinPresheaf, y: FinPresheaf, f: PresheafMap, g: PresheafMap) -> Result<Self, MonadError> {
        let po = pushout(&z, &x, &y, &f, &g).map_err(|e| MonadError::Unsupported(e.to_string()))?;
        let apex = po.object().clone();
        let names = super::default_names(&apex);
        Ok(PushoutProbe { z, x, y, f, g, inl: po.inl().clone(), inr: po.inr().clone(), apex, names })
    }

    /// Two edges `r: a → b` and `s: c → b` glued at their common target.
    pub fn cospan() -> Self {
        let fam = ArityFamily::Delta0;
        let tau = fam.realisation(fam.homs(0, 1).nth(1).expect("[0] has two maps into [1]"));
        let mut probe = PushoutProbe::new(fam.realise(0), fam.realise(1), fam.realise(1), tau.clone(), tau).expect("pushout exists");
        let (inl, inr) = (&probe.inl, &probe.inr);
        let mut names = vec![vec![String::new(); probe.apex.size(0)], vec![String::new(); probe.apex.size(1)]];
        names[0][inl.apply(0, 0)] = "a".into();
        names[0][inl.apply(0, 1)] = "b".into();
        names[0][inr.apply(0, 0)] = "c".into();
        names[1][inl.apply(1, 0)] = "r".into();
        names[1][inr.apply(1, 0)] = "s".into();
        probe.names = names;
        probe
    }

    fn pulled_back(&self, leg: &PresheafMap, x: &FinPresheaf) -> Vec<Vec<String>> {
        (0..x.num_components()).map(|c| (0..x.size(c)).map(|i| self.names[c][leg.apply(c, i)].clone()).collect()).collect()
    }

    fn objects(&self, t: &dyn ComputableMonad) -> Result<[MonadObject; 4], MonadError> {
        let zleg = self.f.then(&self.inl);
        Ok([
            t.build(&self.z, &self.pulled_back(&zleg, &self.z))?,
            t.build(&self.x, &self.pulled_back(&self.inl, &self.x))?,
            t.build(&self.y, &self.pulled_back(&self.inr, &self.y))?,
            t.build(&self.apex, &self.names)?,
        ])
    }
}

/// A cell of `T` of the apex, with its endpoints when it is an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub component: usize,
    pub label: String,
    pub ends: Option<(String, String)>,
}

fn cell(t: &MonadObject, c: usize, i: usize) -> Cell {
    let ends = (t.object.shape() == Shape::Graph && c == 1)
        .then(|| (t.labels[0][t.object.src(i)].clone(), t.labels[0][t.object.tgt(i)].clone()));
    Cell { component: c, label: t.labels[c][i].clone(), ends }
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationVerdict {
    pub monad: String,
    pub preserved: bool,
    pub exact: bool,
    pub domain_sizes: Vec<usize>,
    pub codomain_sizes: Vec<usize>,
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
    /// Cells of `T` of the apex outside the comparison's image.
    pub missing: Vec<Cell>,
    /// Pairs of domain cells with the same image, shown by their images.
    pub collapsed: Vec<Cell>,
}

/// The comparison `T X +_{T Z} T Y → T(X +_Z Y)`.
pub fn pushout_preservation(t: &dyn ComputableMonad, probe: &PushoutProbe) -> Result<PreservationVerdict, MonadError> {
    let [tz, tx, ty, tp] = probe.objects(t)?;
    let trunc = || MonadError::Unsupported("a leg leaves the truncation".into());
    let tf = t.fmap(&tz, &tx, &probe.f).ok_or_else(trunc)?;
    let tg = t.fmap(&tz, &ty, &probe.g).ok_or_else(trunc)?;
    let tl = t.fmap(&tx, &tp, &probe.inl).ok_or_else(trunc)?;
    let tr = t.fmap(&ty, &tp, &probe.inr).ok_or_else(trunc)?;
    let bad = |e: crate::error::BaseError| MonadError::Unsupported(e.to_string());
    let po = pushout(&tz.object, &tx.object, &ty.object, &tf, &tg).map_err(bad)?;
    let cmp = po.factor(&tl, &tr, &tp.object).map_err(bad)?;
    let dom = po.object();
    let comps = dom.num_components();
    let mut missing = Vec::new();
    let mut collapsed = Vec::new();
    let mut injective = Vec::new();
    let mut surjective = Vec::new();
    for c in 0..comps {
        let mut seen = vec![false; tp.object.size(c)];
        let mut inj = true;
        for i in 0..dom.size(c) {
            let j = cmp.apply(c, i);
            if seen[j] {
                inj = false;
                collapsed.push(cell(&tp, c, j));
            }
            seen[j] = true;
        }
        let gaps: Vec<usize> = (0..seen.len()).filter(|&j| !seen[j]).collect();
        surjective.push(gaps.is_empty());
        injective.push(inj);
        missing.extend(gaps.into_iter().map(|j| cell(&tp, c, j)));
    }
    Ok(PreservationVerdict {
        monad: t.name(),
        preserved: injective.iter().chain(&surjective).all(|&b| b),
        exact: [&tz, &tx, &ty, &tp].iter().all(|o| o.exact),
        domain_sizes: dom.sizes().to_vec(),
        codomain_sizes: tp.object.sizes().to_vec(),
        injective,
        surjective,
        missing,
        collapsed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ArityProbeVerdict {
    pub monad: String,
    pub arity: usize,
    pub passed: bool,
    pub exact: bool,
    pub total: usize,
    /// Maps `[a] → T P` hit by neither leg, as the labels of their edges
    /// (or their vertex at arity 0).
    pub unhit: Vec<Vec<String>>,
}

impl ArityProbeVerdict {
    pub fn witness(&self) -> Option<&[String]> {
        self.unhit.first().map(|v| v.as_slice())
    }
}

/// Joint surjectivity of `Grph([a], T X) + Grph([a], T Y) → Grph([a], T P)`.
pub fn nerve_arity_probe(t: &dyn ComputableMonad, probe: &PushoutProbe, arity: usize) -> Result<ArityProbeVerdict, MonadError> {
    let [_, tx, ty, tp] = probe.objects(t)?;
    let trunc = || MonadError::Unsupported("a leg leaves the truncation".into());
    let tl = t.fmap(&tx, &tp, &probe.inl).ok_or_else(trunc)?;
    let tr = t.fmap(&ty, &tp, &probe.inr).ok_or_else(trunc)?;
    let k = ArityFamily::Delta0.realise(arity);
    let mut hit: HashSet<PresheafMap> = HashSet::new();
    hit.extend(hom_set(&k, &tx.object).iter().map(|h| h.then(&tl)));
    hit.extend(hom_set(&k, &ty.object).iter().map(|h| h.then(&tr)));
    let all = hom_set(&k, &tp.object);
    let unhit: Vec<Vec<String>> = all
        .iter()
        .filter(|h| !hit.contains(h))
        .map(|h| {
            if arity == 0 {
                vec![tp.labels[0][h.apply(0, 0)].clone()]
            } else {
                (0..arity).map(|e| tp.labels[1][h.apply(1, e)].clone()).collect()
            }
        })
        .collect();
    Ok(ArityProbeVerdict {
        monad: t.name(),
        arity,
        passed: unhit.is_empty(),
        exact: tx.exact && ty.exact && tp.exact,
        total: all.len(),
        unhit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalanCensus {
    pub carrier: usize,
    pub depth: usize,
    /// Terms with `n` internal nodes, for `n ≤ depth`.
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Counts binary trees over an `x`-element set with at most `depth` internal
/// nodes, by enumerating their preorder codes.
pub fn catalan_census(x: usize, depth: usize) -> CatalanCensus {
    fn go(x: usize, depth: usize, open: usize, nodes: usize, counts: &mut [u64]) {
        if open == 0 {
            counts[nodes] += 1;
            return;
        }
        if nodes < depth {
            go(x, depth, open + 1, nodes + 1, counts);
        }
        for _ in 0..x {
            go(x, depth, open - 1, nodes, counts);
        }
    }
    let mut counts = vec![0u64; depth + 1];
    go(x, depth, 1, 0, &mut counts);
    let total = counts.iter().sum();
    CatalanCensus { carrier: x, depth, counts, total }
}

/// A factorisation `h = f ; g` through `y`, by exhaustive search.
pub fn factor_through(h: &PresheafMap, x: &FinPresheaf, y: &FinPresheaf, z: &FinPresheaf) -> Option<(PresheafMap, PresheafMap)> {
    let second = hom_set(y, z);
    for f in hom_set(x, y) {
        for g in &second {
            if f.then(g) == *h {
                return Some((f, g.clone()));
            }
        }
    }
    None
}

/// Algebra structures `a: T X → X`: maps restricting to the identity along
/// the unit with `μ ; a = T(a) ; a`.
pub fn algebra_structures(t: &dyn ComputableMonad, x: &FinPresheaf) -> Result<Vec<PresheafMap>, MonadError> {
    let tx = t.object(x)?;
    let ttx = t.build(&tx.object, &tx.labels)?;
    let mu = t.multiply(&tx, &ttx).ok_or_else(|| MonadError::Unsupported("multiplication leaves the truncation".into()))?;
    let id = PresheafMap::identity(x);
    let mut out = Vec::new();
    for a in hom_set(&tx.object, x) {
        if tx.unit.then(&a) != id {
            continue;
        }
        let Some(ta) = t.fmap(&ttx, &tx, &a) else { continue };
        if mu.then(&a) == ta.then(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CoequalizerRow {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub p_structures: usize,
    pub q_structures: usize,
    /// Q-structures `i` with `s i = t`.
    pub equalized: usize,
    pub involutive: usize,
    pub bijective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoequalizerReport {
    pub max: usize,
    pub rows: Vec<CoequalizerRow>,
}

impl CoequalizerReport {
    pub fn all_bijective(&self) -> bool {
        self.rows.iter().all(|r| r.bijective)
    }
}

/// For every graph with at most `max` vertices and edges: P- and Q-algebra
/// structures, the Q-structures equalised by `s i = t`, and the algebras of
/// the involutive-graph monad, compared as edge involutions.
pub fn coequalizer_experiment(max: usize) -> Result<CoequalizerReport, MonadError> {
    let mut rows = Vec::new();
    for x in carriers(Shape::Graph, max) {
        let n = x.num_edges();
        let p = algebra_structures(&Pointing, &x)?;
        let qx = Involution.object(&x)?;
        let q = algebra_structures(&Involution, &x)?;
        let inv_of = |a: &PresheafMap, t: &MonadObject, term: fn(usize) -> super::Term| -> Vec<usize> {
            (0..n).map(|e| a.apply(1, t.lookup(1, &term(e)).expect("edge term"))).collect()
        };
        let equalized: BTreeSet<Vec<usize>> = q
            .iter()
            .map(|a| inv_of(a, &qx, super::Term::Inv))
            .filter(|i| (0..n).all(|e| x.src(i[e]) == x.tgt(e)))
            .collect();
        let tx = Involutive.object(&x)?;
        let involutive: BTreeSet<Vec<usize>> =
            algebra_structures(&Involutive, &x)?.iter().map(|a| inv_of(a, &tx, super::Term::Rev)).collect();
        rows.push(CoequalizerRow {
            vertices: x.num_vertices(),
            edges: x.edge_list(),
            p_structures: p.len(),
            q_structures: q.len(),
            equalized: equalized.len(),
            involutive: involutive.len(),
            bijective: equalized == involutive,
        });
    }
    Ok(CoequalizerReport { max, rows })
}
