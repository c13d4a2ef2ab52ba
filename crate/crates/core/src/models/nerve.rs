use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::base::{ArityFamily, ArityIndexedFamily, DensityDiagram};

/// Why a family fails the nerve criterion at some arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NerveFailure {
    /// Two elements of `F(apex)` with the same limit tuple.
    NotInjective { apex: usize, elements: (usize, usize) },
    /// A compatible tuple not in the image of `F(apex)`.
    NotSurjective { apex: usize, tuple: Vec<usize> },
}

impl NerveFailure {
    pub fn arity(&self) -> usize {
        match self {
            NerveFailure::NotInjective { apex, .. } | NerveFailure::NotSurjective { apex, .. } => *apex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveVerdict {
    pub pass: bool,
    pub checked: Vec<usize>,
    pub failure: Option<NerveFailure>,
}

/// Compatible families over a density diagram: the limit of `F` on it.
pub fn limit_tuples(f: &ArityIndexedFamily, d: &DensityDiagram) -> Vec<Vec<usize>> {
    limit_tuples_capped(f, d, usize::MAX).expect("uncapped")
}

/// As [`limit_tuples`], giving up once more than `cap` tuples exist.
pub fn limit_tuples_capped(f: &ArityIndexedFamily, d: &DensityDiagram, cap: usize) -> Option<Vec<Vec<usize>>> {
    fn go(f: &ArityIndexedFamily, d: &DensityDiagram, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        let i = cur.len();
        if i == d.nodes.len() {
            out.push(cur.clone());
            return out.len() <= cap;
        }
        'cand: for x in 0..f.size(d.nodes[i]) {
            for &(s, t, m) in &d.edges {
                // Edge s → t with arity map m: F(t) → F(s) must send x_t to x_s.
                if s.max(t) != i {
                    continue;
                }
                let (xs, xt) = if s == i { (x, cur[t]) } else { (cur[s], x) };
                if f.act(m, xt) != xs {
                    continue 'cand;
                }
            }
            cur.push(x);
            let ok = go(f, d, cur, out, cap);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    go(f, d, &mut Vec::new(), &mut out, cap).then_some(out)
}

/// Checks that `F(apex)` maps bijectively onto the limit over `d`.
fn check_diagram(f: &ArityIndexedFamily, d: &DensityDiagram) -> Option<NerveFailure> {
    let tuples = limit_tuples(f, d);
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut hit: Vec<Option<usize>> = vec![None; tuples.len()];
    for x in 0..f.size(d.apex) {
        let image: Vec<usize> = d.cocone.iter().map(|&c| f.act(c, x)).collect();
        let k = index[&image];
        if let Some(y) = hit[k] {
            return Some(NerveFailure::NotInjective { apex: d.apex, elements: (y, x) });
        }
        hit[k] = Some(x);
    }
    hit.iter()
        .position(|h| h.is_none())
        .map(|k| NerveFailure::NotSurjective { apex: d.apex, tuple: tuples[k].clone() })
}

pub fn represented(f: &ArityIndexedFamily, d: &DensityDiagram) -> bool {
    f.sets.contains_key(&d.apex) && d.nodes.iter().all(|a| f.sets.contains_key(a))
}

/// The diagrams the nerve criterion checks, grouped by apex.
pub fn nerve_diagrams(family: ArityFamily, top: usize) -> BTreeMap<usize, Vec<DensityDiagram>> {
    let mut by_apex: BTreeMap<usize, Vec<DensityDiagram>> = BTreeMap::new();
    match family {
        ArityFamily::FinSingleton(k) => {
            // Sets with k elements: the product of k copies along constants.
            let shape = family.limit_shape(k);
            let node = shape.cell;
            by_apex.entry(k).or_default().push(DensityDiagram {
                apex: k,
                nodes: vec![node; k],
                edges: vec![],
                cocone: shape.projections,
            });
        }
        _ => {
            for d in family.density_presentation(top) {
                by_apex.entry(d.apex).or_default().push(d);
            }
        }
    }
    by_apex
}

/// The nerve criterion over the bundled density presentations, scanning
/// represented arities in increasing order.
pub fn is_nerve(family: ArityFamily, f: &ArityIndexedFamily) -> NerveVerdict {
    let top = f.arities.iter().copied().max().unwrap_or(0);
    let by_apex = nerve_diagrams(family, top);
    let mut checked = Vec::new();
    for (apex, ds) in by_apex {
        let mut any = false;
        for d in ds.iter().filter(|d| represented(f, d)) {
            any = true;
            if let Some(fail) = check_diagram(f, d) {
                checked.push(apex);
                return NerveVerdict { pass: false, checked, failure: Some(fail) };
            }
        }
        if any {
            checked.push(apex);
        }
    }
    NerveVerdict { pass: true, checked, failure: None }
}

/// The Segal comparison `F[n] → F[1] ×_{F[0]} ··· ×_{F[0]} F[1]`.
pub fn segal_check(f: &ArityIndexedFamily, n: usize) -> bool {
    segal_failure(f, n).is_none()
}

pub fn segal_failure(f: &ArityIndexedFamily, n: usize) -> Option<NerveFailure> {
    assert!(n >= 1, "the Segal comparison starts at n = 1");
    let d = ArityFamily::Delta0.density_presentation(n).pop().expect("diagram for [n]");
    check_diagram(f, &d)
}

/// A finite category by explicit composition table, used to build Segal
/// test families.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    pub objects: usize,
    /// `(src, dst)` of each morphism.
    pub arrows: Vec<(usize, usize)>,
    /// `comp[f][g]` is `f ; g` when `dst f = src g`.
    pub comp: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    /// Checks identities and associativity; returns the identity of each object.
    pub fn identities(&self) -> Option<Vec<usize>> {
        let mut ids = Vec::new();
        for o in 0..self.objects {
            let id = (0..self.arrows.len()).find(|&e| {
                self.arrows[e] == (o, o)
                    && (0..self.arrows.len()).all(|f| {
                        (self.arrows[f].1 != o || self.comp[f][e] == Some(f))
                            && (self.arrows[f].0 != o || self.comp[e][f] == Some(f))
                    })
            })?;
            ids.push(id);
        }
        Some(ids)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.arrows[f].1 == self.arrows[g].0;
                match self.comp[f][g] {
                    Some(h) if !composable || self.arrows[h] != (self.arrows[f].0, self.arrows[g].1) => return false,
                    None if composable => return false,
                    _ => {}
                }
                for h in 0..n {
                    if let (Some(fg), Some(gh)) = (self.comp[f][g], self.comp[g][h]) {
                        if self.comp[fg][h] != self.comp[f][gh] {
                            return false;
                        }
                    }
                }
            }
        }
        self.identities().is_some()
    }

    /// The free category on a finite acyclic graph, or any category given
    /// by arrows and a composition function.
    pub fn from_fn(objects: usize, arrows: Vec<(usize, usize)>, comp: impl Fn(usize, usize) -> usize) -> Self {
        let n = arrows.len();
        let table = (0..n)
            .map(|f| (0..n).map(|g| (arrows[f].1 == arrows[g].0).then(|| comp(f, g))).collect())
            .collect();
        FiniteCategory { objects, arrows, comp: table }
    }

    /// The Δ₀-nerve: `F[n]` is the set of composable strings of length `n`;
    /// `shift(k)[m → n]` takes the substring starting at `k`.
    pub fn nerve(&self, max: usize) -> ArityIndexedFamily {
        let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..self.objects).map(|o| vec![o]).collect()];
        if max >= 1 {
            levels.push((0..self.arrows.len()).map(|e| vec![e]).collect());
        }
        for _ in 2..=max {
            let prev = levels.last().unwrap();
            let mut next = Vec::new();
            for s in prev {
                for e in 0..self.arrows.len() {
                    if self.arrows[*s.last().unwrap()].1 == self.arrows[e].0 {
                        let mut t = s.clone();
                        t.push(e);
                        next.push(t);
                    }
                }
            }
            levels.push(next);
        }
        strings_family(self, &levels, max)
    }
}

/// A thin category on `objects` from a reflexive, transitive relation.
fn thin(objects: usize, arrows: Vec<(usize, usize)>) -> FiniteCategory {
    let pos = |s: usize, t: usize| arrows.iter().position(|&a| a == (s, t)).expect("transitive relation");
    let comp = |f: usize, g: usize| pos(arrows[f].0, arrows[g].1);
    FiniteCategory::from_fn(objects, arrows.clone(), comp)
}

fn one_object(n: usize, comp: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    FiniteCategory::from_fn(1, vec![(0, 0); n], comp)
}

/// Small named categories with at most 4 objects and 8 morphisms.
pub fn category_catalogue() -> Vec<(&'static str, FiniteCategory)> {
    let ids = |n: usize| (0..n).map(|o| (o, o)).collect::<Vec<_>>();
    let with = |n: usize, extra: &[(usize, usize)]| {
        let mut v = ids(n);
        v.extend_from_slice(extra);
        v
    };
    vec![
        ("terminal", thin(1, ids(1))),
        ("discrete-2", thin(2, ids(2))),
        ("arrow", thin(2, with(2, &[(0, 1)]))),
        ("simplex-2", thin(3, with(3, &[(0, 1), (1, 2), (0, 2)]))),
        ("codiscrete-2", thin(2, with(2, &[(0, 1), (1, 0)]))),
        ("span", thin(3, with(3, &[(2, 0), (2, 1)]))),
        ("cospan-4", thin(4, with(4, &[(0, 3), (1, 3), (2, 3)]))),
        ("parallel-pair", FiniteCategory::from_fn(2, with(2, &[(0, 1), (0, 1)]), |f, g| if f < 2 { g } else { f })),
        ("cyclic-3", one_object(3, |f, g| (f + g) % 3)),
        ("klein-four", one_object(4, |f, g| f ^ g)),
        ("idempotent", one_object(2, |f, g| f.max(g))),
    ]
}

fn strings_family(c: &FiniteCategory, levels: &[Vec<Vec<usize>>], max: usize) -> ArityIndexedFamily {
    let fam = ArityFamily::Delta0;
    let arities: Vec<usize> = (0..=max).collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut actions = BTreeMap::new();
    for &m in &arities {
        for &n in &arities {
            let tables = fam
                .homs(m, n)
                .map(|f| {
                    let k = f.code as usize;
                    levels[n]
                        .iter()
                        .map(|s| {
                            let sub: Vec<usize> = if m == 0 {
                                // The k-th vertex of the string.
                                let v = if n == 0 {
                                    s[0]
                                } else if k < n {
                                    c.arrows[s[k]].0
                                } else {
                                    c.arrows[s[n - 1]].1
                                };
                                vec![v]
                            } else {
                                s[k..k + m].to_vec()
                            };
                            index[m][&sub]
                        })
                        .collect()
                })
                .collect();
            actions.insert((m, n), tables);
        }
    }
    ArityIndexedFamily {
        family: fam,
        arities,
        sets: (0..=max).map(|n| (n, levels[n].len())).collect(),
        actions,
    }
}

/// Removes element `x` of `F(k)` together with everything above that
/// restricts to it, keeping the family functorial.
pub fn remove_cell(f: &ArityIndexedFamily, k: usize, x: usize) -> ArityIndexedFamily {
    let fam = f.family;
    let mut dead: BTreeMap<usize, Vec<bool>> = f.sets.iter().map(|(&a, &n)| (a, vec![false; n])).collect();
    dead.get_mut(&k).unwrap()[x] = true;
    for &n in &f.arities {
        if n <= k {
            continue;
        }
        for y in 0..f.size(n) {
            if fam.homs(k, n).any(|g| dead[&k][f.act(g, y)]) {
                dead.get_mut(&n).unwrap()[y] = true;
            }
        }
    }
    reindex(f, &dead, &BTreeMap::new())
}

/// Adds a copy of `x ∈ F(k)` with the same restrictions; nothing above
/// restricts to the copy. Only functorial when `k` has no endomaps besides
/// the identity, as in `Delta0`.
pub fn duplicate_cell(f: &ArityIndexedFamily, k: usize, x: usize) -> ArityIndexedFamily {
    assert_eq!(f.family.hom_count(k, k), 1, "copy would not be functorial");
    let dead: BTreeMap<usize, Vec<bool>> = f.sets.iter().map(|(&a, &n)| (a, vec![false; n])).collect();
    let mut extra = BTreeMap::new();
    extra.insert(k, x);
    reindex(f, &dead, &extra)
}

fn reindex(
    f: &ArityIndexedFamily,
    dead: &BTreeMap<usize, Vec<bool>>,
    copies: &BTreeMap<usize, usize>,
) -> ArityIndexedFamily {
    let fam = f.family;
    let mut newidx: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
    let mut sets = BTreeMap::new();
    for (&a, d) in dead {
        let mut next = 0;
        let map: Vec<Option<usize>> = d
            .iter()
            .map(|&gone| {
                (!gone).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        sets.insert(a, next + usize::from(copies.contains_key(&a)));
        newidx.insert(a, map);
    }
    let mut actions = BTreeMap::new();
    for &a in &f.arities {
        for &b in &f.arities {
            let tables = fam
                .homs(a, b)
                .map(|g| {
                    let mut t: Vec<usize> = (0..f.size(b))
                        .filter(|&y| newidx[&b][y].is_some())
                        .map(|y| newidx[&a][f.act(g, y)].expect("functorial removal"))
                        .collect();
                    if let Some(&x) = copies.get(&b) {
                        let img = if a == b && fam.is_identity(g) { sets[&b] - 1 } else { newidx[&a][f.act(g, x)].unwrap() };
                        t.push(img);
                    }
                    t
                })
                .collect();
            actions.insert((a, b), tables);
        }
    }
    ArityIndexedFamily { family: fam, arities: f.arities.clone(), sets, actions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{nerve, FinPresheaf};

    fn arrow_category() -> FiniteCategory {
        // Objects 0, 1; arrows id0, id1, f: 0 → 1.
        FiniteCategory::from_fn(2, vec![(0, 0), (1, 1), (0, 1)], |a, b| match (a, b) {
            (0, x) | (x, 1) => x,
            _ => unreachable!(),
        })
    }

    #[test]
    fn nerves_of_presheaves_pass() {
        for x in [FinPresheaf::set(0), FinPresheaf::set(2), FinPresheaf::set(3)] {
            let f = nerve(ArityFamily::Fin, &x, &[0, 1, 2, 3]);
            assert!(is_nerve(ArityFamily::Fin, &f).pass);
        }
        let g = FinPresheaf::graph(3, &[(0, 1), (1, 2), (1, 1)]);
        let f = nerve(ArityFamily::Delta0, &g, &[0, 1, 2, 3]);
        assert!(is_nerve(ArityFamily::Delta0, &f).pass);
    }

    #[test]
    fn arrow_category_is_segal() {
        let c = arrow_category();
        assert!(c.is_valid());
        let f = c.nerve(5);
        for n in 1..=5 {
            assert!(segal_check(&f, n));
            assert_eq!(f.size(n), n + 2);
        }
        assert!(f.is_functorial());
    }

    #[test]
    fn cardinality_obstruction_over_fin() {
        let f = nerve(ArityFamily::Fin, &FinPresheaf::set(2), &[0, 1, 2]);
        // F(2) doubled: a tag bit carried by the bijections of 2, forgotten
        // by every map that factors through a smaller arity.
        let mut g = f.clone();
        g.sets.insert(2, 8);
        for ((a, b), tables) in g.actions.iter_mut() {
            for (code, t) in tables.iter_mut().enumerate() {
                // Only the bijections 2 → 2 avoid factoring through 1.
                match (*a, *b) {
                    (2, 2) if code == 1 || code == 2 => {
                        let base = t.clone();
                        t.extend(base.iter().map(|&y| y + 4));
                    }
                    (_, 2) => {
                        let base = t.clone();
                        t.extend(base);
                    }
                    _ => {}
                }
            }
        }
        assert!(g.is_functorial());
        let v = is_nerve(ArityFamily::Fin, &g);
        assert_eq!(v.failure.map(|w| w.arity()), Some(2));
    }

    #[test]
    fn empty_edges() {
        // F[0] = {*}, F[1] = ∅: passes iff higher levels are empty.
        let f = nerve(ArityFamily::Delta0, &FinPresheaf::graph(1, &[]), &[0, 1, 2]);
        assert!(segal_check(&f, 2));
        let g = FiniteCategory::from_fn(1, vec![(0, 0)], |_, _| 0).nerve(2);
        let h = remove_cell(&g, 1, 0);
        assert_eq!(h.size(1), 0);
        assert!(segal_check(&h, 2));
    }

    #[test]
    fn mutations_fail_at_their_level() {
        let f = arrow_category().nerve(4);
        for k in 2..=4 {
            let removed = remove_cell(&f, k, 0);
            assert!(removed.is_functorial());
            assert_eq!(is_nerve(ArityFamily::Delta0, &removed).failure.map(|w| w.arity()), Some(k));
            let doubled = duplicate_cell(&f, k, 0);
            assert!(doubled.is_functorial());
            assert_eq!(is_nerve(ArityFamily::Delta0, &doubled).failure.map(|w| w.arity()), Some(k));
        }
    }

    #[test]
    fn catalogue_is_valid() {
        for (name, c) in category_catalogue() {
            assert!(c.is_valid(), "{name}");
            assert!(c.objects <= 4 && c.arrows.len() <= 8, "{name}");
            let f = c.nerve(4);
            assert!((1..=4).all(|n| segal_check(&f, n)), "{name}");
        }
    }
}
