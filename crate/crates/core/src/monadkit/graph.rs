use crate::base::{FinPresheaf, PresheafMap, Shape};
use crate::error::MonadError;

use super::monad::{check_shape, ComputableMonad, MonadObject, Term, DEFAULT_MONAD_DEPTH};

/// Assembles a graph from vertex terms and edge terms with endpoint terms.
fn graph_object(
    x: &FinPresheaf,
    vertices: Vec<(Term, String)>,
    edges: Vec<(Term, Term, Term, String)>,
    exact: bool,
    unit_term: impl Fn(usize, usize) -> Term,
) -> MonadObject {
    let vpos: std::collections::HashMap<&Term, usize> = vertices.iter().enumerate().map(|(i, (t, _))| (t, i)).collect();
    let src: Vec<usize> = edges.iter().map(|(_, s, _, _)| vpos[s]).collect();
    let tgt: Vec<usize> = edges.iter().map(|(_, _, t, _)| vpos[t]).collect();
    let object = FinPresheaf::new(Shape::Graph, vec![vertices.len(), edges.len()], vec![src, tgt]).expect("endpoints are vertices");
    let (vt, vl): (Vec<Term>, Vec<String>) = vertices.into_iter().unzip();
    let (et, el): (Vec<Term>, Vec<String>) = edges.into_iter().map(|(t, _, _, l)| (t, l)).unzip();
    MonadObject::new(x.clone(), object, vec![vt, et], vec![vl, el], exact, unit_term)
}

fn var_vertices(x: &FinPresheaf, names: &[Vec<String>]) -> Vec<(Term, String)> {
    (0..x.num_vertices()).map(|v| (Term::Var(v), names[0][v].clone())).collect()
}

fn vertex_of(f: &PresheafMap, v: usize) -> usize {
    f.parts[0][v]
}

/// The identity monad on sets or graphs.
#[derive(Debug, Clone, Copy)]
pub struct Identity(pub Shape);

impl ComputableMonad for Identity {
    fn name(&self) -> String {
        "identity".into()
    }

    fn shape(&self) -> Shape {
        self.0
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let terms = (0..x.num_components()).map(|c| (0..x.size(c)).map(Term::Var).collect()).collect();
        Ok(MonadObject::new(x.clone(), x.clone(), terms, names.to_vec(), true, |_, i| Term::Var(i)))
    }

    fn extend(&self, _tx: &MonadObject, _ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        Some(f.clone())
    }
}

/// Free category: edges of `T(X)` are paths of `X`, identities included.
/// Truncated at paths of length `depth` on graphs with cycles.
#[derive(Debug, Clone, Copy)]
pub struct FreeCategory {
    pub depth: usize,
}

impl Default for FreeCategory {
    fn default() -> Self {
        FreeCategory { depth: DEFAULT_MONAD_DEPTH }
    }
}

fn path_end(x: &FinPresheaf, v: usize, es: &[usize]) -> usize {
    es.last().map_or(v, |&e| x.tgt(e))
}

impl ComputableMonad for FreeCategory {
    fn name(&self) -> String {
        "free-category".into()
    }

    fn shape(&self) -> Shape {
        Shape::Graph
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut layer: Vec<(usize, Vec<usize>)> = (0..x.num_vertices()).map(|v| (v, vec![])).collect();
        let mut paths = Vec::new();
        for _ in 0..=self.depth {
            let mut next = Vec::new();
            for (v, es) in &layer {
                let end = path_end(x, *v, es);
                for e in (0..x.num_edges()).filter(|&e| x.src(e) == end) {
                    let mut es2 = es.clone();
                    es2.push(e);
                    next.push((*v, es2));
                }
            }
            paths.append(&mut layer);
            layer = next;
        }
        let exact = layer.is_empty();
        let edges = paths
            .into_iter()
            .map(|(v, es)| {
                let label = if es.is_empty() {
                    format!("1_{}", names[0][v])
                } else {
                    es.iter().map(|&e| names[1][e].as_str()).collect::<Vec<_>>().join(" ; ")
                };
                let end = path_end(x, v, &es);
                (Term::Path(v, es), Term::Var(v), Term::Var(end), label)
            })
            .collect();
        Ok(graph_object(x, var_vertices(x, names), edges, exact, |c, i| {
            if c == 0 {
                Term::Var(i)
            } else {
                Term::Path(x.src(i), vec![i])
            }
        }))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let verts = f.parts[0].clone();
        let mut edges = Vec::with_capacity(tx.object.num_edges());
        for t in &tx.terms[1] {
            let Term::Path(v, es) = t else { unreachable!("free-category edge") };
            let mut out = Vec::new();
            for &e in es {
                let Term::Path(_, seg) = &ty.terms[1][f.parts[1][e]] else { unreachable!("free-category edge") };
                out.extend_from_slice(seg);
            }
            edges.push(ty.lookup(1, &Term::Path(vertex_of(f, *v), out))?);
        }
        Some(PresheafMap::new(vec![verts, edges]))
    }
}

/// Free groupoid as reduced zigzags. Exact on forests; truncated at length
/// `depth` when the underlying undirected graph has a cycle.
#[derive(Debug, Clone, Copy)]
pub struct FreeGroupoid {
    pub depth: usize,
}

impl Default for FreeGroupoid {
    fn default() -> Self {
        FreeGroupoid { depth: DEFAULT_MONAD_DEPTH }
    }
}

fn zigzag_end(x: &FinPresheaf, v: usize, ls: &[(usize, bool)]) -> usize {
    match ls.last() {
        None => v,
        Some(&(e, false)) => x.tgt(e),
        Some(&(e, true)) => x.src(e),
    }
}

fn reduce(letters: impl IntoIterator<Item = (usize, bool)>) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for (e, inv) in letters {
        if out.last() == Some(&(e, !inv)) {
            out.pop();
        } else {
            out.push((e, inv));
        }
    }
    out
}

impl ComputableMonad for FreeGroupoid {
    fn name(&self) -> String {
        "free-groupoid".into()
    }

    fn shape(&self) -> Shape {
        Shape::Graph
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut layer: Vec<(usize, Vec<(usize, bool)>)> = (0..x.num_vertices()).map(|v| (v, vec![])).collect();
        let mut words = Vec::new();
        for _ in 0..=self.depth {
            let mut next = Vec::new();
            for (v, ls) in &layer {
                let end = zigzag_end(x, *v, ls);
                for e in 0..x.num_edges() {
                    for inv in [false, true] {
                        let start = if inv { x.tgt(e) } else { x.src(e) };
                        if start == end && ls.last() != Some(&(e, !inv)) {
                            let mut ls2 = ls.clone();
                            ls2.push((e, inv));
                            next.push((*v, ls2));
                        }
                    }
                }
            }
            words.append(&mut layer);
            layer = next;
        }
        let exact = layer.is_empty();
        let edges = words
            .into_iter()
            .map(|(v, ls)| {
                let label = if ls.is_empty() {
                    format!("1_{}", names[0][v])
                } else {
                    ls.iter()
                        .map(|&(e, inv)| if inv { format!("{}^-1", names[1][e]) } else { names[1][e].clone() })
                        .collect::<Vec<_>>()
                        .join(" ; ")
                };
                let end = zigzag_end(x, v, &ls);
                (Term::Zigzag(v, ls), Term::Var(v), Term::Var(end), label)
            })
            .collect();
        Ok(graph_object(x, var_vertices(x, names), edges, exact, |c, i| {
            if c == 0 {
                Term::Var(i)
            } else {
                Term::Zigzag(x.src(i), vec![(i, false)])
            }
        }))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let verts = f.parts[0].clone();
        let mut edges = Vec::with_capacity(tx.object.num_edges());
        for t in &tx.terms[1] {
            let Term::Zigzag(v, ls) = t else { unreachable!("free-groupoid edge") };
            let mut out = Vec::new();
            for &(e, inv) in ls {
                let Term::Zigzag(_, seg) = &ty.terms[1][f.parts[1][e]] else { unreachable!("free-groupoid edge") };
                if inv {
                    out.extend(seg.iter().rev().map(|&(g, b)| (g, !b)));
                } else {
                    out.extend_from_slice(seg);
                }
            }
            edges.push(ty.lookup(1, &Term::Zigzag(vertex_of(f, *v), reduce(out)))?);
        }
        Some(PresheafMap::new(vec![verts, edges]))
    }
}

/// `P X = X + X₁·[0]`: a fresh vertex `u(e)` per edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pointing;

impl ComputableMonad for Pointing {
    fn name(&self) -> String {
        "pointing".into()
    }

    fn shape(&self) -> Shape {
        Shape::Graph
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut vertices = var_vertices(x, names);
        vertices.extend((0..x.num_edges()).map(|e| (Term::Point(e), format!("u({})", names[1][e]))));
        let edges = (0..x.num_edges())
            .map(|e| (Term::Var(e), Term::Var(x.src(e)), Term::Var(x.tgt(e)), names[1][e].clone()))
            .collect();
        Ok(graph_object(x, vertices, edges, true, |_, i| Term::Var(i)))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let verts = tx.terms[0]
            .iter()
            .map(|t| match *t {
                Term::Var(v) => Some(f.parts[0][v]),
                Term::Point(e) => {
                    let Term::Var(g) = ty.terms[1][f.parts[1][e]] else { unreachable!("pointing edge") };
                    ty.lookup(0, &Term::Point(g))
                }
                _ => unreachable!("pointing vertex"),
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PresheafMap::new(vec![verts, f.parts[1].clone()]))
    }
}

/// `Q X = X + X₁·[1]`: a fresh edge `i(e)` per edge, with fresh endpoints.
#[derive(Debug, Clone, Copy, Default)]
pub struct Involution;

impl ComputableMonad for Involution {
    fn name(&self) -> String {
        "involution".into()
    }

    fn shape(&self) -> Shape {
        Shape::Graph
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut vertices = var_vertices(x, names);
        for e in 0..x.num_edges() {
            vertices.push((Term::InvSrc(e), format!("s(i({}))", names[1][e])));
            vertices.push((Term::InvTgt(e), format!("t(i({}))", names[1][e])));
        }
        let mut edges: Vec<(Term, Term, Term, String)> = (0..x.num_edges())
            .map(|e| (Term::Var(e), Term::Var(x.src(e)), Term::Var(x.tgt(e)), names[1][e].clone()))
            .collect();
        edges.extend((0..x.num_edges()).map(|e| (Term::Inv(e), Term::InvSrc(e), Term::InvTgt(e), format!("i({})", names[1][e]))));
        Ok(graph_object(x, vertices, edges, true, |_, i| Term::Var(i)))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let flip = |e: usize| -> usize {
            let t = match ty.terms[1][f.parts[1][e]] {
                Term::Var(g) => Term::Inv(g),
                Term::Inv(g) => Term::Var(g),
                _ => unreachable!("involution edge"),
            };
            ty.lookup(1, &t).expect("involution is total")
        };
        let edges: Vec<usize> = tx.terms[1]
            .iter()
            .map(|t| match *t {
                Term::Var(e) => f.parts[1][e],
                Term::Inv(e) => flip(e),
                _ => unreachable!("involution edge"),
            })
            .collect();
        let verts = tx.terms[0]
            .iter()
            .map(|t| match *t {
                Term::Var(v) => f.parts[0][v],
                Term::InvSrc(e) => ty.object.src(flip(e)),
                Term::InvTgt(e) => ty.object.tgt(flip(e)),
                _ => unreachable!("involution vertex"),
            })
            .collect();
        Some(PresheafMap::new(vec![verts, edges]))
    }
}

/// The monad for involutive graphs: `T X` has edges `X₁ + X₁`, the second
/// copy reversed.
#[derive(Debug, Clone, Copy, Default)]
pub struct Involutive;

impl ComputableMonad for Involutive {
    fn name(&self) -> String {
        "involutive".into()
    }

    fn shape(&self) -> Shape {
        Shape::Graph
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut edges: Vec<(Term, Term, Term, String)> = (0..x.num_edges())
            .map(|e| (Term::Var(e), Term::Var(x.src(e)), Term::Var(x.tgt(e)), names[1][e].clone()))
            .collect();
        edges.extend(
            (0..x.num_edges()).map(|e| (Term::Rev(e), Term::Var(x.tgt(e)), Term::Var(x.src(e)), format!("i({})", names[1][e]))),
        );
        Ok(graph_object(x, var_vertices(x, names), edges, true, |_, i| Term::Var(i)))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let edges = tx.terms[1]
            .iter()
            .map(|t| match *t {
                Term::Var(e) => f.parts[1][e],
                Term::Rev(e) => {
                    let t = match ty.terms[1][f.parts[1][e]] {
                        Term::Var(g) => Term::Rev(g),
                        Term::Rev(g) => Term::Var(g),
                        _ => unreachable!("involutive edge"),
                    };
                    ty.lookup(1, &t).expect("involutive is total")
                }
                _ => unreachable!("involutive edge"),
            })
            .collect();
        Some(PresheafMap::new(vec![f.parts[0].clone(), edges]))
    }
}
