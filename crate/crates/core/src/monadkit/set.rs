use std::sync::Arc;

use crate::base::{ArityFamily, FinPresheaf, PresheafMap, Shape};
use crate::error::MonadError;
use crate::models::{free_model_bounded, FreeModel};
use crate::pretheory::{pretheory_from_signature, Pretheory, Signature};

use super::monad::{check_shape, ComputableMonad, MonadObject, Term, DEFAULT_MONAD_DEPTH};

/// Words over a set, truncated at length `depth`.
#[derive(Debug, Clone, Copy)]
pub struct FreeMonoid {
    pub depth: usize,
}

impl Default for FreeMonoid {
    fn default() -> Self {
        FreeMonoid { depth: DEFAULT_MONAD_DEPTH }
    }
}

impl ComputableMonad for FreeMonoid {
    fn name(&self) -> String {
        "free-monoid".into()
    }

    fn shape(&self) -> Shape {
        Shape::Terminal
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let n = x.size(0);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..self.depth {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..n).map(move |a| {
                        let mut w2 = w.clone();
                        w2.push(a);
                        w2
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        let labels = words
            .iter()
            .map(|w| if w.is_empty() { "1".into() } else { w.iter().map(|&a| names[0][a].as_str()).collect::<Vec<_>>().join("·") })
            .collect();
        let object = FinPresheaf::set(words.len());
        let terms = words.into_iter().map(Term::List).collect();
        Ok(MonadObject::new(x.clone(), object, vec![terms], vec![labels], n == 0, |_, a| Term::List(vec![a])))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let part = tx.terms[0]
            .iter()
            .map(|t| {
                let Term::List(w) = t else { unreachable!("free-monoid element") };
                let mut out = Vec::new();
                for &a in w {
                    let Term::List(seg) = &ty.terms[0][f.parts[0][a]] else { unreachable!("free-monoid element") };
                    out.extend_from_slice(seg);
                }
                ty.lookup(0, &Term::List(out))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PresheafMap::new(vec![part]))
    }
}

/// Terms over a set-level signature with at most `depth` operation nodes.
#[derive(Debug, Clone)]
pub struct TermMonad {
    /// Arity of each operation symbol.
    pub arities: Vec<usize>,
    pub op_names: Vec<String>,
    pub depth: usize,
}

impl TermMonad {
    pub fn from_signature(sig: &Signature, depth: usize) -> Result<Self, MonadError> {
        if sig.family.shape() != Shape::Terminal {
            return Err(MonadError::Unsupported("term monads need a set-level signature".into()));
        }
        let mut arities = Vec::new();
        let mut op_names = Vec::new();
        for (&n, ops) in &sig.ops {
            for k in 0..ops.size(0) {
                arities.push(n);
                op_names.push(if ops.size(0) == 1 { format!("op{n}") } else { format!("op{n}_{k}") });
            }
        }
        Ok(TermMonad { arities, op_names, depth })
    }

    /// One binary operation: binary trees.
    pub fn binary(depth: usize) -> Self {
        TermMonad { arities: vec![2], op_names: vec!["op2".into()], depth }
    }

    fn nodes(t: &Term) -> usize {
        match t {
            Term::Op(_, args) => 1 + args.iter().map(Self::nodes).sum::<usize>(),
            _ => 0,
        }
    }

    fn show(&self, t: &Term, names: &[String]) -> String {
        match t {
            Term::Var(x) => names[*x].clone(),
            Term::Op(k, args) => {
                let args: Vec<String> = args.iter().map(|a| self.show(a, names)).collect();
                format!("{}({})", self.op_names[*k], args.join(", "))
            }
            _ => unreachable!("term"),
        }
    }

    /// Terms with exactly `n` operation nodes, given all smaller layers.
    fn layer(&self, by_nodes: &[Vec<Term>], n: usize) -> Vec<Term> {
        fn split(by: &[Vec<Term>], k: usize, left: usize, cur: &mut Vec<Term>, out: &mut Vec<Vec<Term>>) {
            if cur.len() == k {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for m in 0..=left {
                for t in &by[m] {
                    cur.push(t.clone());
                    split(by, k, left - m, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        for (op, &k) in self.arities.iter().enumerate() {
            let mut argss = Vec::new();
            split(by_nodes, k, n - 1, &mut Vec::new(), &mut argss);
            out.extend(argss.into_iter().map(|args| Term::Op(op, args)));
        }
        out
    }

    fn substitute(t: &Term, f: &[Term]) -> Term {
        match t {
            Term::Var(x) => f[*x].clone(),
            Term::Op(k, args) => Term::Op(*k, args.iter().map(|a| Self::substitute(a, f)).collect()),
            _ => unreachable!("term"),
        }
    }
}

impl ComputableMonad for TermMonad {
    fn name(&self) -> String {
        "terms".into()
    }

    fn shape(&self) -> Shape {
        Shape::Terminal
    }

    fn build(&self, x: &FinPresheaf, names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let mut by_nodes: Vec<Vec<Term>> = vec![(0..x.size(0)).map(Term::Var).collect()];
        for n in 1..=self.depth + 1 {
            let layer = self.layer(&by_nodes, n);
            by_nodes.push(layer);
        }
        let exact = by_nodes[self.depth + 1].is_empty();
        by_nodes.pop();
        let terms: Vec<Term> = by_nodes.into_iter().flatten().collect();
        let labels = terms.iter().map(|t| self.show(t, &names[0])).collect();
        Ok(MonadObject::new(x.clone(), FinPresheaf::set(terms.len()), vec![terms], vec![labels], exact, |_, a| Term::Var(a)))
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let images: Vec<Term> = f.parts[0].iter().map(|&i| ty.terms[0][i].clone()).collect();
        let part = tx.terms[0]
            .iter()
            .map(|t| {
                let s = Self::substitute(t, &images);
                if Self::nodes(&s) > self.depth {
                    return None;
                }
                ty.lookup(0, &s)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PresheafMap::new(vec![part]))
    }
}

/// The monad of a pretheory, valued in its bounded free models.
#[derive(Debug, Clone)]
pub struct FreeModelMonad {
    pub pretheory: Pretheory,
    pub depth: usize,
    pub label: String,
}

impl FreeModelMonad {
    pub fn new(pretheory: Pretheory, depth: usize, label: &str) -> Self {
        FreeModelMonad { pretheory, depth, label: label.into() }
    }
}

impl ComputableMonad for FreeModelMonad {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn shape(&self) -> Shape {
        self.pretheory.family.shape()
    }

    fn build(&self, x: &FinPresheaf, _names: &[Vec<String>]) -> Result<MonadObject, MonadError> {
        check_shape(self, x)?;
        let fm: FreeModel = free_model_bounded(&self.pretheory, x, self.depth).map_err(|_| MonadError::BudgetExceeded)?;
        let terms: Vec<Vec<Term>> = (0..fm.object.num_components()).map(|c| (0..fm.object.size(c)).map(Term::Free).collect()).collect();
        let labels = (0..fm.object.num_components()).map(|c| (0..fm.object.size(c)).map(|i| fm.describe(c, i)).collect()).collect();
        let unit = fm.unit.clone();
        let mut obj = MonadObject::new(x.clone(), fm.object.clone(), terms, labels, fm.exact, |c, i| Term::Free(unit.parts[c][i]));
        obj.free = Some(Arc::new(fm));
        Ok(obj)
    }

    fn extend(&self, tx: &MonadObject, ty: &MonadObject, f: &PresheafMap) -> Option<PresheafMap> {
        let (fx, fy) = (tx.free.as_ref()?, ty.free.as_ref()?);
        let image = fx.extend(f, fy);
        let parts = image.into_iter().map(|row| row.into_iter().collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
        Some(PresheafMap::new(parts))
    }
}

/// The free monad on a signature: terms for set-level families, bounded
/// free models of the associated pretheory otherwise.
pub fn free_monad_from_signature(sig: &Signature, depth: usize) -> Result<Box<dyn ComputableMonad>, MonadError> {
    match sig.family {
        ArityFamily::Fin | ArityFamily::FinSingleton(_) => Ok(Box::new(TermMonad::from_signature(sig, depth)?)),
        ArityFamily::Delta0 => {
            let p = pretheory_from_signature(sig).map_err(|e| MonadError::Unsupported(e.to_string()))?;
            Ok(Box::new(FreeModelMonad::new(p, depth, "signature")))
        }
    }
}
