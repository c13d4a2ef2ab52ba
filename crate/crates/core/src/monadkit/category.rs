use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::base::{hom_set, ArityFamily, PresheafMap};
use crate::error::MonadError;

use super::monad::{ComputableMonad, MonadObject};

/// The arity category of a monad: objects are arities, `hom(a, b)` is the
/// set of maps `K a → T(K b)`, composed by Kleisli extension.
#[derive(Debug, Clone)]
pub struct ArityCategory {
    pub family: ArityFamily,
    pub arities: Vec<usize>,
    pub objects: BTreeMap<usize, MonadObject>,
    pub homs: BTreeMap<(usize, usize), Vec<PresheafMap>>,
    /// Every `T(K b)` is exact.
    pub exact: bool,
    index: BTreeMap<(usize, usize), HashMap<PresheafMap, usize>>,
    /// `ext[(b, c)][j]`: the extension of the `j`-th map `K b → T(K c)`.
    ext: BTreeMap<(usize, usize), Vec<Option<PresheafMap>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArityCategorySummary {
    pub monad: String,
    pub exact: bool,
    pub homs: Vec<(usize, usize, usize)>,
    pub associative: bool,
    pub unital: bool,
}

pub fn arity_category(t: &dyn ComputableMonad, family: ArityFamily, max_arity: usize) -> Result<ArityCategory, MonadError> {
    if family.shape() != t.shape() {
        return Err(MonadError::Unsupported(format!("{} does not act on {}", t.name(), family.name())));
    }
    let arities: Vec<usize> = match family {
        ArityFamily::FinSingleton(k) => vec![k],
        _ => (0..=max_arity).collect(),
    };
    let mut objects = BTreeMap::new();
    for &b in &arities {
        objects.insert(b, t.object(&family.realise(b))?);
    }
    let mut homs = BTreeMap::new();
    let mut index = BTreeMap::new();
    for &a in &arities {
        for &b in &arities {
            let hs = hom_set(&family.realise(a), &objects[&b].object);
            index.insert((a, b), hs.iter().enumerate().map(|(i, h)| (h.clone(), i)).collect());
            homs.insert((a, b), hs);
        }
    }
    let mut ext = BTreeMap::new();
    for &b in &arities {
        for &c in &arities {
            let maps = homs[&(b, c)].iter().map(|g| t.extend(&objects[&b], &objects[&c], g)).collect();
            ext.insert((b, c), maps);
        }
    }
    let exact = objects.values().all(|o| o.exact);
    Ok(ArityCategory { family, arities, objects, homs, exact, index, ext })
}

impl ArityCategory {
    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.homs[&(a, b)].len()
    }

    pub fn identity(&self, a: usize) -> usize {
        self.index[&(a, a)][&self.objects[&a].unit]
    }

    /// Index of `f ; g` for `f ∈ hom(a, b)`, `g ∈ hom(b, c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> Option<usize> {
        let gs = self.ext[&(b, c)][g].as_ref()?;
        self.index[&(a, c)].get(&self.homs[&(a, b)][f].then(gs)).copied()
    }

    pub fn is_unital(&self) -> bool {
        for &a in &self.arities {
            for &b in &self.arities {
                for f in 0..self.hom_count(a, b) {
                    if self.compose(a, a, b, self.identity(a), f) != Some(f) || self.compose(a, b, b, f, self.identity(b)) != Some(f) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Associativity over all composable triples whose composites exist.
    pub fn is_associative(&self) -> bool {
        let ar = &self.arities;
        for &a in ar {
            for &b in ar {
                for &c in ar {
                    for &d in ar {
                        for f in 0..self.hom_count(a, b) {
                            for g in 0..self.hom_count(b, c) {
                                let fg = self.compose(a, b, c, f, g);
                                for h in 0..self.hom_count(c, d) {
                                    let gh = self.compose(b, c, d, g, h);
                                    let l = fg.and_then(|fg| self.compose(a, c, d, fg, h));
                                    let r = gh.and_then(|gh| self.compose(a, b, d, f, gh));
                                    if let (Some(l), Some(r)) = (l, r) {
                                        if l != r {
                                            return false;
                                        }
                                    } else if self.exact {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn summary(&self, monad: &str) -> ArityCategorySummary {
        let mut homs = Vec::new();
        for &a in &self.arities {
            for &b in &self.arities {
                homs.push((a, b, self.hom_count(a, b)));
            }
        }
        ArityCategorySummary {
            monad: monad.into(),
            exact: self.exact,
            homs,
            associative: self.is_associative(),
            unital: self.is_unital(),
        }
    }
}
