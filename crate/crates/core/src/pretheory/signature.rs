use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presentation::Pretheory;
use super::word::{Letter, Word};
use crate::base::{ArityFamily, FinPresheaf, Shape};
use crate::error::PretheoryError;

/// Operations of each input arity, as a finite presheaf per arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub family: ArityFamily,
    pub ops: BTreeMap<usize, FinPresheaf>,
}

impl Signature {
    pub fn empty(family: ArityFamily) -> Self {
        Signature { family, ops: BTreeMap::new() }
    }

    /// One operation at each listed arity.
    pub fn terminal_on(family: ArityFamily, arities: &[usize]) -> Self {
        let one = match family.shape() {
            Shape::Terminal => FinPresheaf::set(1),
            Shape::Graph => FinPresheaf::graph(1, &[(0, 0)]),
        };
        Signature { family, ops: arities.iter().map(|&a| (a, one.clone())).collect() }
    }

    pub fn with(mut self, arity: usize, ops: FinPresheaf) -> Self {
        self.ops.insert(arity, ops);
        self
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.ops.iter().filter(|(_, x)| !x.is_empty()).map(|(&a, _)| a)
    }
}

/// The collage pretheory of a signature: one generator per representable
/// element of each operation presheaf, glued along faces in the graph case.
pub fn pretheory_from_signature(sig: &Signature) -> Result<Pretheory, PretheoryError> {
    let fam = sig.family;
    let mut p = Pretheory::initial(fam);
    for (&n, ops) in &sig.ops {
        if ops.shape() != fam.shape() || !fam.is_object(n) {
            return Err(PretheoryError::SignatureShape);
        }
        match fam {
            ArityFamily::Fin => {
                for k in 0..ops.size(0) {
                    p = p.adjoin_generator(&format!("op{n}_{k}"), 1, n)?;
                }
            }
            ArityFamily::Delta0 => {
                let first_vertex = p.generators.len();
                for v in 0..ops.num_vertices() {
                    p = p.adjoin_generator(&format!("v{n}_{v}"), 0, n)?;
                }
                for e in 0..ops.num_edges() {
                    p = p.adjoin_generator(&format!("e{n}_{e}"), 1, n)?;
                    let g = p.generators.len() - 1;
                    for (face, end) in [("sigma", ops.src(e)), ("tau", ops.tgt(e))] {
                        let b = fam.base_map_by_name(face).unwrap();
                        let lhs = Word { src: 0, dst: n, letters: vec![Letter::Base(b), Letter::Gen(g)] };
                        let rhs = Word { src: 0, dst: n, letters: vec![Letter::Gen(first_vertex + end)] };
                        p = p.adjoin_equation(lhs, rhs)?;
                    }
                }
            }
            ArityFamily::FinSingleton(_) => return Err(PretheoryError::SignatureShape),
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_operation() {
        let p = pretheory_from_signature(&Signature::terminal_on(ArityFamily::Fin, &[2])).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!((p.generators[0].src, p.generators[0].dst), (1, 2));
        assert!(p.equations.is_empty());
    }

    #[test]
    fn empty_signature_is_initial() {
        for fam in [ArityFamily::Fin, ArityFamily::Delta0] {
            assert_eq!(pretheory_from_signature(&Signature::empty(fam)).unwrap(), Pretheory::initial(fam));
        }
    }

    #[test]
    fn graph_composition_signature() {
        let fam = ArityFamily::Delta0;
        let sig = Signature::empty(fam).with(2, fam.realise(1));
        let p = pretheory_from_signature(&sig).unwrap();
        let ends: Vec<(usize, usize)> = p.generators.iter().map(|g| (g.src, g.dst)).collect();
        assert_eq!(ends, vec![(0, 2), (0, 2), (1, 2)]);
        assert_eq!(p.equations.len(), 2);
        assert_eq!(p.show(&p.equations[0].0), "sigma ; e2_0");
        assert_eq!(p.show(&p.equations[1].1), "v2_1");
    }
}
