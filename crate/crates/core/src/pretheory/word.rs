use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{ArityFamily, BaseMap};

/// A letter of a word: a generator (by index) or an arity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Gen(usize),
    Base(BaseMap),
}

/// A composable string of letters in diagrammatic order: `l1 ; l2` applies
/// `l1: a → b` and then `l2: b → c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub src: usize,
    pub dst: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn identity(a: usize) -> Self {
        Word { src: a, dst: a, letters: Vec::new() }
    }

    pub fn base(f: BaseMap) -> Self {
        Word { src: f.src, dst: f.dst, letters: vec![Letter::Base(f)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Diagrammatic composite `self ; other`, unnormalised.
    pub fn then(&self, other: &Word) -> Option<Word> {
        if self.dst != other.src {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word { src: self.src, dst: other.dst, letters })
    }

    /// Collapses adjacent arity maps to their composite and drops identities.
    pub fn normalize(&self, family: ArityFamily) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match (out.last().copied(), l) {
                (Some(Letter::Base(f)), Letter::Base(g)) => {
                    out.pop();
                    let fg = family.compose(f, g);
                    if !family.is_identity(fg) {
                        out.push(Letter::Base(fg));
                    }
                }
                (_, Letter::Base(g)) if family.is_identity(g) => {}
                _ => out.push(l),
            }
        }
        Word { src: self.src, dst: self.dst, letters: out }
    }

    pub fn is_normal(&self, family: ArityFamily) -> bool {
        self.normalize(family) == *self
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().filter_map(|l| match l {
            Letter::Gen(g) => Some(*g),
            Letter::Base(_) => None,
        })
    }
}

/// A named operation symbol `name: src → dst`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A word printed against its generator names.
pub struct ShowWord<'a> {
    pub family: ArityFamily,
    pub generators: &'a [Generator],
    pub word: &'a Word,
}

impl fmt::Display for ShowWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.letters.is_empty() {
            return write!(f, "id[{}]", self.family.arity_label(self.word.src));
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            match l {
                Letter::Gen(g) => f.write_str(&self.generators[*g].name)?,
                Letter::Base(b) => match (self.family, b.src, b.dst, b.code) {
                    (ArityFamily::Delta0, 0, 1, 0) => f.write_str("sigma")?,
                    (ArityFamily::Delta0, 0, 1, 1) => f.write_str("tau")?,
                    _ => f.write_str(&self.family.show(*b))?,
                },
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_collapses_and_drops_identities() {
        let fam = ArityFamily::Fin;
        let i1 = fam.injection(1, 2, 0);
        let fold = fam.fin_from_images(2, 1, &[0, 0]);
        let w = Word { src: 1, dst: 1, letters: vec![Letter::Base(i1), Letter::Base(fold)] };
        assert_eq!(w.normalize(fam), Word::identity(1));
        let g = Word { src: 1, dst: 2, letters: vec![Letter::Base(fam.identity(1)), Letter::Gen(0)] };
        assert_eq!(g.normalize(fam).letters, vec![Letter::Gen(0)]);
    }

    #[test]
    fn shifts_add() {
        let fam = ArityFamily::Delta0;
        let w = Word::base(fam.base_map_by_name("tau").unwrap())
            .then(&Word::base(fam.injection(1, 2, 1)))
            .unwrap()
            .normalize(fam);
        assert_eq!(w, Word::base(BaseMap { src: 0, dst: 2, code: 2 }));
    }
}
