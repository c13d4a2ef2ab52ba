use serde::{Deserialize, Serialize};

use super::word::{Generator, Letter, ShowWord, Word};
use crate::base::{ArityFamily, BaseMap};
use crate::error::PretheoryError;

/// A finite presentation of an identity-on-objects functor out of an arity
/// family: generator arrows plus word equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pretheory {
    pub family: ArityFamily,
    pub generators: Vec<Generator>,
    pub equations: Vec<(Word, Word)>,
}

pub const BUNDLED: [&str; 4] = ["monoid", "monoid-redundant", "category", "groupoid"];

impl Pretheory {
    /// The initial pretheory: the arity family itself.
    pub fn initial(family: ArityFamily) -> Self {
        Pretheory { family, generators: Vec::new(), equations: Vec::new() }
    }

    pub fn adjoin_generator(&self, name: &str, src: usize, dst: usize) -> Result<Pretheory, PretheoryError> {
        if self.generator_index(name).is_some() {
            return Err(PretheoryError::DuplicateName(name.to_string()));
        }
        for a in [src, dst] {
            if !self.family.is_object(a) {
                return Err(PretheoryError::BadArity(a));
            }
        }
        let mut p = self.clone();
        p.generators.push(Generator { name: name.to_string(), src, dst });
        Ok(p)
    }

    pub fn adjoin_equation(&self, lhs: Word, rhs: Word) -> Result<Pretheory, PretheoryError> {
        self.check_word(&lhs)?;
        self.check_word(&rhs)?;
        if lhs.src != rhs.src || lhs.dst != rhs.dst {
            return Err(PretheoryError::NonParallel(self.show(&lhs), self.show(&rhs)));
        }
        let mut p = self.clone();
        p.equations.push((lhs, rhs));
        Ok(p)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn letter_endpoints(&self, l: Letter) -> (usize, usize) {
        match l {
            Letter::Gen(g) => (self.generators[g].src, self.generators[g].dst),
            Letter::Base(b) => (b.src, b.dst),
        }
    }

    /// Checks that consecutive letters compose and endpoints match.
    pub fn check_word(&self, w: &Word) -> Result<(), PretheoryError> {
        if !self.family.is_object(w.src) {
            return Err(PretheoryError::BadArity(w.src));
        }
        if !self.family.is_object(w.dst) {
            return Err(PretheoryError::BadArity(w.dst));
        }
        let mut at = w.src;
        for &l in &w.letters {
            if let Letter::Gen(g) = l {
                if g >= self.generators.len() {
                    return Err(PretheoryError::UnknownGenerator(format!("#{g}")));
                }
            }
            if let Letter::Base(b) = l {
                if b.code >= self.family.hom_count(b.src, b.dst) {
                    return Err(PretheoryError::NotComposable(self.family.show(b)));
                }
            }
            let (s, d) = self.letter_endpoints(l);
            if s != at {
                return Err(PretheoryError::NotComposable(self.show(w)));
            }
            at = d;
        }
        if at != w.dst {
            return Err(PretheoryError::NotComposable(self.show(w)));
        }
        Ok(())
    }

    /// Builds a word from letters, inferring endpoints.
    pub fn word(&self, letters: Vec<Letter>) -> Result<Word, PretheoryError> {
        let first = letters.first().ok_or_else(|| PretheoryError::NotComposable("empty word".into()))?;
        let src = self.letter_endpoints(*first).0;
        let dst = self.letter_endpoints(*letters.last().unwrap()).1;
        let w = Word { src, dst, letters };
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn gen_word(&self, name: &str) -> Result<Word, PretheoryError> {
        let g = self.generator_index(name).ok_or_else(|| PretheoryError::UnknownGenerator(name.to_string()))?;
        self.word(vec![Letter::Gen(g)])
    }

    pub fn show(&self, w: &Word) -> String {
        ShowWord { family: self.family, generators: &self.generators, word: w }.to_string()
    }

    /// Largest arity mentioned by a generator or equation.
    pub fn max_arity(&self) -> usize {
        let gens = self.generators.iter().flat_map(|g| [g.src, g.dst]);
        let eqs = self.equations.iter().flat_map(|(l, r)| {
            let mut v = vec![l.src, l.dst];
            for w in [l, r] {
                for &x in &w.letters {
                    let (s, d) = self.letter_endpoints(x);
                    v.push(s);
                    v.push(d);
                }
            }
            v
        });
        gens.chain(eqs).max().unwrap_or(0)
    }

    pub fn bundled(name: &str) -> Result<Pretheory, PretheoryError> {
        match name {
            "monoid" => Ok(monoid()),
            "monoid-redundant" => Ok(monoid_redundant()),
            "category" => Ok(category()),
            "groupoid" => Ok(groupoid()),
            _ => Err(PretheoryError::UnknownName(name.to_string())),
        }
    }
}

/// Letter-level builder used by the bundled presentations.
struct Builder {
    p: Pretheory,
}

enum L {
    G(&'static str),
    B(BaseMap),
}

impl Builder {
    fn gen(&mut self, name: &str, src: usize, dst: usize) {
        self.p = self.p.adjoin_generator(name, src, dst).expect("fresh bundled generator");
    }

    fn w(&self, letters: &[L]) -> Word {
        let ls = letters
            .iter()
            .map(|l| match l {
                L::G(n) => Letter::Gen(self.p.generator_index(n).expect("bundled generator")),
                L::B(b) => Letter::Base(*b),
            })
            .collect();
        self.p.word(ls).expect("well-typed bundled word")
    }

    fn eq(&mut self, lhs: &[L], rhs: &[L]) {
        let (l, r) = (self.w(lhs), self.w(rhs));
        self.p = self.p.adjoin_equation(l, r).expect("parallel bundled equation");
    }

    fn eq_id(&mut self, lhs: &[L]) {
        let l = self.w(lhs);
        let r = Word::identity(l.src);
        self.p = self.p.adjoin_equation(l, r).expect("parallel bundled equation");
    }
}

/// The common shape of the monoid and category presentations: `bang0` and
/// `bang1` play the roles of the two unit boundaries.
fn unital_associative(family: ArityFamily, bang0: BaseMap, bang1: BaseMap) -> Builder {
    let mut b = Builder { p: Pretheory::initial(family) };
    let i1 = |n: usize, m: usize| L::B(family.injection(n, n + m, 0));
    let i2 = |n: usize, m: usize| L::B(family.injection(m, n + m, n));
    b.gen("m", 1, 2);
    b.gen("i", 1, 0);
    b.gen("m1", 2, 3);
    b.gen("1m", 2, 3);
    b.gen("i1", 2, 1);
    b.gen("1i", 2, 1);
    use L::G;
    b.eq(&[G("m"), i1(2, 1)], &[i1(1, 1), G("m1")]);
    b.eq(&[i2(1, 1), G("m1")], &[i2(2, 1)]);
    b.eq(&[i1(1, 1), G("1m")], &[i1(1, 2)]);
    b.eq(&[i2(1, 1), G("1m")], &[G("m"), i2(1, 2)]);
    b.eq(&[i1(1, 1), G("i1")], &[G("i"), L::B(bang0)]);
    b.eq_id(&[i2(1, 1), G("i1")]);
    b.eq_id(&[i1(1, 1), G("1i")]);
    b.eq(&[i2(1, 1), G("1i")], &[G("i"), L::B(bang1)]);
    b.eq(&[G("m"), G("1m")], &[G("m"), G("m1")]);
    b.eq_id(&[G("m"), G("i1")]);
    b.eq_id(&[G("m"), G("1i")]);
    b
}

fn monoid() -> Pretheory {
    let bang = ArityFamily::Fin.fin_from_images(0, 1, &[]);
    unital_associative(ArityFamily::Fin, bang, bang).p
}

fn monoid_redundant() -> Pretheory {
    let fam = ArityFamily::Fin;
    let mut b = Builder { p: monoid() };
    b.gen("m11", 3, 4);
    b.eq(&[L::G("m"), L::B(fam.injection(2, 4, 0))], &[L::B(fam.injection(1, 3, 0)), L::G("m11")]);
    b.eq(&[L::B(fam.injection(2, 3, 1)), L::G("m11")], &[L::B(fam.injection(2, 4, 2))]);
    b.p
}

fn category_builder() -> Builder {
    let fam = ArityFamily::Delta0;
    let sigma = fam.base_map_by_name("sigma").unwrap();
    let tau = fam.base_map_by_name("tau").unwrap();
    let body = unital_associative(fam, sigma, tau);
    // Boundary equations go first.
    let mut b = Builder { p: Pretheory { equations: Vec::new(), ..body.p.clone() } };
    let i1 = L::B(fam.injection(1, 2, 0));
    let i2 = L::B(fam.injection(1, 2, 1));
    b.eq(&[L::B(sigma), L::G("m")], &[L::B(sigma), i1]);
    b.eq(&[L::B(tau), L::G("m")], &[L::B(tau), i2]);
    b.eq_id(&[L::B(sigma), L::G("i")]);
    b.eq_id(&[L::B(tau), L::G("i")]);
    b.p.equations.extend(body.p.equations);
    b
}

fn category() -> Pretheory {
    category_builder().p
}

fn groupoid() -> Pretheory {
    let fam = ArityFamily::Delta0;
    let mut b = category_builder();
    let i1 = || L::B(fam.injection(1, 2, 0));
    let i2 = || L::B(fam.injection(1, 2, 1));
    b.gen("c", 1, 1);
    b.gen("1c", 2, 2);
    b.gen("c1", 2, 2);
    use L::G;
    b.eq(&[i1(), G("1c")], &[G("m")]);
    b.eq(&[i2(), G("1c")], &[G("c"), i2()]);
    b.eq(&[i1(), G("c1")], &[G("c"), i1()]);
    b.eq(&[i2(), G("c1")], &[G("m")]);
    b.eq(&[G("m"), G("1c")], &[i1()]);
    b.eq(&[G("m"), G("c1")], &[i2()]);
    b.p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_counts() {
        let counts: Vec<(usize, usize)> = BUNDLED
            .iter()
            .map(|n| {
                let p = Pretheory::bundled(n).unwrap();
                (p.generators.len(), p.equations.len())
            })
            .collect();
        assert_eq!(counts, vec![(6, 11), (7, 13), (6, 15), (9, 21)]);
        assert!(Pretheory::bundled("ring").is_err());
    }

    #[test]
    fn duplicate_and_non_parallel_rejected() {
        let p = Pretheory::initial(ArityFamily::Fin).adjoin_generator("m", 1, 2).unwrap();
        assert_eq!(p.adjoin_generator("m", 1, 3), Err(PretheoryError::DuplicateName("m".into())));
        let m = p.gen_word("m").unwrap();
        assert!(matches!(p.adjoin_equation(m, Word::identity(1)), Err(PretheoryError::NonParallel(..))));
    }

    #[test]
    fn bundled_words_typecheck() {
        for n in BUNDLED {
            let p = Pretheory::bundled(n).unwrap();
            for (l, r) in &p.equations {
                p.check_word(l).unwrap();
                p.check_word(r).unwrap();
            }
        }
        assert_eq!(Pretheory::bundled("monoid").unwrap().max_arity(), 3);
    }
}
