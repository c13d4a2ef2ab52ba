//! The pretheory file format.
//!
//! ```text
//! base fin
//! generator m : 1 -> 2
//! eq m ; map(0,0)[2->1] = id[1]
//! ```
//!
//! Words are read left to right: `f ; g` applies `f` first. `import NAME`
//! brings in the generators and equations of a bundled presentation.

use lawkit_core::base::{ArityFamily, BaseMap};
use lawkit_core::error::ParseError;
use lawkit_core::pretheory::{Letter, Pretheory, ShowWord, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PretheoryFile {
    pub family: ArityFamily,
    pub imports: Vec<String>,
    pub pretheory: Pretheory,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(usize),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 9] = ["->", ":", "=", ";", "[", "]", "(", ")", ","];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (at, c) = chars[i];
            let col = line[..at].chars().count() + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if let Some(s) = SYMBOLS.iter().find(|s| line[at..].starts_with(**s)) {
                out.push(Token { tok: Tok::Sym(s), line: ln + 1, col });
                i += s.chars().count();
                continue;
            }
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                    i += 1;
                }
                let end = chars.get(i).map_or(line.len(), |&(j, _)| j);
                let word = &line[at..end];
                let tok = if word.chars().all(|c| c.is_ascii_digit()) {
                    Tok::Int(word.parse().map_err(|_| err_at(ln + 1, col, "integer too large"))?)
                } else {
                    Tok::Word(word.to_string())
                };
                out.push(Token { tok, line: ln + 1, col });
                continue;
            }
            return Err(err_at(ln + 1, col, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn err_at(line: usize, col: usize, message: &str) -> ParseError {
    ParseError { line, col, message: message.to_string() }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, message: &str) -> ParseError {
        let (l, c) = self.here();
        err_at(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, s: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(t)) if *t == s => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("expected `{s}`"))),
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err("expected an identifier")),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w == k => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("expected `{k}`"))),
        }
    }

    fn arity(&mut self, family: ArityFamily) -> Result<usize, ParseError> {
        if family == ArityFamily::Delta0 {
            self.sym("[")?;
            let n = self.int()?;
            self.sym("]")?;
            Ok(n)
        } else {
            self.int()
        }
    }

    fn base_map(&mut self, p: &Pretheory, name: &str) -> Result<Option<BaseMap>, ParseError> {
        let family = p.family;
        if let Some(b) = family.base_map_by_name(name) {
            return Ok(Some(b));
        }
        let kind = match (family, name) {
            (ArityFamily::Delta0, "shift") | (ArityFamily::Fin, "map") => name,
            _ => return Ok(None),
        };
        if !self.at_sym("(") || p.generator_index(name).is_some() {
            return Ok(None);
        }
        self.sym("(")?;
        let mut args = Vec::new();
        if !self.at_sym(")") {
            args.push(self.int()?);
            while self.at_sym(",") {
                self.sym(",")?;
                args.push(self.int()?);
            }
        }
        self.sym(")")?;
        self.sym("[")?;
        let (a, b) = (self.int()?, self.int_after_arrow()?);
        self.sym("]")?;
        if kind == "shift" {
            let [k] = args[..] else { return Err(self.err("`shift` takes one argument")) };
            if k + a > b {
                return Err(self.err(&format!("shift({k}) does not map [{a}] into [{b}]")));
            }
            Ok(Some(BaseMap { src: a, dst: b, code: k as u64 }))
        } else {
            if args.len() != a || args.iter().any(|&i| i >= b) {
                return Err(self.err(&format!("image list is not a function {a} -> {b}")));
            }
            Ok(Some(family.fin_from_images(a, b, &args)))
        }
    }

    fn int_after_arrow(&mut self) -> Result<usize, ParseError> {
        self.sym("->")?;
        self.int()
    }

    fn word(&mut self, p: &Pretheory) -> Result<Word, ParseError> {
        let (line, col) = self.here();
        if matches!(self.peek(), Some(Tok::Word(w)) if w == "id") && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Sym("[")) {
            self.pos += 1;
            self.sym("[")?;
            let a = self.arity(p.family)?;
            self.sym("]")?;
            if !p.family.is_object(a) {
                return Err(err_at(line, col, &format!("no arity {a}")));
            }
            return Ok(Word::identity(a));
        }
        let mut letters = Vec::new();
        loop {
            let name = self.ident()?;
            let l = match self.base_map(p, &name)? {
                Some(b) => Letter::Base(b),
                None => Letter::Gen(
                    p.generator_index(&name)
                        .ok_or_else(|| err_at(line, col, &format!("undefined generator `{name}`")))?,
                ),
            };
            letters.push(l);
            if !self.at_sym(";") {
                break;
            }
            self.sym(";")?;
        }
        p.word(letters).map_err(|e| err_at(line, col, &e.to_string()))
    }
}

pub fn parse(text: &str) -> Result<PretheoryFile, ParseError> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), 1);
    let mut ps = Parser { toks, pos: 0, end };
    ps.keyword("base")?;
    let family = match ps.next() {
        Some(Tok::Word(w)) if w == "fin" => ArityFamily::Fin,
        Some(Tok::Word(w)) if w == "graph" => ArityFamily::Delta0,
        _ => {
            ps.pos -= 1;
            return Err(ps.err("expected `fin` or `graph`"));
        }
    };
    let mut p = Pretheory::initial(family);
    let mut imports = Vec::new();
    while let Some(t) = ps.peek().cloned() {
        let (line, col) = ps.here();
        let at = |e: &dyn std::fmt::Display| err_at(line, col, &e.to_string());
        match t {
            Tok::Word(w) if w == "generator" => {
                ps.pos += 1;
                let name = ps.ident()?;
                if is_reserved(&name) {
                    return Err(at(&format!("`{name}` is reserved")));
                }
                ps.sym(":")?;
                let a = ps.arity(family)?;
                ps.sym("->")?;
                let b = ps.arity(family)?;
                p = p.adjoin_generator(&name, a, b).map_err(|e| at(&e))?;
            }
            Tok::Word(w) if w == "eq" => {
                ps.pos += 1;
                let l = ps.word(&p)?;
                ps.sym("=")?;
                let r = ps.word(&p)?;
                p = p.adjoin_equation(l, r).map_err(|e| at(&e))?;
            }
            Tok::Word(w) if w == "import" => {
                ps.pos += 1;
                let name = ps.ident()?;
                let q = Pretheory::bundled(&name).map_err(|e| at(&e))?;
                if q.family != family {
                    return Err(at(&format!("`{name}` lives over {}", q.family.name())));
                }
                p = merge(&p, &q).map_err(|e| at(&e))?;
                imports.push(name);
            }
            _ => return Err(ps.err("expected `generator`, `eq` or `import`")),
        }
    }
    Ok(PretheoryFile { family, imports, pretheory: p })
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "id" | "map" | "shift" | "sigma" | "tau" | "eq" | "generator" | "import" | "base")
}

fn merge(p: &Pretheory, q: &Pretheory) -> Result<Pretheory, lawkit_core::error::PretheoryError> {
    let mut out = p.clone();
    for g in &q.generators {
        out = out.adjoin_generator(&g.name, g.src, g.dst)?;
    }
    let offset = p.generators.len();
    let shift = |w: &Word| Word {
        letters: w
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Gen(g) => Letter::Gen(g + offset),
                b => b,
            })
            .collect(),
        ..w.clone()
    };
    for (l, r) in &q.equations {
        out = out.adjoin_equation(shift(l), shift(r))?;
    }
    Ok(out)
}

/// Renders a pretheory in the file format.
pub fn emit(p: &Pretheory) -> String {
    let fam = p.family;
    let mut out = format!("base {}\n", fam.name());
    for g in &p.generators {
        out += &format!("generator {} : {} -> {}\n", g.name, fam.arity_label(g.src), fam.arity_label(g.dst));
    }
    for (l, r) in &p.equations {
        let show = |w| ShowWord { family: fam, generators: &p.generators, word: w };
        out += &format!("eq {} = {}\n", show(l), show(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_is_initial() {
        let f = parse("base fin\n# nothing else\n").unwrap();
        assert_eq!(f.pretheory, Pretheory::initial(ArityFamily::Fin));
    }

    #[test]
    fn monoid_generator() {
        let f = parse("base fin\ngenerator m : 1 -> 2\neq m ; map(0,0)[2->1] = id[1]").unwrap();
        let g = &f.pretheory.generators[0];
        assert_eq!((g.name.as_str(), g.src, g.dst), ("m", 1, 2));
        assert_eq!(f.pretheory.equations.len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("base fin\ngenerator m : 1 -> 2\neq m = id[1]").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse("base fin\neq q = id[1]").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        assert!(parse("base set").is_err());
        assert!(parse("base fin\ngenerator m : 1 -> 2 $").is_err());
        assert!(parse("base fin\neq map(0,2)[2->2] = id[2]").is_err());
    }

    #[test]
    fn graph_syntax() {
        let f = parse("base graph\ngenerator c : [1] -> [1]\neq sigma ; c = tau\neq shift(1)[1->2] = shift(1)[1->2]").unwrap();
        assert_eq!(f.pretheory.equations.len(), 2);
        assert!(parse("base graph\neq shift(2)[1->2] = shift(0)[1->2]").is_err());
    }

    #[test]
    fn bundled_round_trip() {
        for name in lawkit_core::pretheory::BUNDLED {
            let p = Pretheory::bundled(name).unwrap();
            assert_eq!(parse(&emit(&p)).unwrap().pretheory, p, "{name}");
        }
    }

    #[test]
    fn imports() {
        let f = parse("base fin\nimport monoid\ngenerator e : 0 -> 1").unwrap();
        assert_eq!(f.imports, vec!["monoid"]);
        assert_eq!(f.pretheory.generators.len(), Pretheory::bundled("monoid").unwrap().generators.len() + 1);
        assert!(parse("base graph\nimport monoid").is_err());
    }
}
