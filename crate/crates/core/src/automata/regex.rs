//! Regular expressions: juxtaposition, `+`/`|`, `*`, `^+`, parentheses,
//! `eps`, `empty`, plus whatever letter classes the symbol table offers.

use super::nfa::Nfa;
use super::Letter;
use crate::error::{Error, Result};

/// Resolves the tokens of a regular expression to letters.
pub trait Symbols {
    fn letters(&self) -> usize;
    /// A single declared letter.
    fn lookup(&self, token: &str) -> Option<Letter>;
    /// Named letter classes such as `Sigma`.
    fn class(&self, _name: &str) -> Option<Vec<Letter>> {
        None
    }
}

/// An untagged alphabet, letters numbered in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainAlphabet(pub Vec<String>);

impl PlainAlphabet {
    pub fn new<S: AsRef<str>>(syms: &[S]) -> Self {
        PlainAlphabet(syms.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn word(&self, text: &str) -> Result<Vec<Letter>> {
        let mut w = Vec::new();
        for tok in text.split_whitespace() {
            w.extend(split_token(self, tok)?);
        }
        Ok(w)
    }

    pub fn show(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.0[a].as_str()).collect::<Vec<_>>().join(" ")
    }
}

impl Symbols for PlainAlphabet {
    fn letters(&self) -> usize {
        self.0.len()
    }
    fn lookup(&self, token: &str) -> Option<Letter> {
        self.0.iter().position(|s| s == token)
    }
}

/// A token that is not itself a symbol is read as a run of one-character
/// symbols, so `ab` means `a b` when both are declared.
pub fn split_token(sym: &dyn Symbols, tok: &str) -> Result<Vec<Letter>> {
    if let Some(a) = sym.lookup(tok) {
        return Ok(vec![a]);
    }
    let mut out = Vec::new();
    for c in tok.chars() {
        let s = c.to_string();
        match sym.lookup(&s) {
            Some(a) => out.push(a),
            None => return Err(Error::UndeclaredLetter(tok.to_string())),
        }
    }
    if out.is_empty() {
        return Err(Error::UndeclaredLetter(tok.to_string()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Union,
    Star,
    Plus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push((i, Tok::LParen));
            }
            ')' => {
                chars.next();
                out.push((i, Tok::RParen));
            }
            '+' | '|' => {
                chars.next();
                out.push((i, Tok::Union));
            }
            '*' => {
                chars.next();
                out.push((i, Tok::Star));
            }
            '⁺' => {
                chars.next();
                out.push((i, Tok::Plus));
            }
            '^' => {
                chars.next();
                match chars.next() {
                    Some((_, '+')) => out.push((i, Tok::Plus)),
                    Some((_, '*')) => out.push((i, Tok::Star)),
                    _ => {
                        return Err(Error::Syntax {
                            pos: i,
                            msg: "expected `+` or `*` after `^`".into(),
                        })
                    }
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || "()+|*^⁺".contains(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((i, Tok::Word(s)));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sym: &'a dyn Symbols,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<Nfa> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Union) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.union(&rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Nfa> {
        let mut acc: Option<Nfa> = None;
        while matches!(self.peek(), Some(Tok::Word(_)) | Some(Tok::LParen)) {
            let f = self.factor()?;
            acc = Some(match acc {
                None => f,
                Some(a) => a.concat(&f),
            });
        }
        acc.ok_or_else(|| Error::Syntax {
            pos: self.here(),
            msg: "expected an expression".into(),
        })
    }

    fn factor(&mut self) -> Result<Nfa> {
        // in a run like `ba*` the operator binds to the last letter only
        if let Some(Tok::Word(w)) = self.peek().cloned() {
            let special = matches!(w.as_str(), "eps" | "ε" | "empty" | "∅");
            if !special && self.sym.lookup(&w).is_none() && self.sym.class(&w).is_none() {
                let letters = split_token(self.sym, &w)?;
                if let Some((last, init)) = letters.split_last().filter(|(_, init)| !init.is_empty()) {
                    let n = self.sym.letters();
                    self.pos += 1;
                    let tail = self.postfix(Nfa::word(n, &[*last]));
                    return Ok(Nfa::word(n, init).concat(&tail));
                }
            }
        }
        let a = self.atom()?;
        Ok(self.postfix(a))
    }

    fn postfix(&mut self, mut a: Nfa) -> Nfa {
        loop {
            match self.peek() {
                Some(Tok::Star) => a = a.star(),
                Some(Tok::Plus) => a = a.plus(),
                _ => break,
            }
            self.pos += 1;
        }
        a
    }

    fn atom(&mut self) -> Result<Nfa> {
        let at = self.here();
        let n = self.sym.letters();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax {
                        pos: self.here(),
                        msg: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some((_, Tok::Word(w))) => {
                self.pos += 1;
                match w.as_str() {
                    "eps" | "ε" => return Ok(Nfa::epsilon(n)),
                    "empty" | "∅" => return Ok(Nfa::empty(n)),
                    _ => {}
                }
                if let Some(a) = self.sym.lookup(&w) {
                    return Ok(Nfa::word(n, &[a]));
                }
                if let Some(set) = self.sym.class(&w) {
                    return Ok(Nfa::any_of(n, &set));
                }
                match split_token(self.sym, &w) {
                    Ok(letters) => Ok(Nfa::word(n, &letters)),
                    Err(_) => Err(Error::UndeclaredLetter(w)),
                }
            }
            _ => Err(Error::Syntax {
                pos: at,
                msg: "expected a letter or `(`".into(),
            }),
        }
    }
}

pub fn parse_regex(text: &str, sym: &dyn Symbols) -> Result<Nfa> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        sym,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax {
            pos: p.here(),
            msg: "unexpected token".into(),
        });
    }
    Ok(e)
}
