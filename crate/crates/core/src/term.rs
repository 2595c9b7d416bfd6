//! Terms over the signature `(∧, ∨, \, 0)`: parsing, printing and inspection.
//!
//! Input grammar (all binary operators left-associative):
//!
//! ```text
//! expr := join
//! join := diff ("|" diff)*
//! diff := meet ("\" meet)*
//! meet := atom ("&" atom)*
//! atom := "0" | IDENT | "(" expr ")"
//! ```
//!
//! `∧`, `∨` and `∖` are accepted as aliases of `&`, `|` and `\`.

use std::fmt;

use indexmap::IndexSet;

use crate::algebra::SkewBoolean;
use crate::error::{Error, Result};

/// A term in the skew Boolean signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Diff(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn meet(left: Term, right: Term) -> Term {
        Term::Meet(Box::new(left), Box::new(right))
    }

    pub fn join(left: Term, right: Term) -> Term {
        Term::Join(Box::new(left), Box::new(right))
    }

    pub fn diff(left: Term, right: Term) -> Term {
        Term::Diff(Box::new(left), Box::new(right))
    }

    /// Left-nested meet of a nonempty sequence; `None` when empty.
    pub fn meet_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::meet)
    }

    /// Left-nested join of a nonempty sequence; `None` when empty.
    pub fn join_all<I: IntoIterator<Item = Term>>(terms: I) -> Option<Term> {
        terms.into_iter().reduce(Term::join)
    }

    /// Distinct variables in first-occurrence order.
    pub fn variables(&self) -> Alphabet {
        let mut names = IndexSet::new();
        self.collect_vars(&mut names);
        Alphabet { names }
    }

    fn collect_vars(&self, out: &mut IndexSet<String>) {
        match self {
            Term::Var(name) => {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
            Term::Zero => {}
            Term::Meet(l, r) | Term::Join(l, r) | Term::Diff(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 0,
            Term::Meet(l, r) | Term::Join(l, r) | Term::Diff(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Evaluates the term in `algebra`, reading variable values from `lookup`.
    pub fn eval<A, F>(&self, algebra: &A, lookup: &F) -> Result<A::Element>
    where
        A: SkewBoolean + ?Sized,
        F: Fn(&str) -> Option<A::Element>,
    {
        Ok(match self {
            Term::Var(name) => lookup(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?,
            Term::Zero => algebra.zero(),
            Term::Meet(l, r) => algebra.meet(&l.eval(algebra, lookup)?, &r.eval(algebra, lookup)?),
            Term::Join(l, r) => algebra.join(&l.eval(algebra, lookup)?, &r.eval(algebra, lookup)?),
            Term::Diff(l, r) => algebra.diff(&l.eval(algebra, lookup)?, &r.eval(algebra, lookup)?),
        })
    }

    /// Evaluates with variable values given positionally over `alphabet`.
    pub fn eval_with<A>(&self, algebra: &A, alphabet: &Alphabet, values: &[A::Element]) -> Result<A::Element>
    where
        A: SkewBoolean + ?Sized,
    {
        self.eval(algebra, &|name: &str| alphabet.index_of(name).and_then(|i| values.get(i).cloned()))
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 1,
            Term::Diff(..) => 2,
            Term::Meet(..) => 3,
            Term::Var(_) | Term::Zero => 4,
        }
    }

    fn is_leaf(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Zero)
    }
}

/// A term flattened to postfix over variable indices, for evaluating the
/// same term under many assignments without name lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledTerm {
    code: Vec<Instr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Zero,
    Meet,
    Join,
    Diff,
}

impl CompiledTerm {
    pub fn new(term: &Term, alphabet: &Alphabet) -> Result<CompiledTerm> {
        let mut code = Vec::new();
        Self::emit(term, alphabet, &mut code)?;
        Ok(CompiledTerm { code })
    }

    fn emit(term: &Term, alphabet: &Alphabet, code: &mut Vec<Instr>) -> Result<()> {
        let op = match term {
            Term::Var(name) => {
                let i = alphabet.index_of(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                code.push(Instr::Var(i));
                return Ok(());
            }
            Term::Zero => {
                code.push(Instr::Zero);
                return Ok(());
            }
            Term::Meet(..) => Instr::Meet,
            Term::Join(..) => Instr::Join,
            Term::Diff(..) => Instr::Diff,
        };
        let (Term::Meet(l, r) | Term::Join(l, r) | Term::Diff(l, r)) = term else { unreachable!() };
        Self::emit(l, alphabet, code)?;
        Self::emit(r, alphabet, code)?;
        code.push(op);
        Ok(())
    }

    /// Evaluates with `values[i]` bound to variable `i`; `stack` is scratch space.
    pub fn eval<A>(&self, algebra: &A, values: &[A::Element], stack: &mut Vec<A::Element>) -> A::Element
    where
        A: SkewBoolean + ?Sized,
    {
        stack.clear();
        for &ins in &self.code {
            let v = match ins {
                Instr::Var(i) => values[i].clone(),
                Instr::Zero => algebra.zero(),
                Instr::Meet | Instr::Join | Instr::Diff => {
                    let r = stack.pop().expect("well-formed postfix");
                    let l = stack.pop().expect("well-formed postfix");
                    match ins {
                        Instr::Meet => algebra.meet(&l, &r),
                        Instr::Join => algebra.join(&l, &r),
                        _ => algebra.diff(&l, &r),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("nonempty program")
    }
}

/// Printing rule: minimal parentheses for `&` and `|`; every compound operand of
/// `\` is parenthesized, so `(x & y) \ z` prints the way atoms are usually written.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => f.write_str(name),
            Term::Zero => f.write_str("0"),
            Term::Meet(l, r) => {
                write_operand(f, l, l.precedence() < 3)?;
                f.write_str(" & ")?;
                write_operand(f, r, r.precedence() <= 3)
            }
            Term::Join(l, r) => {
                write_operand(f, l, false)?;
                f.write_str(" | ")?;
                write_operand(f, r, r.precedence() <= 1)
            }
            Term::Diff(l, r) => {
                write_operand(f, l, !l.is_leaf())?;
                f.write_str(" \\ ")?;
                write_operand(f, r, !r.is_leaf())
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &Term, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

pub fn format(t: &Term) -> String {
    t.to_string()
}

impl std::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        parse(s)
    }
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered set of distinct variable names.
///
/// The order fixes the bit positions of atom supports and the coordinate
/// order of assignments everywhere downstream.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: IndexSet<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.into())?;
        }
        Ok(alphabet)
    }

    /// The alphabet `x1, …, xn`.
    pub fn numbered(n: usize) -> Alphabet {
        Alphabet { names: (1..=n).map(|i| format!("x{i}")).collect() }
    }

    pub fn push(&mut self, name: String) -> Result<usize> {
        if !is_identifier(&name) {
            return Err(Error::Syntax { offset: 0, expected: vec![format!("identifier, found `{name}`")] });
        }
        if self.names.contains(&name) {
            return Err(Error::VariableCollision(name));
        }
        let (index, _) = self.names.insert_full(name);
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get_index_of(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// `self` followed by the names of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut names = self.names.clone();
        for name in &other.names {
            if !names.contains(name) {
                names.insert(name.clone());
            }
        }
        Alphabet { names }
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.names.iter().all(|n| other.contains(n))
    }
}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for name in self.names() {
            name.hash(state);
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.names().collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Zero,
    LParen,
    RParen,
    And,
    Or,
    Minus,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Tok)> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok((start, Tok::End));
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '\\' | '∖' => Tok::Minus,
            '0' => Tok::Zero,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = trimmed
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .unwrap_or(trimmed.len());
                self.pos += len;
                return Ok((start, Tok::Ident(trimmed[..len].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    offset: start,
                    expected: vec!["`0`".into(), "identifier".into(), "`(`".into()],
                })
            }
        };
        self.pos += c.len_utf8();
        Ok((start, tok))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Tok),
    depth: usize,
}

/// Parses a term; errors carry the byte offset and the expected tokens.
pub fn parse(text: &str) -> Result<Term> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let peeked = lexer.next_token()?;
    let mut parser = Parser { lexer, peeked, depth: 0 };
    let term = parser.join()?;
    match parser.peeked {
        (_, Tok::End) => Ok(term),
        (offset, _) => Err(Error::Syntax { offset, expected: parser.after_operand() }),
    }
}

impl Parser<'_> {
    fn bump(&mut self) -> Result<(usize, Tok)> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn after_operand(&self) -> Vec<String> {
        let mut expected: Vec<String> = vec!["`&`".into(), "`\\`".into(), "`|`".into()];
        expected.push(if self.depth > 0 { "`)`".into() } else { "end of input".into() });
        expected
    }

    fn join(&mut self) -> Result<Term> {
        let mut acc = self.diff()?;
        while self.peeked.1 == Tok::Or {
            self.bump()?;
            acc = Term::join(acc, self.diff()?);
        }
        Ok(acc)
    }

    fn diff(&mut self) -> Result<Term> {
        let mut acc = self.meet()?;
        while self.peeked.1 == Tok::Minus {
            self.bump()?;
            acc = Term::diff(acc, self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        while self.peeked.1 == Tok::And {
            self.bump()?;
            acc = Term::meet(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.bump()? {
            (_, Tok::Zero) => Ok(Term::Zero),
            (_, Tok::Ident(name)) => Ok(Term::Var(name)),
            (_, Tok::LParen) => {
                self.depth += 1;
                let inner = self.join()?;
                match self.bump()? {
                    (_, Tok::RParen) => {
                        self.depth -= 1;
                        Ok(inner)
                    }
                    (offset, _) => Err(Error::Syntax { offset, expected: self.after_operand() }),
                }
            }
            (offset, _) => Err(Error::Syntax {
                offset,
                expected: vec!["`0`".into(), "identifier".into(), "`(`".into()],
            }),
        }
    }
}
