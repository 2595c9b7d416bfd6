//! Deciding equations between terms, two ways.
//!
//! The finite-model method evaluates both sides under every assignment into
//! the generating algebras of the variety: **3**_L for left-handed, **3**_R for
//! right-handed, both for general skew Boolean algebras and **2** for
//! generalized Boolean algebras. The normal-form method compares atom sets in
//! the free algebra on the union of the variables.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::{FreeAlgebra, FreeAtom, Variety};
use crate::primitive::{PrimitiveElement, PrimitiveShape};
use crate::term::{Alphabet, CompiledTerm, Term};

/// Exhaustive evaluation refuses alphabets beyond this (3^12 assignments).
pub const MAX_EXHAUSTIVE_VARIABLES: usize = 12;

/// An assignment into a generating algebra under which two terms differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub model: PrimitiveShape,
    pub assignment: Vec<(String, PrimitiveElement)>,
    pub left: PrimitiveElement,
    pub right: PrimitiveElement,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.assignment.iter().map(|(name, value)| format!("{name}={}", self.model.label(*value))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Outcome of a decision. For order queries `equal` means every defining
/// equation holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn holds() -> Verdict {
        Verdict { equal: true, witness: None }
    }

    fn fails(w: Witness) -> Verdict {
        Verdict { equal: false, witness: Some(w) }
    }
}

/// The algebras whose equations are exactly those of the variety.
pub fn generating_models(v: Variety) -> &'static [PrimitiveShape] {
    const L: PrimitiveShape = PrimitiveShape { rows: 2, cols: 1 };
    const R: PrimitiveShape = PrimitiveShape { rows: 1, cols: 2 };
    match v {
        Variety::Lsba => &[L],
        Variety::Rsba => &[R],
        Variety::Sba => &[L, R],
        Variety::Gba => &[PrimitiveShape::TWO],
    }
}

/// Assignments of `k` variables into `model`, in lexicographic order with the
/// first variable most significant and `0` before the nonzero elements.
fn assignments(model: PrimitiveShape, k: usize) -> impl Iterator<Item = Vec<PrimitiveElement>> {
    let base = model.size();
    let total = base.pow(k as u32);
    (0..total).map(move |mut index| {
        let mut values = vec![PrimitiveElement::Zero; k];
        for slot in values.iter_mut().rev() {
            *slot = model.element_at((index % base) as u32);
            index /= base;
        }
        values
    })
}

struct Equation {
    lhs: CompiledTerm,
    rhs: CompiledTerm,
}

fn compile(alphabet: &Alphabet, pairs: &[(&Term, &Term)]) -> Result<Vec<Equation>> {
    pairs
        .iter()
        .map(|(l, r)| Ok(Equation { lhs: CompiledTerm::new(l, alphabet)?, rhs: CompiledTerm::new(r, alphabet)? }))
        .collect()
}

fn union_alphabet<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<Alphabet> {
    let alphabet = terms.into_iter().fold(Alphabet::default(), |acc, t| acc.union(&t.variables()));
    if alphabet.len() > MAX_EXHAUSTIVE_VARIABLES {
        return Err(Error::CapExceeded(format!(
            "{} variables; exhaustive evaluation stops at {MAX_EXHAUSTIVE_VARIABLES}",
            alphabet.len()
        )));
    }
    Ok(alphabet)
}

/// Checks `premises ⇒ conclusions` under every assignment; the witness
/// reports the first failing conclusion.
fn search(v: Variety, alphabet: &Alphabet, premises: &[Equation], conclusions: &[Equation]) -> Verdict {
    let mut stack = Vec::new();
    for &model in generating_models(v) {
        for values in assignments(model, alphabet.len()) {
            let satisfied = |eq: &Equation, stack: &mut Vec<PrimitiveElement>| {
                let l = eq.lhs.eval(&model, &values, stack);
                let r = eq.rhs.eval(&model, &values, stack);
                (l == r, l, r)
            };
            if !premises.iter().all(|eq| satisfied(eq, &mut stack).0) {
                continue;
            }
            for eq in conclusions {
                let (ok, left, right) = satisfied(eq, &mut stack);
                if !ok {
                    let assignment = alphabet.names().map(str::to_string).zip(values.iter().copied()).collect();
                    return Verdict::fails(Witness { model, assignment, left, right });
                }
            }
        }
    }
    Verdict::holds()
}

/// Decides `t1 = t2` in `v` by exhaustive evaluation in the generating algebras.
pub fn decide_equal(v: Variety, t1: &Term, t2: &Term) -> Result<Verdict> {
    let alphabet = union_alphabet([t1, t2])?;
    let eqs = compile(&alphabet, &[(t1, t2)])?;
    Ok(search(v, &alphabet, &[], &eqs))
}

/// `t1 ≤ t2`: `t1 ∧ t2 = t1 = t2 ∧ t1`.
pub fn decide_leq(v: Variety, t1: &Term, t2: &Term) -> Result<Verdict> {
    let a = Term::meet(t1.clone(), t2.clone());
    let b = Term::meet(t2.clone(), t1.clone());
    decide_all(v, &[], &[(&a, t1), (&b, t1)])
}

/// `t1 ⪯ t2`: `t1 ∧ t2 ∧ t1 = t1`.
pub fn decide_preceq(v: Variety, t1: &Term, t2: &Term) -> Result<Verdict> {
    let a = Term::meet(Term::meet(t1.clone(), t2.clone()), t1.clone());
    decide_all(v, &[], &[(&a, t1)])
}

/// Decides whether the premises imply the conclusions (all as equations).
pub fn decide_all(v: Variety, premises: &[(&Term, &Term)], conclusions: &[(&Term, &Term)]) -> Result<Verdict> {
    let all = premises.iter().chain(conclusions).flat_map(|(l, r)| [*l, *r]);
    let alphabet = union_alphabet(all)?;
    Ok(search(v, &alphabet, &compile(&alphabet, premises)?, &compile(&alphabet, conclusions)?))
}

/// Decides `t1 = t2` in `v` by comparing normal forms in the free algebra.
///
/// When the forms differ, the witness is read off the first differing atomic
/// class: its support is sent to nonzero values and everything else to `0`,
/// which maps each side to `0` or to the value of its leader.
pub fn decide_equal_nf(v: Variety, t1: &Term, t2: &Term) -> Result<Verdict> {
    let alphabet = t1.variables().union(&t2.variables());
    let free = FreeAlgebra::new(v, alphabet.clone())?;
    let (e1, e2) = (free.eval(t1)?, free.eval(t2)?);
    if e1 == e2 {
        return Ok(Verdict::holds());
    }
    let find = |atoms: &[FreeAtom], support: u64| atoms.iter().find(|a| a.support == support).copied();
    let support = e1
        .atoms()
        .iter()
        .chain(e2.atoms())
        .map(|a| a.support)
        .filter(|&s| find(e1.atoms(), s) != find(e2.atoms(), s))
        .min()
        .expect("distinct normal forms differ on some class");
    let (a1, a2) = (find(e1.atoms(), support), find(e2.atoms(), support));
    let [l, r] = match v {
        Variety::Gba => [PrimitiveShape::TWO; 2],
        _ => [generating_models(Variety::Lsba)[0], generating_models(Variety::Rsba)[0]],
    };
    // (model, variable whose value is 1; the other support members get 2)
    let (model, lead) = match (a1, a2) {
        (Some(x), Some(y)) if x.left != y.left => (l, x.left),
        (Some(x), Some(y)) if x.right != y.right => (r, x.right),
        _ if v == Variety::Rsba => (r, None),
        _ => (l, None),
    };
    let values: Vec<PrimitiveElement> = (0..alphabet.len())
        .map(|i| {
            if support >> i & 1 == 0 {
                PrimitiveElement::Zero
            } else if lead.is_none() || lead == Some(i as u8) {
                model.element_at(1)
            } else {
                model.element_at(2)
            }
        })
        .collect();
    let mut stack = Vec::new();
    let left = CompiledTerm::new(t1, &alphabet)?.eval(&model, &values, &mut stack);
    let right = CompiledTerm::new(t2, &alphabet)?.eval(&model, &values, &mut stack);
    if left == right {
        return Err(Error::VerificationFailed(format!("normal-form witness does not separate `{t1}` and `{t2}`")));
    }
    let assignment = alphabet.names().map(str::to_string).zip(values).collect();
    Ok(Verdict::fails(Witness { model, assignment, left, right }))
}

/// Re-evaluates a witness and reports whether it separates the terms.
pub fn witness_separates(w: &Witness, t1: &Term, t2: &Term) -> Result<bool> {
    let lookup = |name: &str| w.assignment.iter().find(|(n, _)| n == name).map(|(_, v)| *v);
    Ok(t1.eval(&w.model, &lookup)? != t2.eval(&w.model, &lookup)?)
}

// ---------------------------------------------------------------------------
// Identity suite

/// A law `premises ⇒ conclusions` (no premises for plain identities), with
/// the varieties in which it is expected to hold.
#[derive(Debug, Clone)]
pub struct Law {
    pub name: &'static str,
    pub premises: Vec<(Term, Term)>,
    pub conclusions: Vec<(Term, Term)>,
    pub holds_in: &'static [Variety],
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub law: &'static str,
    pub variety: Variety,
    pub expected: bool,
    pub verdict: Verdict,
}

impl SuiteRow {
    pub fn passed(&self) -> bool {
        self.expected == self.verdict.equal
    }
}

const ALL: &[Variety] = &Variety::ALL;
const LEFT: &[Variety] = &[Variety::Lsba, Variety::Gba];
const RIGHT: &[Variety] = &[Variety::Rsba, Variety::Gba];
const COMMUTATIVE: &[Variety] = &[Variety::Gba];

fn t(s: &str) -> Term {
    s.parse().expect("suite terms are well formed")
}

fn eqs(pairs: &[(&str, &str)]) -> Vec<(Term, Term)> {
    pairs.iter().map(|(l, r)| (t(l), t(r))).collect()
}

/// `a ≤ b` as two equations.
fn leq(a: &str, b: &str) -> Vec<(Term, Term)> {
    let (a, b) = (t(a), t(b));
    vec![(Term::meet(a.clone(), b.clone()), a.clone()), (Term::meet(b, a.clone()), a)]
}

/// `a ⪯ b` as one equation.
fn preceq(a: &str, b: &str) -> Vec<(Term, Term)> {
    let (a, b) = (t(a), t(b));
    vec![(Term::meet(Term::meet(a.clone(), b), a.clone()), a)]
}

fn identity(name: &'static str, lhs: &str, rhs: &str, holds_in: &'static [Variety]) -> Law {
    Law { name, premises: Vec::new(), conclusions: eqs(&[(lhs, rhs)]), holds_in }
}

pub fn laws() -> Vec<Law> {
    vec![
        identity("meet associative", "(x & y) & z", "x & (y & z)", ALL),
        identity("join associative", "(x | y) | z", "x | (y | z)", ALL),
        identity("meet idempotent", "x & x", "x", ALL),
        identity("join idempotent", "x | x", "x", ALL),
        identity("absorption 1", "x & (x | y)", "x", ALL),
        identity("absorption 2", "(y | x) & x", "x", ALL),
        identity("absorption 3", "x | (x & y)", "x", ALL),
        identity("absorption 4", "(y & x) | x", "x", ALL),
        identity("zero meet", "0 & x", "0", ALL),
        identity("meet zero", "x & 0", "0", ALL),
        identity("zero join", "0 | x", "x", ALL),
        identity("join zero", "x | 0", "x", ALL),
        identity("complement join", "(x & y & x) | (x \\ y)", "x", ALL),
        identity("complement meet 1", "(x & y & x) & (x \\ y)", "0", ALL),
        identity("complement meet 2", "(x \\ y) & (x & y & x)", "0", ALL),
        identity("strong distributivity 1", "x & (y | z)", "(x & y) | (x & z)", ALL),
        identity("strong distributivity 2", "(x | y) & z", "(x & z) | (y & z)", ALL),
        identity("normality", "x & y & z & w", "x & z & y & w", ALL),
        identity("regularity", "x & y & x & z & x", "x & y & z & x", ALL),
        identity("de Morgan: meet minus", "(x & y) \\ z", "(x \\ z) & (y \\ z)", ALL),
        identity("de Morgan: join minus", "(x | y) \\ z", "(x \\ z) | (y \\ z)", ALL),
        identity("de Morgan: minus join", "x \\ (y | z)", "(x \\ y) & (x \\ z)", ALL),
        identity("de Morgan: minus meet", "x \\ (y & z)", "(x \\ y) | (x \\ z)", ALL),
        identity("difference: swap subtrahends", "(x \\ y) \\ z", "(x \\ z) \\ y", ALL),
        identity("difference: iterated is minus join", "(x \\ y) \\ z", "x \\ (y | z)", ALL),
        identity("difference: join subtrahend commutes", "x \\ (y | z)", "x \\ (z | y)", ALL),
        identity("difference: double complement", "x \\ (x \\ y)", "x & y & x", ALL),
        identity("difference: join back 1", "(x \\ y) | y", "y | x | y", ALL),
        identity("difference: join back 2", "y | x | y", "y | (x \\ y)", ALL),
        identity("difference: meet subtrahend commutes", "x \\ (x & y)", "x \\ (y & x)", ALL),
        identity("difference: meet subtrahend", "x \\ (y & x)", "x \\ y", ALL),
        Law {
            name: "preorder: minus is antitone",
            premises: preceq("y", "z"),
            conclusions: leq("x \\ z", "x \\ y"),
            holds_in: ALL,
        },
        Law { name: "order: minus is monotone", premises: leq("x", "y"), conclusions: leq("x \\ z", "y \\ z"), holds_in: ALL },
        // As usually printed, with `≤` in the conclusion, this fails as soon as
        // `x` and `y` are distinct members of one D-class (take z = 0); it holds
        // where `⪯` and `≤` coincide. The preorder form holds everywhere.
        Law {
            name: "preorder: minus is monotone (order)",
            premises: preceq("x", "y"),
            conclusions: leq("x \\ z", "y \\ z"),
            holds_in: COMMUTATIVE,
        },
        Law {
            name: "preorder: minus is monotone (preorder)",
            premises: preceq("x", "y"),
            conclusions: preceq("x \\ z", "y \\ z"),
            holds_in: ALL,
        },
        identity("meet commutative", "x & y", "y & x", COMMUTATIVE),
        identity("join commutative", "x | y", "y | x", COMMUTATIVE),
        identity("left-handed meet", "x & y & x", "x & y", LEFT),
        identity("left-handed join", "x | y | x", "y | x", LEFT),
        identity("right-handed meet", "x & y & x", "y & x", RIGHT),
        identity("right-handed join", "x | y | x", "x | y", RIGHT),
    ]
}

/// Runs every law in every variety.
pub fn identity_suite() -> Result<Vec<SuiteRow>> {
    let mut rows = Vec::new();
    for law in laws() {
        let premises: Vec<(&Term, &Term)> = law.premises.iter().map(|(l, r)| (l, r)).collect();
        let conclusions: Vec<(&Term, &Term)> = law.conclusions.iter().map(|(l, r)| (l, r)).collect();
        for v in Variety::ALL {
            rows.push(SuiteRow {
                law: law.name,
                variety: v,
                expected: law.holds_in.contains(&v),
                verdict: decide_all(v, &premises, &conclusions)?,
            });
        }
    }
    Ok(rows)
}
