//! Concrete algebras used as independent oracles.
//!
//! * The set model `S_X`: subsets of `Ω = {(f, x) : f ∈ {0,1}^X \ {0}, f(x) = 1}`
//!   with restriction, override and difference computed through the projection
//!   `p(f, x) = f`. The generators `i(x) = {(f, x) : f(x) = 1}` generate a copy
//!   of the free left-handed algebra.
//! * Partial functions `{1..n} ⇀ {1..m}` under restriction, override and
//!   difference, isomorphic to `(m+1)_L^n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::SkewBoolean;
use crate::error::{Error, Result};
use crate::free::{FreeAlgebra, Variety};
use crate::orthosum::{AlgebraSignature, FiniteElement, CLOSURE_CAP};
use crate::primitive::{PrimitiveElement, PrimitiveShape};
use crate::saturate::saturate;
use crate::term::Term;

// ---------------------------------------------------------------------------
// S_X

/// Largest alphabet for which `Ω` is materialized.
pub const SX_MAX_N: u32 = 20;

/// `Ω` over an alphabet of `n` variables; points are `(f, x)` with `f` a
/// nonzero bit vector and `x` one of its set bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SxSpace {
    n: u32,
}

pub type SxElement = BTreeSet<(u64, u8)>;

impl SxSpace {
    pub fn new(n: u32) -> Result<SxSpace> {
        if n > SX_MAX_N {
            return Err(Error::CapExceeded(format!("Ω is materialized only for n ≤ {SX_MAX_N}")));
        }
        Ok(SxSpace { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn omega(&self) -> SxElement {
        (1..1u64 << self.n)
            .flat_map(|f| (0..self.n as u8).filter(move |&x| f >> x & 1 == 1).map(move |x| (f, x)))
            .collect()
    }

    pub fn contains(&self, a: &SxElement) -> bool {
        a.iter().all(|&(f, x)| f >> x & 1 == 1 && f < 1 << self.n && (x as u32) < self.n)
    }

    /// `i(x) = {(f, x) : f(x) = 1}`.
    pub fn generator(&self, i: u32) -> Result<SxElement> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { row: i, col: 0, rows: self.n, cols: 1 });
        }
        Ok((1..1u64 << self.n).filter(|f| f >> i & 1 == 1).map(|f| (f, i as u8)).collect())
    }

    fn checked(&self, a: &SxElement, b: &SxElement) -> Result<()> {
        if self.contains(a) && self.contains(b) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("element is not a subset of Ω for n = {}", self.n)))
        }
    }

    pub fn sx_meet(&self, a: &SxElement, b: &SxElement) -> Result<SxElement> {
        self.checked(a, b)?;
        Ok(self.meet(a, b))
    }

    pub fn sx_join(&self, a: &SxElement, b: &SxElement) -> Result<SxElement> {
        self.checked(a, b)?;
        Ok(self.join(a, b))
    }

    pub fn sx_diff(&self, a: &SxElement, b: &SxElement) -> Result<SxElement> {
        self.checked(a, b)?;
        Ok(self.diff(a, b))
    }
}

fn projection(a: &SxElement) -> BTreeSet<u64> {
    a.iter().map(|&(f, _)| f).collect()
}

impl SkewBoolean for SxSpace {
    type Element = SxElement;

    fn zero(&self) -> SxElement {
        SxElement::new()
    }

    /// `{(f, x) ∈ A : f ∈ p(A) ∩ p(B)}`
    fn meet(&self, a: &SxElement, b: &SxElement) -> SxElement {
        let pb = projection(b);
        a.iter().filter(|(f, _)| pb.contains(f)).copied().collect()
    }

    /// `{(f, x) ∈ A ∪ B : f ∈ p(A) \ p(B) or f ∈ p(B)}`
    fn join(&self, a: &SxElement, b: &SxElement) -> SxElement {
        let mut out = self.diff(a, b);
        out.extend(b.iter().copied());
        out
    }

    /// `{(f, x) ∈ A : f ∈ p(A) \ p(B)}`
    fn diff(&self, a: &SxElement, b: &SxElement) -> SxElement {
        let pb = projection(b);
        a.iter().filter(|(f, _)| !pb.contains(f)).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SxVerification {
    /// Atomic terms evaluated (one per atom of the free left-handed algebra).
    pub atoms: usize,
    /// Distinct nonempty results among them.
    pub distinct_nonempty: usize,
}

impl SxVerification {
    pub fn is_free(&self) -> bool {
        self.atoms == self.distinct_nonempty
    }
}

/// Evaluates every atomic term `(x ∧ …) \ (u ∨ …)` of the free left-handed
/// algebra on the generators `i(x)` and counts the distinct nonempty results.
pub fn sx_verify_free(space: &SxSpace) -> Result<SxVerification> {
    let free = FreeAlgebra::numbered(Variety::Lsba, space.n as usize)?;
    let alphabet = free.alphabet().clone();
    let gens: Vec<SxElement> = (0..space.n).map(|i| space.generator(i)).collect::<Result<_>>()?;
    let zero = free.zero();
    let mut outcomes = BTreeSet::new();
    let mut atoms = 0;
    for atom in free.all_atoms()? {
        let term: Term = zero.atom_term(&atom);
        let value = term.eval_with(space, &alphabet, &gens)?;
        atoms += 1;
        if !value.is_empty() {
            outcomes.insert(value);
        }
    }
    Ok(SxVerification { atoms, distinct_nonempty: outcomes.len() })
}

/// Size of the subalgebra generated by the `i(x)`.
pub fn sx_closure_size(space: &SxSpace) -> Result<usize> {
    if space.n > 3 {
        return Err(Error::CapExceeded(format!("S_X closure is computed only for n ≤ 3, not {}", space.n)));
    }
    let gens: Vec<SxElement> = (0..space.n).map(|i| space.generator(i)).collect::<Result<_>>()?;
    let seeds = std::iter::once(SxElement::new()).chain(gens);
    let all = saturate(seeds, CLOSURE_CAP as usize, |a, b| [space.meet(a, b), space.join(a, b), space.diff(a, b)])?;
    Ok(all.len())
}

// ---------------------------------------------------------------------------
// Partial functions

/// A partial map `{1..n} ⇀ {1..m}`; `values[i]` is the image of `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFn {
    pub codomain: u32,
    pub values: Vec<Option<u32>>,
}

impl PartialFn {
    pub fn empty(domain: u32, codomain: u32) -> PartialFn {
        PartialFn { codomain, values: vec![None; domain as usize] }
    }

    /// From `(point, image)` pairs, both 1-based.
    pub fn from_pairs(domain: u32, codomain: u32, pairs: &[(u32, u32)]) -> Result<PartialFn> {
        let mut f = PartialFn::empty(domain, codomain);
        for &(a, b) in pairs {
            if a == 0 || a > domain || b == 0 || b > codomain {
                return Err(Error::IndexOutOfRange { row: a, col: b, rows: domain, cols: codomain });
            }
            if f.values[a as usize - 1].replace(b).is_some() {
                return Err(Error::InvalidShape(format!("{a} is assigned twice")));
            }
        }
        Ok(f)
    }

    pub fn domain(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.values.iter().enumerate().filter_map(|(i, v)| v.map(|b| (i as u32 + 1, b))).collect()
    }

    fn compatible(&self, other: &PartialFn) -> Result<()> {
        if self.codomain != other.codomain || self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch(format!(
                "partial maps {{1..{}}} ⇀ {{1..{}}} and {{1..{}}} ⇀ {{1..{}}}",
                self.domain(),
                self.codomain,
                other.domain(),
                other.codomain
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{a}↦{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The algebra of all partial maps `{1..domain} ⇀ {1..codomain}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartialFnSpace {
    pub domain: u32,
    pub codomain: u32,
}

impl SkewBoolean for PartialFnSpace {
    type Element = PartialFn;

    fn zero(&self) -> PartialFn {
        PartialFn::empty(self.domain, self.codomain)
    }

    /// Restriction of `f` to the common domain.
    fn meet(&self, f: &PartialFn, g: &PartialFn) -> PartialFn {
        let values = f.values.iter().zip(&g.values).map(|(a, b)| b.and(*a)).collect();
        PartialFn { codomain: f.codomain, values }
    }

    /// `g` overriding `f`.
    fn join(&self, f: &PartialFn, g: &PartialFn) -> PartialFn {
        let values = f.values.iter().zip(&g.values).map(|(a, b)| b.or(*a)).collect();
        PartialFn { codomain: f.codomain, values }
    }

    /// Restriction of `f` to where `g` is undefined.
    fn diff(&self, f: &PartialFn, g: &PartialFn) -> PartialFn {
        let values = f.values.iter().zip(&g.values).map(|(a, b)| if b.is_some() { None } else { *a }).collect();
        PartialFn { codomain: f.codomain, values }
    }
}

fn space_of(f: &PartialFn) -> PartialFnSpace {
    PartialFnSpace { domain: f.domain(), codomain: f.codomain }
}

pub fn pfun_meet(f: &PartialFn, g: &PartialFn) -> Result<PartialFn> {
    f.compatible(g)?;
    Ok(space_of(f).meet(f, g))
}

pub fn pfun_join(f: &PartialFn, g: &PartialFn) -> Result<PartialFn> {
    f.compatible(g)?;
    Ok(space_of(f).join(f, g))
}

pub fn pfun_diff(f: &PartialFn, g: &PartialFn) -> Result<PartialFn> {
    f.compatible(g)?;
    Ok(space_of(f).diff(f, g))
}

/// The signature `(m+1)_L^n` of the partial maps `{1..n} ⇀ {1..m}`.
pub fn pfun_signature(n: u32, m: u32) -> AlgebraSignature {
    AlgebraSignature::new(vec![PrimitiveShape { rows: m, cols: 1 }; n as usize])
}

/// Coordinate `i` is `0` where `f` is undefined and the atom `f(i)` otherwise.
pub fn pfun_to_finite(f: &PartialFn) -> FiniteElement {
    FiniteElement {
        coords: f.values.iter().map(|v| v.map_or(PrimitiveElement::Zero, |b| PrimitiveElement::at(b - 1, 0))).collect(),
    }
}

pub fn finite_to_pfun(n: u32, m: u32, x: &FiniteElement) -> Result<PartialFn> {
    pfun_signature(n, m).check(x)?;
    let values = x
        .coords
        .iter()
        .map(|c| match *c {
            PrimitiveElement::Zero => None,
            PrimitiveElement::NonZero { row, .. } => Some(row + 1),
        })
        .collect();
    Ok(PartialFn { codomain: m, values })
}
