//! Finite free algebras in the four varieties, represented natively by their
//! atoms.
//!
//! An atomic D-class of the free algebra on `X` is indexed by a nonempty
//! support `L ⊆ X` (the variables that are met; the rest are subtracted). Its
//! atoms are the pointed subsets `(ℓ, L)` in the left-handed case, `(L, r)` in
//! the right-handed case, `(ℓ, L, r)` in the two-sided case, and just `L` for
//! generalized Boolean algebras. A free element is an orthosum of atoms with
//! distinct supports, and the operations act support by support using the
//! rectangular-band rules: the left leader plays the role of the row and the
//! right leader the role of the column.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::SkewBoolean;
use crate::error::{Error, Result};
use crate::orthosum::{AlgebraSignature, FiniteElement, CLOSURE_CAP};
use crate::primitive::{PrimitiveElement, PrimitiveShape};
use crate::term::{Alphabet, Term};

/// Supports are `u64` bitmasks, so alphabets stop here.
pub const MAX_VARIABLES: usize = 63;

/// Largest alphabet for which atom sets are materialized (a generator has
/// `2^(n-1)` atoms). Counting formulas are not subject to this limit.
pub const MAX_MATERIALIZED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    Lsba,
    Rsba,
    Sba,
    Gba,
}

impl Variety {
    pub const ALL: [Variety; 4] = [Variety::Lsba, Variety::Rsba, Variety::Sba, Variety::Gba];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Lsba => "lsba",
            Variety::Rsba => "rsba",
            Variety::Sba => "sba",
            Variety::Gba => "gba",
        }
    }

    pub fn has_left(self) -> bool {
        matches!(self, Variety::Lsba | Variety::Sba)
    }

    pub fn has_right(self) -> bool {
        matches!(self, Variety::Rsba | Variety::Sba)
    }

    /// Shape of the primitive factor over a support of size `k`.
    pub fn class_shape(self, k: u32) -> PrimitiveShape {
        match self {
            Variety::Lsba => PrimitiveShape { rows: k, cols: 1 },
            Variety::Rsba => PrimitiveShape { rows: 1, cols: k },
            Variety::Sba => PrimitiveShape { rows: k, cols: k },
            Variety::Gba => PrimitiveShape::TWO,
        }
    }

    /// Whether every algebra in `self` also belongs to `other`.
    pub fn is_subvariety_of(self, other: Variety) -> bool {
        self == other || other == Variety::Sba || self == Variety::Gba
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variety> {
        match s.to_ascii_lowercase().as_str() {
            "lsba" | "left" => Ok(Variety::Lsba),
            "rsba" | "right" => Ok(Variety::Rsba),
            "sba" => Ok(Variety::Sba),
            "gba" => Ok(Variety::Gba),
            _ => Err(Error::Unsupported(format!("unknown variety `{s}` (expected lsba, rsba, sba or gba)"))),
        }
    }
}

/// A (possibly pointed) nonempty subset of the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeAtom {
    pub support: u64,
    pub left: Option<u8>,
    pub right: Option<u8>,
}

impl FreeAtom {
    pub fn size(&self) -> u32 {
        self.support.count_ones()
    }
}

// ---------------------------------------------------------------------------
// Counting

pub fn free_signature(v: Variety, n: u32) -> AlgebraSignature {
    let mut factors = Vec::new();
    for k in 1..=n {
        let count = binomial(n as u64, k as u64) as usize;
        factors.extend(std::iter::repeat_n(v.class_shape(k), count));
    }
    AlgebraSignature::new(factors)
}

pub fn free_size(v: Variety, n: u32) -> BigUint {
    if v == Variety::Gba {
        return BigUint::one() << ((1u64 << n) - 1);
    }
    (1..=n).fold(BigUint::one(), |acc, k| {
        let per_class = BigUint::from(v.class_shape(k).size());
        let count = binomial(n as u64, k as u64) as u32;
        acc * per_class.pow(count)
    })
}

/// Number of atoms, by the closed forms `n·2^(n-1)`, `n(n+1)·2^(n-2)` and `2^n - 1`.
pub fn atom_count(v: Variety, n: u32) -> BigUint {
    let n_big = BigUint::from(n);
    match v {
        Variety::Lsba | Variety::Rsba => {
            if n == 0 {
                BigUint::zero()
            } else {
                n_big << (n - 1)
            }
        }
        Variety::Sba => ((n_big.clone() * (n_big + 1u32)) << n) >> 2,
        Variety::Gba => (BigUint::one() << n) - 1u32,
    }
}

/// Number of atoms as the binomial sum over class sizes.
pub fn atom_count_by_classes(v: Variety, n: u32) -> BigUint {
    (1..=n)
        .map(|k| BigUint::from(binomial(n as u64, k as u64)) * BigUint::from(v.class_shape(k).class_size()))
        .sum()
}

/// Atomic classes ordered by ascending size, then bitmask: the factor order of
/// [`free_signature`].
pub fn free_classes(n: u32) -> Vec<u64> {
    let mut classes: Vec<u64> = (1..1u64 << n).collect();
    classes.sort_by_key(|&m| (m.count_ones(), m));
    classes
}

pub fn free_center_size(v: Variety, n: u32) -> BigUint {
    match v {
        // commutative: everything is central
        Variety::Gba => free_size(v, n),
        _ => BigUint::one() << n,
    }
}

// ---------------------------------------------------------------------------
// Atom-set arithmetic

fn merge(
    a: &[FreeAtom],
    b: &[FreeAtom],
    mut f: impl FnMut(Option<&FreeAtom>, Option<&FreeAtom>) -> Option<FreeAtom>,
) -> Vec<FreeAtom> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pair = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.support == y.support => {
                i += 1;
                j += 1;
                (Some(x), Some(y))
            }
            (Some(x), Some(y)) if x.support < y.support => {
                i += 1;
                (Some(x), None)
            }
            (Some(x), None) => {
                i += 1;
                (Some(x), None)
            }
            (_, y) => {
                j += 1;
                (None, y)
            }
        };
        out.extend(f(pair.0, pair.1));
    }
    out
}

fn atoms_meet(a: &[FreeAtom], b: &[FreeAtom]) -> Vec<FreeAtom> {
    merge(a, b, |x, y| match (x, y) {
        (Some(x), Some(y)) => Some(FreeAtom { support: x.support, left: x.left, right: y.right }),
        _ => None,
    })
}

fn atoms_join(a: &[FreeAtom], b: &[FreeAtom]) -> Vec<FreeAtom> {
    merge(a, b, |x, y| match (x, y) {
        (Some(x), Some(y)) => Some(FreeAtom { support: x.support, left: y.left, right: x.right }),
        (x, y) => x.or(y).copied(),
    })
}

fn atoms_diff(a: &[FreeAtom], b: &[FreeAtom]) -> Vec<FreeAtom> {
    merge(a, b, |x, y| match (x, y) {
        (Some(x), None) => Some(*x),
        _ => None,
    })
}

fn atoms_intersection(a: &[FreeAtom], b: &[FreeAtom]) -> Vec<FreeAtom> {
    merge(a, b, |x, y| match (x, y) {
        (Some(x), Some(y)) if x == y => Some(*x),
        _ => None,
    })
}

// ---------------------------------------------------------------------------
// Free algebras and their elements

/// The free algebra of a variety on an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAlgebra {
    variety: Variety,
    alphabet: Alphabet,
}

/// An element of a free algebra in normal form: atoms sorted by support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    variety: Variety,
    alphabet: Alphabet,
    atoms: Vec<FreeAtom>,
}

impl FreeAlgebra {
    pub fn new(variety: Variety, alphabet: Alphabet) -> Result<FreeAlgebra> {
        if alphabet.len() > MAX_VARIABLES {
            return Err(Error::CapExceeded(format!("alphabet has {} variables, limit is {MAX_VARIABLES}", alphabet.len())));
        }
        Ok(FreeAlgebra { variety, alphabet })
    }

    /// The free algebra on `x1, …, xn`.
    pub fn numbered(variety: Variety, n: usize) -> Result<FreeAlgebra> {
        FreeAlgebra::new(variety, Alphabet::numbered(n))
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n(&self) -> u32 {
        self.alphabet.len() as u32
    }

    pub fn signature(&self) -> AlgebraSignature {
        free_signature(self.variety, self.n())
    }

    pub fn classes(&self) -> Vec<u64> {
        free_classes(self.n())
    }

    fn materializable(&self) -> Result<()> {
        if self.alphabet.len() > MAX_MATERIALIZED {
            return Err(Error::CapExceeded(format!(
                "{} variables; atom sets are materialized only up to {MAX_MATERIALIZED}",
                self.alphabet.len()
            )));
        }
        Ok(())
    }

    fn wrap(&self, atoms: Vec<FreeAtom>) -> FreeElement {
        FreeElement { variety: self.variety, alphabet: self.alphabet.clone(), atoms }
    }

    pub fn zero(&self) -> FreeElement {
        self.wrap(Vec::new())
    }

    /// All atoms of a class, in leader order.
    pub fn class_atoms(&self, support: u64) -> Vec<FreeAtom> {
        let members: Vec<u8> = (0..64u8).filter(|&i| support >> i & 1 == 1).collect();
        let lefts: Vec<Option<u8>> =
            if self.variety.has_left() { members.iter().map(|&i| Some(i)).collect() } else { vec![None] };
        let rights: Vec<Option<u8>> =
            if self.variety.has_right() { members.iter().map(|&i| Some(i)).collect() } else { vec![None] };
        let mut out = Vec::with_capacity(lefts.len() * rights.len());
        for &left in &lefts {
            for &right in &rights {
                out.push(FreeAtom { support, left, right });
            }
        }
        out
    }

    /// Every atom of the algebra, class by class.
    pub fn all_atoms(&self) -> Result<Vec<FreeAtom>> {
        self.materializable()?;
        Ok(self.classes().into_iter().flat_map(|c| self.class_atoms(c)).collect())
    }

    fn generator_atoms(&self, i: usize) -> Vec<FreeAtom> {
        let bit = 1u64 << i;
        let leader = Some(i as u8);
        (1..1u64 << self.n())
            .filter(|m| m & bit != 0)
            .map(|support| FreeAtom {
                support,
                left: leader.filter(|_| self.variety.has_left()),
                right: leader.filter(|_| self.variety.has_right()),
            })
            .collect()
    }

    /// The image of the `i`-th variable: every atom whose support contains it
    /// and whose leaders are all that variable.
    pub fn generator(&self, i: usize) -> Result<FreeElement> {
        self.materializable()?;
        if i >= self.alphabet.len() {
            return Err(Error::UnknownVariable(format!("generator index {i} out of range")));
        }
        Ok(self.wrap(self.generator_atoms(i)))
    }

    pub fn generator_named(&self, name: &str) -> Result<FreeElement> {
        let i = self.alphabet.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        self.generator(i)
    }

    /// Normal form of a term.
    pub fn eval(&self, t: &Term) -> Result<FreeElement> {
        self.materializable()?;
        let mut cache: Vec<Option<Vec<FreeAtom>>> = vec![None; self.alphabet.len()];
        let atoms = self.eval_atoms(t, &mut cache)?;
        Ok(self.wrap(atoms))
    }

    fn eval_atoms(&self, t: &Term, cache: &mut Vec<Option<Vec<FreeAtom>>>) -> Result<Vec<FreeAtom>> {
        Ok(match t {
            Term::Var(name) => {
                let i = self.alphabet.index_of(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                cache[i].get_or_insert_with(|| self.generator_atoms(i)).clone()
            }
            Term::Zero => Vec::new(),
            Term::Meet(l, r) => atoms_meet(&self.eval_atoms(l, cache)?, &self.eval_atoms(r, cache)?),
            Term::Join(l, r) => atoms_join(&self.eval_atoms(l, cache)?, &self.eval_atoms(r, cache)?),
            Term::Diff(l, r) => atoms_diff(&self.eval_atoms(l, cache)?, &self.eval_atoms(r, cache)?),
        })
    }

    /// Builds an element from atoms, validating leaders and supports.
    pub fn element(&self, atoms: impl IntoIterator<Item = FreeAtom>) -> Result<FreeElement> {
        let mut atoms: Vec<FreeAtom> = atoms.into_iter().collect();
        let full = if self.n() == 64 { u64::MAX } else { (1u64 << self.n()) - 1 };
        for a in &atoms {
            if a.support == 0 || a.support & !full != 0 {
                return Err(Error::AlphabetMismatch(format!("atom support {:#b} is not a nonempty subset of {}", a.support, self.alphabet)));
            }
            let ok = |leader: Option<u8>, wanted: bool| match leader {
                Some(i) => wanted && i < 64 && a.support >> i & 1 == 1,
                None => !wanted,
            };
            if !ok(a.left, self.variety.has_left()) || !ok(a.right, self.variety.has_right()) {
                return Err(Error::InvalidShape(format!("atom leaders do not fit a {} atom on its support", self.variety)));
            }
        }
        atoms.sort();
        if atoms.windows(2).any(|w| w[0].support == w[1].support) {
            return Err(Error::InvalidShape("two atoms share a support".into()));
        }
        Ok(self.wrap(atoms))
    }

    /// Coordinates in [`Self::signature`]: a leader's coordinate is its rank inside the support.
    pub fn to_finite(&self, e: &FreeElement) -> Result<FiniteElement> {
        self.owns(e)?;
        let classes = self.classes();
        let mut coords = vec![PrimitiveElement::Zero; classes.len()];
        let position = |support: u64, leader: Option<u8>| match leader {
            Some(i) => (support & ((1u64 << i) - 1)).count_ones(),
            None => 0,
        };
        for a in &e.atoms {
            let idx = classes.iter().position(|&c| c == a.support).expect("support is a class");
            coords[idx] = PrimitiveElement::at(position(a.support, a.left), position(a.support, a.right));
        }
        Ok(FiniteElement { coords })
    }

    pub fn from_finite(&self, x: &FiniteElement) -> Result<FreeElement> {
        self.signature().check(x)?;
        let nth_member = |support: u64, k: u32| -> u8 {
            (0..64u8).filter(|&i| support >> i & 1 == 1).nth(k as usize).expect("coordinate inside class")
        };
        let atoms = self.classes().into_iter().zip(&x.coords).filter_map(|(support, c)| match *c {
            PrimitiveElement::Zero => None,
            PrimitiveElement::NonZero { row, col } => Some(FreeAtom {
                support,
                left: self.variety.has_left().then(|| nth_member(support, row)),
                right: self.variety.has_right().then(|| nth_member(support, col)),
            }),
        });
        self.element(atoms)
    }

    /// Every element, by independent choices per class.
    pub fn elements(&self) -> Result<Vec<FreeElement>> {
        self.materializable()?;
        let size = free_size(self.variety, self.n());
        if size > BigUint::from(CLOSURE_CAP) {
            return Err(Error::CapExceeded(format!("free algebra has {size} elements")));
        }
        let mut out = vec![Vec::new()];
        for support in self.classes() {
            let options = self.class_atoms(support);
            let mut next = Vec::with_capacity(out.len() * (options.len() + 1));
            for partial in &out {
                next.push(partial.clone());
                for &a in &options {
                    let mut with = partial.clone();
                    with.push(a);
                    next.push(with);
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|mut atoms| {
                atoms.sort();
                self.wrap(atoms)
            })
            .collect())
    }

    fn owns(&self, e: &FreeElement) -> Result<()> {
        if e.variety != self.variety || e.alphabet != self.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "element of the free {} on {} used in the free {} on {}",
                e.variety, e.alphabet, self.variety, self.alphabet
            )));
        }
        Ok(())
    }
}

/// Raw atom-set arithmetic: the leaders carry all the structure, so the
/// operations are the same in every variety.
impl SkewBoolean for FreeAlgebra {
    type Element = Vec<FreeAtom>;

    fn zero(&self) -> Vec<FreeAtom> {
        Vec::new()
    }

    fn meet(&self, x: &Vec<FreeAtom>, y: &Vec<FreeAtom>) -> Vec<FreeAtom> {
        atoms_meet(x, y)
    }

    fn join(&self, x: &Vec<FreeAtom>, y: &Vec<FreeAtom>) -> Vec<FreeAtom> {
        atoms_join(x, y)
    }

    fn diff(&self, x: &Vec<FreeAtom>, y: &Vec<FreeAtom>) -> Vec<FreeAtom> {
        atoms_diff(x, y)
    }
}

impl FreeElement {
    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Atoms sorted by support bitmask.
    pub fn atoms(&self) -> &[FreeAtom] {
        &self.atoms
    }

    /// Number of atoms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn algebra(&self) -> FreeAlgebra {
        FreeAlgebra { variety: self.variety, alphabet: self.alphabet.clone() }
    }

    fn compatible(&self, other: &FreeElement) -> Result<()> {
        if self.variety != other.variety || self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} over {} vs {} over {}",
                self.variety, self.alphabet, other.variety, other.alphabet
            )));
        }
        Ok(())
    }

    fn with_atoms(&self, atoms: Vec<FreeAtom>) -> FreeElement {
        FreeElement { variety: self.variety, alphabet: self.alphabet.clone(), atoms }
    }

    pub fn meet(&self, other: &FreeElement) -> Result<FreeElement> {
        self.compatible(other)?;
        Ok(self.with_atoms(atoms_meet(&self.atoms, &other.atoms)))
    }

    pub fn join(&self, other: &FreeElement) -> Result<FreeElement> {
        self.compatible(other)?;
        Ok(self.with_atoms(atoms_join(&self.atoms, &other.atoms)))
    }

    pub fn diff(&self, other: &FreeElement) -> Result<FreeElement> {
        self.compatible(other)?;
        Ok(self.with_atoms(atoms_diff(&self.atoms, &other.atoms)))
    }

    /// The orthosum of the common atoms.
    pub fn intersection(&self, other: &FreeElement) -> Result<FreeElement> {
        self.compatible(other)?;
        Ok(self.with_atoms(atoms_intersection(&self.atoms, &other.atoms)))
    }

    /// `self ≤ other`: every atom of `self` is an atom of `other`.
    pub fn natural_leq(&self, other: &FreeElement) -> Result<bool> {
        self.compatible(other)?;
        Ok(atoms_intersection(&self.atoms, &other.atoms).len() == self.atoms.len())
    }

    /// `self ⪯ other`: every support of `self` is a support of `other`.
    pub fn natural_preceq(&self, other: &FreeElement) -> Result<bool> {
        self.compatible(other)?;
        Ok(atoms_meet(&self.atoms, &other.atoms).len() == self.atoms.len())
    }

    /// Central elements are sums of singleton-support atoms (every element in a GBA).
    pub fn is_central(&self) -> bool {
        self.variety == Variety::Gba || self.atoms.iter().all(|a| a.size() == 1)
    }

    /// Image under the canonical map onto the free algebra of a larger
    /// variety's quotient: erase the right leaders (onto LSBA), the left
    /// leaders (onto RSBA) or both (onto GBA).
    pub fn reduct(&self, target: Variety) -> Result<FreeElement> {
        if !target.is_subvariety_of(self.variety) {
            return Err(Error::Unsupported(format!("no canonical map from free {} onto free {target}", self.variety)));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| FreeAtom {
                support: a.support,
                left: a.left.filter(|_| target.has_left()),
                right: a.right.filter(|_| target.has_right()),
            })
            .collect();
        Ok(FreeElement { variety: target, alphabet: self.alphabet.clone(), atoms })
    }

    /// Re-expresses the element over the alphabet extended by `name`: each
    /// atom splits into the part that meets the new variable and the part
    /// that subtracts it.
    pub fn extend_alphabet(&self, name: &str) -> Result<FreeElement> {
        if self.alphabet.contains(name) {
            return Err(Error::VariableCollision(name.to_string()));
        }
        let mut alphabet = self.alphabet.clone();
        let bit = 1u64 << alphabet.push(name.to_string())?;
        if alphabet.len() > MAX_VARIABLES {
            return Err(Error::CapExceeded(format!("alphabet limit is {MAX_VARIABLES}")));
        }
        let mut atoms: Vec<FreeAtom> = self
            .atoms
            .iter()
            .flat_map(|a| [*a, FreeAtom { support: a.support | bit, ..*a }])
            .collect();
        atoms.sort();
        Ok(FreeElement { variety: self.variety, alphabet, atoms })
    }

    fn print_key(&self, a: &FreeAtom) -> (u8, Reverse<u32>, u64, u8) {
        let primary = match self.variety {
            Variety::Lsba | Variety::Sba => a.left.unwrap_or(0),
            Variety::Rsba => a.right.unwrap_or(0),
            Variety::Gba => a.support.trailing_zeros() as u8,
        };
        let secondary = if self.variety == Variety::Sba { a.right.unwrap_or(0) } else { 0 };
        (primary, Reverse(a.size()), a.support, secondary)
    }

    /// Atoms in print order: by leading variable, then larger supports first,
    /// then by bitmask.
    pub fn atoms_in_print_order(&self) -> Vec<FreeAtom> {
        let mut atoms = self.atoms.clone();
        atoms.sort_by_key(|a| self.print_key(a));
        atoms
    }

    /// The term `(meet of L) \ (join of the rest)` for one atom, leaders
    /// placed where the handedness reads them.
    pub fn atom_term(&self, a: &FreeAtom) -> Term {
        let var = |i: u8| Term::var(self.alphabet.name(i as usize));
        let members: Vec<u8> = (0..self.alphabet.len() as u8).filter(|&i| a.support >> i & 1 == 1).collect();
        let others: Vec<u8> = (0..self.alphabet.len() as u8).filter(|&i| a.support >> i & 1 == 0).collect();
        let rest = |skip: &[u8]| members.iter().copied().filter(|i| !skip.contains(i)).collect::<Vec<u8>>();
        let order: Vec<u8> = match (a.left, a.right) {
            (Some(l), Some(r)) if members.len() == 1 => vec![l.min(r)],
            (Some(l), Some(r)) => std::iter::once(l).chain(rest(&[l, r])).chain(std::iter::once(r)).collect(),
            (Some(l), None) => std::iter::once(l).chain(rest(&[l])).collect(),
            (None, Some(r)) => rest(&[r]).into_iter().chain(std::iter::once(r)).collect(),
            (None, None) => members.clone(),
        };
        let meet = Term::meet_all(order.into_iter().map(var)).expect("nonempty support");
        match Term::join_all(others.into_iter().map(var)) {
            Some(sub) => Term::diff(meet, sub),
            None => meet,
        }
    }

    /// One term per atom, in print order.
    pub fn normal_form_terms(&self) -> Vec<Term> {
        self.atoms_in_print_order().iter().map(|a| self.atom_term(a)).collect()
    }

    /// Orthosum rendering, e.g. `(x \ y) + (y & x) + (y \ x)`; `0` when empty.
    pub fn render(&self) -> String {
        let terms = self.normal_form_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|t| if matches!(t, Term::Var(_)) { t.to_string() } else { format!("({t})") })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self) -> NormalFormJson {
        let name = |i: u8| self.alphabet.name(i as usize).to_string();
        NormalFormJson {
            variety: self.variety,
            alphabet: self.alphabet.names().map(str::to_string).collect(),
            atoms: self
                .atoms_in_print_order()
                .iter()
                .map(|a| AtomJson {
                    support: (0..64u8).filter(|&i| a.support >> i & 1 == 1).map(name).collect(),
                    left: a.left.map(name),
                    right: a.right.map(name),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &NormalFormJson) -> Result<FreeElement> {
        let algebra = FreeAlgebra::new(json.variety, Alphabet::new(json.alphabet.iter().cloned())?)?;
        let index = |name: &str| -> Result<u8> {
            algebra.alphabet.index_of(name).map(|i| i as u8).ok_or_else(|| Error::UnknownVariable(name.to_string()))
        };
        let atoms = json
            .atoms
            .iter()
            .map(|a| {
                let mut support = 0u64;
                for name in &a.support {
                    support |= 1 << index(name)?;
                }
                Ok(FreeAtom {
                    support,
                    left: a.left.as_deref().map(index).transpose()?,
                    right: a.right.as_deref().map(index).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        algebra.element(atoms)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub variety: Variety,
    pub alphabet: Vec<String>,
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub support: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
}
