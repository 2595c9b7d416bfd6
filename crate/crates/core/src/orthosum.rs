//! Finite skew Boolean algebras as orthosums (direct products) of primitive
//! algebras, one factor per atomic class.
//!
//! Elements are coordinate tuples and every operation is componentwise. The
//! natural order, Green's relations, intersections and the center all reduce
//! to coordinate rules here; the test suite checks each rule against the
//! equational definition it replaces.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::SkewBoolean;
use crate::error::{Error, Result};
use crate::primitive::{diff_raw, join_raw, meet_raw, PrimitiveElement, PrimitiveShape};
use crate::saturate::saturate;

/// Largest ambient algebra that closure computations will saturate in.
pub const CLOSURE_CAP: u64 = 10_000_000;

/// An ordered list of primitive factors. The empty list is the trivial algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSignature {
    pub factors: Vec<PrimitiveShape>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    /// Every factor is **2**.
    Boolean,
    Left,
    Right,
    TwoSided,
}

/// An element of an orthosum: one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteElement {
    pub coords: Vec<PrimitiveElement>,
}

impl FiniteElement {
    pub fn zero(len: usize) -> FiniteElement {
        FiniteElement { coords: vec![PrimitiveElement::Zero; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Indices of the factors where the element is nonzero.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }
}

impl AlgebraSignature {
    pub fn new(factors: Vec<PrimitiveShape>) -> AlgebraSignature {
        AlgebraSignature { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sorted ascending by `(rows, cols)`: the standard atomic decomposition.
    pub fn standardize(&self) -> AlgebraSignature {
        let mut factors = self.factors.clone();
        factors.sort();
        AlgebraSignature { factors }
    }

    pub fn size(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, s| acc * BigUint::from(s.size()))
    }

    /// Size as a `u64`, if it fits.
    pub fn size_u64(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, s| acc.checked_mul(s.size()))
    }

    pub fn handedness(&self) -> Handedness {
        let left = self.factors.iter().all(|s| s.is_left_handed());
        let right = self.factors.iter().all(|s| s.is_right_handed());
        match (left, right) {
            (true, true) => Handedness::Boolean,
            (true, false) => Handedness::Left,
            (false, true) => Handedness::Right,
            (false, false) => Handedness::TwoSided,
        }
    }

    pub fn zero(&self) -> FiniteElement {
        FiniteElement::zero(self.len())
    }

    pub fn check(&self, x: &FiniteElement) -> Result<()> {
        if x.coords.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates, signature {} has {} factors",
                x.coords.len(),
                self,
                self.len()
            )));
        }
        for (shape, &c) in self.factors.iter().zip(&x.coords) {
            shape.check(c)?;
        }
        Ok(())
    }

    fn checked2(&self, x: &FiniteElement, y: &FiniteElement) -> Result<()> {
        self.check(x)?;
        self.check(y)
    }

    pub fn elem_meet(&self, x: &FiniteElement, y: &FiniteElement) -> Result<FiniteElement> {
        self.checked2(x, y)?;
        Ok(self.meet(x, y))
    }

    pub fn elem_join(&self, x: &FiniteElement, y: &FiniteElement) -> Result<FiniteElement> {
        self.checked2(x, y)?;
        Ok(self.join(x, y))
    }

    pub fn elem_diff(&self, x: &FiniteElement, y: &FiniteElement) -> Result<FiniteElement> {
        self.checked2(x, y)?;
        Ok(self.diff(x, y))
    }

    /// `x ≤ y`: every nonzero coordinate of `x` equals that of `y`.
    pub fn natural_leq(&self, x: &FiniteElement, y: &FiniteElement) -> Result<bool> {
        self.checked2(x, y)?;
        Ok(x.coords.iter().zip(&y.coords).all(|(a, b)| a.is_zero() || a == b))
    }

    /// `x ⪯ y`: the support of `x` is contained in that of `y`.
    pub fn natural_preceq(&self, x: &FiniteElement, y: &FiniteElement) -> Result<bool> {
        self.checked2(x, y)?;
        Ok(x.coords.iter().zip(&y.coords).all(|(a, b)| a.is_zero() || !b.is_zero()))
    }

    fn same_support(x: &FiniteElement, y: &FiniteElement) -> bool {
        x.coords.iter().zip(&y.coords).all(|(a, b)| a.is_zero() == b.is_zero())
    }

    pub fn green_d(&self, x: &FiniteElement, y: &FiniteElement) -> Result<bool> {
        self.checked2(x, y)?;
        Ok(Self::same_support(x, y))
    }

    /// Equal supports and equal columns on the support.
    pub fn green_l(&self, x: &FiniteElement, y: &FiniteElement) -> Result<bool> {
        self.checked2(x, y)?;
        Ok(Self::same_support(x, y)
            && x.coords.iter().zip(&y.coords).all(|(a, b)| match (a, b) {
                (PrimitiveElement::NonZero { col: c1, .. }, PrimitiveElement::NonZero { col: c2, .. }) => c1 == c2,
                _ => true,
            }))
    }

    /// Equal supports and equal rows on the support.
    pub fn green_r(&self, x: &FiniteElement, y: &FiniteElement) -> Result<bool> {
        self.checked2(x, y)?;
        Ok(Self::same_support(x, y)
            && x.coords.iter().zip(&y.coords).all(|(a, b)| match (a, b) {
                (PrimitiveElement::NonZero { row: r1, .. }, PrimitiveElement::NonZero { row: r2, .. }) => r1 == r2,
                _ => true,
            }))
    }

    /// Greatest lower bound under `≤`: keep coordinates where `x` and `y` agree.
    pub fn intersection(&self, x: &FiniteElement, y: &FiniteElement) -> Result<FiniteElement> {
        self.checked2(x, y)?;
        Ok(FiniteElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(&a, &b)| if a == b { a } else { PrimitiveElement::Zero })
                .collect(),
        })
    }

    /// Central elements live on the singleton classes, i.e. the **2** factors.
    pub fn is_central(&self, x: &FiniteElement) -> Result<bool> {
        self.check(x)?;
        Ok(self.factors.iter().zip(&x.coords).all(|(s, c)| c.is_zero() || s.is_boolean()))
    }

    pub fn center_size(&self) -> BigUint {
        BigUint::one() << self.factors.iter().filter(|s| s.is_boolean()).count()
    }

    /// All central elements, enumerated over subsets of the **2** factors.
    pub fn center(&self) -> Result<Vec<FiniteElement>> {
        let boolean: Vec<usize> = (0..self.len()).filter(|&i| self.factors[i].is_boolean()).collect();
        if boolean.len() > 24 {
            return Err(Error::CapExceeded(format!("center has 2^{} elements", boolean.len())));
        }
        Ok((0u64..1 << boolean.len())
            .map(|mask| {
                let mut x = self.zero();
                for (bit, &i) in boolean.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        x.coords[i] = PrimitiveElement::at(0, 0);
                    }
                }
                x
            })
            .collect())
    }

    /// Every element, in mixed-radix order over the canonical factor orders.
    pub fn elements(&self) -> impl Iterator<Item = FiniteElement> + '_ {
        let total = self.size_u64().expect("algebra too large to enumerate");
        (0..total).map(move |mut index| {
            let mut coords = Vec::with_capacity(self.len());
            for s in self.factors.iter().rev() {
                coords.push(s.element_at((index % s.size()) as u32));
                index /= s.size();
            }
            coords.reverse();
            FiniteElement { coords }
        })
    }

    /// Atoms: exactly one nonzero coordinate.
    pub fn atoms(&self) -> Vec<FiniteElement> {
        let mut out = Vec::new();
        for (i, s) in self.factors.iter().enumerate() {
            for c in s.elements().skip(1) {
                let mut x = self.zero();
                x.coords[i] = c;
                out.push(x);
            }
        }
        out
    }

    /// The subalgebra generated by `gens` (and zero), sorted.
    pub fn closure(&self, gens: &[FiniteElement]) -> Result<Vec<FiniteElement>> {
        let mut out = self.closure_unordered(gens)?;
        out.sort();
        Ok(out)
    }

    pub fn closure_size(&self, gens: &[FiniteElement]) -> Result<usize> {
        Ok(self.closure_unordered(gens)?.len())
    }

    fn closure_unordered(&self, gens: &[FiniteElement]) -> Result<Vec<FiniteElement>> {
        for g in gens {
            self.check(g)?;
        }
        let size = self.size_u64().filter(|&s| s <= CLOSURE_CAP).ok_or_else(|| {
            Error::CapExceeded(format!("algebra {} has {} elements, cap is {}", self, self.size(), CLOSURE_CAP))
        })?;
        let limit = size as usize;
        let seeds = std::iter::once(self.zero()).chain(gens.iter().cloned());
        match PackedAlgebra::new(self) {
            Some(p) => {
                let seeds: Vec<u128> = seeds.map(|x| p.encode(&x)).collect();
                let found = saturate(seeds, limit, |a, b| [p.meet(a, b), p.join(a, b), p.diff(a, b)])?;
                Ok(found.iter().map(|&k| p.decode(k)).collect())
            }
            None => saturate(seeds, limit, |a, b| [self.meet(a, b), self.join(a, b), self.diff(a, b)]),
        }
    }

    /// Projection onto the quotient by R: erase columns, giving `(rows, 1)` factors.
    pub fn left_projection(&self) -> HomSpec {
        let target = AlgebraSignature::new(self.factors.iter().map(|s| PrimitiveShape { rows: s.rows, cols: 1 }).collect());
        let maps = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, s)| FactorMap::Map { target: i, rows: (0..s.rows).collect(), cols: vec![0; s.cols as usize] })
            .collect();
        HomSpec { source: self.clone(), target, maps }
    }

    /// Projection onto the quotient by L: erase rows, giving `(1, cols)` factors.
    pub fn right_projection(&self) -> HomSpec {
        let target = AlgebraSignature::new(self.factors.iter().map(|s| PrimitiveShape { rows: 1, cols: s.cols }).collect());
        let maps = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, s)| FactorMap::Map { target: i, rows: vec![0; s.rows as usize], cols: (0..s.cols).collect() })
            .collect();
        HomSpec { source: self.clone(), target, maps }
    }

    pub fn format_element(&self, x: &FiniteElement) -> String {
        let parts: Vec<String> = self.factors.iter().zip(&x.coords).map(|(s, &c)| s.label(c)).collect();
        format!("({})", parts.join(", "))
    }

    /// Parses `(l1, l2, …)` using the coordinate labels of each factor.
    pub fn parse_element(&self, text: &str) -> Result<FiniteElement> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::ShapeMismatch(format!("`{text}` is not a parenthesized tuple")))?;
        let labels: Vec<&str> = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').collect() };
        if labels.len() != self.len() {
            return Err(Error::ShapeMismatch(format!("`{text}` has {} coordinates, expected {}", labels.len(), self.len())));
        }
        let coords = self.factors.iter().zip(labels).map(|(s, l)| s.parse_label(l)).collect::<Result<_>>()?;
        Ok(FiniteElement { coords })
    }
}

impl SkewBoolean for AlgebraSignature {
    type Element = FiniteElement;

    fn zero(&self) -> FiniteElement {
        FiniteElement::zero(self.len())
    }

    fn meet(&self, x: &FiniteElement, y: &FiniteElement) -> FiniteElement {
        FiniteElement { coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| meet_raw(a, b)).collect() }
    }

    fn join(&self, x: &FiniteElement, y: &FiniteElement) -> FiniteElement {
        FiniteElement { coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| join_raw(a, b)).collect() }
    }

    fn diff(&self, x: &FiniteElement, y: &FiniteElement) -> FiniteElement {
        FiniteElement { coords: x.coords.iter().zip(&y.coords).map(|(&a, &b)| diff_raw(a, b)).collect() }
    }
}

impl fmt::Display for AlgebraSignature {
    /// Runs of equal consecutive factors print as `shape^k` (with `^1` kept, as
    /// in exponents of binomial coefficients); the trivial algebra prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let shape = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&s| s == shape).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{shape}^{run}")?;
            i += run;
        }
        Ok(())
    }
}

impl FromStr for AlgebraSignature {
    type Err = Error;

    /// Whitespace-separated shape tokens with optional `^k` powers; `1` is the trivial factor.
    fn from_str(s: &str) -> Result<AlgebraSignature> {
        let mut factors = Vec::new();
        for token in s.split_whitespace() {
            let (shape, power) = match token.split_once('^') {
                Some((shape, power)) => {
                    let k: usize =
                        power.parse().map_err(|_| Error::InvalidSignature(format!("bad power in `{token}`")))?;
                    (shape, k)
                }
                None => (token, 1),
            };
            if shape == "1" {
                continue;
            }
            let shape: PrimitiveShape = shape.parse()?;
            factors.extend(std::iter::repeat_n(shape, power));
        }
        Ok(AlgebraSignature { factors })
    }
}

// ---------------------------------------------------------------------------
// Packed encoding

/// Bit-packed encoding of a finite orthosum into a `u128`, with the three
/// operations evaluated on all factors at once.
///
/// Each factor occupies a field of the same width `1 + row_bits + col_bits`:
/// a nonzero flag in the lowest bit, then the row, then the column. Zero is
/// the all-zero field.
#[derive(Debug, Clone)]
pub struct PackedAlgebra {
    factors: Vec<PrimitiveShape>,
    width: u32,
    row_bits: u32,
    flags: u128,
    row_mask: u128,
    col_mask: u128,
}

fn bits_for(n: u32) -> u32 {
    // bits needed for values 0..n
    32 - n.saturating_sub(1).leading_zeros()
}

impl PackedAlgebra {
    /// `None` when the layout does not fit in 127 bits.
    pub fn new(sig: &AlgebraSignature) -> Option<PackedAlgebra> {
        let row_bits = sig.factors.iter().map(|s| bits_for(s.rows)).max().unwrap_or(0);
        let col_bits = sig.factors.iter().map(|s| bits_for(s.cols)).max().unwrap_or(0);
        let width = 1 + row_bits + col_bits;
        if width as usize * sig.len() > 127 {
            return None;
        }
        let mut flags = 0u128;
        let mut row_mask = 0u128;
        let mut col_mask = 0u128;
        let field_rows = ((1u128 << row_bits) - 1) << 1;
        let field_cols = ((1u128 << col_bits) - 1) << (1 + row_bits);
        for i in 0..sig.len() {
            let shift = i as u32 * width;
            flags |= 1 << shift;
            row_mask |= field_rows << shift;
            col_mask |= field_cols << shift;
        }
        Some(PackedAlgebra { factors: sig.factors.clone(), width, row_bits, flags, row_mask, col_mask })
    }

    pub fn encode(&self, x: &FiniteElement) -> u128 {
        let mut key = 0u128;
        for (i, c) in x.coords.iter().enumerate() {
            if let PrimitiveElement::NonZero { row, col } = *c {
                let field = 1 | (row as u128) << 1 | (col as u128) << (1 + self.row_bits);
                key |= field << (i as u32 * self.width);
            }
        }
        key
    }

    pub fn decode(&self, key: u128) -> FiniteElement {
        let field_mask = (1u128 << self.width) - 1;
        let row_mask = (1u128 << self.row_bits) - 1;
        let coords = (0..self.factors.len())
            .map(|i| {
                let field = key >> (i as u32 * self.width) & field_mask;
                if field & 1 == 0 {
                    PrimitiveElement::Zero
                } else {
                    PrimitiveElement::NonZero {
                        row: (field >> 1 & row_mask) as u32,
                        col: (field >> (1 + self.row_bits)) as u32,
                    }
                }
            })
            .collect();
        FiniteElement { coords }
    }

    /// Full-field mask of every factor whose flag is set.
    #[inline]
    fn spread(&self, x: u128) -> u128 {
        let f = x & self.flags;
        (f << self.width) - f
    }
}

impl SkewBoolean for PackedAlgebra {
    type Element = u128;

    fn zero(&self) -> u128 {
        0
    }

    #[inline]
    fn meet(&self, x: &u128, y: &u128) -> u128 {
        let both = self.spread(*x) & self.spread(*y);
        ((x & (self.flags | self.row_mask)) | (y & self.col_mask)) & both
    }

    #[inline]
    fn join(&self, x: &u128, y: &u128) -> u128 {
        let mx = self.spread(*x);
        let my = self.spread(*y);
        (x & !my) | (y & !mx) | (((y & (self.flags | self.row_mask)) | (x & self.col_mask)) & mx & my)
    }

    #[inline]
    fn diff(&self, x: &u128, y: &u128) -> u128 {
        x & !self.spread(*y)
    }
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// What a homomorphism does to one source factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorMap {
    /// Send the whole factor to zero.
    Kill,
    /// Send the factor into `target`, with `(r, c) ↦ (rows[r], cols[c])`.
    Map { target: usize, rows: Vec<u32>, cols: Vec<u32> },
}

/// A homomorphism between orthosums, given factor by factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpec {
    source: AlgebraSignature,
    target: AlgebraSignature,
    maps: Vec<FactorMap>,
}

impl HomSpec {
    pub fn new(source: AlgebraSignature, target: AlgebraSignature, maps: Vec<FactorMap>) -> Result<HomSpec> {
        if maps.len() != source.len() {
            return Err(Error::InvalidHom(format!("{} factor maps for {} source factors", maps.len(), source.len())));
        }
        let mut used = vec![false; target.len()];
        for (i, m) in maps.iter().enumerate() {
            let FactorMap::Map { target: t, rows, cols } = m else { continue };
            let Some(tshape) = target.factors.get(*t) else {
                return Err(Error::InvalidHom(format!("source factor {i} maps to missing target factor {t}")));
            };
            if std::mem::replace(&mut used[*t], true) {
                return Err(Error::InvalidHom(format!("target factor {t} is hit twice")));
            }
            let sshape = source.factors[i];
            if rows.len() != sshape.rows as usize || cols.len() != sshape.cols as usize {
                return Err(Error::InvalidHom(format!("class map for factor {i} has the wrong domain")));
            }
            if rows.iter().any(|&r| r >= tshape.rows) || cols.iter().any(|&c| c >= tshape.cols) {
                return Err(Error::InvalidHom(format!("class map for factor {i} leaves target factor {t}")));
            }
        }
        Ok(HomSpec { source, target, maps })
    }

    pub fn identity(sig: &AlgebraSignature) -> HomSpec {
        let maps = sig
            .factors
            .iter()
            .enumerate()
            .map(|(i, s)| FactorMap::Map { target: i, rows: (0..s.rows).collect(), cols: (0..s.cols).collect() })
            .collect();
        HomSpec { source: sig.clone(), target: sig.clone(), maps }
    }

    pub fn source(&self) -> &AlgebraSignature {
        &self.source
    }

    pub fn target(&self) -> &AlgebraSignature {
        &self.target
    }

    pub fn maps(&self) -> &[FactorMap] {
        &self.maps
    }

    pub fn apply(&self, x: &FiniteElement) -> Result<FiniteElement> {
        self.source.check(x)?;
        let mut out = self.target.zero();
        for (m, &c) in self.maps.iter().zip(&x.coords) {
            if let (FactorMap::Map { target, rows, cols }, PrimitiveElement::NonZero { row, col }) = (m, c) {
                out.coords[*target] = PrimitiveElement::at(rows[row as usize], cols[col as usize]);
            }
        }
        Ok(out)
    }

    /// Every target factor is hit and each class map is onto.
    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for m in &self.maps {
            if let FactorMap::Map { target, rows, cols } = m {
                let t = self.target.factors[*target];
                let rows_onto = rows.iter().collect::<BTreeSet<_>>().len() == t.rows as usize;
                let cols_onto = cols.iter().collect::<BTreeSet<_>>().len() == t.cols as usize;
                if !(rows_onto && cols_onto) {
                    return false;
                }
                hit[*target] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Splits a class map given cell by cell (`cells[r][c]` is the image of
/// `(r, c)`) into its row and column parts; fails unless it has the form
/// `(r, c) ↦ (λ(r), ρ(c))`.
pub fn class_map_from_cells(source: PrimitiveShape, cells: &[Vec<(u32, u32)>]) -> Result<(Vec<u32>, Vec<u32>)> {
    if cells.len() != source.rows as usize || cells.iter().any(|row| row.len() != source.cols as usize) {
        return Err(Error::InvalidHom("class map does not cover the source class".into()));
    }
    let rows: Vec<u32> = cells.iter().map(|row| row[0].0).collect();
    let cols: Vec<u32> = cells[0].iter().map(|cell| cell.1).collect();
    for (r, row) in cells.iter().enumerate() {
        for (c, &cell) in row.iter().enumerate() {
            if cell != (rows[r], cols[c]) {
                return Err(Error::InvalidHom(format!("class map is not rectangular at ({r}, {c})")));
            }
        }
    }
    Ok((rows, cols))
}

/// Exact element count of a signature as `f64`, for reporting.
pub fn approx_size(sig: &AlgebraSignature) -> f64 {
    sig.size().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{natural_leq, natural_preceq};

    fn sig(s: &str) -> AlgebraSignature {
        s.parse().unwrap()
    }

    fn el(sig: &AlgebraSignature, s: &str) -> FiniteElement {
        sig.parse_element(s).unwrap()
    }

    #[test]
    fn signature_syntax() {
        let s = sig("2^2 3L^4 4L^3 5L^48 6L^11 7L^8");
        assert_eq!(s.len(), 2 + 4 + 3 + 48 + 11 + 8);
        assert_eq!(s.to_string(), "2^2 3L^4 4L^3 5L^48 6L^11 7L^8");
        assert_eq!(sig("").to_string(), "1");
        assert_eq!(sig("3L 2 3L").standardize().to_string(), "2^1 3L^2");
        assert!("3Q".parse::<AlgebraSignature>().is_err());
        assert!("3L^x".parse::<AlgebraSignature>().is_err());
    }

    #[test]
    fn componentwise_arithmetic() {
        let s = sig("3L^2");
        let a = el(&s, "(1, 2)");
        let b = el(&s, "(2, 1)");
        assert_eq!(s.elem_meet(&a, &b).unwrap(), el(&s, "(1, 2)"));
        assert_eq!(s.elem_join(&a, &b).unwrap(), el(&s, "(2, 1)"));
        assert_eq!(s.elem_meet(&a, &s.zero()).unwrap(), s.zero());
        assert_eq!(s.elem_diff(&a, &a).unwrap(), s.zero());
        assert!(s.elem_meet(&a, &FiniteElement::zero(3)).is_err());
    }

    #[test]
    fn order_in_three_l() {
        let s = sig("3L");
        let one = el(&s, "(1)");
        let two = el(&s, "(2)");
        assert!(!s.natural_leq(&one, &two).unwrap());
        assert!(s.natural_preceq(&one, &two).unwrap());
        assert!(s.green_l(&one, &two).unwrap());
        assert!(!s.green_r(&one, &two).unwrap());
        assert_eq!(s.intersection(&one, &two).unwrap(), s.zero());
        for x in s.elements() {
            assert!(s.natural_leq(&s.zero(), &x).unwrap());
            assert!(s.green_d(&x, &x).unwrap());
            assert_eq!(s.intersection(&x, &x).unwrap(), x);
        }
    }

    fn small_signatures() -> Vec<AlgebraSignature> {
        // ≤ 3 factors, widths ≤ 2
        let shapes = ["2", "3L", "3R", "3L*3R"];
        let mut out = vec![sig("")];
        for a in 0..4 {
            out.push(sig(shapes[a]));
            for b in a..4 {
                out.push(sig(&format!("{} {}", shapes[a], shapes[b])));
                for c in b..4 {
                    out.push(sig(&format!("{} {} {}", shapes[a], shapes[b], shapes[c])));
                }
            }
        }
        out
    }

    #[test]
    fn coordinate_rules_match_equational_definitions() {
        for s in small_signatures() {
            let els: Vec<_> = s.elements().collect();
            for x in &els {
                for y in &els {
                    let leq = natural_leq(&s, x, y);
                    assert_eq!(s.natural_leq(x, y).unwrap(), leq);
                    assert_eq!(s.natural_preceq(x, y).unwrap(), natural_preceq(&s, x, y));
                    let d = natural_preceq(&s, x, y) && natural_preceq(&s, y, x);
                    assert_eq!(s.green_d(x, y).unwrap(), d);
                    let l = s.meet(x, y) == *x && s.meet(y, x) == *y;
                    assert_eq!(s.green_l(x, y).unwrap(), l);
                    let r = s.meet(x, y) == *y && s.meet(y, x) == *x;
                    assert_eq!(s.green_r(x, y).unwrap(), r);
                    // dual forms via join
                    assert_eq!(l, s.join(x, y) == *y && s.join(y, x) == *x);
                    assert_eq!(r, s.join(x, y) == *x && s.join(y, x) == *y);
                    // L ∩ R is the identity
                    assert_eq!(l && r, x == y);
                }
            }
        }
    }

    #[test]
    fn d_is_the_composite_of_l_and_r() {
        for s in small_signatures() {
            let els: Vec<_> = s.elements().collect();
            for x in &els {
                for y in &els {
                    let d = s.green_d(x, y).unwrap();
                    let lr = els.iter().any(|z| s.green_l(x, z).unwrap() && s.green_r(z, y).unwrap());
                    let rl = els.iter().any(|z| s.green_r(x, z).unwrap() && s.green_l(z, y).unwrap());
                    assert_eq!(d, lr);
                    assert_eq!(d, rl);
                }
            }
        }
    }

    #[test]
    fn intersection_is_greatest_lower_bound() {
        for s in small_signatures() {
            let els: Vec<_> = s.elements().collect();
            for x in &els {
                for y in &els {
                    let m = s.intersection(x, y).unwrap();
                    assert!(s.natural_leq(&m, x).unwrap() && s.natural_leq(&m, y).unwrap());
                    for z in &els {
                        if s.natural_leq(z, x).unwrap() && s.natural_leq(z, y).unwrap() {
                            assert!(s.natural_leq(z, &m).unwrap());
                        }
                    }
                    // ∧ coincides with ∩ exactly when x and y commute
                    assert_eq!(s.meet(x, y) == m, s.meet(x, y) == s.meet(y, x));
                }
            }
        }
    }

    fn brute_force_center(s: &AlgebraSignature) -> Vec<FiniteElement> {
        let els: Vec<_> = s.elements().collect();
        let mut out: Vec<_> = els
            .iter()
            .filter(|x| els.iter().all(|y| s.meet(x, y) == s.meet(y, x) && s.join(x, y) == s.join(y, x)))
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn center_examples() {
        assert_eq!(sig("2^3").center().unwrap().len(), 8);
        assert_eq!(sig("3L").center().unwrap(), vec![sig("3L").zero()]);
        let s = sig("2^2 3L");
        assert_eq!(s.size_u64(), Some(12));
        let brute = brute_force_center(&s);
        assert_eq!(brute.len(), 4);
        let mut c = s.center().unwrap();
        c.sort();
        assert_eq!(c, brute);
        for s in small_signatures() {
            let mut c = s.center().unwrap();
            c.sort();
            assert_eq!(c, brute_force_center(&s), "{s}");
            assert_eq!(BigUint::from(c.len()), s.center_size());
        }
    }

    #[test]
    fn closure_examples() {
        let s = sig("3L^4");
        assert_eq!(s.closure(&[]).unwrap(), vec![s.zero()]);
        let gens = [el(&s, "(1, 1, 0, 1)"), el(&s, "(2, 0, 1, 2)"), el(&s, "(0, 2, 2, 2)")];
        assert_eq!(s.closure_size(&gens).unwrap(), 81);
        for s in small_signatures() {
            assert_eq!(s.closure_size(&s.atoms()).unwrap() as u64, s.size_u64().unwrap());
        }
        let big = sig("2^24");
        assert!(matches!(big.closure(&[]), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn packed_encoding_agrees_with_coordinates() {
        for s in small_signatures().into_iter().chain([sig("2 4L 3L*5R 5R")]) {
            let p = PackedAlgebra::new(&s).unwrap();
            let els: Vec<_> = s.elements().collect();
            for x in &els {
                assert_eq!(p.decode(p.encode(x)), *x);
                for y in &els {
                    let (kx, ky) = (p.encode(x), p.encode(y));
                    assert_eq!(p.decode(p.meet(&kx, &ky)), s.meet(x, y));
                    assert_eq!(p.decode(p.join(&kx, &ky)), s.join(x, y));
                    assert_eq!(p.decode(p.diff(&kx, &ky)), s.diff(x, y));
                }
            }
        }
    }

    #[test]
    fn unpacked_fallback_matches() {
        // 10 factors of 129L*129R need 15 bits each: too wide to pack.
        let wide = AlgebraSignature::new(vec![PrimitiveShape { rows: 128, cols: 128 }; 9]);
        assert!(PackedAlgebra::new(&wide).is_none());
        let s = sig("3L*3R 3L 2");
        let gens = vec![el(&s, "(1.2, 1, 1)"), el(&s, "(2.1, 2, 0)")];
        let packed = s.closure(&gens).unwrap();
        let plain = {
            let mut v = saturate(
                std::iter::once(s.zero()).chain(gens.iter().cloned()),
                1000,
                |a: &FiniteElement, b: &FiniteElement| [s.meet(a, b), s.join(a, b), s.diff(a, b)],
            )
            .unwrap();
            v.sort();
            v
        };
        assert_eq!(packed, plain);
    }

    #[test]
    fn identity_hom_is_epi() {
        for s in small_signatures() {
            let h = HomSpec::identity(&s);
            assert!(h.is_epi());
            for x in s.elements() {
                assert_eq!(h.apply(&x).unwrap(), x);
            }
        }
    }

    #[test]
    fn leader_collapsing_map_from_4l_onto_3l() {
        let src = sig("4L");
        let tgt = sig("3L");
        let h = HomSpec::new(src.clone(), tgt.clone(), vec![FactorMap::Map { target: 0, rows: vec![0, 1, 1], cols: vec![0] }])
            .unwrap();
        assert!(h.is_epi());
        let image: BTreeSet<_> = src.elements().map(|x| h.apply(&x).unwrap()).collect();
        let gens: Vec<_> = image.iter().cloned().collect();
        assert_eq!(tgt.closure(&gens).unwrap(), tgt.elements().collect::<Vec<_>>());
        assert_eq!(image.len(), 3);
    }

    #[test]
    fn homs_commute_with_operations() {
        let src = sig("3L*3R 4L 2 3R");
        let tgt = sig("3L 2 3R");
        let h = HomSpec::new(
            src.clone(),
            tgt.clone(),
            vec![
                FactorMap::Map { target: 2, rows: vec![0, 0], cols: vec![1, 0] },
                FactorMap::Map { target: 0, rows: vec![1, 0, 1], cols: vec![0] },
                FactorMap::Kill,
                FactorMap::Map { target: 1, rows: vec![0], cols: vec![0, 0] },
            ],
        )
        .unwrap();
        assert!(h.is_epi());
        let els: Vec<_> = src.elements().collect();
        for x in &els {
            for y in &els {
                let (hx, hy) = (h.apply(x).unwrap(), h.apply(y).unwrap());
                assert_eq!(h.apply(&src.meet(x, y)).unwrap(), tgt.meet(&hx, &hy));
                assert_eq!(h.apply(&src.join(x, y)).unwrap(), tgt.join(&hx, &hy));
                assert_eq!(h.apply(&src.diff(x, y)).unwrap(), tgt.diff(&hx, &hy));
            }
        }
    }

    #[test]
    fn invalid_homs_are_rejected() {
        let src = sig("3L 3L");
        let tgt = sig("3L");
        let dup = vec![
            FactorMap::Map { target: 0, rows: vec![0, 1], cols: vec![0] },
            FactorMap::Map { target: 0, rows: vec![0, 1], cols: vec![0] },
        ];
        assert!(matches!(HomSpec::new(src.clone(), tgt.clone(), dup), Err(Error::InvalidHom(_))));
        let out_of_range = vec![FactorMap::Map { target: 0, rows: vec![0, 2], cols: vec![0] }, FactorMap::Kill];
        assert!(HomSpec::new(src.clone(), tgt.clone(), out_of_range).is_err());
        let not_onto = HomSpec::new(
            src,
            tgt,
            vec![FactorMap::Map { target: 0, rows: vec![0, 0], cols: vec![0] }, FactorMap::Kill],
        )
        .unwrap();
        assert!(!not_onto.is_epi());

        let square = PrimitiveShape { rows: 2, cols: 2 };
        let rect = vec![vec![(0, 1), (0, 0)], vec![(1, 1), (1, 0)]];
        assert_eq!(class_map_from_cells(square, &rect).unwrap(), (vec![0, 1], vec![1, 0]));
        let twisted = vec![vec![(0, 0), (0, 1)], vec![(1, 1), (1, 0)]];
        assert!(matches!(class_map_from_cells(square, &twisted), Err(Error::InvalidHom(_))));
    }

    #[test]
    fn kimura_projections_are_jointly_injective_homs() {
        for s in [sig("3L*3R 2 3L*4R"), sig("4L*3R 3R")] {
            let l = s.left_projection();
            let r = s.right_projection();
            assert_eq!(l.target().handedness(), Handedness::Left);
            assert_eq!(r.target().handedness(), Handedness::Right);
            let els: Vec<_> = s.elements().collect();
            let mut seen = BTreeSet::new();
            for x in &els {
                assert!(seen.insert((l.apply(x).unwrap(), r.apply(x).unwrap())));
                for y in &els {
                    let m = s.meet(x, y);
                    assert_eq!(l.apply(&m).unwrap(), l.target().meet(&l.apply(x).unwrap(), &l.apply(y).unwrap()));
                    assert_eq!(r.apply(&m).unwrap(), r.target().meet(&r.apply(x).unwrap(), &r.apply(y).unwrap()));
                }
            }
        }
    }
}
