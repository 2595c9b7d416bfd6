//! Finite primitive skew Boolean algebras.
//!
//! A primitive algebra is a rectangular class `rows × cols` with a zero
//! adjoined. The row of an element is its L-class coordinate and the column
//! its R-class coordinate, so `2` is `1×1`, `nL` is `(n-1)×1`, `nR` is
//! `1×(n-1)` and the fibered product `mL*nR` is `(m-1)×(n-1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::SkewBoolean;
use crate::error::{Error, Result};

/// Shape of a primitive algebra: the dimensions of its nonzero class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimitiveShape {
    /// Left width: number of rows (distinct L-class coordinates).
    pub rows: u32,
    /// Right width: number of columns (distinct R-class coordinates).
    pub cols: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimitiveElement {
    Zero,
    NonZero { row: u32, col: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Meet,
    Join,
    Diff,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Meet, Op::Join, Op::Diff];
}

impl PrimitiveElement {
    pub fn at(row: u32, col: u32) -> PrimitiveElement {
        PrimitiveElement::NonZero { row, col }
    }

    pub fn is_zero(self) -> bool {
        self == PrimitiveElement::Zero
    }
}

/// Meet on rectangle coordinates; no range checks.
#[inline]
pub fn meet_raw(x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement {
    use PrimitiveElement::*;
    match (x, y) {
        (NonZero { row, .. }, NonZero { col, .. }) => NonZero { row, col },
        _ => Zero,
    }
}

/// Join on rectangle coordinates; within the class `x ∨ y = y ∧ x`.
#[inline]
pub fn join_raw(x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement {
    use PrimitiveElement::*;
    match (x, y) {
        (x, Zero) => x,
        (Zero, y) => y,
        (NonZero { col, .. }, NonZero { row, .. }) => NonZero { row, col },
    }
}

#[inline]
pub fn diff_raw(x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement {
    if y.is_zero() {
        x
    } else {
        PrimitiveElement::Zero
    }
}

#[inline]
pub fn apply_raw(op: Op, x: PrimitiveElement, y: PrimitiveElement) -> PrimitiveElement {
    match op {
        Op::Meet => meet_raw(x, y),
        Op::Join => join_raw(x, y),
        Op::Diff => diff_raw(x, y),
    }
}

impl PrimitiveShape {
    /// **2**
    pub const TWO: PrimitiveShape = PrimitiveShape { rows: 1, cols: 1 };

    pub fn new(rows: u32, cols: u32) -> Result<PrimitiveShape> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols}")));
        }
        Ok(PrimitiveShape { rows, cols })
    }

    /// **n**_L, the left-handed primitive algebra with `n` elements.
    pub fn left(n: u32) -> PrimitiveShape {
        assert!(n >= 2, "nL needs n >= 2");
        PrimitiveShape { rows: n - 1, cols: 1 }
    }

    /// **n**_R
    pub fn right(n: u32) -> PrimitiveShape {
        assert!(n >= 2, "nR needs n >= 2");
        PrimitiveShape { rows: 1, cols: n - 1 }
    }

    /// Number of elements in the nonzero class.
    pub fn class_size(self) -> u64 {
        self.rows as u64 * self.cols as u64
    }

    /// Number of elements including zero.
    pub fn size(self) -> u64 {
        self.class_size() + 1
    }

    pub fn is_left_handed(self) -> bool {
        self.cols == 1
    }

    pub fn is_right_handed(self) -> bool {
        self.rows == 1
    }

    pub fn is_boolean(self) -> bool {
        self.rows == 1 && self.cols == 1
    }

    pub fn check(self, x: PrimitiveElement) -> Result<()> {
        match x {
            PrimitiveElement::NonZero { row, col } if row >= self.rows || col >= self.cols => {
                Err(Error::IndexOutOfRange { row, col, rows: self.rows, cols: self.cols })
            }
            _ => Ok(()),
        }
    }

    pub fn prim_meet(self, x: PrimitiveElement, y: PrimitiveElement) -> Result<PrimitiveElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(meet_raw(x, y))
    }

    pub fn prim_join(self, x: PrimitiveElement, y: PrimitiveElement) -> Result<PrimitiveElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(join_raw(x, y))
    }

    pub fn prim_diff(self, x: PrimitiveElement, y: PrimitiveElement) -> Result<PrimitiveElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(diff_raw(x, y))
    }

    /// Position in the canonical order: zero first, then row-major.
    pub fn index_of(self, x: PrimitiveElement) -> u32 {
        match x {
            PrimitiveElement::Zero => 0,
            PrimitiveElement::NonZero { row, col } => 1 + row * self.cols + col,
        }
    }

    pub fn element_at(self, index: u32) -> PrimitiveElement {
        if index == 0 {
            PrimitiveElement::Zero
        } else {
            let i = index - 1;
            PrimitiveElement::NonZero { row: i / self.cols, col: i % self.cols }
        }
    }

    /// All elements in canonical order.
    pub fn elements(self) -> impl Iterator<Item = PrimitiveElement> {
        (0..self.size() as u32).map(move |i| self.element_at(i))
    }

    /// Full operation table; entry `[i][j]` is `e_i op e_j` in canonical order.
    pub fn cayley_table(self, op: Op) -> Vec<Vec<PrimitiveElement>> {
        self.elements()
            .map(|x| self.elements().map(|y| apply_raw(op, x, y)).collect())
            .collect()
    }

    /// Printed label: `0`, the 1-based index along the long side when one
    /// width is 1 (the `1, 2, …` labels of **n**_L and **n**_R), else `r.c`
    /// with 1-based coordinates.
    pub fn label(self, x: PrimitiveElement) -> String {
        match x {
            PrimitiveElement::Zero => "0".to_string(),
            PrimitiveElement::NonZero { row, col } => {
                if self.cols == 1 {
                    (row + 1).to_string()
                } else if self.rows == 1 {
                    (col + 1).to_string()
                } else {
                    format!("{}.{}", row + 1, col + 1)
                }
            }
        }
    }

    pub fn parse_label(self, text: &str) -> Result<PrimitiveElement> {
        let bad = || Error::ShapeMismatch(format!("`{text}` is not an element of {self}"));
        let text = text.trim();
        if text == "0" {
            return Ok(PrimitiveElement::Zero);
        }
        let element = if let Some((r, c)) = text.split_once('.') {
            let r: u32 = r.parse().map_err(|_| bad())?;
            let c: u32 = c.parse().map_err(|_| bad())?;
            if r == 0 || c == 0 {
                return Err(bad());
            }
            PrimitiveElement::at(r - 1, c - 1)
        } else {
            let i: u32 = text.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            if self.cols == 1 {
                PrimitiveElement::at(i - 1, 0)
            } else if self.rows == 1 {
                PrimitiveElement::at(0, i - 1)
            } else {
                return Err(bad());
            }
        };
        self.check(element).map_err(|_| bad())?;
        Ok(element)
    }
}

impl SkewBoolean for PrimitiveShape {
    type Element = PrimitiveElement;

    fn zero(&self) -> PrimitiveElement {
        PrimitiveElement::Zero
    }

    fn meet(&self, x: &PrimitiveElement, y: &PrimitiveElement) -> PrimitiveElement {
        meet_raw(*x, *y)
    }

    fn join(&self, x: &PrimitiveElement, y: &PrimitiveElement) -> PrimitiveElement {
        join_raw(*x, *y)
    }

    fn diff(&self, x: &PrimitiveElement, y: &PrimitiveElement) -> PrimitiveElement {
        diff_raw(*x, *y)
    }
}

impl fmt::Display for PrimitiveShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rows, self.cols) {
            (1, 1) => write!(f, "2"),
            (a, 1) => write!(f, "{}L", a + 1),
            (1, b) => write!(f, "{}R", b + 1),
            (a, b) => write!(f, "{}L*{}R", a + 1, b + 1),
        }
    }
}

impl FromStr for PrimitiveShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<PrimitiveShape> {
        let bad = || Error::InvalidShape(s.to_string());
        let s = s.trim();
        if s == "2" {
            return Ok(PrimitiveShape::TWO);
        }
        let size = |part: &str, suffix: char| -> Result<u32> {
            let n: u32 = part.strip_suffix(suffix).ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            Ok(n - 1)
        };
        if let Some((l, r)) = s.split_once(['*', '•']) {
            return Ok(PrimitiveShape { rows: size(l.trim(), 'L')?, cols: size(r.trim(), 'R')? });
        }
        if s.ends_with('L') {
            Ok(PrimitiveShape { rows: size(s, 'L')?, cols: 1 })
        } else if s.ends_with('R') {
            Ok(PrimitiveShape { rows: 1, cols: size(s, 'R')? })
        } else {
            Err(bad())
        }
    }
}
