//! Rank, free covers, epimorphism existence and minimal generating sets of
//! finite algebras given by their atomic decomposition.
//!
//! The free algebra on `n` generators has `C(n, j)` atomic classes of size
//! `j`. A finite algebra is an image of it exactly when its factors can be
//! matched injectively to free classes at least as large, which for
//! one-handed targets comes down to the tail-sum conditions
//! `Γ_k^n ≥ #{factors with class size ≥ k}`.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::{free_signature, FreeAlgebra, Variety};
use crate::orthosum::{AlgebraSignature, FactorMap, FiniteElement, HomSpec};
use crate::primitive::PrimitiveShape;

/// `Γ_m^n = C(n, m) + C(n, m+1) + … + C(n, n)`.
pub fn gamma(m: u32, n: u32) -> Result<BigUint> {
    if m > n {
        return Err(Error::Unsupported(format!("Γ_{m}^{n} needs m ≤ n")));
    }
    Ok(gamma_or_zero(m, n))
}

fn gamma_or_zero(m: u32, n: u32) -> BigUint {
    (m..=n).map(|j| binomial(BigUint::from(n), BigUint::from(j))).sum()
}

/// The variety whose free algebras cover `sig`, and the class size each
/// factor demands of its preimage.
pub fn covering_variety(sig: &AlgebraSignature) -> Variety {
    if sig.factors.iter().all(|s| s.is_boolean()) {
        Variety::Gba
    } else if sig.factors.iter().all(|s| s.is_left_handed()) {
        Variety::Lsba
    } else if sig.factors.iter().all(|s| s.is_right_handed()) {
        Variety::Rsba
    } else {
        Variety::Sba
    }
}

/// Class size a free class must have to map onto `shape`: one-handed factors
/// need their width, two-sided ones the larger side.
fn demand(shape: PrimitiveShape) -> u32 {
    shape.rows.max(shape.cols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Binding {
    /// `n - 1` is below the largest class size.
    MinVariables { required: u32 },
    /// `Γ_k^{n-1}` is smaller than the number of factors of class size ≥ k.
    Gamma { k: u32, gamma: String, required: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: u32,
    pub variety: Variety,
    pub free_cover: String,
    /// Why `rank - 1` generators do not suffice; absent for rank 0.
    pub binding: Option<Binding>,
}

/// First violated condition for covering by `n` generators, if any.
fn violation(demands: &[u32], n: u32) -> Option<Binding> {
    let m = demands.iter().copied().max().unwrap_or(0);
    if n < m {
        return Some(Binding::MinVariables { required: m });
    }
    (1..=m).find_map(|k| {
        let required = demands.iter().filter(|&&d| d >= k).count() as u64;
        let g = gamma_or_zero(k, n);
        (g < BigUint::from(required)).then(|| Binding::Gamma { k, gamma: g.to_string(), required })
    })
}

/// Least number of generators of `sig`.
pub fn rank(sig: &AlgebraSignature) -> RankReport {
    let variety = covering_variety(sig);
    let demands: Vec<u32> = sig.factors.iter().map(|&s| demand(s)).collect();
    let mut n = demands.iter().copied().max().unwrap_or(0);
    while violation(&demands, n).is_some() {
        n += 1;
    }
    let binding = if n == 0 { None } else { violation(&demands, n - 1) };
    RankReport { rank: n, variety, free_cover: free_signature(variety, n).to_string(), binding }
}

/// Whether some homomorphism from `source` onto `target` exists: every target
/// factor `(a', b')` needs its own source factor `(a, b)` with `a ≥ a'` and
/// `b ≥ b'`.
pub fn epi_exists(source: &AlgebraSignature, target: &AlgebraSignature) -> bool {
    if target.len() > source.len() {
        return false;
    }
    let one_handed = |sig: &AlgebraSignature, left: bool| {
        sig.factors.iter().all(|s| if left { s.is_left_handed() } else { s.is_right_handed() })
    };
    for left in [true, false] {
        if one_handed(source, left) && one_handed(target, left) {
            // a chain: compare sorted widths pairwise from the top
            let width = |s: &PrimitiveShape| if left { s.rows } else { s.cols };
            let mut s: Vec<u32> = source.factors.iter().map(width).collect();
            let mut t: Vec<u32> = target.factors.iter().map(width).collect();
            s.sort_unstable_by(|a, b| b.cmp(a));
            t.sort_unstable_by(|a, b| b.cmp(a));
            return s.iter().zip(&t).all(|(a, b)| a >= b);
        }
    }
    max_matching(source, target).is_some()
}

/// A matching covering every target factor, as `target index → source index`.
fn max_matching(source: &AlgebraSignature, target: &AlgebraSignature) -> Option<Vec<usize>> {
    let serves = |s: PrimitiveShape, t: PrimitiveShape| s.rows >= t.rows && s.cols >= t.cols;
    let adj: Vec<Vec<usize>> = target
        .factors
        .iter()
        .map(|&t| (0..source.len()).filter(|&i| serves(source.factors[i], t)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; source.len()];

    fn augment(t: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &s in &adj[t] {
            if !seen[s] {
                seen[s] = true;
                if owner[s].is_none() || augment(owner[s].unwrap(), adj, owner, seen) {
                    owner[s] = Some(t);
                    return true;
                }
            }
        }
        false
    }

    for t in 0..target.len() {
        let mut seen = vec![false; source.len()];
        if !augment(t, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut assignment = vec![0; target.len()];
    for (s, o) in owner.iter().enumerate() {
        if let Some(t) = o {
            assignment[*t] = s;
        }
    }
    Some(assignment)
}

/// A generating set of `sig` of size `rank(sig)`, obtained as the image of the
/// free generators under an epimorphism from the free cover. Largest target
/// factors take the largest free classes; each class map sends the class's
/// leaders, in alphabet order, cyclically onto the target rows and columns.
/// The result is checked to generate the whole algebra.
pub fn min_generators(sig: &AlgebraSignature) -> Result<Vec<FiniteElement>> {
    let report = rank(sig);
    let n = report.rank;
    let free = FreeAlgebra::numbered(report.variety, n as usize)?;
    let source = free.signature();
    let classes = free.classes();

    let mut by_size: Vec<usize> = (0..classes.len()).collect();
    by_size.sort_by_key(|&i| (std::cmp::Reverse(classes[i].count_ones()), classes[i]));
    let mut targets: Vec<usize> = (0..sig.len()).collect();
    targets.sort_by_key(|&t| (std::cmp::Reverse(demand(sig.factors[t])), t));

    let mut maps = vec![FactorMap::Kill; classes.len()];
    for (&t, &c) in targets.iter().zip(&by_size) {
        let shape = sig.factors[t];
        let s = source.factors[c];
        if demand(shape) > classes[c].count_ones() {
            return Err(Error::VerificationFailed(format!("free class too small for factor {shape}")));
        }
        maps[c] = FactorMap::Map {
            target: t,
            rows: (0..s.rows).map(|j| j % shape.rows).collect(),
            cols: (0..s.cols).map(|j| j % shape.cols).collect(),
        };
    }
    let hom = HomSpec::new(source, sig.clone(), maps)?;
    let gens = (0..n as usize)
        .map(|i| hom.apply(&free.to_finite(&free.generator(i)?)?))
        .collect::<Result<Vec<_>>>()?;

    let generated = sig.closure_size(&gens)? as u64;
    if Some(generated) != sig.size_u64() {
        return Err(Error::VerificationFailed(format!("{n} elements generate {generated} of {}", sig.size())));
    }
    Ok(gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankRange {
    pub from: u64,
    pub to: u64,
    pub rank: u32,
}

/// Ranks of `shape^p` for `1 ≤ p ≤ max_power`, grouped into maximal ranges.
/// With class size `m`, exactly the powers in `[1 + Γ_m^{m+k-1}, Γ_m^{m+k}]`
/// need `m + k` generators.
pub fn rank_table(shape: PrimitiveShape, max_power: u64) -> Vec<RankRange> {
    let m = demand(shape);
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let below = if k == 0 { BigUint::zero() } else { gamma_or_zero(m, m + k - 1) };
        let from = below + 1u32;
        if from > BigUint::from(max_power) {
            break;
        }
        let to = gamma_or_zero(m, m + k).min(BigUint::from(max_power));
        let as_u64 = |b: &BigUint| u64::try_from(b).expect("bounded by max_power");
        out.push(RankRange { from: as_u64(&from), to: as_u64(&to), rank: m + k });
        k += 1;
    }
    out
}
