#![allow(dead_code)]

use rand::Rng;
use skewbool::orthosum::AlgebraSignature;
use skewbool::primitive::PrimitiveShape;
use skewbool::Term;

/// Random term with the given variables and depth at most `depth`.
pub fn random_term<R: Rng>(rng: &mut R, vars: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        if rng.gen_bool(0.08) {
            return Term::Zero;
        }
        return Term::var(vars[rng.gen_range(0..vars.len())]);
    }
    let l = random_term(rng, vars, depth - 1);
    let r = random_term(rng, vars, depth - 1);
    match rng.gen_range(0..3) {
        0 => Term::meet(l, r),
        1 => Term::join(l, r),
        _ => Term::diff(l, r),
    }
}

/// Every standard signature whose algebra has at most `max_size` elements.
pub fn signatures_up_to(max_size: u64) -> Vec<AlgebraSignature> {
    let mut shapes = Vec::new();
    for rows in 1..max_size as u32 {
        for cols in 1..max_size as u32 {
            let s = PrimitiveShape { rows, cols };
            if s.size() <= max_size {
                shapes.push(s);
            }
        }
    }
    shapes.sort();
    let mut out = Vec::new();
    fn rec(shapes: &[PrimitiveShape], start: usize, cur: &mut Vec<PrimitiveShape>, size: u64, max: u64, out: &mut Vec<AlgebraSignature>) {
        out.push(AlgebraSignature::new(cur.clone()));
        for i in start..shapes.len() {
            let s = size * shapes[i].size();
            if s <= max {
                cur.push(shapes[i]);
                rec(shapes, i, cur, s, max, out);
                cur.pop();
            }
        }
    }
    rec(&shapes, 0, &mut Vec::new(), 1, max_size, &mut out);
    out
}

/// Replaces variables by terms; unmapped variables stay.
pub fn substitute(t: &Term, map: &[(String, Term)]) -> Term {
    match t {
        Term::Var(name) => map.iter().find(|(n, _)| n == name).map_or_else(|| t.clone(), |(_, s)| s.clone()),
        Term::Zero => Term::Zero,
        Term::Meet(l, r) => Term::meet(substitute(l, map), substitute(r, map)),
        Term::Join(l, r) => Term::join(substitute(l, map), substitute(r, map)),
        Term::Diff(l, r) => Term::diff(substitute(l, map), substitute(r, map)),
    }
}

/// Rewrites one random subterm. Some rewrites are identities of every skew
/// Boolean algebra, others only of some varieties, so the results mix equal
/// and unequal pairs.
pub fn rewrite<R: Rng>(rng: &mut R, t: &Term, vars: &[&str]) -> Term {
    let size = count_nodes(t);
    let target = rng.gen_range(0..size);
    let mut counter = 0;
    rewrite_at(rng, t, vars, target, &mut counter)
}

fn count_nodes(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Zero => 1,
        Term::Meet(l, r) | Term::Join(l, r) | Term::Diff(l, r) => 1 + count_nodes(l) + count_nodes(r),
    }
}

fn rewrite_at<R: Rng>(rng: &mut R, t: &Term, vars: &[&str], target: usize, counter: &mut usize) -> Term {
    let here = *counter;
    *counter += 1;
    if here == target {
        return rewrite_node(rng, t, vars);
    }
    match t {
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Meet(l, r) => {
            let l = rewrite_at(rng, l, vars, target, counter);
            Term::meet(l, rewrite_at(rng, r, vars, target, counter))
        }
        Term::Join(l, r) => {
            let l = rewrite_at(rng, l, vars, target, counter);
            Term::join(l, rewrite_at(rng, r, vars, target, counter))
        }
        Term::Diff(l, r) => {
            let l = rewrite_at(rng, l, vars, target, counter);
            Term::diff(l, rewrite_at(rng, r, vars, target, counter))
        }
    }
}

fn rewrite_node<R: Rng>(rng: &mut R, t: &Term, vars: &[&str]) -> Term {
    let v = Term::var(vars[rng.gen_range(0..vars.len())]);
    let structural = match t {
        Term::Meet(a, b) if rng.gen_bool(0.5) => Some(Term::meet((**b).clone(), (**a).clone())),
        Term::Join(a, b) if rng.gen_bool(0.5) => Some(Term::join((**b).clone(), (**a).clone())),
        Term::Diff(ab, c) if matches!(**ab, Term::Diff(..)) => {
            let Term::Diff(a, b) = &**ab else { unreachable!() };
            Some(Term::diff(Term::diff((**a).clone(), (**c).clone()), (**b).clone()))
        }
        Term::Diff(a, bc) if matches!(**bc, Term::Join(..)) => {
            let Term::Join(b, c) = &**bc else { unreachable!() };
            Some(Term::meet(Term::diff((**a).clone(), (**b).clone()), Term::diff((**a).clone(), (**c).clone())))
        }
        _ => None,
    };
    if let Some(s) = structural {
        return s;
    }
    let x = t.clone();
    match rng.gen_range(0..4) {
        0 => Term::meet(x.clone(), x),
        1 => Term::join(x.clone(), Term::meet(x, v)),
        2 => Term::join(x, Term::Zero),
        _ => Term::meet(x.clone(), Term::meet(v, x)),
    }
}

/// Uniformly random element of an orthosum.
pub fn random_element<R: Rng>(rng: &mut R, sig: &AlgebraSignature) -> skewbool::FiniteElement {
    skewbool::FiniteElement {
        coords: sig.factors.iter().map(|s| s.element_at(rng.gen_range(0..s.size()) as u32)).collect(),
    }
}
