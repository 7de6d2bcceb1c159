#![allow(dead_code)]

use pdivisor::factor::Factorization;
use pdivisor::foliation::ProjOneForm;
use pdivisor::{FieldDescriptor, Monomial, MultiPoly};
use rand::Rng;

/// All monomials of total degree `n` in three variables.
pub fn monomials(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, f: &FieldDescriptor, n: u32) -> MultiPoly {
    let terms = monomials(n).into_iter().map(|e| (Monomial::new(&e), rng.gen_range(0..f.order()))).collect();
    MultiPoly::from_terms(f, 3, terms)
}

/// A random valid form of degree `d`: `ω = i_R i_V (dx∧dy∧dz)` for a random
/// homogeneous `V`, which satisfies the Euler relation by construction.
pub fn random_form<R: Rng>(rng: &mut R, f: &FieldDescriptor, d: u32) -> ProjOneForm {
    let x = MultiPoly::var(f, 3, 0);
    let y = MultiPoly::var(f, 3, 1);
    let z = MultiPoly::var(f, 3, 2);
    loop {
        let l = random_homogeneous(rng, f, d);
        let m = random_homogeneous(rng, f, d);
        let n = random_homogeneous(rng, f, d);
        let a = &(&m * &z) - &(&n * &y);
        let b = &(&n * &x) - &(&l * &z);
        let c = &(&l * &y) - &(&m * &x);
        if let Ok(w) = ProjOneForm::new(a, b, c, d) {
            return w;
        }
    }
}

/// Every monic bivariate polynomial of total degree exactly `n` (nonconstant).
pub fn monic_bivariate(f: &FieldDescriptor, n: u32) -> Vec<MultiPoly> {
    let mons: Vec<[u32; 2]> = (0..=n).flat_map(|t| (0..=t).rev().map(move |a| [a, t - a])).collect();
    // the leading monomial (graded lex) is one of the degree-n monomials
    let mut out = Vec::new();
    let q = f.order();
    for lead in (0..=n).rev().map(|a| [a, n - a]) {
        let lower: Vec<[u32; 2]> = mons
            .iter()
            .copied()
            .filter(|e| Monomial::new(e) < Monomial::new(&lead))
            .collect();
        let count = q.pow(lower.len() as u32);
        for mut code in 0..count {
            let mut terms = vec![(Monomial::new(&lead), 1)];
            for e in &lower {
                terms.push((Monomial::new(e), code % q));
                code /= q;
            }
            out.push(MultiPoly::from_terms(f, 2, terms));
        }
    }
    out
}

/// Factorization by exhaustive divisor search: repeatedly split off a
/// divisor of least degree, which is necessarily irreducible.
pub fn brute_force_factors(f: &MultiPoly) -> Vec<(MultiPoly, u32)> {
    let field = f.field().clone();
    let mut rest = f.clone();
    let mut out: Vec<(MultiPoly, u32)> = Vec::new();
    'outer: while rest.degree().unwrap_or(0) > 0 {
        let n = rest.degree().unwrap();
        for k in 1..=n / 2 {
            for g in monic_bivariate(&field, k) {
                if let Ok(q) = rest.exact_div(&g) {
                    push(&mut out, g);
                    rest = q;
                    continue 'outer;
                }
            }
        }
        // no divisor of degree at most n/2: what is left is irreducible
        push(&mut out, rest.monic());
        break;
    }
    out.sort_by_key(|(g, e)| (g.to_string(), *e));
    out
}

fn push(out: &mut Vec<(MultiPoly, u32)>, g: MultiPoly) {
    match out.iter_mut().find(|t| t.0 == g) {
        Some(t) => t.1 += 1,
        None => out.push((g, 1)),
    }
}

pub fn sorted_factors(fact: &Factorization) -> Vec<(MultiPoly, u32)> {
    let mut v = fact.factors.clone();
    v.sort_by_key(|(g, e)| (g.to_string(), *e));
    v
}
