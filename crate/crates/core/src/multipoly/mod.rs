//! Sparse polynomials in up to three variables over a finite field.
//!
//! Terms are kept in descending graded-lexicographic order (`x > y > z`),
//! without zero coefficients. Coefficients are packed field encodings (see
//! [`crate::finitefield`]).

mod gcd;
mod parse;
mod sqf;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::finitefield::{FieldDescriptor, FieldElement, FieldEmbedding};
use crate::upoly::{self, UPoly};

pub use parse::{parse_terms, RawTerm};

pub const VAR_NAMES: [char; 3] = ['x', 'y', 'z'];
const EXP_BITS: u32 = 16;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;

/// Packed exponent vector: `total << 48 | e_x << 32 | e_y << 16 | e_z`.
/// Integer order on the packing is graded-lex order, and multiplication is
/// addition of packings.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= 3, "at most three variables");
        let mut e = [0u32; 3];
        e[..exps.len()].copy_from_slice(exps);
        let total: u32 = e.iter().sum();
        assert!(total as u64 <= EXP_MASK, "total degree {total} exceeds the supported range");
        Monomial((total as u64) << 48 | (e[0] as u64) << 32 | (e[1] as u64) << 16 | e[2] as u64)
    }

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut ex = [0u32; 3];
        ex[i] = e;
        Monomial::new(&ex)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (32 - 16 * i as u32)) & EXP_MASK) as u32
    }

    #[inline]
    pub fn exps(self) -> [u32; 3] {
        [self.exp(0), self.exp(1), self.exp(2)]
    }

    #[inline]
    pub fn total(self) -> u32 {
        (self.0 >> 48) as u32
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(self.total() + other.total() <= EXP_MASK as u32);
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..3).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn div_into(self, other: Monomial) -> Monomial {
        Monomial(other.0 - self.0)
    }

    pub fn packed(self) -> u64 {
        self.0
    }
}

/// Sparse polynomial in `nvars` (1 to 3) variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: FieldDescriptor,
    nvars: usize,
    terms: Vec<(Monomial, u64)>,
}

impl MultiPoly {
    pub fn zero(field: &FieldDescriptor, nvars: usize) -> Self {
        assert!((1..=3).contains(&nvars), "1 to 3 variables supported");
        MultiPoly { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &FieldDescriptor, nvars: usize, c: u64) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::ONE, c)])
    }

    pub fn one(field: &FieldDescriptor, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    /// The variable `x_i`.
    pub fn var(field: &FieldDescriptor, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range");
        Self::from_terms(field, nvars, vec![(Monomial::var(i, 1), 1)])
    }

    pub fn monomial(field: &FieldDescriptor, nvars: usize, exps: &[u32], c: u64) -> Self {
        assert!(exps.len() <= nvars);
        Self::from_terms(field, nvars, vec![(Monomial::new(exps), c)])
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates summed).
    pub fn from_terms(field: &FieldDescriptor, nvars: usize, terms: Vec<(Monomial, u64)>) -> Self {
        assert!((1..=3).contains(&nvars), "1 to 3 variables supported");
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert!((nvars..3).all(|i| m.exp(i) == 0), "exponent on a missing variable");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => {
                    if let Some((_, 0)) = out.last() {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|t| t.1 != 0);
        MultiPoly { field: field.clone(), nvars, terms: out }
    }

    /// Trusted constructor: terms already sorted descending, nonzero, unique.
    pub(crate) fn from_sorted(field: &FieldDescriptor, nvars: usize, terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        MultiPoly { field: field.clone(), nvars, terms }
    }

    /// Builds from `(exponents, signed integer coefficient)` pairs.
    pub fn from_int_terms(field: &FieldDescriptor, nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| (Monomial::new(e), field.from_i64(*c))).collect(),
        )
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.total())
    }

    /// Degree in a single variable (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    /// Minimal exponent of a variable over all terms.
    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.total() == m.total()),
        }
    }

    pub fn leading_term(&self) -> Option<(Monomial, u64)> {
        self.terms.first().copied()
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn coefficient(&self, m: Monomial) -> u64 {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map_or(0, |i| self.terms[i].1)
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
        self.field.same_as(&other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let f = &self.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ma, ca) = a[i];
            let (mb, cb) = b[j];
            if ma > mb {
                out.push((ma, ca));
                i += 1;
            } else if mb > ma {
                out.push((mb, if negate { f.neg(cb) } else { cb }));
                j += 1;
            } else {
                let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                if c != 0 {
                    out.push((ma, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, if negate { f.neg(c) } else { c })));
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        let f = &self.field;
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.is_empty() {
            return MultiPoly::zero(f, self.nvars);
        }
        if small.terms.len() <= 8 {
            // Multiplying by one term preserves the order; merge the shifted copies.
            let mut acc = MultiPoly::zero(f, self.nvars);
            for &(m, c) in &small.terms {
                acc = acc.merge(&big.mul_term(m, c), false);
            }
            return acc;
        }
        let mut map: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len() * 4);
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &big.terms {
                let e = map.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        let terms: Vec<(Monomial, u64)> = map.into_iter().filter(|t| t.1 != 0).collect();
        let mut p = MultiPoly { field: f.clone(), nvars: self.nvars, terms };
        p.terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        p
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: Monomial, c: u64) -> MultiPoly {
        let f = &self.field;
        if c == 0 {
            return MultiPoly::zero(f, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|&(mm, cc)| {
                let v = f.mul(c, cc);
                (v != 0).then_some((mm.mul(m), v))
            })
            .collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: u64) -> MultiPoly {
        self.mul_term(Monomial::ONE, c)
    }

    pub fn scale_element(&self, c: &FieldElement) -> Result<MultiPoly> {
        self.field.same_as(c.field())?;
        Ok(self.scale(c.value()))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to leading coefficient 1 (graded-lex leading term); zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, 1)) => self.clone(),
            Some(&(_, c)) => self.scale(self.field.inv(c)),
        }
    }

    /// Whether `self = c * other` for some nonzero constant `c`.
    pub fn equal_up_to_scalar(&self, other: &MultiPoly) -> bool {
        self.field == other.field
            && self.nvars == other.nvars
            && self.terms.len() == other.terms.len()
            && self.monic() == other.monic()
    }

    /// Exact quotient `self / g`. Fails with [`Error::NotDivisible`] naming
    /// the first remainder term whose leading monomial is not a multiple of
    /// the leading monomial of `g`.
    pub fn exact_div(&self, g: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(g)?;
        let &(lm, lc) = g.terms.first().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if g.terms.len() == 1 {
            let inv = f.inv(lc);
            let mut terms = Vec::with_capacity(self.terms.len());
            for &(m, c) in &self.terms {
                if !lm.divides(m) {
                    return Err(Error::NotDivisible(format!(
                        "term {} not divisible by {}",
                        self.format_term(m, c),
                        g.format_term(lm, lc)
                    )));
                }
                terms.push((lm.div_into(m), f.mul(c, inv)));
            }
            return Ok(MultiPoly { field: f.clone(), nvars: self.nvars, terms });
        }
        let inv = f.inv(lc);
        let mut rem: BTreeMap<Monomial, u64> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            if !lm.divides(m) || m.total() < lm.total() {
                return Err(Error::NotDivisible(format!(
                    "remainder term {} not divisible by {}",
                    self.format_term(m, c),
                    g.format_term(lm, lc)
                )));
            }
            let qm = lm.div_into(m);
            let qc = f.mul(c, inv);
            quot.push((qm, qc));
            for &(gm, gc) in &g.terms {
                let key = gm.mul(qm);
                let delta = f.mul(qc, gc);
                let e = rem.entry(key).or_insert(0);
                *e = f.sub(*e, delta);
                if *e == 0 {
                    rem.remove(&key);
                }
            }
        }
        Ok(MultiPoly { field: f.clone(), nvars: self.nvars, terms: quot })
    }

    pub fn divides(&self, f: &MultiPoly) -> bool {
        !self.is_zero() && f.exact_div(self).is_ok()
    }

    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::BadVariable(var));
        }
        let f = &self.field;
        let unit = Monomial::var(var, 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let e = m.exp(var);
                let v = f.mul(c, f.from_u64(e as u64));
                (e > 0 && v != 0).then(|| (unit.div_into(m), v))
            })
            .collect();
        // dropping one power of a fixed variable preserves graded-lex order
        Ok(MultiPoly { field: f.clone(), nvars: self.nvars, terms })
    }

    /// Shorthand for `partial_derivative` on a known-valid index.
    pub fn d(&self, var: usize) -> MultiPoly {
        self.partial_derivative(var).expect("variable index in range")
    }

    /// Homogenizes a polynomial in `nvars` variables to degree `n` with a new
    /// last variable.
    pub fn homogenize(&self, n: u32) -> Result<MultiPoly> {
        if self.nvars >= 3 {
            return Err(Error::InvalidArgument("cannot add a fourth variable".into()));
        }
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::InvalidArgument(format!("degree {d} exceeds target {n}")));
            }
        }
        let nv = self.nvars;
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e = m.exps();
                e[nv] = n - m.total();
                (Monomial::new(&e), c)
            })
            .collect();
        Ok(MultiPoly::from_terms(&self.field, nv + 1, terms))
    }

    /// Sets variable `var` to 1 and drops it; remaining variables keep their order.
    pub fn dehomogenize(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars || self.nvars == 1 {
            return Err(Error::BadVariable(var));
        }
        Ok(self.specialize(var, 1))
    }

    /// Substitutes the constant `value` for `var` and drops the variable.
    pub fn specialize(&self, var: usize, value: u64) -> MultiPoly {
        let f = &self.field;
        let mut pw: HashMap<u32, u64> = HashMap::new();
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let e = m.exps();
                let s = *pw.entry(e[var]).or_insert_with(|| f.pow(value, e[var] as u64));
                let rest: Vec<u32> = (0..self.nvars).filter(|&i| i != var).map(|i| e[i]).collect();
                (Monomial::new(&rest), f.mul(c, s))
            })
            .collect();
        MultiPoly::from_terms(f, self.nvars - 1, terms)
    }

    /// Inserts a new variable (with exponent 0) at position `var`.
    pub fn insert_var(&self, var: usize) -> MultiPoly {
        assert!(self.nvars < 3 && var <= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e: Vec<u32> = (0..self.nvars).map(|i| m.exp(i)).collect();
                e.insert(var, 0);
                (Monomial::new(&e), c)
            })
            .collect();
        MultiPoly::from_terms(&self.field, self.nvars + 1, terms)
    }

    /// Reorders variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let e: Vec<u32> = perm.iter().map(|&j| m.exp(j)).collect();
                (Monomial::new(&e), c)
            })
            .collect();
        MultiPoly::from_terms(&self.field, self.nvars, terms)
    }

    pub fn evaluate(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = &self.field;
        let mut cache: Vec<HashMap<u32, u64>> = vec![HashMap::new(); self.nvars];
        let mut acc = 0u64;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &pt) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    let pw = *cache[i].entry(e).or_insert_with(|| f.pow(pt, e as u64));
                    v = f.mul(v, pw);
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Evaluates at a point whose coordinates live in the target of `emb`.
    pub fn evaluate_embedded(&self, emb: &FieldEmbedding, point: &[u64]) -> Result<u64> {
        self.field.same_as(emb.source())?;
        self.embed(emb).evaluate(point)
    }

    pub fn evaluate_elements(&self, point: &[FieldElement]) -> Result<FieldElement> {
        for c in point {
            self.field.same_as(c.field())?;
        }
        let raw: Vec<u64> = point.iter().map(|c| c.value()).collect();
        Ok(self.field.element(self.evaluate(&raw)?))
    }

    /// Image under a field embedding.
    pub fn embed(&self, emb: &FieldEmbedding) -> MultiPoly {
        assert!(&self.field == emb.source(), "embedding source mismatch");
        let terms = self.terms.iter().map(|&(m, c)| (m, emb.map(c))).collect();
        MultiPoly { field: emb.target().clone(), nvars: self.nvars, terms }
    }

    /// Preimage under a field embedding, if every coefficient lies in the image.
    pub fn descend(&self, emb: &FieldEmbedding) -> Option<MultiPoly> {
        if &self.field != emb.target() {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| emb.preimage(c).map(|v| (m, v)))
            .collect::<Option<Vec<_>>>()?;
        Some(MultiPoly { field: emb.source().clone(), nvars: self.nvars, terms })
    }

    /// Applies a coefficient map within the same field (e.g. Frobenius).
    pub fn map_coefficients(&self, g: impl Fn(u64) -> u64) -> MultiPoly {
        let terms = self.terms.iter().map(|&(m, c)| (m, g(c))).collect();
        MultiPoly::from_terms(&self.field, self.nvars, terms)
    }

    /// Linear change of variables `x_j -> sum_i x_i M[i][j]` (column `j` is
    /// the image of `x_j`), so that substituting `M N` equals substituting
    /// `N` then `M`. Requires `M` invertible.
    pub fn linear_substitute(&self, m: &[Vec<u64>]) -> Result<MultiPoly> {
        let n = self.nvars;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("substitution matrix must be {n}x{n}")));
        }
        let f = &self.field;
        if det(f, m) == 0 {
            return Err(Error::InvalidArgument("singular substitution matrix".into()));
        }
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[i][j] == 0));
        if diagonal {
            let mut cache: Vec<HashMap<u32, u64>> = vec![HashMap::new(); n];
            let terms = self
                .terms
                .iter()
                .map(|&(mono, c)| {
                    let mut v = c;
                    for (i, ch) in cache.iter_mut().enumerate() {
                        let e = mono.exp(i);
                        if e > 0 {
                            v = f.mul(v, *ch.entry(e).or_insert_with(|| f.pow(m[i][i], e as u64)));
                        }
                    }
                    (mono, v)
                })
                .collect();
            return Ok(MultiPoly { field: f.clone(), nvars: n, terms });
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| {
                let terms = (0..n).map(|i| (Monomial::var(i, 1), m[i][j])).collect();
                MultiPoly::from_terms(f, n, terms)
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|l| vec![MultiPoly::one(f, n), l.clone()]).collect();
        for j in 0..n {
            let top = self.degree_in(j) as usize;
            while powers[j].len() <= top {
                let next = &powers[j][powers[j].len() - 1] * &images[j];
                powers[j].push(next);
            }
        }
        let mut acc = MultiPoly::zero(f, n);
        for &(mono, c) in &self.terms {
            let mut t = MultiPoly::constant(f, n, c);
            for (j, pw) in powers.iter().enumerate() {
                let e = mono.exp(j) as usize;
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> x_i^n` for every variable.
    pub fn power_substitute(&self, n: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let e: Vec<u32> = m.exps()[..self.nvars].iter().map(|&v| v * n).collect();
                (Monomial::new(&e), c)
            })
            .collect();
        MultiPoly::from_terms(&self.field, self.nvars, terms)
    }

    /// Largest monomial dividing every term, as exponents.
    pub fn monomial_content(&self) -> [u32; 3] {
        let mut e = [u32::MAX; 3];
        for (m, _) in &self.terms {
            for (i, v) in e.iter_mut().enumerate() {
                *v = (*v).min(m.exp(i));
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            e
        }
    }

    /// Dense coefficients in variable `var` when the polynomial is univariate in it.
    pub fn to_univariate(&self, var: usize) -> Option<UPoly> {
        let mut out = vec![0u64; self.degree_in(var) as usize + 1];
        for &(m, c) in &self.terms {
            if m.total() != m.exp(var) {
                return None;
            }
            out[m.exp(var) as usize] = c;
        }
        Some(upoly::trimmed(out))
    }

    pub fn from_univariate(field: &FieldDescriptor, nvars: usize, var: usize, a: &[u64]) -> MultiPoly {
        let terms = a
            .iter()
            .enumerate()
            .filter(|t| *t.1 != 0)
            .map(|(i, &c)| (Monomial::var(var, i as u32), c))
            .collect();
        MultiPoly::from_terms(field, nvars, terms)
    }

    /// Coefficients with respect to `var`: `self = sum_i c_i var^i`, each
    /// `c_i` free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); deg + 1];
        for &(m, c) in &self.terms {
            let e = m.exp(var);
            buckets[e as usize].push((Monomial::var(var, e).div_into(m), c));
        }
        buckets
            .into_iter()
            .map(|t| MultiPoly::from_terms(&self.field, self.nvars, t))
            .collect()
    }

    pub(crate) fn format_term(&self, m: Monomial, c: u64) -> String {
        MultiPoly::from_sorted(&self.field, self.nvars, vec![(m, c)]).to_string()
    }

    pub fn parse(field: &FieldDescriptor, nvars: usize, text: &str) -> Result<MultiPoly> {
        parse::parse_poly(field, nvars, text, 1)
    }

    pub(crate) fn parse_at_line(field: &FieldDescriptor, nvars: usize, text: &str, line: usize) -> Result<MultiPoly> {
        parse::parse_poly(field, nvars, text, line)
    }
}

/// Determinant of a small square matrix over `f`.
pub fn det(f: &FieldDescriptor, m: &[Vec<u64>]) -> u64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0])),
        n => (0..n).fold(0, |acc, j| {
            let minor: Vec<Vec<u64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|e| e.0 != j).map(|e| *e.1).collect()).collect();
            let t = f.mul(m[0][j], det(f, &minor));
            if j % 2 == 0 {
                f.add(acc, t)
            } else {
                f.sub(acc, t)
            }
        }),
    }
}

/// Matrix product over `f`.
pub fn mat_mul(f: &FieldDescriptor, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])))).collect())
        .collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return out.write_str("0");
        }
        let f = &self.field;
        let mut first = true;
        for &(m, c) in &self.terms {
            let mut mono = Vec::new();
            for (i, name) in VAR_NAMES.iter().enumerate().take(self.nvars) {
                match m.exp(i) {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    e => mono.push(format!("{name}^{e}")),
                }
            }
            // One printed summand per nonzero digit of the coefficient.
            let digits: Vec<(usize, u64)> = if f.is_prime_field() {
                vec![(0, c)]
            } else {
                f.digits(c).into_iter().enumerate().filter(|d| d.1 != 0).collect()
            };
            for (gi, d) in digits {
                let mut factors = Vec::new();
                if d != 1 || (gi == 0 && mono.is_empty()) {
                    factors.push(d.to_string());
                }
                match gi {
                    0 => {}
                    1 => factors.push("g".to_string()),
                    e => factors.push(format!("g^{e}")),
                }
                factors.extend(mono.iter().cloned());
                if !first {
                    out.write_str(" + ")?;
                }
                first = false;
                out.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} over {}", self, self.field)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let f = &self.field;
        let terms = self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect();
        MultiPoly { field: f.clone(), nvars: self.nvars, terms }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    fn p3(field: &FieldDescriptor, s: &str) -> MultiPoly {
        MultiPoly::parse(field, 3, s).unwrap()
    }

    #[test]
    fn ring_examples() {
        let f2 = construct_field(2, 1).unwrap();
        let f3 = construct_field(3, 1).unwrap();
        let a = p3(&f2, "x + y");
        assert_eq!((&a * &a).to_string(), "x^2 + y^2");
        let b = p3(&f3, "x^2*z - y^3");
        assert_eq!(b.to_string(), "x^2*z + 2*y^3");
        assert_eq!((&p3(&f3, "x") * &b), p3(&f3, "x^3*z - x*y^3"));
        assert_eq!(p3(&f3, "x+y+z").pow(3), p3(&f3, "x^3+y^3+z^3"));
        assert!(p3(&f3, "x").checked_add(&MultiPoly::parse(&f3, 2, "x").unwrap()).is_err());
    }

    #[test]
    fn division() {
        let f5 = construct_field(5, 1).unwrap();
        let q = p3(&f5, "x^2 - y^2").exact_div(&p3(&f5, "x - y")).unwrap();
        assert_eq!(q, p3(&f5, "x + y"));
        assert!(matches!(p3(&f5, "x").exact_div(&p3(&f5, "y")), Err(Error::NotDivisible(_))));
        assert!(matches!(p3(&f5, "x").exact_div(&p3(&f5, "0")), Err(Error::DivisionByZero)));
    }

    #[test]
    fn calculus_and_charts() {
        let f3 = construct_field(3, 1).unwrap();
        assert!(p3(&f3, "x^3").d(0).is_zero());
        assert_eq!(p3(&f3, "x^2*z - y^3").d(0), p3(&f3, "2*x*z"));
        let d = p3(&f3, "x^2*z - y^3").dehomogenize(2).unwrap();
        assert_eq!(d, MultiPoly::parse(&f3, 2, "x^2 - y^3").unwrap());
        assert_eq!(d.homogenize(3).unwrap(), p3(&f3, "x^2*z - y^3"));
        assert!(MultiPoly::zero(&f3, 2).homogenize(4).unwrap().is_zero());
        assert!(d.homogenize(2).is_err());
        assert_eq!(p3(&f3, "x^2*z - y^3").evaluate(&[0, 0, 1]).unwrap(), 0);
    }

    #[test]
    fn substitution() {
        let f = construct_field(2, 3).unwrap();
        let g = f.nth_root_of_unity(7).unwrap().value();
        let poly = p3(&f, "x^2*z - y^3");
        let m = vec![vec![f.pow(g, 5), 0, 0], vec![0, g, 0], vec![0, 0, 1]];
        let expected = MultiPoly::from_terms(
            &f,
            3,
            vec![(Monomial::new(&[2, 0, 1]), f.pow(g, 10)), (Monomial::new(&[0, 3, 0]), f.neg(f.pow(g, 3)))],
        );
        assert_eq!(poly.linear_substitute(&m).unwrap(), expected);
        let f5 = construct_field(5, 1).unwrap();
        let h = p3(&f5, "x^2*y + 3*y*z^2 + z^3 + x*y*z");
        let a = vec![vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]];
        let b = vec![vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 2]];
        let lhs = h.linear_substitute(&mat_mul(&f5, &a, &b)).unwrap();
        let rhs = h.linear_substitute(&b).unwrap().linear_substitute(&a).unwrap();
        assert_eq!(lhs, rhs);
        let sing = vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
        assert!(h.linear_substitute(&sing).is_err());
    }

    #[test]
    fn extension_text_round_trip() {
        let f = construct_field(3, 2).unwrap();
        let poly = MultiPoly::from_terms(&f, 3, vec![(Monomial::new(&[1, 1, 0]), 7), (Monomial::new(&[0, 0, 2]), 3)]);
        let s = poly.to_string();
        assert_eq!(MultiPoly::parse(&f, 3, &s).unwrap(), poly);
    }
}
