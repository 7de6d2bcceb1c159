//! Dense bivariate polynomials `sum_j r_j(x) y^j`, the working
//! representation for gcds and factorization of plane-curve equations.

use crate::finitefield::{FieldDescriptor, FieldEmbedding};
use crate::multipoly::{Monomial, MultiPoly};
use crate::upoly::{self, UPoly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    pub field: FieldDescriptor,
    /// `rows[j]` is the coefficient of `y^j`; no trailing zero rows.
    pub rows: Vec<UPoly>,
}

impl BiPoly {
    pub fn zero(field: &FieldDescriptor) -> Self {
        BiPoly { field: field.clone(), rows: Vec::new() }
    }

    pub fn new(field: &FieldDescriptor, rows: Vec<UPoly>) -> Self {
        let mut b = BiPoly { field: field.clone(), rows };
        b.trim();
        b
    }

    /// From a univariate polynomial in `x` (constant in `y`).
    pub fn from_x(field: &FieldDescriptor, a: UPoly) -> Self {
        BiPoly::new(field, vec![a])
    }

    /// From a univariate polynomial in `y` (constant coefficients).
    pub fn from_y(field: &FieldDescriptor, a: &[u64]) -> Self {
        BiPoly::new(field, a.iter().map(|&c| if c == 0 { Vec::new() } else { vec![c] }).collect())
    }

    fn trim(&mut self) {
        for r in self.rows.iter_mut() {
            upoly::trim(r);
        }
        while matches!(self.rows.last(), Some(r) if r.is_empty()) {
            self.rows.pop();
        }
    }

    /// Reads a two-variable polynomial with variable `xv` as `x` and `yv` as `y`.
    pub fn from_multi(f: &MultiPoly, xv: usize, yv: usize) -> Self {
        assert_eq!(f.nvars(), 2);
        let mut rows: Vec<UPoly> = vec![Vec::new(); f.degree_in(yv) as usize + 1];
        for &(m, c) in f.terms() {
            let (i, j) = (m.exp(xv) as usize, m.exp(yv) as usize);
            let r = &mut rows[j];
            if r.len() <= i {
                r.resize(i + 1, 0);
            }
            r[i] = c;
        }
        BiPoly::new(f.field(), rows)
    }

    pub fn to_multi(&self, xv: usize, yv: usize) -> MultiPoly {
        let mut terms = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, &c) in r.iter().enumerate() {
                if c != 0 {
                    let mut e = [0u32; 2];
                    e[xv] = i as u32;
                    e[yv] = j as u32;
                    terms.push((Monomial::new(&e), c));
                }
            }
        }
        MultiPoly::from_terms(&self.field, 2, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in `y`, `None` for zero.
    pub fn deg_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.rows.iter().filter_map(|r| upoly::degree(r)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| upoly::degree(r).map(|d| d + j))
            .max()
            .unwrap_or(0)
    }

    /// Leading coefficient in `y` (a polynomial in `x`).
    pub fn lc_y(&self) -> UPoly {
        self.rows.last().cloned().unwrap_or_default()
    }

    pub fn swap(&self) -> BiPoly {
        let dx = self.deg_x();
        let mut rows: Vec<UPoly> = vec![vec![0; self.rows.len()]; dx + 1];
        for (j, r) in self.rows.iter().enumerate() {
            for (i, &c) in r.iter().enumerate() {
                rows[i][j] = c;
            }
        }
        BiPoly::new(&self.field, rows)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let f = &self.field;
        let n = self.rows.len().max(o.rows.len());
        let e = Vec::new();
        BiPoly::new(
            f,
            (0..n)
                .map(|j| upoly::add(f, self.rows.get(j).unwrap_or(&e), o.rows.get(j).unwrap_or(&e)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let f = &self.field;
        let n = self.rows.len().max(o.rows.len());
        let e = Vec::new();
        BiPoly::new(
            f,
            (0..n)
                .map(|j| upoly::sub(f, self.rows.get(j).unwrap_or(&e), o.rows.get(j).unwrap_or(&e)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero(f);
        }
        let mut rows: Vec<UPoly> = vec![Vec::new(); self.rows.len() + o.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in o.rows.iter().enumerate() {
                if !b.is_empty() {
                    rows[i + j] = upoly::add(f, &rows[i + j], &upoly::mul(f, a, b));
                }
            }
        }
        BiPoly::new(f, rows)
    }

    pub fn mul_x(&self, a: &[u64]) -> BiPoly {
        BiPoly::new(&self.field, self.rows.iter().map(|r| upoly::mul(&self.field, r, a)).collect())
    }

    /// Multiplies by `y^k`.
    pub fn shift_y(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![Vec::new(); k];
        rows.extend(self.rows.iter().cloned());
        BiPoly::new(&self.field, rows)
    }

    /// Gcd of the coefficient rows (monic in `x`).
    pub fn content_x(&self) -> UPoly {
        let f = &self.field;
        let mut g: UPoly = Vec::new();
        for r in &self.rows {
            g = upoly::gcd(f, &g, r);
            if upoly::degree(&g) == Some(0) {
                break;
            }
        }
        g
    }

    /// Divides every row by a univariate polynomial in `x` that divides it.
    pub fn div_x(&self, a: &[u64]) -> Option<BiPoly> {
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| upoly::exact_div(f, r, a))
            .collect::<Option<Vec<_>>>()?;
        Some(BiPoly::new(f, rows))
    }

    /// Primitive part with respect to `y` (content in `x` removed); zero stays zero.
    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_x();
        self.div_x(&c).expect("content divides")
    }

    /// Pseudo-remainder in `y`.
    pub fn prem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_y().expect("nonzero divisor");
        let lb = b.lc_y();
        let mut a = self.clone();
        while let Some(da) = a.deg_y() {
            if da < db {
                break;
            }
            let la = a.lc_y();
            let t = b.mul_x(&la).shift_y(da - db);
            a = a.mul_x(&lb).sub(&t);
        }
        a
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide `self`.
    pub fn exact_div(&self, b: &BiPoly) -> Option<BiPoly> {
        let f = &self.field;
        let db = b.deg_y()?;
        let lb = b.lc_y();
        let mut a = self.clone();
        let mut q: Vec<UPoly> = vec![Vec::new(); self.rows.len().saturating_sub(db).max(1)];
        if b.total_degree() > self.total_degree() && !self.is_zero() {
            return None;
        }
        while let Some(da) = a.deg_y() {
            if da < db {
                return None;
            }
            let t = upoly::exact_div(f, &a.lc_y(), &lb)?;
            let sub = b.mul_x(&t).shift_y(da - db);
            a = a.sub(&sub);
            if a.deg_y() == Some(da) {
                return None;
            }
            q[da - db] = t;
        }
        Some(BiPoly::new(f, q))
    }

    /// Substitutes `x = c`, giving a polynomial in `y`.
    pub fn eval_x(&self, c: u64) -> UPoly {
        upoly::trimmed(self.rows.iter().map(|r| upoly::eval(&self.field, r, c)).collect())
    }

    /// `f(x + c, y)`.
    pub fn shift_x(&self, c: u64) -> BiPoly {
        BiPoly::new(&self.field, self.rows.iter().map(|r| upoly::taylor_shift(&self.field, r, c)).collect())
    }

    pub fn derivative_y(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::new(
            f,
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, r)| upoly::scale(f, f.from_u64(j as u64), r))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(&self.field, self.rows.iter().map(|r| upoly::derivative(&self.field, r)).collect())
    }

    /// Scales so that the leading coefficient of the top row is 1.
    pub fn monic(&self) -> BiPoly {
        match self.rows.last() {
            None => self.clone(),
            Some(r) => {
                let inv = self.field.inv(upoly::lc(r));
                BiPoly::new(&self.field, self.rows.iter().map(|r| upoly::scale(&self.field, inv, r)).collect())
            }
        }
    }

    pub fn embed(&self, emb: &FieldEmbedding) -> BiPoly {
        BiPoly::new(emb.target(), self.rows.iter().map(|r| r.iter().map(|&c| emb.map(c)).collect()).collect())
    }

    pub fn descend(&self, emb: &FieldEmbedding) -> Option<BiPoly> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| emb.preimage(c)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(BiPoly::new(emb.source(), rows))
    }

    /// Coefficientwise map (e.g. a Frobenius power).
    pub fn map_coefficients(&self, g: impl Fn(u64) -> u64) -> BiPoly {
        BiPoly::new(&self.field, self.rows.iter().map(|r| r.iter().map(|&c| g(c)).collect()).collect())
    }

    /// Gcd in `F_q[x, y]` by primitive pseudo-remainder sequences; monic.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        let f = &self.field;
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let (ca, cb) = (self.content_x(), o.content_x());
        let c = upoly::gcd(f, &ca, &cb);
        let mut a = self.div_x(&ca).expect("content divides");
        let mut b = o.div_x(&cb).expect("content divides");
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.deg_y() == Some(0) {
                break BiPoly::from_x(f, vec![1]);
            }
            let r = a.prem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive_part();
        };
        g.mul_x(&c).monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    #[test]
    fn gcd_and_division() {
        let f5 = construct_field(5, 1).unwrap();
        let p = |s: &str| BiPoly::from_multi(&MultiPoly::parse(&f5, 2, s).unwrap(), 0, 1);
        let a = p("x^2 - y^2");
        let b = p("x*y - y^2");
        assert!(a.gcd(&b).to_multi(0, 1).equal_up_to_scalar(&MultiPoly::parse(&f5, 2, "x - y").unwrap()));
        let prod = p("x*y + 1").mul(&p("y^2 + x^3"));
        assert_eq!(prod.exact_div(&p("y^2 + x^3")).unwrap(), p("x*y + 1"));
        assert!(prod.exact_div(&p("y + x")).is_none());
        assert_eq!(p("x^2*y + x*y^3").swap(), p("y^2*x + y*x^3"));
    }
}
