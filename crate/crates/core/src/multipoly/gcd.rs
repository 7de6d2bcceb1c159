use super::{Monomial, MultiPoly};
use crate::bipoly::BiPoly;
use crate::error::Result;
use crate::upoly;

impl MultiPoly {
    /// Monic greatest common divisor.
    ///
    /// Univariate inputs use Euclid; bivariate inputs a primitive PRS over
    /// `F_q[x][y]`; homogeneous trivariate inputs are dehomogenized at `z`
    /// after splitting off the common power of `z`. Other trivariate inputs
    /// use a recursive primitive PRS in `z`.
    pub fn gcd(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        Ok(gcd_unchecked(self, other))
    }

    /// Gcd of several polynomials (the zero list gives zero).
    pub fn gcd_all(polys: &[MultiPoly]) -> Result<MultiPoly> {
        let mut it = polys.iter();
        let mut g = match it.next() {
            None => return Err(crate::Error::InvalidArgument("gcd of an empty list".into())),
            Some(p) => p.monic(),
        };
        for p in it {
            if g.is_constant() && !g.is_zero() {
                break;
            }
            g = g.gcd(p)?;
        }
        Ok(g)
    }
}

fn gcd_unchecked(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let f = a.field();
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(f, n);
    }
    match n {
        1 => {
            let g = upoly::gcd(f, &a.to_univariate(0).unwrap(), &b.to_univariate(0).unwrap());
            MultiPoly::from_univariate(f, 1, 0, &g)
        }
        2 => BiPoly::from_multi(a, 0, 1).gcd(&BiPoly::from_multi(b, 0, 1)).to_multi(0, 1).monic(),
        _ if a.is_homogeneous() && b.is_homogeneous() => {
            let (ea, eb) = (a.min_degree_in(2), b.min_degree_in(2));
            let za = a.exact_div(&MultiPoly::monomial(f, 3, &[0, 0, ea], 1)).unwrap();
            let zb = b.exact_div(&MultiPoly::monomial(f, 3, &[0, 0, eb], 1)).unwrap();
            let h = gcd_unchecked(&za.dehomogenize(2).unwrap(), &zb.dehomogenize(2).unwrap());
            let deg = h.degree().unwrap_or(0);
            let hh = h.homogenize(deg).unwrap();
            hh.mul_term(Monomial::var(2, ea.min(eb)), 1).monic()
        }
        _ => prs_in_last(a, b),
    }
}

/// Content with respect to `z`: gcd of the coefficients of powers of `z`.
fn content_z(a: &MultiPoly) -> MultiPoly {
    let mut g = MultiPoly::zero(a.field(), a.nvars());
    for c in a.coefficients_in(2) {
        g = gcd_free_of_z(&g, &c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

fn gcd_free_of_z(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let drop = |p: &MultiPoly| p.specialize(2, 0);
    gcd_unchecked(&drop(a), &drop(b)).insert_var(2)
}

fn prem_z(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let db = b.degree_in(2);
    let bc = b.coefficients_in(2);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(2) >= db {
        let dr = r.degree_in(2);
        let lr = r.coefficients_in(2).pop().unwrap();
        let shift = MultiPoly::monomial(a.field(), 3, &[0, 0, dr - db], 1);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    r
}

fn prs_in_last(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (ca, cb) = (content_z(a), content_z(b));
    let c = gcd_free_of_z(&ca, &cb);
    let mut x = a.exact_div(&ca).unwrap();
    let mut y = b.exact_div(&cb).unwrap();
    if x.degree_in(2) < y.degree_in(2) {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        if y.degree_in(2) == 0 {
            break MultiPoly::one(a.field(), 3);
        }
        let r = prem_z(&x, &y);
        if r.is_zero() {
            break y;
        }
        x = y;
        let cr = content_z(&r);
        y = r.exact_div(&cr).unwrap();
    };
    (&g * &c).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    #[test]
    fn examples() {
        let f5 = construct_field(5, 1).unwrap();
        let p = |s: &str| MultiPoly::parse(&f5, 3, s).unwrap();
        assert_eq!(p("x^2 - y^2").gcd(&p("x - y")).unwrap(), p("x - y"));
        assert_eq!(p("3*x*y + z^2").gcd(&p("0")).unwrap(), p("x*y + 2*z^2"));
        assert_eq!(p("x*z^2 - y*z^2").gcd(&p("x^2*z - y^2*z")).unwrap(), p("x*z - y*z"));
        // non-homogeneous trivariate route
        let a = p("(x + y*z + 1)".trim_matches(|c| c == '(' || c == ')'));
        let b = p("x^2 + 2*x + 1 + z");
        let ab = &a * &b;
        let ac = &a * &p("z^3 + x*y");
        assert_eq!(ab.gcd(&ac).unwrap(), a.monic());
        let jd = [p("x^2*z - y^3"), p("x*y^2 - z^3"), p("z^2*y - x^3")];
        assert!(MultiPoly::gcd_all(&jd).unwrap().is_constant());
    }
}
