use super::{Monomial, MultiPoly};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::upoly;

impl MultiPoly {
    /// Squarefree decomposition: pairwise coprime squarefree monic parts
    /// with multiplicities, such that their product is `self` up to a unit.
    /// Powers of the variables are split off first as separate entries.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(MultiPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("squarefree decomposition of zero".into()));
        }
        let f = self.field();
        let n = self.nvars();
        let content = self.monomial_content();
        let mut out = Vec::new();
        for (i, &e) in content.iter().enumerate().take(n) {
            if e > 0 {
                out.push((MultiPoly::var(f, n, i), e));
            }
        }
        let rest = self.exact_div(&MultiPoly::monomial(f, n, &content[..n], 1))?.monic();
        if rest.is_constant() {
            return Ok(out);
        }
        let parts = if n == 3 && rest.is_homogeneous() {
            rest.dehomogenize(2)?
                .squarefree_decomposition()?
                .into_iter()
                .map(|(g, e)| {
                    let d = g.degree().unwrap_or(0);
                    (g.homogenize(d).expect("own degree").monic(), e)
                })
                .collect()
        } else if n == 1 {
            upoly::squarefree(f, &rest.to_univariate(0).unwrap())
                .into_iter()
                .map(|(g, e)| (MultiPoly::from_univariate(f, 1, 0, &g), e))
                .collect()
        } else if n == 2 && is_squarefree_bivariate(&BiPoly::from_multi(&rest, 0, 1)) {
            vec![(rest, 1)]
        } else {
            let mut acc = Vec::new();
            musser(&rest, 1, &mut acc);
            acc
        };
        out.extend(parts);
        Ok(out)
    }

    /// Whether no nonconstant square divides `self`.
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.squarefree_decomposition()?.iter().all(|t| t.1 == 1))
    }

    /// `g` with `g^p = self`, when every exponent is divisible by `p`.
    pub fn pth_root(&self) -> Option<MultiPoly> {
        let f = self.field();
        let p = f.p() as u32;
        let mut terms = Vec::with_capacity(self.num_terms());
        for &(m, c) in self.terms() {
            let e = m.exps();
            if e.iter().any(|v| v % p != 0) {
                return None;
            }
            let ex: Vec<u32> = e[..self.nvars()].iter().map(|v| v / p).collect();
            terms.push((Monomial::new(&ex), f.pth_root(c)));
        }
        Some(MultiPoly::from_terms(f, self.nvars(), terms))
    }
}

/// Cheap certificate: squarefree content in `x` and a specialization
/// `x = c` of full `y`-degree that is squarefree. Returns `false` when no
/// certificate is found (not a proof of non-squarefreeness).
pub(crate) fn is_squarefree_bivariate(b: &BiPoly) -> bool {
    let f = &b.field;
    let Some(dy) = b.deg_y() else { return false };
    let cont = b.content_x();
    let dc = upoly::derivative(f, &cont);
    if upoly::degree(&cont).unwrap_or(0) > 0 && upoly::degree(&upoly::gcd(f, &cont, &dc)).unwrap_or(0) > 0 {
        return false;
    }
    if dy == 0 {
        return true;
    }
    let lc = b.lc_y();
    f.elements().take(4096).any(|c| {
        if upoly::eval(f, &lc, c) == 0 {
            return false;
        }
        let u = b.eval_x(c);
        let du = upoly::derivative(f, &u);
        !du.is_empty() && upoly::degree(&upoly::gcd(f, &u, &du)) == Some(0)
    })
}

/// Characteristic-`p` Musser algorithm with all partial derivatives.
fn musser(a: &MultiPoly, mult: u32, out: &mut Vec<(MultiPoly, u32)>) {
    if a.is_constant() {
        return;
    }
    let n = a.nvars();
    let mut c = a.clone();
    for v in 0..n {
        c = c.gcd(&a.d(v)).expect("same ring");
    }
    if c.is_zero() || (0..n).all(|v| a.d(v).is_zero()) {
        let root = a.pth_root().expect("all partials vanish");
        musser(&root, mult * a.field().p() as u32, out);
        return;
    }
    let mut w = a.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c).expect("same ring");
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z.monic(), i * mult));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if !c.is_constant() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        musser(&root, mult * a.field().p() as u32, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    #[test]
    fn examples() {
        let f5 = construct_field(5, 1).unwrap();
        let p = |s: &str| MultiPoly::parse(&f5, 3, s).unwrap();
        let a = &(&p("x - y") * &p("x - y")) * &p("z");
        let d = a.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(p("z"), 1), (p("x - y"), 2)]);
        let x5 = p("x^5");
        assert_eq!(x5.squarefree_decomposition().unwrap(), vec![(p("x"), 5)]);
        // (x + y + z)^5 (x^2 + y z)^2 over F_5
        let b = &p("x + y + z").pow(5) * &p("x^2 + y*z").pow(2);
        let d = b.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(p("x^2 + y*z"), 2), (p("x + y + z"), 5)]);
        let f2 = construct_field(2, 1).unwrap();
        let q = |s: &str| MultiPoly::parse(&f2, 2, s).unwrap();
        let c = &q("x^2 + x*y + 1").pow(3) * &q("y + x^2").pow(2);
        let d = c.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(q("x^2 + x*y + 1"), 3), (q("x^2 + y"), 2)]);
    }
}
