use super::{factor, FactorConfig};
use crate::error::Result;
use crate::finitefield::arith::prime_divisors;
use crate::multipoly::MultiPoly;
use crate::newton::gao_test;

/// Largest number of points enumerated in the smooth-point shortcut.
const POINT_BUDGET: u64 = 1 << 16;

/// Whether `f` stays irreducible over the algebraic closure of its field.
pub fn absolute_irreducibility(f: &MultiPoly, seed: u64) -> Result<bool> {
    absolute_irreducibility_with(f, &FactorConfig::with_seed(seed))
}

pub fn absolute_irreducibility_with(f: &MultiPoly, cfg: &FactorConfig) -> Result<bool> {
    if !factor(f, cfg)?.is_irreducible() {
        return Ok(false);
    }
    let n = f.degree().unwrap_or(0);
    if n == 1 {
        return Ok(true);
    }
    let used = (0..f.nvars()).filter(|&v| f.degree_in(v) > 0).count();
    if used <= 1 {
        // an irreducible univariate polynomial of degree > 1 splits over the closure
        return Ok(false);
    }
    let affine = if f.nvars() == 3 { f.dehomogenize(2)? } else { f.clone() };
    if affine.nvars() == 2 && gao_test(&affine)?.is_certified() {
        return Ok(true);
    }
    if has_smooth_rational_point(f)? {
        return Ok(true);
    }
    let field = f.field();
    for l in prime_divisors(n as u64) {
        let emb = field.extension(l as u32)?;
        if !factor(&f.embed(&emb), cfg)?.is_irreducible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An `F_q`-irreducible curve with a smooth `F_q`-point is absolutely
/// irreducible: the point would lie on every conjugate component.
fn has_smooth_rational_point(f: &MultiPoly) -> Result<bool> {
    let field = f.field();
    let q = field.order();
    let n = f.nvars();
    let grads: Vec<MultiPoly> = (0..n).map(|v| f.d(v)).collect();
    let smooth = |pt: &[u64]| -> Result<bool> {
        if f.evaluate(pt)? != 0 {
            return Ok(false);
        }
        for g in &grads {
            if g.evaluate(pt)? != 0 {
                return Ok(true);
            }
        }
        Ok(false)
    };
    if n == 3 {
        if q.saturating_mul(q) > POINT_BUDGET {
            return Ok(false);
        }
        // representatives [1:a:b], [0:1:b], [0:0:1]
        for a in 0..q {
            for b in 0..q {
                if smooth(&[1, a, b])? {
                    return Ok(true);
                }
            }
        }
        for b in 0..q {
            if smooth(&[0, 1, b])? {
                return Ok(true);
            }
        }
        smooth(&[0, 0, 1])
    } else if n == 2 {
        if q.saturating_mul(q) > POINT_BUDGET {
            return Ok(false);
        }
        for a in 0..q {
            for b in 0..q {
                if smooth(&[a, b])? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    } else {
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    #[test]
    fn examples() {
        let f3 = construct_field(3, 1).unwrap();
        let x2 = MultiPoly::parse(&f3, 2, "x^2 + 1").unwrap();
        assert!(!absolute_irreducibility(&x2, 0).unwrap());
        let l = MultiPoly::parse(&f3, 2, "y - x").unwrap();
        assert!(absolute_irreducibility(&l, 0).unwrap());
        // x^2 + y^2 over F_3: irreducible, but (x + i y)(x - i y) over F_9
        let c = MultiPoly::parse(&f3, 3, "x^2 + y^2").unwrap();
        assert!(!absolute_irreducibility(&c, 0).unwrap());
        let conic = MultiPoly::parse(&f3, 3, "x^2 + y^2 + z^2").unwrap();
        assert!(absolute_irreducibility(&conic, 0).unwrap());
        // reducible over the base field
        let r = MultiPoly::parse(&f3, 3, "x^2 - y^2").unwrap();
        assert!(!absolute_irreducibility(&r, 0).unwrap());
    }
}
