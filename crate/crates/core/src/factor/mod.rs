//! Factorization over finite fields: univariate, bivariate and homogeneous
//! trivariate polynomials, plus absolute irreducibility.

mod absolute;
mod bivariate;

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::finitefield::FieldElement;
use crate::multipoly::MultiPoly;
use crate::upoly;

pub use absolute::{absolute_irreducibility, absolute_irreducibility_with};

/// Tunables of the factorization engine.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Seed for equal-degree splitting.
    pub seed: u64,
    /// Recombination aborts with a resource error beyond this many probes.
    pub max_subset_probes: u64,
    /// Largest extension degree searched for a separable specialization.
    pub max_extension_degree: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { seed: 0, max_subset_probes: 1 << 20, max_extension_degree: 12 }
    }
}

impl FactorConfig {
    pub fn with_seed(seed: u64) -> Self {
        FactorConfig { seed, ..Default::default() }
    }
}

/// `unit · ∏ factor^mult`, factors monic and irreducible, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub nvars: usize,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.unit.field(), self.nvars, self.unit.value());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    /// Multiplicity-weighted degree sum.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(g, e)| g.degree().unwrap_or(0) * e).sum()
    }

    /// A single factor of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Multiplicity of `g` (matched up to scalar), zero when absent.
    pub fn multiplicity_of(&self, g: &MultiPoly) -> u32 {
        let m = g.monic();
        self.factors.iter().find(|(h, _)| *h == m).map_or(0, |t| t.1)
    }

    fn canonicalize(&mut self) {
        self.factors.sort_by(|a, b| cmp_factor(&a.0, &b.0).then(a.1.cmp(&b.1)));
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            factor: String,
            degree: u32,
            multiplicity: u32,
        }
        let entries: Vec<Entry> = self
            .factors
            .iter()
            .map(|(g, e)| Entry { factor: g.to_string(), degree: g.degree().unwrap_or(0), multiplicity: *e })
            .collect();
        serde_json::json!({ "unit": self.unit.to_string(), "factors": entries })
    }
}

fn cmp_factor(a: &MultiPoly, b: &MultiPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let ka = a.terms().iter().map(|&(m, c)| (std::cmp::Reverse(m.packed()), c));
        let kb = b.terms().iter().map(|&(m, c)| (std::cmp::Reverse(m.packed()), c));
        ka.cmp(kb)
    })
}

fn nonzero(f: &MultiPoly) -> Result<()> {
    if f.is_zero() {
        Err(Error::InvalidArgument("cannot factor the zero polynomial".into()))
    } else {
        Ok(())
    }
}

/// Factors a polynomial in which at most one variable occurs.
pub fn univariate_factor(f: &MultiPoly, seed: u64) -> Result<Factorization> {
    nonzero(f)?;
    let field = f.field();
    let n = f.nvars();
    let used: Vec<usize> = (0..n).filter(|&v| f.degree_in(v) > 0).collect();
    if used.len() > 1 {
        return Err(Error::InvalidArgument(format!("{f} is not univariate")));
    }
    let var = used.first().copied().unwrap_or(0);
    let u = f.to_univariate(var).expect("single variable");
    let (unit, parts) = upoly::factor(field, &u, seed);
    let mut out = Factorization {
        unit: field.element(unit),
        nvars: n,
        factors: parts.into_iter().map(|(g, e)| (MultiPoly::from_univariate(field, n, var, &g), e)).collect(),
    };
    out.canonicalize();
    Ok(out)
}

/// Factors a bivariate polynomial over its coefficient field.
pub fn bivariate_factor(f: &MultiPoly, seed: u64) -> Result<Factorization> {
    bivariate_factor_with(f, &FactorConfig::with_seed(seed))
}

pub fn bivariate_factor_with(f: &MultiPoly, cfg: &FactorConfig) -> Result<Factorization> {
    nonzero(f)?;
    if f.nvars() != 2 {
        return Err(Error::NvarsMismatch(2, f.nvars()));
    }
    let mut ctx = bivariate::Ctx::new(cfg);
    let mut factors = Vec::new();
    for (part, e) in f.squarefree_decomposition()? {
        if part.degree() == Some(1) && part.num_terms() == 1 {
            factors.push((part, e));
            continue;
        }
        for g in bivariate::factor_squarefree(&BiPoly::from_multi(&part, 0, 1), &mut ctx)? {
            factors.push((g.to_multi(0, 1).monic(), e));
        }
    }
    let mut out = Factorization { unit: f.field().element(f.leading_coefficient()), nvars: 2, factors };
    out.canonicalize();
    Ok(out)
}

/// Factors a homogeneous polynomial in `x, y, z`.
pub fn plane_curve_factor(f: &MultiPoly, seed: u64) -> Result<Factorization> {
    plane_curve_factor_with(f, &FactorConfig::with_seed(seed))
}

pub fn plane_curve_factor_with(f: &MultiPoly, cfg: &FactorConfig) -> Result<Factorization> {
    nonzero(f)?;
    if f.nvars() != 3 {
        return Err(Error::NvarsMismatch(3, f.nvars()));
    }
    if !f.is_homogeneous() {
        return Err(Error::InvalidArgument(format!("{f} is not homogeneous")));
    }
    let field = f.field();
    let content = f.monomial_content();
    let mut factors = Vec::new();
    for (v, &e) in content.iter().enumerate() {
        if e > 0 {
            factors.push((MultiPoly::var(field, 3, v), e));
        }
    }
    let rest = f.exact_div(&MultiPoly::monomial(field, 3, &content, 1))?;
    if !rest.is_constant() {
        // z no longer divides the rest, so dehomogenizing at z keeps the degree.
        let aff = rest.dehomogenize(2)?;
        let fact = bivariate_factor_with(&aff, cfg)?;
        for (g, e) in fact.factors {
            let d = g.degree().unwrap_or(0);
            factors.push((g.homogenize(d)?.monic(), e));
        }
    }
    let mut out = Factorization { unit: field.element(f.leading_coefficient()), nvars: 3, factors };
    out.canonicalize();
    Ok(out)
}

/// Dispatches on the shape of `f`: univariate, bivariate or a plane curve.
pub fn factor(f: &MultiPoly, cfg: &FactorConfig) -> Result<Factorization> {
    nonzero(f)?;
    let used = (0..f.nvars()).filter(|&v| f.degree_in(v) > 0).count();
    if used <= 1 {
        univariate_factor(f, cfg.seed)
    } else if f.nvars() == 2 {
        bivariate_factor_with(f, cfg)
    } else if f.nvars() == 3 && f.is_homogeneous() {
        plane_curve_factor_with(f, cfg)
    } else {
        Err(Error::InvalidArgument("only univariate, bivariate and homogeneous trivariate input is supported".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    fn poly(p: u64, n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(&construct_field(p, 1).unwrap(), n, s).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let f = univariate_factor(&poly(5, 1, "x^2 + 1"), 0).unwrap();
        assert_eq!(f.factors, vec![(poly(5, 1, "x + 2"), 1), (poly(5, 1, "x + 3"), 1)]);
        assert!(univariate_factor(&poly(3, 1, "x^2 + 1"), 0).unwrap().is_irreducible());
        let f = univariate_factor(&poly(5, 1, "x^7 - 1"), 0).unwrap();
        let degs: Vec<u32> = f.factors.iter().map(|t| t.0.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 6]);
        assert!(univariate_factor(&poly(5, 1, "0"), 0).is_err());
    }

    #[test]
    fn bivariate_examples() {
        let f = bivariate_factor(&poly(5, 2, "y^2 - x^2"), 0).unwrap();
        assert_eq!(f.factors, vec![(poly(5, 2, "x + y"), 1), (poly(5, 2, "x + 4*y"), 1)]);
        let g = poly(3, 2, "x^3*y + 2*x*y^2 + y + 1");
        let prod = &g.pow(3) * &poly(3, 2, "x + y").pow(2);
        let f = bivariate_factor(&prod, 7).unwrap();
        assert_eq!(f.expand(), prod);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn plane_curves() {
        let f = plane_curve_factor(&poly(5, 3, "x^3*y*z^2"), 0).unwrap();
        assert_eq!(f.factors, vec![(poly(5, 3, "x"), 3), (poly(5, 3, "y"), 1), (poly(5, 3, "z"), 2)]);
        let c = poly(7, 3, "x^2 + y*z");
        let l = poly(7, 3, "2*x + y + 3*z");
        let prod = &(&c * &l.pow(7)) * &poly(7, 3, "z");
        let f = plane_curve_factor(&prod, 0).unwrap();
        assert_eq!(f.expand(), prod);
        assert_eq!(f.multiplicity_of(&l), 7);
        assert_eq!(f.degree(), 10);
        assert!(plane_curve_factor(&poly(7, 3, "x^2 + y"), 0).is_err());
    }
}
