//! The Jouanolou family `J_d`: constructors, the cyclic automorphism,
//! singular points from roots of unity, the non-p-closedness criterion, the
//! closed form of the 2-divisor and the p-divisor table scan.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::FactorConfig;
use crate::finitefield::arith::{gcd, multiplicative_order, reduce_signed};
use crate::finitefield::{construct_field, is_square_mod_p, FieldDescriptor, FieldElement};
use crate::foliation::{annotate, chart_restrict, AffineVectorField, Chart, ProjOneForm, SingularPoint};
use crate::invariance::{beta_form, is_invariant_unchecked};
use crate::multipoly::MultiPoly;
use crate::pdivisor::{expected_degree, p_divisor_affine, p_divisor_section_with_budget, DEFAULT_TERM_BUDGET};

#[derive(Clone, Debug)]
pub struct JouanolouInstance {
    pub d: u32,
    pub p: u64,
    /// Extension degree containing the `(d²+d+1)`-th roots of unity (1 when not requested).
    pub k: u32,
    pub form: ProjOneForm,
    pub affine: AffineVectorField,
}

/// `d² + d + 1`.
pub fn m_of(d: u32) -> u64 {
    let d = d as u64;
    d * d + d + 1
}

/// The form `(x^d z − y^{d+1})dx + (x y^d − z^{d+1})dy + (z^d y − x^{d+1})dz` over `field`.
pub fn jouanolou_form(field: &FieldDescriptor, d: u32) -> Result<ProjOneForm> {
    let f = field;
    let mono = |e: [u32; 3], c: i64| MultiPoly::monomial(f, 3, &e, f.from_i64(c));
    let a = &mono([d, 0, 1], 1) + &mono([0, d + 1, 0], -1);
    let b = &mono([1, d, 0], 1) + &mono([0, 0, d + 1], -1);
    let c = &mono([0, 1, d], 1) + &mono([d + 1, 0, 0], -1);
    ProjOneForm::new(a, b, c, d)
}

/// `v_d = (x y^d − 1)∂x − (x^d − y^{d+1})∂y`.
pub fn jouanolou_affine(field: &FieldDescriptor, d: u32) -> AffineVectorField {
    let f = field;
    let mono = |e: [u32; 2], c: i64| MultiPoly::monomial(f, 2, &e, f.from_i64(c));
    AffineVectorField { a: &mono([1, d], 1) + &mono([0, 0], -1), b: &mono([d, 0], -1) + &mono([0, d + 1], 1) }
}

pub fn make_jouanolou(d: u32, p: u64, k_auto: bool) -> Result<JouanolouInstance> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("Jouanolou degree must be at least 2, got {d}")));
    }
    let field = construct_field(p, 1)?;
    let k = if k_auto {
        let m = m_of(d);
        multiplicative_order(p % m, m).ok_or_else(|| {
            Error::Precondition(format!("p = {p} divides d²+d+1 = {m}: no primitive {m}-th root of unity exists"))
        })? as u32
    } else {
        1
    };
    let form = jouanolou_form(&field, d)?;
    let affine = jouanolou_affine(&field, d);
    debug_assert_eq!(chart_restrict(&form, Chart::Z), affine);
    Ok(JouanolouInstance { d, p, k, form, affine })
}

/// `Φ = diag(γ^{d²+1}, γ, 1)` with `Φ*ω = γ ω`.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub field: FieldDescriptor,
    pub gamma: FieldElement,
    pub matrix: Vec<Vec<u64>>,
    pub order: u64,
}

impl JouanolouInstance {
    pub fn root_field(&self) -> Result<FieldDescriptor> {
        construct_field(self.p, self.k)
    }

    /// The form over the root-of-unity field.
    pub fn extended_form(&self) -> Result<ProjOneForm> {
        Ok(self.form.embed(&self.form.field().extension(self.k)?))
    }

    pub fn automorphism(&self) -> Result<Automorphism> {
        let m = m_of(self.d);
        if m % self.p == 0 {
            return Err(Error::Precondition(format!("p = {} divides d²+d+1 = {m}", self.p)));
        }
        let field = self.root_field()?;
        let gamma = field.nth_root_of_unity(m)?;
        let g = gamma.value();
        let e = (self.d as u64 * self.d as u64 + 1) % m;
        let matrix = vec![vec![field.pow(g, e), 0, 0], vec![0, g, 0], vec![0, 0, 1]];
        let w = self.extended_form()?;
        let pulled = w.pullback_linear(&matrix)?;
        for (pc, c) in pulled.iter().zip(w.components()) {
            if *pc != c.scale(g) {
                return Err(Error::InvalidForm("Φ*ω ≠ γω".into()));
            }
        }
        let order = field.element_order(g);
        if order != m {
            return Err(Error::InvalidForm(format!("γ has order {order}, expected {m}")));
        }
        Ok(Automorphism { field, gamma, matrix, order })
    }

    /// The `d²+d+1` points `[1 : ζ : ζ^{d+1}]`, `ζ = γ^i`.
    pub fn singularities(&self) -> Result<Vec<SingularPoint>> {
        let aut = self.automorphism()?;
        let f = &aut.field;
        let w = self.extended_form()?;
        let m = m_of(self.d);
        let g = aut.gamma.value();
        let mut out = Vec::with_capacity(m as usize);
        for i in 0..m {
            let z = f.pow(g, i);
            let pt = [1, z, f.pow(z, self.d as u64 + 1)];
            for c in w.components() {
                if c.evaluate(&pt)? != 0 {
                    return Err(Error::InvalidForm(format!("[1:ζ:ζ^(d+1)] is not singular for i = {i}")));
                }
            }
            out.push(annotate(&self.form, f, pt));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CriterionVerdict {
    NotPClosed,
    PClosedOrUnknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub d: u32,
    pub p: u64,
    pub verdict: CriterionVerdict,
    /// `p ∤ d(d+2)(d²+d+1)`.
    pub hypotheses_hold: bool,
    /// Whether `−3` is a square mod `p` (`α ∈ F_p`); `None` when `p = 3`.
    pub minus_three_is_square: Option<bool>,
    /// `(d²−2d−2)/(d²+d+1) mod p`, the middle coefficient of the polynomial
    /// with roots `α, α⁻¹`.
    pub trace: Option<u64>,
}

/// The eigenvalue criterion: under `p ∤ d(d+2)(d²+d+1)`, the eigenvalue
/// ratio lies outside `F_p` iff `−3` is a non-square, and then `J_d` is not
/// p-closed. For `p = 3` the discriminant degenerates and no verdict is given.
pub fn non_p_closed_criterion(d: u32, p: u64) -> Result<CriterionReport> {
    if p == 2 {
        return Err(Error::InvalidArgument("p = 2 is decided by the closed form of the 2-divisor".into()));
    }
    let dd = d as u64;
    let m = m_of(d);
    let hypotheses_hold = dd % p != 0 && (dd + 2) % p != 0 && m % p != 0;
    let minus_three_is_square = if p == 3 { None } else { Some(is_square_mod_p(-3, p)?) };
    let trace = if m % p != 0 {
        let num = reduce_signed((dd * dd) as i64 - 2 * dd as i64 - 2, p);
        let f = construct_field(p, 1)?;
        Some(f.mul(num, f.inv(m % p)))
    } else {
        None
    };
    let verdict = if hypotheses_hold && minus_three_is_square == Some(false) {
        CriterionVerdict::NotPClosed
    } else {
        CriterionVerdict::PClosedOrUnknown
    };
    Ok(CriterionReport { d, p, verdict, hypotheses_hold, minus_three_is_square, trace })
}

/// `y^{2d+1} + x^d y^d + x^{2d+1} y^{d−1} + x^{d−1}` over `F_2`, checked
/// against `D_2(v_d)`.
pub fn two_divisor_closed_form(d: u32) -> Result<MultiPoly> {
    if d % 2 == 0 || d < 3 {
        return Err(Error::InvalidArgument(format!("the 2-divisor closed form needs odd d ≥ 3, got {d}")));
    }
    let f = construct_field(2, 1)?;
    let mono = |e: [u32; 2]| MultiPoly::monomial(&f, 2, &e, 1);
    let closed = &(&(&mono([0, 2 * d + 1]) + &mono([d, d])) + &mono([2 * d + 1, d - 1])) + &mono([d - 1, 0]);
    let direct = p_divisor_affine(&jouanolou_affine(&f, d), 2)?;
    if !direct.equal_up_to_scalar(&closed) {
        return Err(Error::InvalidForm(format!("D_2(v_{d}) = {direct} differs from the closed form")));
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub factor: String,
    pub degree: u32,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ScanVerdict {
    PClosed,
    Irreducible,
    Special {
        deg_c: u32,
        l: u32,
        /// Components with multiplicity divisible by `p`, multiplicities divided by `p`.
        r_part: Vec<FactorSummary>,
        /// `β_{J,C} = 0`; `None` when `p | d+2`.
        special_verified: Option<bool>,
        r_non_invariant: bool,
    },
    Other {
        decomposition: Vec<FactorSummary>,
    },
    Failed {
        error: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub d: u32,
    pub m: u64,
    pub delta_degree: Option<u32>,
    pub verdict: ScanVerdict,
    pub millis: u128,
}

fn summarize(entries: &[(MultiPoly, u32)]) -> Vec<FactorSummary> {
    entries
        .iter()
        .map(|(g, e)| FactorSummary { factor: g.to_string(), degree: g.degree().unwrap_or(0), multiplicity: *e })
        .collect()
}

/// Classifies one cell `(p, d)`.
pub fn scan_cell(p: u64, d: u32, cfg: &FactorConfig, budget: usize) -> ScanRow {
    let start = Instant::now();
    let m = m_of(d);
    let (delta_degree, verdict) = match classify(p, d, cfg, budget) {
        Ok(r) => r,
        Err(e) => (None, ScanVerdict::Failed { error: e.to_string() }),
    };
    ScanRow { d, m, delta_degree, verdict, millis: start.elapsed().as_millis() }
}

fn classify(p: u64, d: u32, cfg: &FactorConfig, budget: usize) -> Result<(Option<u32>, ScanVerdict)> {
    let j = make_jouanolou(d, p, false)?;
    let s = p_divisor_section_with_budget(&j.form, budget)?;
    if s.is_zero() {
        return Ok((None, ScanVerdict::PClosed));
    }
    let fact = crate::factor::plane_curve_factor_with(&s, cfg)?;
    let deg = fact.degree();
    if deg != expected_degree(p, d) {
        return Err(Error::InvalidForm(format!("Δ has degree {deg}, expected {}", expected_degree(p, d))));
    }
    if fact.is_irreducible() {
        return Ok((Some(deg), ScanVerdict::Irreducible));
    }
    let p32 = p as u32;
    let (c_part, r): (Vec<_>, Vec<_>) = fact.factors.iter().cloned().partition(|t| t.1 % p32 != 0);
    let other = || Ok((Some(deg), ScanVerdict::Other { decomposition: summarize(&fact.factors) }));
    if c_part.len() != 1 || c_part[0].1 != 1 {
        return other();
    }
    let c = &c_part[0].0;
    let deg_c = c.degree().unwrap_or(0);
    let rest = deg_c as i64 - d as i64 - 2;
    if rest <= 0 || rest % p as i64 != 0 || rest / p as i64 > d as i64 - 1 {
        return other();
    }
    let l = (rest / p as i64) as u32;
    let special_verified = if (d as u64 + 2) % p != 0 {
        match is_invariant_unchecked(&j.form, c)? {
            Some(wit) => Some(beta_form(&j.form, c, &wit)?.is_zero()),
            None => Some(false),
        }
    } else {
        None
    };
    let mut r_non_invariant = true;
    for (g, _) in &r {
        if is_invariant_unchecked(&j.form, g)?.is_some() {
            r_non_invariant = false;
        }
    }
    let r_part: Vec<(MultiPoly, u32)> = r.into_iter().map(|(g, e)| (g, e / p32)).collect();
    Ok((Some(deg), ScanVerdict::Special { deg_c, l, r_part: summarize(&r_part), special_verified, r_non_invariant }))
}

/// Scans `d ∈ [d_min, d_max]` in parallel; rows come back ordered by `d`,
/// and a failing cell never aborts the scan.
pub fn scan(p: u64, d_min: u32, d_max: u32, seed: u64) -> Vec<ScanRow> {
    scan_with_budget(p, d_min, d_max, &FactorConfig::with_seed(seed), DEFAULT_TERM_BUDGET)
}

pub fn scan_with_budget(p: u64, d_min: u32, d_max: u32, cfg: &FactorConfig, budget: usize) -> Vec<ScanRow> {
    let mut rows: Vec<ScanRow> = (d_min..=d_max).into_par_iter().map(|d| scan_cell(p, d, cfg, budget)).collect();
    rows.sort_by_key(|r| r.d);
    rows
}

/// `gcd(d²+d+1, p) = 1`.
pub fn has_automorphism(d: u32, p: u64) -> bool {
    gcd(m_of(d), p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances() {
        assert_eq!(make_jouanolou(2, 3, true).unwrap().k, 6);
        assert!(matches!(make_jouanolou(2, 7, true), Err(Error::Precondition(_))));
        let j = make_jouanolou(3, 2, false).unwrap();
        assert_eq!(j.affine.a.to_string(), "x*y^3 + 1");
        assert_eq!(j.affine.b.to_string(), "y^4 + x^3");
        assert!(make_jouanolou(1, 3, false).is_err());
    }

    #[test]
    fn automorphism_and_points() {
        let j = make_jouanolou(2, 5, true).unwrap();
        let aut = j.automorphism().unwrap();
        assert_eq!(aut.order, 7);
        let pts = j.singularities().unwrap();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|q| q.p_reduced == Some(true)));
    }

    #[test]
    fn criterion() {
        let r = non_p_closed_criterion(2, 5).unwrap();
        assert_eq!(r.verdict, CriterionVerdict::NotPClosed);
        assert_eq!(non_p_closed_criterion(2, 7).unwrap().verdict, CriterionVerdict::PClosedOrUnknown);
        assert!(non_p_closed_criterion(2, 2).is_err());
    }

    #[test]
    fn closed_forms() {
        let f = two_divisor_closed_form(3).unwrap();
        assert_eq!(f.to_string(), "x^7*y^2 + y^7 + x^3*y^3 + x^2");
        assert!(two_divisor_closed_form(2).is_err());
    }

    #[test]
    fn small_scan() {
        let rows = scan(5, 2, 4, 0);
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(rows[0].verdict, ScanVerdict::Irreducible);
        assert_eq!(rows[1].verdict, ScanVerdict::PClosed);
    }
}
