//! p-th powers of derivations, p-closedness and the p-divisor
//! `Δ = {i_{v^p} ω = 0}`, both projectively and in affine charts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{plane_curve_factor_with, FactorConfig, Factorization};
use crate::finitefield::FieldDescriptor;
use crate::foliation::{chart_restrict, form_to_field, AffineVectorField, Chart, HomVectorField, ProjOneForm};
use crate::multipoly::MultiPoly;

/// Default cap on the number of terms of any intermediate `v^e(x_i)`.
pub const DEFAULT_TERM_BUDGET: usize = 4_000_000;

/// An effective divisor on the plane: irreducible monic components with
/// multiplicities, plus the defining section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneDivisor {
    pub field: FieldDescriptor,
    pub entries: Vec<(MultiPoly, u32)>,
    pub total_degree: u32,
    pub section: MultiPoly,
}

impl PlaneDivisor {
    pub fn from_factorization(section: MultiPoly, fact: Factorization) -> Self {
        let total_degree = fact.degree();
        PlaneDivisor { field: section.field().clone(), entries: fact.factors, total_degree, section }
    }

    /// Multiplicity of a component given up to scalar.
    pub fn multiplicity_of(&self, c: &MultiPoly) -> u32 {
        let m = c.monic();
        self.entries.iter().find(|(g, _)| *g == m).map_or(0, |t| t.1)
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|t| t.1 == 1)
    }

    /// Components as a map for multiplicity-wise comparison.
    pub fn as_map(&self) -> BTreeMap<String, u32> {
        self.entries.iter().map(|(g, e)| (g.to_string(), *e)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            component: String,
            degree: u32,
            multiplicity: u32,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(g, e)| Entry { component: g.to_string(), degree: g.degree().unwrap_or(0), multiplicity: *e })
            .collect();
        serde_json::json!({
            "total_degree": self.total_degree,
            "section": self.section.to_string(),
            "components": entries,
        })
    }
}

fn guard(f: &MultiPoly, budget: usize) -> Result<()> {
    if f.num_terms() > budget {
        Err(Error::ResourceLimit(format!("intermediate polynomial has {} terms (budget {budget})", f.num_terms())))
    } else {
        Ok(())
    }
}

/// `v^e` by iterated application to the chart coordinates.
pub fn derivation_power_affine(v: &AffineVectorField, e: u32, budget: usize) -> Result<AffineVectorField> {
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let f = v.field();
    let mut out = Vec::with_capacity(2);
    for i in 0..2 {
        let mut cur = MultiPoly::var(f, 2, i);
        for _ in 0..e {
            cur = v.apply(&cur);
            guard(&cur, budget)?;
        }
        out.push(cur);
    }
    let b = out.pop().unwrap();
    let a = out.pop().unwrap();
    Ok(AffineVectorField { a, b })
}

/// `v^e` of a homogeneous field, by iterated application to `x, y, z`.
pub fn derivation_power_hom(v: &HomVectorField, e: u32, budget: usize) -> Result<HomVectorField> {
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let f = v.l.field();
    let mut out: Vec<MultiPoly> = Vec::with_capacity(3);
    for i in 0..3 {
        let mut cur = MultiPoly::var(f, 3, i);
        for _ in 0..e {
            cur = v.apply(&cur);
            guard(&cur, budget)?;
        }
        out.push(cur);
    }
    let n = out.pop().unwrap();
    let m = out.pop().unwrap();
    let l = out.pop().unwrap();
    Ok(HomVectorField { l, m, n })
}

/// `D_p(v) = v(x) v^p(y) − v(y) v^p(x)`.
pub fn p_divisor_affine(v: &AffineVectorField, p: u32) -> Result<MultiPoly> {
    p_divisor_affine_with_budget(v, p, DEFAULT_TERM_BUDGET)
}

pub fn p_divisor_affine_with_budget(v: &AffineVectorField, p: u32, budget: usize) -> Result<MultiPoly> {
    let vp = derivation_power_affine(v, p, budget)?;
    Ok(&(&v.a * &vp.b) - &(&v.b * &vp.a))
}

/// `p(d−1) + d + 2`.
pub fn expected_degree(p: u64, d: u32) -> u32 {
    (p as i64 * (d as i64 - 1) + d as i64 + 2).max(0) as u32
}

fn chart_section(w: &ProjOneForm, chart: Chart, n: u32, budget: usize) -> Result<MultiPoly> {
    let p = w.field().p() as u32;
    let dp = p_divisor_affine_with_budget(&chart_restrict(w, chart), p, budget)?;
    if dp.is_zero() {
        return Ok(MultiPoly::zero(w.field(), 3));
    }
    let deg = dp.degree().unwrap();
    if deg > n {
        return Err(Error::InvalidForm(format!("chart divisor of degree {deg} exceeds {n}")));
    }
    // homogenize with the chart variable appended last, then move it into place
    let h = dp.homogenize(n)?;
    let perm: [usize; 3] = match chart {
        Chart::Z => [0, 1, 2],
        Chart::Y => [0, 2, 1],
        Chart::X => [2, 0, 1],
    };
    Ok(h.permute(&perm))
}

/// Homogeneous section of degree `p(d−1)+d+2` defining `Δ` (zero iff the
/// foliation is p-closed). Uses the contraction `i_{v^p} ω` when `p ∤ d+2`
/// and glued chart computations otherwise.
pub fn p_divisor_section(w: &ProjOneForm) -> Result<MultiPoly> {
    p_divisor_section_with_budget(w, DEFAULT_TERM_BUDGET)
}

pub fn p_divisor_section_with_budget(w: &ProjOneForm, budget: usize) -> Result<MultiPoly> {
    let f = w.field();
    let p = f.p();
    let n = expected_degree(p, w.degree());
    if (w.degree() as u64 + 2) % p != 0 {
        let v = form_to_field(w)?;
        let vp = derivation_power_hom(&v, p as u32, budget)?;
        let s = w.contract(&[vp.l, vp.m, vp.n]);
        if !s.is_zero() && (s.degree() != Some(n) || !s.is_homogeneous()) {
            return Err(Error::InvalidForm(format!("contraction is not homogeneous of degree {n}")));
        }
        return Ok(s);
    }
    let sz = chart_section(w, Chart::Z, n, budget)?;
    let sx = chart_section(w, Chart::X, n, budget)?;
    if sz.is_zero() != sx.is_zero() || (!sz.is_zero() && !sz.equal_up_to_scalar(&sx)) {
        return Err(Error::InvalidForm("chart computations of the p-divisor disagree".into()));
    }
    Ok(sz)
}

pub fn is_p_closed(w: &ProjOneForm) -> Result<bool> {
    Ok(p_divisor_section(w)?.is_zero())
}

/// The p-divisor with its decomposition into irreducible components.
pub fn p_divisor(w: &ProjOneForm, cfg: &FactorConfig) -> Result<PlaneDivisor> {
    p_divisor_with_budget(w, cfg, DEFAULT_TERM_BUDGET)
}

pub fn p_divisor_with_budget(w: &ProjOneForm, cfg: &FactorConfig, budget: usize) -> Result<PlaneDivisor> {
    let s = p_divisor_section_with_budget(w, budget)?;
    if s.is_zero() {
        return Err(Error::Refused(format!(
            "the foliation is {}-closed; its p-divisor is not defined",
            w.field().p()
        )));
    }
    let fact = plane_curve_factor_with(&s, cfg)?;
    Ok(PlaneDivisor::from_factorization(s, fact))
}

/// Multiplicity of an irreducible curve in `Δ`.
pub fn divisor_order(delta: &PlaneDivisor, c: &MultiPoly, cfg: &FactorConfig) -> Result<u32> {
    let fc = plane_curve_factor_with(c, cfg)?;
    if !fc.is_irreducible() {
        return Err(Error::InvalidArgument(format!("{c} is not irreducible")));
    }
    let m = delta.multiplicity_of(c);
    if m > 0 || delta.entries.iter().any(|(g, _)| g.degree() == c.degree()) {
        return Ok(m);
    }
    let mut rest = delta.section.clone();
    let mut k = 0;
    while let Ok(q) = rest.exact_div(c) {
        rest = q;
        k += 1;
    }
    Ok(k)
}

/// Outcome of comparing `Δ_G` with `Φ*Δ_F + p·D` for `Φ = [x^n : y^n : z^n]`.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub n: u32,
    pub pulled_back_form: ProjOneForm,
    pub delta_g: PlaneDivisor,
    pub delta_f: PlaneDivisor,
    /// `Φ*Δ_F + p(n−1)({x}+{y}+{z})`.
    pub predicted: Vec<(MultiPoly, u32)>,
    pub equal: bool,
}

/// Pullback of `ω` by the power map, with the common factor divided out.
pub fn power_pullback(w: &ProjOneForm, n: u32) -> Result<ProjOneForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("power map exponent must be positive".into()));
    }
    let f = w.field();
    let nn = f.from_u64(n as u64);
    if nn == 0 {
        return Err(Error::Precondition(format!("p = {} divides n = {n}", f.p())));
    }
    let comps: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut e = [0u32; 3];
            e[i] = n - 1;
            let dxi = MultiPoly::monomial(f, 3, &e, nn);
            &w.components()[i].power_substitute(n) * &dxi
        })
        .collect();
    let g = MultiPoly::gcd_all(&comps)?;
    let comps: Vec<MultiPoly> =
        if g.is_constant() { comps } else { comps.iter().map(|c| c.exact_div(&g)).collect::<Result<_>>()? };
    let deg = comps.iter().find_map(|c| c.degree()).expect("nonzero form");
    ProjOneForm::new(comps[0].clone(), comps[1].clone(), comps[2].clone(), deg - 1)
}

pub fn pullback_check(w: &ProjOneForm, n: u32, cfg: &FactorConfig) -> Result<PullbackReport> {
    let f = w.field().clone();
    let p = f.p() as u32;
    let g = power_pullback(w, n)?;
    let delta_f = p_divisor(w, cfg)?;
    let delta_g = p_divisor(&g, cfg)?;
    let pulled = delta_f.section.power_substitute(n);
    let fact = plane_curve_factor_with(&pulled, cfg)?;
    let mut predicted: Vec<(MultiPoly, u32)> = Vec::new();
    let mut add = |c: MultiPoly, e: u32| match predicted.iter_mut().find(|t| t.0 == c) {
        Some(t) => t.1 += e,
        None => predicted.push((c, e)),
    };
    for (c, e) in fact.factors {
        add(c, e);
    }
    if n > 1 {
        for i in 0..3 {
            add(MultiPoly::var(&f, 3, i), p * (n - 1));
        }
    }
    let key = |v: &[(MultiPoly, u32)]| {
        let mut k: Vec<(String, u32)> = v.iter().map(|(c, e)| (c.to_string(), *e)).collect();
        k.sort();
        k
    };
    let equal = key(&delta_g.entries) == key(&predicted);
    Ok(PullbackReport { n, pulled_back_form: g, delta_g, delta_f, predicted, equal })
}
