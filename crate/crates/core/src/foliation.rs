//! Foliations on the projective plane: projective 1-forms, homogeneous
//! vector fields with zero divergence, affine chart fields, singular points
//! and their eigenvalue ratios.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finitefield::{FieldDescriptor, FieldElement, FieldEmbedding};
use crate::multipoly::MultiPoly;
use crate::upoly;

/// `ω = A dx + B dy + C dz` with `xA + yB + zC = 0`, components of degree `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjOneForm {
    field: FieldDescriptor,
    d: u32,
    comps: [MultiPoly; 3],
}

/// `L ∂x + M ∂y + N ∂z`, homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVectorField {
    pub l: MultiPoly,
    pub m: MultiPoly,
    pub n: MultiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Chart {
    X,
    Y,
    Z,
}

impl Chart {
    /// Index of the variable set to one.
    pub fn var(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Chart> {
        match s {
            "x" | "X" => Ok(Chart::X),
            "y" | "Y" => Ok(Chart::Y),
            "z" | "Z" => Ok(Chart::Z),
            _ => Err(Error::InvalidArgument(format!("unknown chart '{s}'"))),
        }
    }
}

/// `a ∂u + b ∂w` in the two remaining coordinates of a chart (kept in order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineVectorField {
    pub a: MultiPoly,
    pub b: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub coords: [FieldElement; 3],
    pub eigen_ratio: Option<FieldElement>,
    pub p_reduced: Option<bool>,
}

fn check_homogeneous(f: &MultiPoly, deg: u32, what: &str) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::NvarsMismatch(3, f.nvars()));
    }
    if !f.is_zero() && (!f.is_homogeneous() || f.degree() != Some(deg)) {
        return Err(Error::InvalidForm(format!("{what} must be homogeneous of degree {deg}")));
    }
    Ok(())
}

impl ProjOneForm {
    /// Validates homogeneity, the Euler relation and finiteness of the
    /// singular locus (no common factor).
    pub fn new(a: MultiPoly, b: MultiPoly, c: MultiPoly, d: u32) -> Result<Self> {
        let field = a.field().clone();
        if b.field() != &field || c.field() != &field {
            return Err(Error::FieldMismatch);
        }
        for (f, name) in [(&a, "A"), (&b, "B"), (&c, "C")] {
            check_homogeneous(f, d + 1, name)?;
        }
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::InvalidForm("all components vanish".into()));
        }
        let x = MultiPoly::var(&field, 3, 0);
        let y = MultiPoly::var(&field, 3, 1);
        let z = MultiPoly::var(&field, 3, 2);
        let euler = &(&(&x * &a) + &(&y * &b)) + &(&z * &c);
        if !euler.is_zero() {
            return Err(Error::InvalidForm(format!("Euler relation fails: xA + yB + zC = {euler}")));
        }
        let g = MultiPoly::gcd_all(&[a.clone(), b.clone(), c.clone()])?;
        if !g.is_constant() {
            return Err(Error::InvalidForm(format!("components share the factor {g}")));
        }
        Ok(ProjOneForm { field, d, comps: [a, b, c] })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Foliation degree `d`.
    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> &MultiPoly {
        &self.comps[0]
    }

    pub fn b(&self) -> &MultiPoly {
        &self.comps[1]
    }

    pub fn c(&self) -> &MultiPoly {
        &self.comps[2]
    }

    pub fn components(&self) -> &[MultiPoly; 3] {
        &self.comps
    }

    pub fn embed(&self, emb: &FieldEmbedding) -> ProjOneForm {
        ProjOneForm {
            field: emb.target().clone(),
            d: self.d,
            comps: [self.comps[0].embed(emb), self.comps[1].embed(emb), self.comps[2].embed(emb)],
        }
    }

    /// Pullback by the linear map `x_j -> sum_i x_i M[i][j]`.
    pub fn pullback_linear(&self, m: &[Vec<u64>]) -> Result<[MultiPoly; 3]> {
        let f = &self.field;
        let sub: Vec<MultiPoly> = self.comps.iter().map(|c| c.linear_substitute(m)).collect::<Result<_>>()?;
        // d(x_i) pulls back to sum_j M[j][i] dx_j
        Ok(std::array::from_fn(|j| {
            let mut acc = MultiPoly::zero(f, 3);
            for (i, s) in sub.iter().enumerate() {
                acc = &acc + &s.scale(m[j][i]);
            }
            acc
        }))
    }

    /// `A(v) dx + ...` contracted with a vector of polynomials.
    pub fn contract(&self, v: &[MultiPoly; 3]) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.field, 3);
        for (c, w) in self.comps.iter().zip(v) {
            acc = &acc + &(c * w);
        }
        acc
    }

    /// Exterior derivative as `(dy∧dz, dx∧dz, dx∧dy)` coefficients.
    pub fn exterior_derivative(&self) -> [MultiPoly; 3] {
        let [a, b, c] = &self.comps;
        [&c.d(1) - &b.d(2), &c.d(0) - &a.d(2), &b.d(0) - &a.d(1)]
    }
}

impl fmt::Display for ProjOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})dx + ({})dy + ({})dz", self.comps[0], self.comps[1], self.comps[2])
    }
}

impl HomVectorField {
    /// `v(f) = L f_x + M f_y + N f_z`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        &(&(&self.l * &f.d(0)) + &(&self.m * &f.d(1))) + &(&self.n * &f.d(2))
    }

    pub fn divergence(&self) -> MultiPoly {
        &(&self.l.d(0) + &self.m.d(1)) + &self.n.d(2)
    }

    pub fn components(&self) -> [&MultiPoly; 3] {
        [&self.l, &self.m, &self.n]
    }
}

impl AffineVectorField {
    pub fn new(a: MultiPoly, b: MultiPoly) -> Result<Self> {
        if a.nvars() != 2 || b.nvars() != 2 {
            return Err(Error::NvarsMismatch(2, a.nvars().max(b.nvars())));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("zero vector field".into()));
        }
        Ok(AffineVectorField { a, b })
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.a.field()
    }

    /// `v(f) = a f_u + b f_w`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        &(&self.a * &f.d(0)) + &(&self.b * &f.d(1))
    }

    /// Divides out the common factor of the two components.
    pub fn saturate(&self) -> AffineVectorField {
        let g = self.a.gcd(&self.b).expect("same ring");
        if g.is_constant() {
            return self.clone();
        }
        AffineVectorField { a: self.a.exact_div(&g).expect("gcd"), b: self.b.exact_div(&g).expect("gcd") }
    }
}

impl fmt::Display for AffineVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∂x + ({})∂y", self.a, self.b)
    }
}

/// `v_ω` with `dω = (d+2)(L dy∧dz − M dx∧dz + N dx∧dy)`; needs `p ∤ d+2`.
pub fn form_to_field(w: &ProjOneForm) -> Result<HomVectorField> {
    let f = w.field();
    let k = f.from_u64(w.d as u64 + 2);
    if k == 0 {
        return Err(Error::Precondition(format!(
            "p = {} divides d + 2 = {}; use an affine chart",
            f.p(),
            w.d + 2
        )));
    }
    let inv = f.inv(k);
    let [dyz, dxz, dxy] = w.exterior_derivative();
    let v = HomVectorField { l: dyz.scale(inv), m: dxz.scale(f.neg(inv)), n: dxy.scale(inv) };
    debug_assert!(v.divergence().is_zero());
    Ok(v)
}

/// Double contraction of the volume form by `v` and the radial field.
pub fn field_to_form(v: &HomVectorField, d: u32) -> Result<ProjOneForm> {
    if !v.divergence().is_zero() {
        return Err(Error::InvalidArgument("vector field has nonzero divergence".into()));
    }
    let f = v.l.field().clone();
    let x = MultiPoly::var(&f, 3, 0);
    let y = MultiPoly::var(&f, 3, 1);
    let z = MultiPoly::var(&f, 3, 2);
    let a = &(&v.m * &z) - &(&v.n * &y);
    let b = &(&v.n * &x) - &(&v.l * &z);
    let c = &(&v.l * &y) - &(&v.m * &x);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::InvalidForm("field is parallel to the radial field".into()));
    }
    ProjOneForm::new(a, b, c, d)
}

/// Kernel field of `ω` in a chart, saturated. In the `z` chart this is
/// `B(x,y,1) ∂x − A(x,y,1) ∂y`.
pub fn chart_restrict(w: &ProjOneForm, chart: Chart) -> AffineVectorField {
    let [a, b, c] = w.components();
    let (u, v) = match chart {
        Chart::Z => (b, a),
        Chart::Y => (c, a),
        Chart::X => (c, b),
    };
    let var = chart.var();
    let ua = u.dehomogenize(var).expect("three variables");
    let va = v.dehomogenize(var).expect("three variables");
    AffineVectorField { a: ua, b: -&va }.saturate()
}

/// Chart used for a point: `z` if possible, then `y`, then `x`.
pub fn chart_for(coords: &[u64; 3]) -> Chart {
    if coords[2] != 0 {
        Chart::Z
    } else if coords[1] != 0 {
        Chart::Y
    } else {
        Chart::X
    }
}

/// Embedding of `src` into `tgt`, failing when `tgt` is not an extension.
pub fn embedding_into(src: &FieldDescriptor, tgt: &FieldDescriptor) -> Result<FieldEmbedding> {
    if src.p() != tgt.p() || tgt.k() % src.k() != 0 {
        return Err(Error::InvalidArgument(format!("{src} does not embed in {tgt}")));
    }
    src.extension(tgt.k() / src.k())
}

/// Normalized representative: last nonzero coordinate equal to one.
pub fn normalize_point(f: &FieldDescriptor, c: [u64; 3]) -> Result<[u64; 3]> {
    let Some(i) = (0..3).rev().find(|&i| c[i] != 0) else {
        return Err(Error::InvalidArgument("[0:0:0] is not a point".into()));
    };
    let inv = f.inv(c[i]);
    Ok(c.map(|v| f.mul(v, inv)))
}

/// Default guard on the number of point evaluations.
pub const SINGULAR_SCAN_BUDGET: u64 = 200_000_000;

/// All singular points over `F_{p^k}` by exhaustive search (complete over
/// that field only). Points come in the order `[a:b:1]`, `[a:1:0]`, `[1:0:0]`.
pub fn singular_points(w: &ProjOneForm, k: u32) -> Result<Vec<SingularPoint>> {
    singular_points_with_budget(w, k, SINGULAR_SCAN_BUDGET)
}

pub fn singular_points_with_budget(w: &ProjOneForm, k: u32, budget: u64) -> Result<Vec<SingularPoint>> {
    let big = crate::finitefield::construct_field(w.field().p(), k)?;
    let emb = embedding_into(w.field(), &big)?;
    let we = w.embed(&emb);
    let q = big.order();
    let count = q.saturating_mul(q).saturating_add(q + 1);
    if count > budget {
        return Err(Error::ResourceLimit(format!("{count} point evaluations exceed the budget {budget}")));
    }
    let vanishes = |pt: [u64; 3]| -> Result<bool> {
        for c in we.components() {
            if c.evaluate(&pt)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            if vanishes([a, b, 1])? {
                pts.push([a, b, 1]);
            }
        }
    }
    for a in 0..q {
        if vanishes([a, 1, 0])? {
            pts.push([a, 1, 0]);
        }
    }
    if vanishes([1, 0, 0])? {
        pts.push([1, 0, 0]);
    }
    Ok(pts.into_iter().map(|c| annotate(w, &big, c)).collect())
}

/// Wraps raw coordinates, filling in the eigenvalue data when defined.
pub fn annotate(w: &ProjOneForm, field: &FieldDescriptor, c: [u64; 3]) -> SingularPoint {
    let coords = c.map(|v| field.element(v));
    let alpha = eigen_ratio_at(w, &coords).ok();
    let p_reduced = alpha.as_ref().map(|a| !a.field().is_prime_subfield(a.value()));
    SingularPoint { coords, eigen_ratio: alpha, p_reduced }
}

/// Ratio `α` of the eigenvalues of the linear part at a singular point
/// (`y dx + α x dy` normal form), canonicalized to the smaller encoding of
/// `α` and `α⁻¹`. Lives in the point's field or its quadratic extension.
pub fn eigen_ratio_at(w: &ProjOneForm, coords: &[FieldElement; 3]) -> Result<FieldElement> {
    let field = coords[0].field().clone();
    if coords.iter().any(|c| c.field() != &field) {
        return Err(Error::FieldMismatch);
    }
    let emb = embedding_into(w.field(), &field)?;
    let we = w.embed(&emb);
    let raw = normalize_point(&field, coords.clone().map(|c| c.value()))?;
    if we.components().iter().any(|c| c.evaluate(&raw).map(|v| v != 0).unwrap_or(true)) {
        return Err(Error::Precondition("point is not singular".into()));
    }
    let chart = chart_for(&raw);
    let v = chart_restrict(&we, chart);
    let local: Vec<u64> = (0..3).filter(|&i| i != chart.var()).map(|i| raw[i]).collect();
    let j = [
        [v.a.d(0).evaluate(&local)?, v.a.d(1).evaluate(&local)?],
        [v.b.d(0).evaluate(&local)?, v.b.d(1).evaluate(&local)?],
    ];
    let tr = field.add(j[0][0], j[1][1]);
    let det = field.sub(field.mul(j[0][0], j[1][1]), field.mul(j[0][1], j[1][0]));
    if det == 0 {
        return Err(Error::Precondition("linear part has a zero eigenvalue".into()));
    }
    // t^2 - tr t + det
    let charpoly = vec![det, field.neg(tr), 1];
    let (ef, roots) = {
        let r = upoly::roots(&field, &charpoly);
        if r.is_empty() {
            let e2 = field.extension(2)?;
            let cp: Vec<u64> = charpoly.iter().map(|&c| e2.map(c)).collect();
            (e2.target().clone(), upoly::roots(e2.target(), &cp))
        } else {
            (field.clone(), r)
        }
    };
    if roots.len() == 1 {
        // a double eigenvalue: ratio one, diagonalizable or not
        return Ok(ef.element(ef.one()));
    }
    let a = ef.mul(roots[0], ef.inv(roots[1]));
    let b = ef.inv(a);
    Ok(ef.element(a.min(b)))
}

/// `α ∉ F_p` at the given singular point.
pub fn is_p_reduced(w: &ProjOneForm, coords: &[FieldElement; 3]) -> Result<bool> {
    let a = eigen_ratio_at(w, coords)?;
    Ok(!a.field().is_prime_subfield(a.value()))
}

/// Every listed singular point is p-reduced.
pub fn is_p_reduced_foliation(w: &ProjOneForm, pts: &[SingularPoint]) -> Result<bool> {
    for pt in pts {
        if !is_p_reduced(w, &pt.coords)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicity of the curve `{F = 0}` at a point: the order of the lowest
/// nonvanishing jet.
pub fn curve_multiplicity(curve: &MultiPoly, coords: &[FieldElement; 3]) -> Result<u32> {
    let field = coords[0].field().clone();
    let emb = embedding_into(curve.field(), &field)?;
    let fe = curve.embed(&emb);
    let raw = normalize_point(&field, coords.clone().map(|c| c.value()))?;
    let i0 = (0..3).rev().find(|&i| raw[i] != 0).expect("normalized");
    // rows: two unit vectors, then the point, so [0:0:1] maps to it
    let mut m: Vec<Vec<u64>> = (0..3).filter(|&i| i != i0).map(|i| (0..3).map(|j| (i == j) as u64).collect()).collect();
    m.push(raw.to_vec());
    let moved = fe.linear_substitute(&m)?;
    Ok(moved.terms().iter().map(|&(mono, _)| mono.exp(0) + mono.exp(1)).min().unwrap_or(0))
}
