//! Invariant curves, cofactors, the β-form of a special pair, degree
//! congruences and orbits of curves under linear automorphisms.

use crate::error::{Error, Result};
use crate::foliation::{curve_multiplicity, ProjOneForm, SingularPoint};
use crate::multipoly::{mat_mul, MultiPoly};

/// `Θ` with `dF ∧ ω = F Θ`, stored as `(dy∧dz, dx∧dz, dx∧dy)` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorWitness {
    pub theta: [MultiPoly; 3],
}

/// `dF ∧ ω` in the `(dy∧dz, dx∧dz, dx∧dy)` basis.
pub fn df_wedge(w: &ProjOneForm, f: &MultiPoly) -> [MultiPoly; 3] {
    let [a, b, c] = w.components();
    let (fx, fy, fz) = (f.d(0), f.d(1), f.d(2));
    [&(&fy * c) - &(&fz * b), &(&fx * c) - &(&fz * a), &(&fx * b) - &(&fy * a)]
}

fn check_curve(w: &ProjOneForm, f: &MultiPoly) -> Result<()> {
    if f.field() != w.field() {
        return Err(Error::FieldMismatch);
    }
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(Error::InvalidArgument("curve must be a nonzero homogeneous polynomial in x, y, z".into()));
    }
    if f.is_constant() {
        return Err(Error::InvalidArgument("curve must have positive degree".into()));
    }
    Ok(())
}

/// Whether `{F = 0}` is invariant, with the cofactor when it is. `F` must be
/// reduced.
pub fn is_invariant(w: &ProjOneForm, f: &MultiPoly) -> Result<Option<CofactorWitness>> {
    check_curve(w, f)?;
    if !f.is_squarefree()? {
        return Err(Error::InvalidArgument(format!("{f} is not reduced")));
    }
    is_invariant_unchecked(w, f)
}

/// As `is_invariant`, trusting the caller that `F` is reduced (e.g. an
/// irreducible factor).
pub fn is_invariant_unchecked(w: &ProjOneForm, f: &MultiPoly) -> Result<Option<CofactorWitness>> {
    check_curve(w, f)?;
    let wedge = df_wedge(w, f);
    let mut theta = Vec::with_capacity(3);
    for c in wedge {
        match c.exact_div(f) {
            Ok(q) => theta.push(q),
            Err(Error::NotDivisible(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let theta: [MultiPoly; 3] = theta.try_into().expect("three components");
    Ok(Some(CofactorWitness { theta }))
}

/// Scalar `b` of `β = b dx∧dy∧dz`, the unique form with
/// `dF∧ω = F((deg F/(d+2)) dω + i_R β)`.
pub fn beta_form(w: &ProjOneForm, f: &MultiPoly, witness: &CofactorWitness) -> Result<MultiPoly> {
    let field = w.field();
    let d2 = field.from_u64(w.degree() as u64 + 2);
    if d2 == 0 {
        return Err(Error::Precondition(format!("p = {} divides d + 2", field.p())));
    }
    let e = field.from_u64(f.degree().unwrap_or(0) as u64);
    let r = field.mul(e, field.inv(d2));
    let dw = w.exterior_derivative();
    let sigma: Vec<MultiPoly> = witness.theta.iter().zip(&dw).map(|(t, o)| t - &o.scale(r)).collect();
    let x = MultiPoly::var(field, 3, 0);
    let y = MultiPoly::var(field, 3, 1);
    let z = MultiPoly::var(field, 3, 2);
    let koszul = |msg: &str| Error::Precondition(format!("inconsistent Koszul solve: {msg}"));
    let b1 = sigma[0].exact_div(&x).map_err(|_| koszul("x does not divide the dy∧dz part"))?;
    let b2 = (-&sigma[1]).exact_div(&y).map_err(|_| koszul("y does not divide the dx∧dz part"))?;
    let b3 = sigma[2].exact_div(&z).map_err(|_| koszul("z does not divide the dx∧dy part"))?;
    if b1 != b2 || b2 != b3 {
        return Err(koszul("the three quotients differ"));
    }
    Ok(b1)
}

fn witness_for(w: &ProjOneForm, f: &MultiPoly) -> Result<CofactorWitness> {
    is_invariant(w, f)?.ok_or_else(|| Error::Precondition(format!("{f} is not invariant")))
}

/// `β_{F,C} = 0`; a non-invariant curve is a precondition failure.
pub fn is_special_pair(w: &ProjOneForm, f: &MultiPoly) -> Result<bool> {
    let wit = witness_for(w, f)?;
    Ok(beta_form(w, f, &wit)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub degree: u32,
    pub degree_ok: bool,
    /// Multiplicity of the curve at each supplied singular point.
    pub multiplicities: Vec<u32>,
    /// All supplied points are p-reduced and lie on the curve with multiplicity two.
    pub all_double: Option<bool>,
}

/// `deg C ≡ d + 2 (mod p)` for a special pair, and the multiplicity-two
/// property at the singular points when all of them are p-reduced.
pub fn degree_congruence_check(w: &ProjOneForm, f: &MultiPoly, pts: &[SingularPoint]) -> Result<CongruenceReport> {
    let p = w.field().p();
    if p == 2 {
        return Err(Error::Precondition("p must be odd".into()));
    }
    if !is_special_pair(w, f)? {
        return Err(Error::Precondition("the pair is not special".into()));
    }
    if !pts.iter().any(|q| q.p_reduced == Some(true)) {
        return Err(Error::Precondition("no p-reduced singular point supplied".into()));
    }
    let degree = f.degree().unwrap_or(0);
    let degree_ok = degree as u64 % p == (w.degree() as u64 + 2) % p;
    let multiplicities = pts.iter().map(|q| curve_multiplicity(f, &q.coords)).collect::<Result<Vec<_>>>()?;
    let all_double = if pts.iter().all(|q| q.p_reduced == Some(true)) {
        Some(multiplicities.iter().all(|&m| m == 2))
    } else {
        None
    };
    Ok(CongruenceReport { degree, degree_ok, multiplicities, all_double })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Distinct curves `Φ^{i*} F` (monic), starting with `F`.
    pub curves: Vec<MultiPoly>,
    /// Order of `Φ` as a projective transformation.
    pub order: u64,
    pub stabilizer_index: u64,
}

fn is_scalar(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| if i == j { m[i][i] == m[0][0] } else { m[i][j] == 0 }))
}

/// Orbit of a curve under a linear automorphism of finite projective order.
pub fn curve_orbit(f: &MultiPoly, phi: &[Vec<u64>], max_order: u64) -> Result<OrbitReport> {
    let field = f.field();
    let mut power = phi.to_vec();
    let mut order = 1u64;
    while !is_scalar(&power) {
        order += 1;
        if order > max_order {
            return Err(Error::ResourceLimit(format!("automorphism order exceeds {max_order}")));
        }
        power = mat_mul(field, &power, phi);
    }
    let mut curves = vec![f.monic()];
    let mut cur = f.clone();
    for _ in 1..order {
        cur = cur.linear_substitute(phi)?;
        let m = cur.monic();
        if m == curves[0] {
            break;
        }
        curves.push(m);
    }
    let stabilizer_index = order / curves.len() as u64;
    Ok(OrbitReport { curves, order, stabilizer_index })
}
