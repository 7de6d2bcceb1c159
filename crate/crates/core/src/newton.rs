//! Newton polytopes of bivariate polynomials and the Gao triangle criterion
//! for absolute irreducibility. All geometry is exact integer arithmetic.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;

pub type Point = (i64, i64);

/// Lattice convex hull of a support set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolytope {
    pub support: Vec<Point>,
    /// Vertices in counterclockwise order, starting from the lowest-leftmost.
    pub hull: Vec<Point>,
}

/// Exponent set of a bivariate polynomial, sorted.
pub fn support_points(f: &MultiPoly) -> Result<Vec<Point>> {
    if f.nvars() != 2 {
        return Err(Error::InvalidArgument("Newton polytopes need a bivariate polynomial".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial has empty support".into()));
    }
    let mut pts: Vec<Point> = f.terms().iter().map(|(m, _)| (m.exp(0) as i64, m.exp(1) as i64)).collect();
    pts.sort_unstable();
    Ok(pts)
}

#[inline]
fn cross(o: Point, a: Point, b: Point) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Andrew's monotone chain; collinear boundary points are not vertices.
pub fn convex_hull(points: &[Point]) -> NewtonPolytope {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 1 {
        return NewtonPolytope { support: pts.clone(), hull: pts };
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    NewtonPolytope { support: pts, hull: lower }
}

impl NewtonPolytope {
    pub fn of(f: &MultiPoly) -> Result<Self> {
        Ok(convex_hull(&support_points(f)?))
    }

    /// Whether `p` lies in the hull (boundary included).
    pub fn contains(&self, p: Point) -> bool {
        match self.hull.len() {
            0 => false,
            1 => self.hull[0] == p,
            2 => {
                let (a, b) = (self.hull[0], self.hull[1]);
                cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
            }
            n => (0..n).all(|i| cross(self.hull[i], self.hull[(i + 1) % n], p) >= 0),
        }
    }
}

/// Exact rational coordinates of a Gao witness.
pub type Rational = Ratio<i128>;

fn ser_witness<S: serde::Serializer>(w: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    (w.0.to_string(), w.1.to_string()).serialize(s)
}

/// Why the criterion could not certify absolute irreducibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GaoReason {
    /// No term `a x^m` (m > 0) or no term `b y^n` (n > 0).
    MissingPureTerm { variable: char },
    GcdNotOne { m: u32, n: u32, gcd: u32 },
    /// Support points lie strictly on both sides of the line through `(m,0)` and `(0,n)`.
    BaseLineViolation,
    /// The supporting lines at `(m,0)` and `(0,n)` do not meet beyond the hull.
    RayDivergence,
    /// The candidate triangle misses a support point.
    NotContained { point: Point },
}

impl fmt::Display for GaoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaoReason::MissingPureTerm { variable } => write!(f, "no pure power of {variable}"),
            GaoReason::GcdNotOne { m, n, gcd } => write!(f, "gcd({m}, {n}) = {gcd}"),
            GaoReason::BaseLineViolation => f.write_str("support on both sides of the base line"),
            GaoReason::RayDivergence => f.write_str("supporting lines do not meet beyond the base"),
            GaoReason::NotContained { point } => write!(f, "point ({}, {}) outside the triangle", point.0, point.1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GaoVerdict {
    AbsolutelyIrreducible { m: u32, n: u32, #[serde(serialize_with = "ser_witness")]
        witness: (Rational, Rational),
        hull: Vec<Point> },
    Inconclusive { reason: GaoReason, hull: Vec<Point> },
}

impl GaoVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, GaoVerdict::AbsolutelyIrreducible { .. })
    }
}

/// Gao's criterion: pure terms `a x^m`, `b y^n` with `gcd(m, n) = 1` and the
/// Newton polytope inside a triangle with base `(m,0)`–`(0,n)`.
pub fn gao_test(f: &MultiPoly) -> Result<GaoVerdict> {
    let support = support_points(f)?;
    if support.len() == 1 {
        return Err(Error::InvalidArgument("the Gao test needs a non-monomial".into()));
    }
    let poly = convex_hull(&support);
    let hull = poly.hull.clone();
    let inconclusive = |reason| Ok(GaoVerdict::Inconclusive { reason, hull: hull.clone() });
    let m = support.iter().filter(|p| p.1 == 0).map(|p| p.0).max().unwrap_or(0);
    let n = support.iter().filter(|p| p.0 == 0).map(|p| p.1).max().unwrap_or(0);
    if m == 0 {
        return inconclusive(GaoReason::MissingPureTerm { variable: 'x' });
    }
    if n == 0 {
        return inconclusive(GaoReason::MissingPureTerm { variable: 'y' });
    }
    let g = m.gcd(&n) as u32;
    if g != 1 {
        return inconclusive(GaoReason::GcdNotOne { m: m as u32, n: n as u32, gcd: g });
    }
    let level = |p: &Point| n as i128 * p.0 as i128 + m as i128 * p.1 as i128;
    let nm = n as i128 * m as i128;
    let (mu, nu) = (m as u32, n as u32);
    if support.iter().all(|p| level(p) <= nm) {
        let zero = Rational::from_integer(0);
        return Ok(GaoVerdict::AbsolutelyIrreducible { m: mu, n: nu, witness: (zero, zero), hull });
    }
    if support.iter().any(|p| level(p) < nm) {
        return inconclusive(GaoReason::BaseLineViolation);
    }
    // All support on or beyond the base line: (m,0) and (0,n) are adjacent
    // hull vertices. Take their other neighbours.
    let a: Point = (m, 0);
    let b: Point = (0, n);
    let k = hull.len();
    let ia = hull.iter().position(|&p| p == a).expect("pure x-term is a vertex");
    let ib = hull.iter().position(|&p| p == b).expect("pure y-term is a vertex");
    let (pa, qb) = if hull[(ia + 1) % k] == b {
        (hull[(ia + k - 1) % k], hull[(ib + 1) % k])
    } else {
        (hull[(ia + 1) % k], hull[(ib + k - 1) % k])
    };
    // a + s (pa - a) = b + t (qb - b)
    let da = (pa.0 as i128 - a.0 as i128, pa.1 as i128 - a.1 as i128);
    let db = (qb.0 as i128 - b.0 as i128, qb.1 as i128 - b.1 as i128);
    let denom = da.0 * db.1 - da.1 * db.0;
    if denom == 0 {
        return inconclusive(GaoReason::RayDivergence);
    }
    let ab = (b.0 as i128 - a.0 as i128, b.1 as i128 - a.1 as i128);
    let s_num = ab.0 * db.1 - ab.1 * db.0;
    let t_num = ab.0 * da.1 - ab.1 * da.0;
    // s, t must be positive (apex beyond the neighbours, away from the base)
    if s_num * denom <= 0 || t_num * denom <= 0 {
        return inconclusive(GaoReason::RayDivergence);
    }
    // witness W = a + s da = (wx / den, wy / den)
    let den = denom;
    let wx = a.0 as i128 * den + s_num * da.0;
    let wy = a.1 as i128 * den + s_num * da.1;
    // Orientation of the triangle (a, b, W) scaled by den.
    let orient = |o: (i128, i128, i128), p1: (i128, i128, i128), p2: (i128, i128, i128)| -> i128 {
        // points as (X, Y, D) meaning (X/D, Y/D); compute sign of cross with common denominators
        let (ox, oy) = (o.0 * p1.2 * p2.2, o.1 * p1.2 * p2.2);
        let (ax, ay) = (p1.0 * o.2 * p2.2, p1.1 * o.2 * p2.2);
        let (bx, by) = (p2.0 * o.2 * p1.2, p2.1 * o.2 * p1.2);
        (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
    };
    let ta = (a.0 as i128, a.1 as i128, 1i128);
    let tb = (b.0 as i128, b.1 as i128, 1i128);
    let tw = (wx, wy, den);
    let sign = orient(ta, tb, tw).signum();
    for &p in &support {
        let tp = (p.0 as i128, p.1 as i128, 1i128);
        let inside = [orient(ta, tb, tp), orient(tb, tw, tp), orient(tw, ta, tp)]
            .iter()
            .all(|&v| v * sign >= 0);
        if !inside {
            return inconclusive(GaoReason::NotContained { point: p });
        }
    }
    let witness = (Rational::new(wx, den), Rational::new(wy, den));
    Ok(GaoVerdict::AbsolutelyIrreducible { m: mu, n: nu, witness, hull })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    fn poly(p: u64, s: &str) -> MultiPoly {
        MultiPoly::parse(&construct_field(p, 1).unwrap(), 2, s).unwrap()
    }

    #[test]
    fn worked_hull_example() {
        let f = poly(5, "x^2*y + x*y^4 + y^2 + x*y^2");
        let np = NewtonPolytope::of(&f).unwrap();
        assert_eq!(np.support, vec![(0, 2), (1, 2), (1, 4), (2, 1)]);
        assert_eq!(np.hull, vec![(0, 2), (2, 1), (1, 4)]);
        assert!(np.contains((1, 2)));
        assert!(!np.hull.contains(&(1, 2)));
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[(3, 3)]).hull, vec![(3, 3)]);
        assert_eq!(convex_hull(&[(0, 0), (1, 1), (2, 2)]).hull, vec![(0, 0), (2, 2)]);
    }

    #[test]
    fn gao_examples() {
        let f = poly(2, "x^2 + y^7 + x^3*y^3 + x^7*y^2");
        match gao_test(&f).unwrap() {
            GaoVerdict::AbsolutelyIrreducible { m: 2, n: 7, witness, .. } => {
                assert_eq!(witness, (Rational::from_integer(7), Rational::from_integer(2)));
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(
            gao_test(&poly(5, "x^2 - y^2")).unwrap(),
            GaoVerdict::Inconclusive { reason: GaoReason::GcdNotOne { gcd: 2, .. }, .. }
        ));
        assert!(gao_test(&poly(3, "x + y + 1")).unwrap().is_certified());
        assert!(matches!(
            gao_test(&poly(3, "x*y + y^2 + 1")).unwrap(),
            GaoVerdict::Inconclusive { reason: GaoReason::MissingPureTerm { variable: 'x' }, .. }
        ));
        assert!(gao_test(&poly(3, "x^2*y")).is_err());
        assert!(gao_test(&poly(3, "0")).is_err());
    }
}
