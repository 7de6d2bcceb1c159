//! Dense univariate polynomials over a finite field, as `Vec<u64>` of
//! encoded coefficients with the constant term first. The zero polynomial
//! is the empty vector; every function returns trimmed results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::finitefield::FieldDescriptor;

pub type UPoly = Vec<u64>;

pub fn trim(a: &mut UPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn trimmed(mut a: UPoly) -> UPoly {
    trim(&mut a);
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn lc(a: &[u64]) -> u64 {
    degree(a).map_or(0, |d| a[d])
}

pub fn x() -> UPoly {
    vec![0, 1]
}

pub fn add(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> UPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trimmed(out)
}

pub fn sub(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> UPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trimmed(out)
}

pub fn scale(f: &FieldDescriptor, c: u64, a: &[u64]) -> UPoly {
    if c == 0 {
        return Vec::new();
    }
    trimmed(a.iter().map(|&v| f.mul(c, v)).collect())
}

pub fn mul(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if f.is_prime_field() {
        // Delay reductions: products are < p^2 < 2^62, so accumulate in u128.
        let p = f.p() as u128;
        let mut acc = vec![0u128; out.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u128 * y as u128;
            }
        }
        for (o, s) in out.iter_mut().zip(acc) {
            *o = (s % p) as u64;
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trimmed(out)
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: UPoly = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = f.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let t = f.mul(c, inv);
        q[i - db] = t;
        for j in 0..=db {
            r[i - db + j] = f.sub(r[i - db + j], f.mul(t, b[j]));
        }
    }
    r.truncate(db);
    (trimmed(q), trimmed(r))
}

pub fn rem(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> UPoly {
    divrem(f, a, b).1
}

/// Exact quotient, or `None` when `b` does not divide `a`.
pub fn exact_div(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> Option<UPoly> {
    let (q, r) = divrem(f, a, b);
    r.is_empty().then_some(q)
}

pub fn monic(f: &FieldDescriptor, a: &[u64]) -> UPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, f.inv(a[d]), a),
    }
}

pub fn gcd(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> UPoly {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(f: &FieldDescriptor, a: &[u64], b: &[u64]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = f.inv(lc(&r0));
    (scale(f, inv, &r0), scale(f, inv, &s0), scale(f, inv, &t0))
}

pub fn derivative(f: &FieldDescriptor, a: &[u64]) -> UPoly {
    trimmed(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_u64(i as u64), c)).collect())
}

pub fn eval(f: &FieldDescriptor, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Composition `a(x + c)`.
pub fn taylor_shift(f: &FieldDescriptor, a: &[u64], c: u64) -> UPoly {
    let mut out = trimmed(a.to_vec());
    if c == 0 {
        return out;
    }
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            out[j] = f.add(out[j], f.mul(c, out[j + 1]));
        }
    }
    trimmed(out)
}

pub fn mulmod(f: &FieldDescriptor, a: &[u64], b: &[u64], m: &[u64]) -> UPoly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FieldDescriptor, a: &[u64], mut e: u64, m: &[u64]) -> UPoly {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    acc
}

/// The `F_q`-linear map `h -> h^q` on `F_q[x]/(m)`, stored as the images of
/// the monomial basis.
pub struct Frobenius<'a> {
    field: &'a FieldDescriptor,
    modulus: UPoly,
    columns: Vec<UPoly>,
}

impl<'a> Frobenius<'a> {
    pub fn new(field: &'a FieldDescriptor, m: &[u64]) -> Self {
        let n = degree(m).expect("nonzero modulus");
        let xq = powmod(field, &x(), field.order(), m);
        let mut columns = Vec::with_capacity(n);
        let mut cur = rem(field, &[1], m);
        for _ in 0..n {
            columns.push(cur.clone());
            cur = mulmod(field, &cur, &xq, m);
        }
        Frobenius { field, modulus: m.to_vec(), columns }
    }

    pub fn apply(&self, h: &[u64]) -> UPoly {
        let f = self.field;
        let h = rem(f, h, &self.modulus);
        let n = self.columns.len();
        let mut out = vec![0u64; n];
        for (i, &c) in h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // (c x^i)^q = c^q (x^q)^i; c^q = c because c lies in F_q.
            for (o, &v) in out.iter_mut().zip(&self.columns[i]) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        trimmed(out)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// Rabin's irreducibility test over `F_q`.
pub fn is_irreducible(f: &FieldDescriptor, a: &[u64]) -> bool {
    let n = match degree(a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let m = monic(f, a);
    let frob = Frobenius::new(f, &m);
    // x^{q^i} for i = 0..=n
    let mut powers = vec![rem(f, &x(), &m)];
    for i in 1..=n {
        let next = frob.apply(&powers[i - 1]);
        powers.push(next);
    }
    if powers[n] != powers[0] {
        return false;
    }
    crate::finitefield::arith::prime_divisors(n as u64).into_iter().all(|r| {
        let h = sub(f, &powers[n / r as usize], &x());
        degree(&gcd(f, &h, &m)) == Some(0)
    })
}

/// Squarefree decomposition of a nonzero polynomial: monic pairwise coprime
/// squarefree parts with multiplicities (ascending).
pub fn squarefree(f: &FieldDescriptor, a: &[u64]) -> Vec<(UPoly, u32)> {
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    sqf_rec(f, &monic(f, a), 1, &mut out);
    // merge equal parts produced by different levels
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| cmp_poly(&x.0, &y.0)));
    out
}

fn sqf_rec(f: &FieldDescriptor, a: &[u64], mult: u32, out: &mut Vec<(UPoly, u32)>) {
    if degree(a).unwrap_or(0) == 0 {
        return;
    }
    let p = f.p() as usize;
    let da = derivative(f, a);
    if da.is_empty() {
        // a = b(x^p) with every coefficient a p-th power
        let b: UPoly = a.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        sqf_rec(f, &b, mult * p as u32, out);
        return;
    }
    let mut c = gcd(f, a, &da);
    let mut w = exact_div(f, a, &c).expect("gcd divides");
    let mut i = 1u32;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = exact_div(f, &w, &y).expect("gcd divides");
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(f, &z), i * mult));
        }
        i += 1;
        w = y;
        c = exact_div(f, &c, &w).expect("gcd divides");
    }
    if degree(&c).unwrap_or(0) > 0 {
        let b: UPoly = c.iter().step_by(p).map(|&v| f.pth_root(v)).collect();
        sqf_rec(f, &b, mult * p as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FieldDescriptor, a: &[u64]) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    if degree(&rest).unwrap_or(0) == 0 {
        return out;
    }
    let frob = Frobenius::new(f, &rest);
    let mut h = rem(f, &x(), &rest);
    let mut d = 0;
    while let Some(n) = degree(&rest) {
        if 2 * (d + 1) > n {
            if n > 0 {
                out.push((rest.clone(), n));
            }
            break;
        }
        d += 1;
        h = rem(f, &frob.apply(&h), &rest);
        let g = gcd(f, &sub(f, &h, &x()), &rest);
        if degree(&g).unwrap_or(0) > 0 {
            rest = exact_div(f, &rest, &g).expect("gcd divides");
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &FieldDescriptor, a: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = degree(a).expect("nonzero");
    if n == d {
        return vec![monic(f, a)];
    }
    let q = f.order();
    let m = monic(f, a);
    let frob = Frobenius::new(f, &m);
    loop {
        let r: UPoly = trimmed((0..n).map(|_| rng.gen_range(0..q)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let g = gcd(f, &r, &m);
        let splitter = if degree(&g).unwrap_or(0) > 0 {
            g
        } else if q % 2 == 1 {
            // r^{(q^d - 1)/2} = (r r^q ... r^{q^{d-1}})^{(q-1)/2}
            let mut cur = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                cur = frob.apply(&cur);
                norm = mulmod(f, &norm, &cur, &m);
            }
            let b = powmod(f, &norm, (q - 1) / 2, &m);
            gcd(f, &sub(f, &b, &[1]), &m)
        } else {
            // absolute trace to F_2: sum of r^{2^i}, i < k d
            let steps = f.k() as usize * d;
            let mut cur = r.clone();
            let mut tr = r.clone();
            for _ in 1..steps {
                cur = mulmod(f, &cur, &cur, &m);
                tr = add(f, &tr, &cur);
            }
            gcd(f, &tr, &m)
        };
        let ds = degree(&splitter).unwrap_or(0);
        if ds > 0 && ds < n {
            let other = exact_div(f, &m, &splitter).expect("gcd divides");
            let mut out = equal_degree(f, &splitter, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}

/// Canonical order: by degree, then coefficients from the top down.
pub fn cmp_poly(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Complete factorization of a nonzero polynomial: `(unit, [(monic irreducible, multiplicity)])`,
/// factors in canonical order. Deterministic for a fixed seed.
pub fn factor(f: &FieldDescriptor, a: &[u64], seed: u64) -> (u64, Vec<(UPoly, u32)>) {
    let unit = lc(a);
    assert!(unit != 0, "factoring the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree(f, a) {
        for (block, d) in distinct_degree(f, &part) {
            for g in equal_degree(f, &block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|x, y| cmp_poly(&x.0, &y.0).then(x.1.cmp(&y.1)));
    (unit, out)
}

/// Distinct roots in the coefficient field, ascending by encoding.
pub fn roots(f: &FieldDescriptor, a: &[u64]) -> Vec<u64> {
    let m = monic(f, a);
    if degree(&m).unwrap_or(0) == 0 {
        return Vec::new();
    }
    if f.order() <= 64 {
        return f.elements().filter(|&c| eval(f, &m, c) == 0).collect();
    }
    let frob = Frobenius::new(f, &m);
    let xq = frob.apply(&x());
    let lin = gcd(f, &sub(f, &xq, &x()), &m);
    if degree(&lin).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out: Vec<u64> = equal_degree(f, &lin, 1, &mut rng)
        .into_iter()
        .map(|g| f.neg(g[0]))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::construct_field;

    fn prod(f: &FieldDescriptor, unit: u64, fs: &[(UPoly, u32)]) -> UPoly {
        let mut acc = vec![unit];
        for (g, e) in fs {
            for _ in 0..*e {
                acc = mul(f, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn small_factorizations() {
        let f5 = construct_field(5, 1).unwrap();
        let (u, fs) = factor(&f5, &[1, 0, 1], 0);
        assert_eq!(u, 1);
        assert_eq!(fs, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        let f3 = construct_field(3, 1).unwrap();
        assert_eq!(factor(&f3, &[1, 0, 1], 0).1, vec![(vec![1, 0, 1], 1)]);
        // x^7 - 1 over F_5: linear times an irreducible sextic
        let (_, fs) = factor(&f5, &[4, 0, 0, 0, 0, 0, 0, 1], 3);
        let degs: Vec<usize> = fs.iter().map(|(g, _)| degree(g).unwrap()).collect();
        assert_eq!(degs, vec![1, 6]);
    }

    #[test]
    fn factors_with_repetition_and_pth_powers() {
        let f2 = construct_field(2, 1).unwrap();
        // (x^2+x+1)^3 (x+1)^4 x
        let mut a = vec![0, 1];
        for _ in 0..3 {
            a = mul(&f2, &a, &[1, 1, 1]);
        }
        for _ in 0..4 {
            a = mul(&f2, &a, &[1, 1]);
        }
        let (u, fs) = factor(&f2, &a, 7);
        assert_eq!(prod(&f2, u, &fs), a);
        assert_eq!(fs, vec![(vec![0, 1], 1), (vec![1, 1], 4), (vec![1, 1, 1], 3)]);
    }

    #[test]
    fn factoring_over_extensions() {
        for (p, k) in [(2u64, 3u32), (3, 2), (5, 2), (2, 4)] {
            let f = construct_field(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..10 {
                let a: UPoly = trimmed((0..9).map(|_| rng.gen_range(0..f.order())).collect());
                if a.is_empty() {
                    continue;
                }
                let (u, fs) = factor(&f, &a, 1);
                assert_eq!(prod(&f, u, &fs), a);
                for (g, _) in &fs {
                    assert!(is_irreducible(&f, g));
                }
            }
        }
    }

    #[test]
    fn roots_and_irreducibility() {
        let f = construct_field(5, 6).unwrap();
        // x^7 - 1 has 7 roots in F_{5^6}
        let r = roots(&f, &[4, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(r.len(), 7);
        let f2 = construct_field(2, 1).unwrap();
        assert!(is_irreducible(&f2, &[1, 1, 0, 1]));
        assert!(!is_irreducible(&f2, &[1, 0, 0, 1]));
    }

    #[test]
    fn taylor_and_xgcd() {
        let f7 = construct_field(7, 1).unwrap();
        let a = vec![1, 2, 3, 4];
        let s = taylor_shift(&f7, &a, 3);
        for t in 0..7 {
            assert_eq!(eval(&f7, &s, t), eval(&f7, &a, f7.add(t, 3)));
        }
        let b = vec![5, 0, 1];
        let (g, u, v) = xgcd(&f7, &a, &b);
        assert_eq!(add(&f7, &mul(&f7, &u, &a), &mul(&f7, &v, &b)), g);
    }
}
