//! Finite fields `F_p` and `F_{p^k}`.
//!
//! Elements are packed into a `u64` as base-`p` digit strings: the element
//! `c_0 + c_1 g + ... + c_{k-1} g^{k-1}` (with `g` the class of the modulus
//! variable) is stored as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. The prime
//! subfield therefore uses the same encoding in every extension, and
//! iteration over `0..order` enumerates the field in a fixed order.

pub mod arith;
mod element;
mod embed;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::upoly;

pub use element::FieldElement;
pub use embed::FieldEmbedding;

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 62;
const MAX_DEGREE: usize = 62;

struct Inner {
    p: u64,
    k: u32,
    /// Monic modulus, low degree first, length `k + 1`. Empty for prime fields.
    modulus: Vec<u64>,
    order: u64,
    generator: OnceLock<u64>,
}

/// Handle to a finite field. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Inner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} [{}]", self.0.p, self.0.k, self.modulus_string())
        }
    }
}

fn cache() -> &'static Mutex<HashMap<(u64, u32), FieldDescriptor>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FieldDescriptor>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds `F_{p^k}` with the lexicographically smallest monic irreducible
/// modulus (coefficients compared from the constant term upwards).
pub fn construct_field(p: u64, k: u32) -> Result<FieldDescriptor> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    if p >= MAX_CHARACTERISTIC || k as usize > MAX_DEGREE {
        return Err(Error::FieldTooLarge { p, k });
    }
    let mut order: u64 = 1;
    for _ in 0..k {
        order = match order.checked_mul(p) {
            Some(o) if o <= MAX_ORDER => o,
            _ => return Err(Error::FieldTooLarge { p, k }),
        };
    }
    if let Some(f) = cache().lock().expect("field cache poisoned").get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k as usize) };
    let field = FieldDescriptor(Arc::new(Inner { p, k, modulus, order, generator: OnceLock::new() }));
    cache().lock().expect("field cache poisoned").insert((p, k), field.clone());
    Ok(field)
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let fp = construct_field(p, 1).expect("prime field");
    // Counter digits: c_0 is the most significant, so counting upwards walks
    // the candidates in low-degree-first lexicographic order.
    let mut digits = vec![0u64; k];
    loop {
        // increment, c_{k-1} fastest
        let mut i = k;
        loop {
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "no irreducible polynomial of degree {k} over F_{p}");
        }
        if digits[0] == 0 {
            continue;
        }
        let mut f = digits.clone();
        f.push(1);
        if upoly::is_irreducible(&fp, &f) {
            return f;
        }
    }
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        construct_field(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements `p^k`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Monic modulus, constant term first (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        if self.is_prime_field() {
            return String::new();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    #[inline]
    pub fn zero(&self) -> u64 {
        0
    }

    #[inline]
    pub fn one(&self) -> u64 {
        1
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_i64(&self, n: i64) -> u64 {
        arith::reduce_signed(n, self.0.p)
    }

    #[inline]
    pub fn from_u64(&self, n: u64) -> u64 {
        n % self.0.p
    }

    pub fn element(&self, value: u64) -> FieldElement {
        assert!(value < self.0.order, "encoding {value} out of range for {self}");
        FieldElement::from_raw(self.clone(), value)
    }

    /// Coefficients `c_0..c_{k-1}` of an encoded element.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// Encodes a coefficient vector (reduced mod `p`; missing digits are 0).
    pub fn from_digits(&self, digits: &[u64]) -> Result<u64> {
        if digits.len() > self.0.k as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for an extension of degree {}",
                digits.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        Ok(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d % p))
    }

    #[inline]
    fn decode(&self, mut a: u64, out: &mut [u64]) {
        let p = self.0.p;
        for d in out.iter_mut() {
            *d = a % p;
            a /= p;
        }
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> u64 {
        let p = self.0.p;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * place;
            }
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.0.k == 1 {
            let p = self.0.p;
            return if a >= b { a - b } else { a + p - b };
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.0.k == 1 {
            return arith::mul_mod(a, b, self.0.p);
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.0.p;
        let k = self.0.k as usize;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.decode(a, &mut da[..k]);
        self.decode(b, &mut db[..k]);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let m = &self.0.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            let nc = p - c;
            for j in 0..k {
                prod[i - k + j] = (prod[i - k + j] + nc * m[j]) % p;
            }
            prod[i] = 0;
        }
        self.encode(&prod[..k])
    }

    /// Multiplies by an element of the prime subfield.
    #[inline]
    pub fn scale(&self, c: u64, a: u64) -> u64 {
        if self.0.k == 1 {
            return arith::mul_mod(c, a, self.0.p);
        }
        let p = self.0.p;
        let (mut a, mut out, mut place) = (a, 0u64, 1u64);
        while a > 0 {
            out += (a % p) * c % p * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if self.0.k == 1 {
            return arith::pow_mod(a, e, self.0.p);
        }
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    ///
    /// # Panics
    /// On zero; use [`FieldDescriptor::try_inv`] for a fallible version.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in {self}");
        self.pow(a, self.0.order - 2)
    }

    pub fn try_inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.try_inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: u64) -> u64 {
        if self.0.k == 1 {
            a
        } else {
            self.pow(a, self.0.p)
        }
    }

    /// The unique `b` with `b^p = a`, namely `a^(p^(k-1))`.
    pub fn pth_root(&self, a: u64) -> u64 {
        (1..self.0.k).fold(a, |b, _| self.frobenius(b))
    }

    /// Whether `a` lies in the subfield `F_{p^s}`; requires `s | k`.
    pub fn is_in_subfield(&self, a: u64, s: u32) -> Result<bool> {
        if s == 0 || self.0.k % s != 0 {
            return Err(Error::InvalidArgument(format!("{s} does not divide the extension degree {}", self.0.k)));
        }
        let b = (0..s).fold(a, |b, _| self.frobenius(b));
        Ok(b == a)
    }

    /// Whether `a` lies in the prime subfield (its encoding is a single digit).
    #[inline]
    pub fn is_prime_subfield(&self, a: u64) -> bool {
        a < self.0.p
    }

    /// Least (by encoding) generator of the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        *self.0.generator.get_or_init(|| {
            let n = self.0.order - 1;
            if n == 1 {
                return 1;
            }
            let primes = arith::prime_divisors(n);
            (2..self.0.order)
                .find(|&g| primes.iter().all(|&r| self.pow(g, n / r) != 1))
                .expect("multiplicative group is cyclic")
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> u64 {
        assert!(a != 0, "order of zero");
        let mut ord = self.0.order - 1;
        for (r, _) in arith::factorize(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        ord
    }

    /// A primitive `n`-th root of unity: `g^((q-1)/n)` for the least generator `g`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if n % self.0.p == 0 {
            return Err(Error::NoPrimitiveRoot { n, p: self.0.p });
        }
        let m = self.0.order - 1;
        if m % n != 0 {
            return Err(Error::RootNotInField { n, order: m });
        }
        let g = self.primitive_element();
        Ok(self.element(self.pow(g, m / n)))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.0.order
    }

    /// Text form: an integer for prime-subfield elements, `[c0,c1,...]` otherwise.
    pub fn format(&self, a: u64) -> String {
        if a < self.0.p {
            return a.to_string();
        }
        let ds: Vec<String> = self.digits(a).iter().map(|d| d.to_string()).collect();
        format!("[{}]", ds.join(","))
    }

    /// Parses `n`, `-n`, `g`, `g^e` or `[c0,c1,...]`.
    pub fn parse(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse field element '{text}'"));
        if let Some(rest) = t.strip_prefix('-') {
            return Ok(self.neg(self.parse(rest)?));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let ds = inner
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return self.from_digits(&ds);
        }
        if let Some(rest) = t.strip_prefix('g') {
            let e = match rest.trim().strip_prefix('^') {
                Some(e) => e.trim().parse::<u64>().map_err(|_| bad())?,
                None if rest.trim().is_empty() => 1,
                None => return Err(bad()),
            };
            return Ok(self.pow(self.gen_class()?, e));
        }
        let n = t.parse::<num_bigint::BigUint>().map_err(|_| bad())?;
        let r = n % num_bigint::BigUint::from(self.0.p);
        Ok(r.try_into().expect("residue fits"))
    }

    /// Class of the modulus variable; only meaningful in proper extensions.
    pub fn gen_class(&self) -> Result<u64> {
        if self.0.k == 1 {
            Err(Error::InvalidArgument(format!("{self} has no generator symbol 'g'")))
        } else {
            Ok(self.0.p)
        }
    }

    /// `F_{p^{kj}}` together with the embedding of `self` into it.
    pub fn extension(&self, j: u32) -> Result<FieldEmbedding> {
        let big = construct_field(self.0.p, self.0.k.checked_mul(j).ok_or(Error::InvalidDegree(j))?)?;
        FieldEmbedding::new(self, &big)
    }

    pub(crate) fn same_as(&self, other: &FieldDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

/// Euler's criterion for an integer modulo an odd prime.
pub fn is_square_mod_p(a: i64, p: u64) -> Result<bool> {
    if p == 2 {
        return Err(Error::InvalidArgument("quadratic-residue test needs an odd prime".into()));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = arith::reduce_signed(a, p);
    Ok(r == 0 || arith::pow_mod(r, (p - 1) / 2, p) == 1)
}

/// Free-function form of [`FieldDescriptor::nth_root_of_unity`].
pub fn nth_root_of_unity(field: &FieldDescriptor, n: u64) -> Result<FieldElement> {
    field.nth_root_of_unity(n)
}

/// Free-function form of the subfield test on an element.
pub fn is_in_subfield(a: &FieldElement, s: u32) -> Result<bool> {
    a.field().is_in_subfield(a.value(), s)
}

pub fn pth_root(a: &FieldElement) -> FieldElement {
    a.field().element(a.field().pth_root(a.value()))
}
