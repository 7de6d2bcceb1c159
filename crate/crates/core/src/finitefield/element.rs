use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::FieldDescriptor;
use crate::error::Result;

/// A field element bundled with its field. Arithmetic between elements of
/// different fields panics; the polynomial layer works on raw encodings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldDescriptor,
    value: u64,
}

impl FieldElement {
    pub(crate) fn from_raw(field: FieldDescriptor, value: u64) -> Self {
        FieldElement { field, value }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// Packed base-`p` encoding.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn digits(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.try_inv(self.value)?))
    }

    pub fn frobenius(&self) -> Self {
        self.with(self.field.frobenius(self.value))
    }

    pub fn pth_root(&self) -> Self {
        self.with(self.field.pth_root(self.value))
    }

    pub fn is_in_subfield(&self, s: u32) -> Result<bool> {
        self.field.is_in_subfield(self.value, s)
    }

    /// Multiplicative order (panics on zero).
    pub fn order(&self) -> u64 {
        self.field.element_order(self.value)
    }

    fn with(&self, value: u64) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "field mismatch: {} vs {}", self.field, other.field);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.value), self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.check(rhs);
                let f: fn(&FieldDescriptor, u64, u64) -> u64 = $body;
                self.with(f(&self.field, self.value, rhs.value))
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |f, a, b| f.add(a, b));
binop!(Sub, sub, |f, a, b| f.sub(a, b));
binop!(Mul, mul, |f, a, b| f.mul(a, b));
binop!(Div, div, |f, a, b| f.mul(a, f.inv(b)));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
