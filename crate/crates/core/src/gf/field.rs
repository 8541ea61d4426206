use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field GF(p).
///
/// Residues are stored as `u32` in `[0, p)`. The modulus is capped below
/// 2^16 so every product of two residues fits in a `u32` before reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..65536).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field { p: p as u32 })
    }

    /// GF(2), the Boolean field.
    pub fn boolean() -> Self {
        Field { p: 2 }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    pub fn div(self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn element(self, v: u64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            modulus: self.p,
        }
    }

    /// All residues `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue together with its modulus.
///
/// The checked methods return `ModulusMismatch` when the operands live in
/// different fields. The operator impls panic in that case instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

/// Binary field operation selector for [`field_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raises `a` to the integer value of `b`.
    Pow,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn field(self) -> Field {
        Field { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, rhs: FieldElement) -> Result<Field> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(self.field())
    }

    fn with(self, value: u32) -> FieldElement {
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(self.with(f.add(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(self.with(f.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(self.with(f.mul(self.value, rhs.value)))
    }

    pub fn checked_div(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(self.with(f.div(self.value, rhs.value)?))
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(self.with(self.field().inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> FieldElement {
        self.with(self.field().pow(self.value, e))
    }
}

/// Applies `op` to two elements of the same prime field.
pub fn field_op(a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
        FieldOp::Pow => {
            a.same_field(b)?;
            Ok(a.pow(b.value as u64))
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.checked_add(rhs)
            .expect("field elements from different fields")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.checked_sub(rhs)
            .expect("field elements from different fields")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.checked_mul(rhs)
            .expect("field elements from different fields")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field().neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn small_examples() {
        let f5 = gf(5);
        assert_eq!(f5.element(3) + f5.element(4), f5.element(2));
        let f7 = gf(7);
        assert_eq!(f7.element(3).inv().unwrap(), f7.element(5));
        let f2 = gf(2);
        assert_eq!(f2.element(1) + f2.element(1), f2.element(0));
        assert_eq!(
            field_op(f7.element(3), f7.element(2), FieldOp::Pow).unwrap(),
            f7.element(2)
        );
    }

    #[test]
    fn errors() {
        let f7 = gf(7);
        assert_eq!(
            field_op(f7.element(1), f7.element(0), FieldOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            field_op(f7.element(1), gf(5).element(1), FieldOp::Add),
            Err(Error::ModulusMismatch(7, 5))
        );
        assert_eq!(Field::new(9), Err(Error::InvalidModulus(9)));
        assert_eq!(Field::new(1), Err(Error::InvalidModulus(1)));
        assert!(Field::new(65537).is_err());
    }

    #[test]
    fn axioms_exhaustive() {
        for p in [2u64, 3, 5, 7] {
            let f = gf(p);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    if b != 0 {
                        assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                    }
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }
}
