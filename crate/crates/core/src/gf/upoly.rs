use std::cmp::Ordering;
use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Univariate polynomial over GF(p), coefficients lowest degree first.
///
/// Always canonical: the highest stored coefficient is nonzero, and the
/// zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl UPoly {
    pub fn new(field: Field, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        Self::from_residues(field, coeffs)
    }

    /// Builds from residues already in `[0, p)`.
    pub fn from_residues(field: Field, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        UPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Field, c: u32) -> Self {
        Self::from_residues(field, vec![c % field.modulus()])
    }

    /// The polynomial `x`.
    pub fn x(field: Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn monomial(field: Field, coeff: u32, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff % field.modulus();
        Self::from_residues(field, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, rhs: &UPoly) -> Self {
        let f = self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), rhs.coeff(i)))
            .collect();
        Self::from_residues(f, coeffs)
    }

    pub fn sub(&self, rhs: &UPoly) -> Self {
        let f = self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        Self::from_residues(f, coeffs)
    }

    pub fn mul(&self, rhs: &UPoly) -> Self {
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_residues(f, out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_residues(f, quot), Self::from_residues(f, rem)))
    }

    pub fn rem(&self, divisor: &UPoly) -> Result<UPoly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; panics if `divisor` is zero.
    pub(crate) fn div_exact(&self, divisor: &UPoly) -> UPoly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::from_residues(f, coeffs)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul_mod(&self, rhs: &UPoly, modulus: &UPoly) -> Result<UPoly> {
        self.mul(rhs).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &UPoly) -> Result<UPoly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Parses text like `x^3 + 2*x + 1`; coefficients are reduced mod p.
    pub fn parse(field: Field, text: &str) -> Result<UPoly> {
        crate::multipoly::parse_into(&UPoly::zero(field), 1, text, &["x"])
    }
}

impl crate::multipoly::PolyAlgebra for UPoly {
    fn constant(&self, c: u64) -> Self {
        UPoly::new(self.field, [c])
    }
    fn variable(&self, _i: usize) -> Self {
        UPoly::x(self.field)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        UPoly::zero(self.field).sub(self)
    }
    fn power(&self, e: u64) -> Self {
        self.pow(e as usize)
    }
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by degree, then coefficients from the top down.
impl Ord for UPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.field.cmp(&other.field))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (d, 1) => write!(f, "x^{d}")?,
                (d, c) => write!(f, "{c}*x^{d}")?,
            }
        }
        Ok(())
    }
}
