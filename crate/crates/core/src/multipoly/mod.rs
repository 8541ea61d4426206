//! Reduced multivariate polynomials over GF(p).
//!
//! Every function GF(p)^n -> GF(p) has exactly one polynomial
//! representative whose exponents are all below p. [`MPoly`] always holds
//! that representative, so structural equality is functional equality and
//! the set of variables appearing in the terms is exactly the set the
//! function depends on.

mod boolean;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use boolean::BoolExpr;
pub use parse::{parse_bool, parse_into, parse_polynomial, PolyAlgebra};

use crate::error::{Error, Result};
use crate::gf::{Field, UPoly};

/// Exponent vector of a monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul_reduced(&self, rhs: &Monomial, p: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(&a, &b)| fermat(a as u64 + b as u64, p))
                .collect(),
        )
    }
}

/// Graded lexicographic: total degree first, then exponents of x1, x2, ...
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Applies x^p = x until the exponent is below p.
#[inline]
fn fermat(e: u64, p: u32) -> u32 {
    if e == 0 {
        0
    } else {
        ((e - 1) % (p as u64 - 1) + 1) as u32
    }
}

/// A reduced polynomial in `n` variables over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    field: Field,
    n: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl MPoly {
    pub fn zero(field: Field, n: usize) -> Self {
        MPoly {
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, n: usize, c: u32) -> Self {
        let mut p = Self::zero(field, n);
        let c = c % field.modulus();
        if c != 0 {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// The variable `x_{i+1}` (indices are 0-based).
    pub fn var(field: Field, n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for {n} variables");
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Self::zero(field, n);
        p.terms.insert(Monomial(e), 1);
        p
    }

    /// Reduces an arbitrary term list: exponents via x^p = x, coefficients
    /// mod p, like terms combined, zeros dropped.
    pub fn from_raw(
        field: Field,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u64>, i64)>,
    ) -> Result<Self> {
        let p = field.modulus();
        let mut out = Self::zero(field, n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: exps.len(),
                });
            }
            let mono = Monomial(exps.iter().map(|&e| fermat(e, p)).collect());
            out.add_term(mono, field.reduce_signed(c));
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Value when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.degree() == 0)
                .map(|(_, &c)| c),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_compatible(&self, rhs: &MPoly) {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        assert_eq!(self.n, rhs.n, "polynomials with different arity");
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let f = self.field;
        MPoly {
            field: f,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: u32) -> MPoly {
        let f = self.field;
        let mut out = Self::zero(f, self.n);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), f.mul(a, c % f.modulus()));
        }
        out
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let f = self.field;
        let p = f.modulus();
        let mut out = Self::zero(f, self.n);
        for (ma, &a) in &self.terms {
            for (mb, &b) in &rhs.terms {
                out.add_term(ma.mul_reduced(mb, p), f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> MPoly {
        let mut acc = Self::constant(self.field, self.n, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates at a point of GF(p)^n.
    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[u32]) -> u32 {
        let f = self.field;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&e, &x) in m.0.iter().zip(point) {
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as u64));
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// 0-based indices of the variables occurring in some term. On the
    /// reduced form this is exactly the set of variables the function
    /// depends on.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.insert(i);
                }
            }
        }
        s
    }

    /// Interpolates a full value table over GF(p)^n.
    ///
    /// `table[k]` is the value at the configuration with little-endian
    /// base-p digits `k` (x1 varies fastest). The result is the sum over
    /// all points `c` of `g(c) * prod_i (1 - (x_i - c_i)^(p-1))`.
    pub fn interpolate(field: Field, n: usize, table: &[u32]) -> Result<MPoly> {
        let p = field.modulus() as usize;
        let size = checked_size(p, n)?;
        if table.len() != size {
            return Err(Error::IncompleteTable {
                expected: size,
                found: table.len(),
            });
        }
        let deltas = indicator_polys(field);
        // Dense coefficient tensor over exponent vectors, same digit order.
        let mut coeffs = vec![0u32; size];
        let mut digits = vec![0usize; n];
        for (k, &g) in table.iter().enumerate() {
            decode_into(k, p, &mut digits);
            let g = g % field.modulus();
            if g == 0 {
                continue;
            }
            // Expand g(c) * prod_i delta_{c_i}(x_i) term by term.
            let mut exps = vec![0usize; n];
            for (slot, coeff) in coeffs.iter_mut().enumerate() {
                decode_into(slot, p, &mut exps);
                let mut t = g;
                for i in 0..n {
                    t = field.mul(t, deltas[digits[i]][exps[i]]);
                    if t == 0 {
                        break;
                    }
                }
                *coeff = field.add(*coeff, t);
            }
        }
        Ok(Self::from_dense(
            field,
            n,
            &(0..n).collect::<Vec<_>>(),
            &coeffs,
        ))
    }

    /// Interpolates with `g` evaluated at every point of GF(p)^n.
    pub fn interpolate_fn(
        field: Field,
        n: usize,
        mut g: impl FnMut(&[u32]) -> u32,
    ) -> Result<MPoly> {
        let p = field.modulus() as usize;
        let size = checked_size(p, n)?;
        let mut point = vec![0u32; n];
        let table: Vec<u32> = (0..size)
            .map(|k| {
                decode_u32(k, p, &mut point);
                g(&point)
            })
            .collect();
        Self::interpolate(field, n, &table)
    }

    /// Interpolates a function of the listed variables only and embeds it
    /// into `n` variables. `table` is indexed over `vars` in little-endian
    /// order.
    pub fn interpolate_on(field: Field, n: usize, vars: &[usize], table: &[u32]) -> Result<MPoly> {
        let local = Self::interpolate(field, vars.len(), table)?;
        Ok(local.embed(n, vars))
    }

    /// Same result as [`MPoly::interpolate`], computed one axis at a time
    /// in `O(k p^(k+1))` instead of `O(p^(2k))`. Intended for large tables.
    pub fn interpolate_separable(
        field: Field,
        n: usize,
        vars: &[usize],
        table: &[u32],
    ) -> Result<MPoly> {
        let p = field.modulus() as usize;
        let k = vars.len();
        let size = checked_size(p, k)?;
        if table.len() != size {
            return Err(Error::IncompleteTable {
                expected: size,
                found: table.len(),
            });
        }
        let deltas = indicator_polys(field);
        // matrix[e][c] = coefficient of x^e in delta_c
        let matrix: Vec<Vec<u32>> = (0..p)
            .map(|e| (0..p).map(|c| deltas[c][e]).collect())
            .collect();
        let mut data: Vec<u32> = table.iter().map(|&v| v % field.modulus()).collect();
        apply_axis_transform(field, &mut data, p, k, &matrix);
        Ok(Self::from_dense(field, n, vars, &data))
    }

    /// Values at every point of GF(p)^vars, little-endian over `vars`.
    ///
    /// The polynomial must not involve variables outside `vars`.
    pub fn grid_values(&self, vars: &[usize]) -> Result<Vec<u32>> {
        let f = self.field;
        let p = f.modulus() as usize;
        let k = vars.len();
        let size = checked_size(p, k)?;
        let mut pos = vec![usize::MAX; self.n];
        for (slot, &v) in vars.iter().enumerate() {
            pos[v] = slot;
        }
        let mut data = vec![0u32; size];
        for (m, &c) in &self.terms {
            let mut idx = 0;
            let mut stride = 1;
            let mut covered = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && pos[i] == usize::MAX {
                    covered = false;
                    break;
                }
            }
            if !covered {
                return Err(Error::DimensionMismatch(
                    "polynomial depends on a variable outside the grid".into(),
                ));
            }
            for &v in vars {
                idx += m.0[v] as usize * stride;
                stride *= p;
            }
            data[idx] = c;
        }
        // matrix[t][e] = t^e
        let matrix: Vec<Vec<u32>> = (0..p as u32)
            .map(|t| (0..p as u64).map(|e| f.pow(t, e)).collect())
            .collect();
        apply_axis_transform(f, &mut data, p, k, &matrix);
        Ok(data)
    }

    /// Re-indexes a polynomial in `vars.len()` variables into `n`
    /// variables, sending local variable `j` to `vars[j]`.
    pub fn embed(&self, n: usize, vars: &[usize]) -> MPoly {
        assert_eq!(vars.len(), self.n);
        let mut out = Self::zero(self.field, n);
        for (m, &c) in &self.terms {
            let mut e = vec![0; n];
            for (j, &v) in vars.iter().enumerate() {
                e[v] += m.0[j];
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    fn from_dense(field: Field, n: usize, vars: &[usize], coeffs: &[u32]) -> MPoly {
        let p = field.modulus() as usize;
        let mut out = Self::zero(field, n);
        let mut digits = vec![0usize; vars.len()];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            decode_into(k, p, &mut digits);
            let mut e = vec![0u32; n];
            for (j, &v) in vars.iter().enumerate() {
                e[v] = digits[j] as u32;
            }
            out.terms.insert(Monomial(e), c);
        }
        out
    }

    /// Formats with variables named `x1..xn`.
    pub fn display(&self) -> String {
        self.to_string()
    }
}

/// Coefficients of `1 - (x - c)^(p-1)` for each `c`, lowest degree first.
fn indicator_polys(field: Field) -> Vec<Vec<u32>> {
    let p = field.modulus();
    (0..p)
        .map(|c| {
            let lin = UPoly::from_residues(field, vec![field.neg(c), 1]);
            let d = UPoly::one(field).sub(&lin.pow(p as usize - 1));
            (0..p as usize).map(|e| d.coeff(e)).collect()
        })
        .collect()
}

/// Applies a p x p matrix along every axis of a little-endian tensor.
fn apply_axis_transform(field: Field, data: &mut [u32], p: usize, k: usize, m: &[Vec<u32>]) {
    let mut stride = 1;
    let mut buf = vec![0u32; p];
    for _ in 0..k {
        let block = stride * p;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (row, slot) in buf.iter_mut().enumerate() {
                    let mut acc = 0;
                    for col in 0..p {
                        let v = data[base + off + col * stride];
                        if v != 0 {
                            acc = field.add(acc, field.mul(m[row][col], v));
                        }
                    }
                    *slot = acc;
                }
                for (row, &v) in buf.iter().enumerate() {
                    data[base + off + row * stride] = v;
                }
            }
        }
        stride = block;
    }
}

fn checked_size(p: usize, n: usize) -> Result<usize> {
    let mut s: usize = 1;
    for _ in 0..n {
        s = s.checked_mul(p).ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget: usize::MAX,
        })?;
    }
    Ok(s)
}

fn decode_into(mut k: usize, p: usize, digits: &mut [usize]) {
    for d in digits.iter_mut() {
        *d = k % p;
        k /= p;
    }
}

fn decode_u32(mut k: usize, p: usize, digits: &mut [u32]) {
    for d in digits.iter_mut() {
        *d = (k % p) as u32;
        k /= p;
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.degree() == 0 {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    e => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
