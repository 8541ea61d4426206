//! Factorization of univariate polynomials over GF(p).
//!
//! Square-free decomposition, then distinct-degree splitting, then
//! equal-degree splitting (Cantor-Zassenhaus with a deterministic sequence
//! of trial polynomials, so results never depend on an RNG).

use std::collections::BTreeMap;

use super::upoly::UPoly;
use crate::error::{Error, Result};

/// An irreducible monic factor with its multiplicity.
pub type Factor = (UPoly, usize);

/// Factors `a` into monic irreducibles, sorted canonically.
///
/// The unit part of a non-monic input is discarded.
pub fn factor(a: &UPoly) -> Result<Vec<Factor>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = a.monic();
    let mut merged: BTreeMap<UPoly, usize> = BTreeMap::new();
    for (sf, mult) in square_free(&a) {
        for (g, d) in distinct_degree(&sf) {
            for irr in equal_degree(&g, d) {
                *merged.entry(irr).or_insert(0) += mult;
            }
        }
    }
    Ok(merged.into_iter().collect())
}

/// True iff `a` has positive degree and no nontrivial factorization.
pub fn is_irreducible(a: &UPoly) -> bool {
    match a.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(n) => {
            let a = a.monic();
            if !a.gcd(&a.derivative()).is_one() {
                return false;
            }
            let dd = distinct_degree(&a);
            dd.len() == 1 && dd[0].1 == n
        }
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `a = prod g^m` and every `g` square-free.
pub fn square_free(a: &UPoly) -> Vec<Factor> {
    let field = a.field();
    let p = field.modulus() as usize;
    let mut out = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = a.gcd(&a.derivative());
    let mut w = a.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        // c is now a p-th power; over GF(p) its p-th root just thins the exponents.
        let root: Vec<u32> = c.coeffs().iter().step_by(p).copied().collect();
        let root = UPoly::from_residues(field, root);
        for (g, m) in square_free(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles
/// sharing a degree: pairs `(product, degree)`.
pub fn distinct_degree(a: &UPoly) -> Vec<(UPoly, usize)> {
    let field = a.field();
    let p = field.modulus() as u128;
    let x = UPoly::x(field);
    let mut out = Vec::new();
    let mut rest = a.monic();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest).expect("nonzero");
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(a: &UPoly, d: usize) -> Vec<UPoly> {
    let n = a.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![a.clone()];
    }
    let field = a.field();
    let p = field.modulus() as u64;
    // Walk trial polynomials of degree >= 1 in base-p counting order.
    let mut k = p;
    loop {
        let trial = counting_poly(field, k, n);
        k += 1;
        if trial.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = splitting_probe(&trial, d, a);
        let g = probe.gcd(a);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut left = equal_degree(&g, d);
            left.extend(equal_degree(&a.div_exact(&g), d));
            return left;
        }
    }
}

/// The `k`-th polynomial in base-p digit order, reduced below degree `n`.
fn counting_poly(field: super::Field, mut k: u64, n: usize) -> UPoly {
    let p = field.modulus() as u64;
    let mut coeffs = Vec::new();
    while k > 0 && coeffs.len() < n {
        coeffs.push((k % p) as u32);
        k /= p;
    }
    UPoly::from_residues(field, coeffs)
}

/// Odd p: `t^((p^d - 1)/2) - 1`. p = 2: the trace `t + t^2 + ... + t^(2^(d-1))`.
fn splitting_probe(t: &UPoly, d: usize, modulus: &UPoly) -> UPoly {
    let field = t.field();
    let p = field.modulus() as u128;
    if p == 2 {
        let mut acc = t.rem(modulus).expect("nonzero");
        let mut cur = acc.clone();
        for _ in 1..d {
            cur = cur.mul_mod(&cur, modulus).expect("nonzero");
            acc = acc.add(&cur);
        }
        acc
    } else {
        // (p^d - 1)/2 = ((p - 1)/2) * (1 + p + ... + p^(d-1))
        let b = t.pow_mod((p - 1) / 2, modulus).expect("nonzero");
        let mut acc = b.clone();
        let mut cur = b;
        for _ in 1..d {
            cur = cur.pow_mod(p, modulus).expect("nonzero");
            acc = acc.mul_mod(&cur, modulus).expect("nonzero");
        }
        acc.sub(&UPoly::one(field))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Field;
    use super::*;

    fn poly(p: u64, c: &[u64]) -> UPoly {
        UPoly::new(Field::new(p).unwrap(), c.iter().copied())
    }

    #[test]
    fn examples() {
        // x^4 + x over GF(2)
        let f = factor(&poly(2, &[0, 1, 0, 0, 1])).unwrap();
        assert_eq!(
            f,
            vec![
                (poly(2, &[0, 1]), 1),
                (poly(2, &[1, 1]), 1),
                (poly(2, &[1, 1, 1]), 1)
            ]
        );
        assert_eq!(
            factor(&poly(2, &[0, 0, 1])).unwrap(),
            vec![(poly(2, &[0, 1]), 2)]
        );
        assert_eq!(
            factor(&poly(2, &[1, 1, 1])).unwrap(),
            vec![(poly(2, &[1, 1, 1]), 1)]
        );
        assert_eq!(
            factor(&UPoly::zero(Field::new(3).unwrap())),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn non_monic_input_is_normalized() {
        // 2x^2 + 2 = 2 (x + 1)(x + 2) over GF(3)... x^2 + 1 is irreducible mod 3
        let f = factor(&poly(3, &[2, 0, 2])).unwrap();
        assert_eq!(f, vec![(poly(3, &[1, 0, 1]), 1)]);
        let f = factor(&poly(5, &[3, 0, 3])).unwrap();
        assert_eq!(f, vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]);
    }

    #[test]
    fn p_th_powers() {
        // (x + 1)^6 over GF(3) has derivative zero after the square part
        let a = poly(3, &[1, 1]).pow(6);
        assert_eq!(factor(&a).unwrap(), vec![(poly(3, &[1, 1]), 6)]);
        let b = poly(2, &[1, 1, 1]).pow(4).mul(&poly(2, &[0, 1]).pow(3));
        assert_eq!(
            factor(&b).unwrap(),
            vec![(poly(2, &[0, 1]), 3), (poly(2, &[1, 1, 1]), 4)]
        );
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&poly(2, &[1, 1, 0, 1])));
        assert!(!is_irreducible(&poly(2, &[1, 0, 0, 1])));
        assert!(!is_irreducible(&poly(2, &[1])));
        assert!(is_irreducible(&poly(3, &[1, 0, 1])));
    }
}
