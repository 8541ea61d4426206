use num_integer::Integer;

use super::factor::factor;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Least `s >= 1` with `a | x^s - 1`.
///
/// Computed from the factorization: an irreducible factor of degree `d`
/// has order dividing `p^d - 1`, found by stripping prime factors of that
/// number; a factor of multiplicity `m` contributes an extra `p^t` with
/// `p^t >= m`. Factoring `p^d - 1` is plain trial division.
pub fn order(a: &UPoly) -> Result<u128> {
    match a.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    if a.coeff(0) == 0 {
        return Err(Error::NotCoprimeToX);
    }
    let p = a.field().modulus() as u128;
    let mut lcm: u128 = 1;
    let mut max_mult = 1;
    for (g, m) in factor(a)? {
        let e = irreducible_order(&g)?;
        lcm = lcm
            .checked_div(lcm.gcd(&e))
            .and_then(|l| l.checked_mul(e))
            .ok_or(Error::Overflow("polynomial order"))?;
        max_mult = max_mult.max(m);
    }
    let mut pt: u128 = 1;
    while pt < max_mult as u128 {
        pt = pt
            .checked_mul(p)
            .ok_or(Error::Overflow("polynomial order"))?;
    }
    lcm.checked_mul(pt)
        .ok_or(Error::Overflow("polynomial order"))
}

/// Order of a monic irreducible `g != x`.
fn irreducible_order(g: &UPoly) -> Result<u128> {
    let field = g.field();
    let d = g.degree().expect("nonzero") as u32;
    let p = field.modulus() as u128;
    let group = p.checked_pow(d).ok_or(Error::Overflow("p^d - 1"))? - 1;
    let x = UPoly::x(field);
    let mut e = group;
    for q in prime_factors(group) {
        while e % q == 0 && x.pow_mod(e / q, g)?.is_one() {
            e /= q;
        }
    }
    Ok(e)
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u128) -> Vec<u128> {
    let mut divs = vec![1u128];
    let mut rest = n;
    for q in prime_factors(n) {
        let mut k = 0;
        while rest.is_multiple_of(q) {
            rest /= q;
            k += 1;
        }
        let base = divs.clone();
        let mut pw = 1;
        for _ in 0..k {
            pw *= q;
            divs.extend(base.iter().map(|d| d * pw));
        }
    }
    divs.sort_unstable();
    divs
}

/// Möbius function.
pub fn mobius(n: u128) -> i32 {
    let mut rest = n;
    let mut sign = 1;
    for q in prime_factors(n) {
        rest /= q;
        if rest.is_multiple_of(q) {
            return 0;
        }
        sign = -sign;
    }
    sign
}
