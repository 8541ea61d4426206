use fds::gf::{factor, is_irreducible, order, Field, UPoly};
use proptest::prelude::*;

fn gf(p: u64) -> Field {
    Field::new(p).unwrap()
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
fn irreducible_by_trial_division(a: &UPoly) -> bool {
    let field = a.field();
    let p = field.modulus() as u64;
    let n = match a.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    for d in 1..=n / 2 {
        for k in 0..p.pow(d as u32) {
            let mut coeffs: Vec<u64> = (0..d).map(|i| k / p.pow(i as u32) % p).collect();
            coeffs.push(1);
            let cand = UPoly::new(field, coeffs);
            if a.rem(&cand).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// Smallest `s >= 1` with `x^s = 1 mod a`, by stepping powers of x.
fn order_by_search(a: &UPoly, limit: u128) -> Option<u128> {
    let field = a.field();
    let x = UPoly::x(field);
    let mut cur = x.rem(a).unwrap();
    for s in 1..=limit {
        if cur.is_one() {
            return Some(s);
        }
        cur = cur.mul_mod(&x, a).unwrap();
    }
    None
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::collection::vec(0u64..5, 1..=max_deg + 1),
    )
        .prop_map(|(p, c)| UPoly::new(gf(p), c))
}

#[test]
fn trial_division_oracle_agrees_on_frozen_cases() {
    // x^4 + x = x (x + 1) (x^2 + x + 1) over GF(2)
    let f = factor(&UPoly::new(gf(2), [0, 1, 0, 0, 1])).unwrap();
    assert_eq!(f.len(), 3);
    for (g, m) in &f {
        assert_eq!(*m, 1);
        assert!(irreducible_by_trial_division(g));
    }
    assert!(irreducible_by_trial_division(&UPoly::new(gf(2), [1, 1, 1])));
    assert_eq!(order_by_search(&UPoly::new(gf(2), [1, 1, 1]), 10), Some(3));
    assert_eq!(order_by_search(&UPoly::new(gf(2), [1, 0, 1]), 10), Some(2));
}

#[test]
fn irreducibility_matches_trial_division_exhaustively() {
    for p in [2u64, 3] {
        let field = gf(p);
        for deg in 1..=5u32 {
            for k in 0..p.pow(deg) {
                let mut coeffs: Vec<u64> = (0..deg).map(|i| k / p.pow(i) % p).collect();
                coeffs.push(1);
                let a = UPoly::new(field, coeffs);
                assert_eq!(
                    is_irreducible(&a),
                    irreducible_by_trial_division(&a),
                    "{a} over GF({p})"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn divmod_reconstructs(a in arb_poly(10), b in prop::collection::vec(0u64..5, 1..6)) {
        let b = UPoly::new(a.field(), b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn factor_product_reproduces_monic_input(a in arb_poly(12)) {
        prop_assume!(!a.is_zero());
        let factors = factor(&a).unwrap();
        let mut prod = UPoly::one(a.field());
        for (g, m) in &factors {
            prop_assert!(g.is_monic());
            prop_assert!(irreducible_by_trial_division(g), "{} not irreducible", g);
            prod = prod.mul(&g.pow(*m));
        }
        prop_assert_eq!(prod, a.monic());
        let mut sorted = factors.clone();
        sorted.sort();
        prop_assert_eq!(sorted, factors);
    }

    #[test]
    fn formula_order_matches_incremental_search(a in arb_poly(8)) {
        let a = a.monic();
        prop_assume!(a.degree().unwrap_or(0) >= 1 && a.coeff(0) != 0);
        let p = a.field().modulus() as u128;
        let limit = p.pow(a.degree().unwrap() as u32) - 1;
        let expected = order_by_search(&a, limit).expect("order bounded by p^deg - 1");
        prop_assert_eq!(order(&a).unwrap(), expected);
    }
}
