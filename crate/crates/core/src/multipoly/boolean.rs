use super::MPoly;
use crate::error::{Error, Result};
use crate::gf::Field;

/// Boolean expression tree over variables `x1..xn` (0-based in `Var`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolExpr {
    Const(bool),
    Var(usize),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn eval(&self, x: &[bool]) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(i) => x[*i],
            BoolExpr::Not(a) => !a.eval(x),
            BoolExpr::And(a, b) => a.eval(x) && b.eval(x),
            BoolExpr::Or(a, b) => a.eval(x) || b.eval(x),
            BoolExpr::Xor(a, b) => a.eval(x) ^ b.eval(x),
        }
    }

    /// Polynomial over GF(2) computing the same function:
    /// `!a = a + 1`, `a & b = ab`, `a ^ b = a + b`, `a | b = a + b + ab`.
    pub fn to_poly(&self, field: Field, n: usize) -> Result<MPoly> {
        if field.modulus() != 2 {
            return Err(Error::WrongCharacteristic(field.modulus()));
        }
        if let Some(max) = self.max_var() {
            if max >= n {
                return Err(Error::IndexOutOfRange { index: max + 1, n });
            }
        }
        Ok(self.lower(field, n))
    }

    fn lower(&self, f: Field, n: usize) -> MPoly {
        match self {
            BoolExpr::Const(b) => MPoly::constant(f, n, *b as u32),
            BoolExpr::Var(i) => MPoly::var(f, n, *i),
            BoolExpr::Not(a) => a.lower(f, n).add(&MPoly::constant(f, n, 1)),
            BoolExpr::And(a, b) => a.lower(f, n).mul(&b.lower(f, n)),
            BoolExpr::Xor(a, b) => a.lower(f, n).add(&b.lower(f, n)),
            BoolExpr::Or(a, b) => {
                let (a, b) = (a.lower(f, n), b.lower(f, n));
                a.add(&b).add(&a.mul(&b))
            }
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            BoolExpr::Const(_) => None,
            BoolExpr::Var(i) => Some(*i),
            BoolExpr::Not(a) => a.max_var(),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Xor(a, b) => {
                a.max_var().max(b.max_var())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> Box<BoolExpr> {
        Box::new(BoolExpr::Var(i))
    }

    #[test]
    fn conversion_rules() {
        let f = Field::boolean();
        assert_eq!(
            BoolExpr::Not(v(0)).to_poly(f, 1).unwrap().to_string(),
            "x1 + 1"
        );
        assert_eq!(
            BoolExpr::Or(v(0), v(1)).to_poly(f, 2).unwrap().to_string(),
            "x1*x2 + x1 + x2"
        );
        assert!(BoolExpr::Xor(v(0), v(0)).to_poly(f, 1).unwrap().is_zero());
        assert_eq!(
            BoolExpr::Var(0).to_poly(Field::new(3).unwrap(), 1),
            Err(Error::WrongCharacteristic(3))
        );
        assert!(BoolExpr::Var(3).to_poly(f, 2).is_err());
    }

    fn arb_expr(n: usize) -> impl Strategy<Value = BoolExpr> {
        let leaf = prop_oneof![
            any::<bool>().prop_map(BoolExpr::Const),
            (0..n).prop_map(BoolExpr::Var),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| BoolExpr::Not(Box::new(a))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| BoolExpr::And(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| BoolExpr::Or(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| BoolExpr::Xor(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn polynomial_agrees_with_boolean_evaluation(e in arb_expr(4)) {
            let f = Field::boolean();
            let p = e.to_poly(f, 4).unwrap();
            for k in 0..16u32 {
                let bits: Vec<bool> = (0..4).map(|i| k >> i & 1 == 1).collect();
                let point: Vec<u32> = bits.iter().map(|&b| b as u32).collect();
                prop_assert_eq!(p.eval(&point).unwrap(), e.eval(&bits) as u32);
            }
        }
    }
}
