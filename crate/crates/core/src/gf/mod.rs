//! Prime-field arithmetic and univariate polynomials over GF(p).

mod factor;
mod field;
mod order;
mod upoly;

pub use factor::{distinct_degree, equal_degree, factor, is_irreducible, square_free, Factor};
pub use field::{field_op, is_prime, Field, FieldElement, FieldOp};
pub use order::{divisors, mobius, order, prime_factors};
pub use upoly::UPoly;
