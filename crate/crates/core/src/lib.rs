//! Finite dynamical systems over prime fields: parallel and sequential
//! update, phase-space analysis, linear and monomial theory, update-order
//! equivalence and stochastic extensions.

pub mod error;
pub mod export;
pub mod generators;
pub mod gf;
pub mod linear;
pub mod monomial;
pub mod multipoly;
pub mod phase;
pub mod specfile;
pub mod stochastic;
pub mod system;
pub mod updorder;

pub use error::{Error, Result};
