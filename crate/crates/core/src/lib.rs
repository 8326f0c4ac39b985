//! Exact arithmetic for the split spinor tenfold in `P^15`, its linear
//! sections, and the quadratic forms over `Q` that classify its twisted forms.

pub mod arith;
pub mod clifford;
pub mod error;
pub mod field;
pub mod forms;
pub mod groebner;
pub mod matrix;
pub mod quadrics;
pub mod skew;
pub mod subspace;
pub mod variety;
pub mod zmodels;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, QuadraticExtension, Rationals};
pub use matrix::{BitMatrix, Matrix};
pub use subspace::LinearSubspace;
