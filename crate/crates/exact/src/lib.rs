//! Exact arithmetic substrate: rational, prime, quadratic and cyclotomic
//! fields; dense field matrices; integer Smith and Hermite normal forms.

pub mod arith;
pub mod field;
pub mod intmat;
pub mod matrix;
pub mod poly;

pub use field::{rat, Cyclo, Field, Fp, Quad, Rational};
pub use intmat::{IntMatrix, Smith};
pub use matrix::Matrix;
