//! Combinatorial and topological invariants of central hyperplane arrangements
//! and of the Milnor fibers of their multi-arrangements.

pub mod arr;
pub mod cover;
pub mod error;
pub mod fox;
pub mod lie;
pub mod multinet;
pub mod nilp2;
pub mod os;
pub mod torus;

pub use arr::{parse_arrangement, parse_arrangement_str, Arrangement, FieldTag};
pub use error::{MilnorError, Result};
