//! Exact computation in free associative algebras over F_p (odd p), their
//! quotients by the triple-commutator T-ideal and by the identities of the
//! Grassmann algebra, and fixed-multidegree T-space membership.

pub mod canonical;
pub mod error;
pub mod expr;
pub mod families;
pub mod field;
pub mod grassmann;
pub mod lab;
pub mod poly;
pub mod spans;
pub mod word;

pub use error::{AlgebraError, Result};
pub use field::Field;
pub use poly::{Mode, Polynomial};
pub use word::{MultiDegree, Word};
