//! Exact arithmetic over `QQ` and `QQ[t]`: scalars, polynomials, term orders
//! and base-ring linear algebra.

pub mod matrix;
pub mod order;
pub mod poly;
pub mod scalar;
pub mod smith;

pub use matrix::{rank_over_rationals, sparse_rank, AMatrix};
pub use order::TermOrder;
pub use poly::{monomials_of_degree, poly_mul, Monomial, Polynomial, Ring};
pub use scalar::{rat, specialize_scalar, BaseRing, BaseScalar, Rational};
pub use smith::{base_invariants, kernel_basis, matrix_rank, ColumnSpan, SmithForm};
