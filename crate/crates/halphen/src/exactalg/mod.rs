//! Exact arithmetic kernel: scalars in Q or Q(√d), dense polynomials, rational
//! functions and matrices.

mod matrix;
mod poly;
mod ratfunc;
mod scalar;

pub use matrix::Matrix;
pub use poly::{Poly, SquarefreeDecomposition};
pub use ratfunc::{poly_compose, RatFunc};
pub use scalar::{common_field, rat, rational_sqrt, square_split, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("zero input")]
    ZeroInput,
}
