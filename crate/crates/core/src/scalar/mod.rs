//! Exact scalars: rationals, polynomials and rational functions in the
//! parameters, univariate polynomials over those, and root extraction.

mod mpoly;
mod prat;
pub mod render;
mod roots;
mod symbol;
mod upoly;

pub use mpoly::{MPoly, Mono};
pub use num_rational::BigRational as Rational;
pub use prat::ParamRat;
pub use roots::{rational_roots, small_roots, sqrt_poly, RootSplit};
pub use symbol::Symbol;
pub use upoly::{binomial, factorial, falling, pochhammer, CoefPoly, UPoly};

/// The integer value of `q` when it is an integer constant.
pub fn is_integer_constant(q: &ParamRat) -> Option<i64> {
    q.as_i64()
}

/// True when `a - b` is an integer constant.
pub fn differ_by_integer(a: &ParamRat, b: &ParamRat) -> Option<i64> {
    is_integer_constant(&(a - b))
}
