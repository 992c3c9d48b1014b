//! Exact arbitrary-precision rational scalars, vectors, matrices, and sparse
//! multivariate polynomials. Everything here is immutable after construction
//! and safe to share between threads; operations are pure.

pub mod mat;
pub mod poly;
pub mod rat;

pub use mat::{same_span, QMat, QVec};
pub use poly::{Mono, MultiPoly};
pub use rat::{parse_rat, rat, rat_f64, rat_int, rat_str, Rat};
