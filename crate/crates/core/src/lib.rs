//! Exact-arithmetic and Monte-Carlo toolkit for integral affine reflection
//! groups derived from compact Lie theory: root systems, chamber and alcove
//! geometry, canonical stratifications, symplectic volume polynomials, and
//! numerical verification of the Duistermaat-Heckman and Weyl integration
//! formulas.
//!
//! Modules 1-6 and the catalog work purely over exact rationals; floating
//! point enters only in [`mc`].

pub mod affine;
pub mod arrangement;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod mc;
pub mod reflection;
pub mod roots;
pub mod strata;
pub mod volume;

pub use affine::{AffineMap, IMat};
pub use error::{Error, Result};
pub use exact::{MultiPoly, QMat, QVec, Rat};
pub use roots::{Label, RootSystem};
