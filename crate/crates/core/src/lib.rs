//! Exact implicitization of rational plane curves.
//!
//! A parametrization `(t0:t1) -> (u0:u1:u2)` is turned into its implicit
//! equation by a direct resultant, by the resultant of a mu-basis, or by a
//! determinant of moving lines. The [`rees`] module counts the minimal
//! generators of the moving-curve ideal in a bidegree box.

pub mod elimmat;
pub mod error;
pub mod implicit;
pub mod linalg;
mod par;
pub mod poly;
pub mod rees;
pub mod scalar;
pub mod syzygy;
pub mod text;

pub use error::{Error, Result};
pub use poly::{cross, homogenize, BiForm, Parametrization, TForm, XForm};
pub use scalar::{Scalar, ScalarMode};
