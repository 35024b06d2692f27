//! Homogeneous and bihomogeneous polynomial types.

mod biform;
mod param;
pub mod tform;
pub mod xform;

pub use biform::BiForm;
pub use param::{cross, homogenize, Homogenized, Parametrization};
pub use tform::{gcd_t, TForm};
pub use xform::{monomials, XForm, XMono};
