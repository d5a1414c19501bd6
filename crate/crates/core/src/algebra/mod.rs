//! Laurent scalars, finite and affine Hecke algebras, and their text form.

mod hecke;
mod laurent;
mod lincomb;
pub mod text;

pub use hecke::{
    specialize, AffineHeckeAlgebra, AffineHeckeElement, HeckeAlgebra, HeckeElement, LatticeElement, Specialization,
};
pub use laurent::LaurentScalar;
pub use lincomb::{LinComb, Scalar};
