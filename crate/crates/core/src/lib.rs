//! Exact computations with Hecke algebras, parabolic Schur algebras and
//! their affine versions, together with point counts of partial Springer
//! fibers in type A and double-centralizer checks.

pub mod affine_schur;
pub mod algebra;
pub mod cartan;
pub mod cli;
pub mod config;
pub mod error;
pub mod howe;
pub mod linalg;
pub mod schur;
pub mod springer;
pub mod verify;

pub use error::{Error, Result};
