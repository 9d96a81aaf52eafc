//! Numerical machinery for almost orthogonal sequences in weighted L² spaces.
//!
//! The crate builds truncated Gram operators `a_{m,n} = (φ_m, φ_n)` for
//! Fourier, Mellin and Dirichlet-type sequences, certifies the Schur constant
//! `C = sup_m Σ_n |a_{m,n}|`, and checks the generalized Bessel inequality
//! `Σ |(f, φ_n)|² ≤ C ‖f‖²` together with its Riesz–Fischer companion.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the `aos` crate.
#![no_std]
// When std is in the crate graph its inherent float methods shadow `num_traits::Float`.
#![allow(unused_imports)]

extern crate alloc;

pub mod catalog;
pub mod error;
pub mod numtheory;
pub mod operator;
pub mod qseries;
pub mod quadrature;
pub mod spaces;
pub mod specfun;
pub mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand for a complex scalar with binary64 components.
pub type ComplexScalar = Complex64;
