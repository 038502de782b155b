//! Numerical machinery for conditionally convergent integrals on the real line:
//! an adaptive improper-quadrature engine with oscillatory tail handling,
//! Fourier transforms of non-absolutely-integrable functions, bounded-variation
//! norms, convolution, and pointwise inversion through summability kernels.
//!
//! The crate is `no_std` + `alloc`; everything IO-related lives in the `oscint`
//! companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod accel;
pub mod bvnorm;
pub mod conv;
pub mod corpus;
pub mod fourier;
pub mod invert;
pub mod quad;
pub mod realfn;
pub mod rng;
pub mod verify;

pub use num_complex::Complex64;

pub use quad::{QuadResult, QuadStatus};
pub use realfn::{ExtInterval, FunctionSpec, Parity};
