//! Exact algebra for finite W-algebras of `gl_N` attached to pyramids.
//!
//! The crate is `no_std` and needs only `alloc`. Everything is computed
//! exactly: over the integers with overflow checks, or over a prime field.

#![no_std]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod pbw;
pub mod pyramid;
pub mod repn;
pub mod scalar;
pub mod tableaux;
pub mod walgebra;

pub use error::{Error, Result};
pub use pyramid::{CentralizerBasis, LieDatum, Partition, Pyramid, ShiftMatrix, WeightVector, Weights};
pub use scalar::Ring;
