//! Numerical machinery for a Toeplitz operator whose symbol is unimodular,
//! continuous and of winding number zero, yet is not Fredholm on the Hardy
//! space `H¹`.
//!
//! The crate is `no_std` with `alloc`. File formats, the command line and
//! the dense solver used for large sections live in the `htl` crate.

#![no_std]
// `num_traits::Float` supplies the float methods without std; whenever std
// ends up in the build graph its inherent methods win and the import idles.
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fft;
pub mod fredholm;
pub mod hardy;
pub mod linalg;
pub mod oscillation;
pub mod quad;
pub mod singular_integrals;
pub mod symbol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
