//! Computable germ calculus at 0⁺.
//!
//! Elementary-function expressions in one variable `x` stand for the germs
//! they define as `x → 0⁺`. Germs are compared through truncated Laurent
//! expansions, differentiated symbolically, composed when entire, and fed to
//! a secant iteration for residual equations. The [`finite`] module carries
//! the irrational-rotation difference quotients and [`hindman`] the
//! monochromatic-sum search.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod calculus;
pub mod config;
pub mod error;
pub mod expr;
pub mod finite;
pub mod germ;
pub mod hindman;
pub mod real;
pub mod secant;
pub mod series;

pub use config::Config;
pub use error::{Error, Result};
pub use expr::Expr;
pub use germ::{HyperGerm, StdPart};
pub use real::{BigReal, Precision};
pub use series::LaurentSeries;
