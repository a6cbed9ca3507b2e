//! Elliptic expansions of Klein's `j`-function at the CM points `rho` and `i`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`series`]: exact truncated power series and polynomials over `Q`.
//! * [`numerics`]: binary arbitrary-precision reals and complex numbers,
//!   elementary functions, Gamma, and rational reconstruction.
//! * [`hypergeom`]: the Gauss function `2F1`, its transformation laws and the
//!   two hypergeometric inversion formulae for `j`.
//! * [`modular`]: `q`-series, numerical `j`, uniformizing maps, periods and
//!   the elliptic expansions `b_rho(n)`, `b_i(n)`.
//! * [`engine`]: flat coordinates and the checks of the identities
//!   `j(s^{-1}(c(t))) = R(t)`, exact and numeric, including the six
//!   branch sectors of the `rho` case.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod engine;
pub mod error;
pub mod hypergeom;
pub mod modular;
pub mod numerics;
pub mod series;

pub use error::{Error, Result};
pub use numerics::{Context, HPComplex, PrecisionPolicy, Real};
pub use series::{Polynomial, Rational, TruncatedSeries};
