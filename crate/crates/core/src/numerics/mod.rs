//! Binary big-float reals and complexes, elementary functions, Gamma at
//! rational arguments, and rational reconstruction.

mod complex;
mod context;
mod gamma;
mod real;
mod reconstruct;

pub use complex::HPComplex;
pub use context::{digits_to_bits, Context, PrecisionPolicy};
pub use gamma::{gamma_eval, gamma_rational, recip_gamma};
pub use real::Real;
pub use reconstruct::{rational_reconstruct, rational_reconstruct_within, simplest_between};

use crate::error::Result;
use crate::series::Rational;

pub fn const_pi(ctx: &Context) -> HPComplex {
    HPComplex::from_real(ctx.pi())
}

/// `rho = exp(pi i / 3) = (1 + i sqrt 3) / 2`.
pub fn const_rho(ctx: &Context) -> HPComplex {
    let half = Real::ratio(1, 2, ctx.bits());
    let im = ctx.sqrt(&ctx.int(3)).mul_pow2(-1);
    HPComplex::new(half, im)
}

/// `exp(a Log z)` on the principal branch, `arg z` in `(-pi, pi]`.
pub fn complex_pow_principal(z: &HPComplex, a: &Rational, ctx: &Context) -> Result<HPComplex> {
    ctx.cpow(z, a)
}
