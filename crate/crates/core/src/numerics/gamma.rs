use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{Context, Real};
use crate::error::{Error, Result};
use crate::series::{factorial, Rational};

/// `Gamma(x)` for positive rational `x`.
pub fn gamma_eval(x: &Rational, ctx: &Context) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::NonPositiveArgument);
    }
    Ok(gamma_positive(x, ctx))
}

/// `Gamma(x)` for any rational that is not a pole, by the functional
/// equation `Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1))`.
pub fn gamma_rational(x: &Rational, ctx: &Context) -> Result<Real> {
    if x.is_positive() {
        return Ok(gamma_positive(x, ctx));
    }
    if x.is_integer() {
        return Err(Error::GammaPole(format!("{x}")));
    }
    let shift = (-x.floor()).to_integer() + BigInt::one();
    let n = shift.to_u64().ok_or_else(|| Error::InvalidParameters("Gamma argument too negative".into()))?;
    let mut denom = x.clone();
    for k in 1..n {
        denom *= x + Rational::from_integer(BigInt::from(k));
    }
    let up = gamma_positive(&(x + Rational::from_integer(shift)), ctx);
    Ok(&up / &ctx.rational(&denom))
}

/// `1 / Gamma(x)`, zero at the poles.
pub fn recip_gamma(x: &Rational, ctx: &Context) -> Real {
    match gamma_rational(x, ctx) {
        Ok(g) => g.recip(),
        Err(_) => Real::zero(ctx.bits()),
    }
}

fn gamma_positive(x: &Rational, ctx: &Context) -> Real {
    if x.is_integer() {
        let n = x.to_integer().to_u64().expect("Gamma argument too large");
        return Real::from_int(factorial(n - 1), ctx.bits());
    }
    // Spouge's formula gives Gamma(z + 1) for Re z > 0.
    if x > &Rational::one() {
        spouge(&(x - Rational::one()), ctx)
    } else {
        &spouge(x, ctx) / &ctx.rational(x)
    }
}

/// `Gamma(z + 1)` by Spouge's approximation with the parameter chosen from
/// the working precision; the relative error is below `(2 pi)^-(a + 1/2)`.
fn spouge(z: &Rational, ctx: &Context) -> Real {
    let digits = ctx.policy().working_digits() + 5;
    // ln 10 / ln(2 pi) ~ 1.2531
    let a = (u64::from(digits) * 12531).div_ceil(10000) + 1;
    // The sum cancels roughly a * log2(2 pi) bits.
    let extra = (a * 266).div_ceil(100) as u32 + 32;
    let wide = ctx.widened(extra * 30103 / 100000 + 1);
    let p = wide.bits();

    let e = wide.exp(&Real::one(p));
    let mut e_pow = powi(&e, a - 1); // e^(a - k) for k = 1
    let zr = wide.rational(z);
    let two_pi = wide.pi().mul_pow2(1);
    let mut sum = wide.sqrt(&two_pi);
    let mut fact = BigInt::one(); // (k - 1)!
    for k in 1..a {
        let base = a - k;
        let base_real = Real::from_int(base, p);
        let mag = &Real::from_int(num_traits::pow(BigInt::from(base), (k - 1) as usize), p) * &base_real.sqrt();
        let mut ck = &(&mag * &e_pow) / &Real::from_int(fact.clone(), p);
        if k.is_even() {
            ck = -ck;
        }
        sum = &sum + &(&ck / &(&zr + &Real::from_int(k, p)));
        e_pow = &e_pow / &e;
        fact *= BigInt::from(k);
    }
    let shifted = &zr + &Real::from_int(a, p);
    let half = Real::ratio(1, 2, p);
    let log_term = &(&zr + &half) * &wide.ln(&shifted);
    let power = wide.exp(&(&log_term - &shifted));
    (&power * &sum).with_prec(ctx.bits())
}

fn powi(x: &Real, e: u64) -> Real {
    let mut acc = Real::one(x.prec());
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.square();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn close(a: &Real, b: &Real, ctx: &Context) -> bool {
        (a - b).abs() < ctx.contract_tolerance()
    }

    #[test]
    fn gamma_one_and_half() {
        let ctx = Context::with_digits(50);
        assert_eq!(gamma_eval(&int(1), &ctx).unwrap(), ctx.int(1));
        let g = gamma_eval(&rat(1, 2), &ctx).unwrap();
        assert!(close(&g, &ctx.sqrt(&ctx.pi()), &ctx));
    }

    #[test]
    fn reflection_quarter() {
        let ctx = Context::with_digits(50);
        let prod = &gamma_eval(&rat(1, 4), &ctx).unwrap() * &gamma_eval(&rat(3, 4), &ctx).unwrap();
        let expected = &ctx.pi() * &ctx.sqrt(&ctx.int(2));
        assert!(close(&prod, &expected, &ctx));
    }

    #[test]
    fn gamma_third_digits() {
        let ctx = Context::with_digits(40);
        let g = gamma_eval(&rat(1, 3), &ctx).unwrap();
        assert_eq!(g.to_decimal(30), "2.678938534707747633655692940975");
    }

    #[test]
    fn negative_arguments() {
        let ctx = Context::with_digits(40);
        assert_eq!(gamma_eval(&int(0), &ctx), Err(Error::NonPositiveArgument));
        assert!(matches!(gamma_rational(&int(-2), &ctx), Err(Error::GammaPole(_))));
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma_rational(&rat(-1, 2), &ctx).unwrap();
        let expected = -ctx.sqrt(&ctx.pi()).mul_pow2(1);
        assert!(close(&g, &expected, &ctx));
        assert!(recip_gamma(&int(-1), &ctx).is_zero());
    }

    #[test]
    fn large_argument_matches_factorial_ratio() {
        let ctx = Context::with_digits(40);
        // Gamma(15/2) = (13/2)(11/2)...(1/2) sqrt(pi)
        let g = gamma_eval(&rat(15, 2), &ctx).unwrap();
        let mut coeff = int(1);
        for k in 0..7 {
            coeff *= rat(2 * k + 1, 2);
        }
        let expected = &ctx.rational(&coeff) * &ctx.sqrt(&ctx.pi());
        assert!(close(&g, &expected, &ctx));
    }
}
