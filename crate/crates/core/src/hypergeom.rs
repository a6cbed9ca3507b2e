//! The Gauss function `2F1(a, b; c; z)` at arbitrary precision, two of its
//! transformation laws, and the hypergeometric inversions of `j` in the
//! signature-3 (`gamma`) and signature-2 (`lambda`) theories.
//!
//! Evaluation sums the defining series for `|z| <= 0.9`. Elsewhere in the
//! plane cut along `[1, oo)` it continues the solution of the hypergeometric
//! differential equation by Taylor steps along a path avoiding `0` and `1`.
//! Points on the cut itself are reached from a chosen side.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{gamma_rational, recip_gamma, Context, HPComplex, Real};
use crate::series::{int, rat, Rational};

/// Parameters `(a, b; c)` of `2F1`; `c` is never a nonpositive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F21Params {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl F21Params {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if is_nonpositive_integer(&c) {
            return Err(Error::InvalidParameters(format!("c = {c} is a nonpositive integer")));
        }
        Ok(Self { a, b, c })
    }

    /// Degree of the polynomial when `a` or `b` is a nonpositive integer.
    pub fn terminates(&self) -> Option<u64> {
        [&self.a, &self.b]
            .into_iter()
            .filter(|x| is_nonpositive_integer(x))
            .filter_map(|x| (-x).to_integer().to_u64())
            .min()
    }

    /// `(a + n)(b + n) / ((c + n)(n + 1))`, the ratio of consecutive terms.
    pub fn term_ratio(&self, n: u64) -> Rational {
        let n = int(n as i64);
        (&self.a + &n) * (&self.b + &n) / ((&self.c + &n) * (n + Rational::one()))
    }
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Side from which a point of a branch cut is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutSide {
    Above,
    Below,
}

impl CutSide {
    fn sign(self) -> i64 {
        match self {
            CutSide::Above => 1,
            CutSide::Below => -1,
        }
    }
}

/// The first `n` terms `(a)_k (b)_k / (c)_k * z^k / k!` in exact arithmetic.
pub fn f21_terms_exact(p: &F21Params, z: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n);
    let mut term = Rational::one();
    for k in 0..n {
        out.push(term.clone());
        term = term * p.term_ratio(k as u64) * z;
    }
    out
}

/// `2F1(a, b; c; z)` on the principal branch (the plane cut along `[1, oo)`).
///
/// Fails with `OutOfDomain` for `z` real and `> 1`, or `z = 1` when the
/// series diverges there.
pub fn f21_eval(p: &F21Params, z: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    eval_with_side(p, z, None, ctx)
}

/// Like [`f21_eval`], but a real `z > 1` is approached from `side`.
/// Points off the cut get the principal value.
pub fn f21_eval_boundary(p: &F21Params, z: &HPComplex, side: CutSide, ctx: &Context) -> Result<HPComplex> {
    eval_with_side(p, z, Some(side), ctx)
}

fn eval_with_side(p: &F21Params, z: &HPComplex, side: Option<CutSide>, ctx: &Context) -> Result<HPComplex> {
    let bits = ctx.bits();
    if z.is_zero() {
        return Ok(HPComplex::one(bits));
    }
    if p.terminates().is_some() {
        return direct_series(p, z, ctx, false).map(|(f, _)| f);
    }
    let one = Real::one(bits);
    if z.im.is_zero() && z.re >= one {
        if z.re == one {
            return gauss_at_one(p, ctx);
        }
        if side.is_none() {
            return Err(Error::OutOfDomain(format!("z = {} lies on the branch cut", z.re.to_decimal(6))));
        }
    }
    if z.norm_sqr() <= Real::ratio(81, 100, bits) {
        return direct_series(p, z, ctx, true).map(|(f, _)| f);
    }
    let sign = if z.im.is_positive() {
        1
    } else if z.im.is_negative() {
        -1
    } else {
        side.map_or(1, CutSide::sign)
    };
    continuation(p, z, sign, ctx)
}

/// Gauss's summation `Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))`.
fn gauss_at_one(p: &F21Params, ctx: &Context) -> Result<HPComplex> {
    let excess = &p.c - &p.a - &p.b;
    if !excess.is_positive() {
        return Err(Error::OutOfDomain("series diverges at z = 1".into()));
    }
    let num = &gamma_rational(&p.c, ctx)? * &gamma_rational(&excess, ctx)?;
    let v = &(&num * &recip_gamma(&(&p.c - &p.a), ctx)) * &recip_gamma(&(&p.c - &p.b), ctx);
    Ok(HPComplex::from_real(v))
}

/// Rough `log2 |z|`, `None` for zero.
fn cmag(z: &HPComplex) -> Option<i64> {
    match (z.re.magnitude(), z.im.magnitude()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

fn negligible(term: Option<i64>, sum: Option<i64>, bits: u32) -> bool {
    match (term, sum) {
        (None, _) => true,
        (Some(t), Some(s)) => t < s - i64::from(bits) - 4,
        (Some(_), None) => false,
    }
}

/// Sums the series and its derivative, `(F(z), F'(z))`.
fn direct_series(p: &F21Params, z: &HPComplex, ctx: &Context, stall_check: bool) -> Result<(HPComplex, HPComplex)> {
    let bits = ctx.bits();
    let stall_limit = 10 * u64::from(ctx.policy().working_digits());
    let max_terms = 64 * u64::from(bits) + 1000;
    let mut term = HPComplex::one(bits);
    let mut sum = HPComplex::one(bits);
    let mut dsum = HPComplex::zero(bits);
    let mut stalled = 0u64;
    let mut n = 0u64;
    loop {
        let ratio = p.term_ratio(n);
        if ratio.is_zero() {
            break;
        }
        let (num, den) = (ratio.numer().clone(), ratio.denom().clone());
        let prev_mag = cmag(&term);
        term = (&term * z).scale(&Real::from_int(num, bits));
        term = term.scale(&Real::from_int(den, bits).recip());
        n += 1;
        let weighted = term.scale(&Real::from_int(n, bits));
        sum = &sum + &term;
        dsum = &dsum + &weighted;
        let extra = 64 - n.leading_zeros() as i64;
        if negligible(cmag(&term).map(|m| m + extra), cmag(&sum), bits) {
            break;
        }
        if stall_check {
            if cmag(&term) >= prev_mag {
                stalled += 1;
                if stalled > stall_limit {
                    return Err(Error::NoConvergence(format!("terms stopped decreasing after {n} steps")));
                }
            } else {
                stalled = 0;
            }
        }
        if n > max_terms {
            return Err(Error::NoConvergence(format!("no convergence after {n} terms")));
        }
    }
    Ok((sum, &dsum / z))
}

/// Continues `(F, F')` from near the origin to `z` along a path through the
/// half-plane `sign * Im > 0` when `Re z > 1/2`, or a ray otherwise.
fn continuation(p: &F21Params, z: &HPComplex, sign: i64, ctx: &Context) -> Result<HPComplex> {
    let bits = ctx.bits();
    let (x, y) = (z.re.to_f64(), z.im.to_f64());
    let half = Real::ratio(1, 2, bits);
    let mut waypoints = Vec::new();
    let start = if x <= 0.5 {
        let r = libm::hypot(x, y);
        z.scale(&Real::from_f64(0.5 / r, bits))
    } else {
        if libm::fabs(y) < 0.5 {
            waypoints.push(HPComplex::new(z.re.clone(), Real::from_int(sign, bits).mul_pow2(-1)));
        }
        HPComplex::new(half.clone(), Real::from_int(sign, bits).mul_pow2(-1))
    };
    waypoints.push(z.clone());

    let (mut f, mut df) = direct_series(p, &start, ctx, true)?;
    let mut cur = start;
    let mut steps = 0u32;
    for target in waypoints {
        loop {
            let diff = &target - &cur;
            let len = diff.abs_f64();
            if len == 0.0 {
                break;
            }
            let to_zero = cur.abs_f64();
            let to_one = libm::hypot(cur.re.to_f64() - 1.0, cur.im.to_f64());
            let reach = 0.5 * to_zero.min(to_one);
            let last = len <= reach;
            let h = if last { diff } else { diff.scale(&Real::from_f64(reach / len, bits)) };
            (f, df) = taylor_step(p, &cur, &f, &df, &h, ctx)?;
            cur = if last { target.clone() } else { &cur + &h };
            steps += 1;
            if steps > 100_000 {
                return Err(Error::NoConvergence("continuation path too long".into()));
            }
            if last {
                break;
            }
        }
    }
    Ok(f)
}

/// One Taylor step of `z(1-z) F'' + (c - (a+b+1) z) F' - ab F = 0` from `z0`
/// to `z0 + h`, returning `(F, F')` there.
///
/// With `u_k = e_k h^k` for the Taylor coefficients `e_k` at `z0`:
/// `u_{k+2} (k+2)(k+1) = -(k+1)(A1 k + B0) (h/A0) u_{k+1} + (k+a)(k+b) (h^2/A0) u_k`
/// where `A0 = z0(1-z0)`, `A1 = 1 - 2 z0`, `B0 = c - (a+b+1) z0`.
fn taylor_step(
    p: &F21Params,
    z0: &HPComplex,
    f: &HPComplex,
    df: &HPComplex,
    h: &HPComplex,
    ctx: &Context,
) -> Result<(HPComplex, HPComplex)> {
    let bits = ctx.bits();
    let one = HPComplex::one(bits);
    let a0 = z0 * &(&one - z0);
    let a1 = &one - &z0.mul_pow2(1);
    let b0 = &HPComplex::from_rational(&p.c, bits) - &z0.scale(&ctx.rational(&(&p.a + &p.b + Rational::one())));
    let h_a0 = h / &a0;
    let h2_a0 = h * &h_a0;
    let mut u0 = f.clone();
    let mut u1 = df * h;
    let mut sum = &u0 + &u1;
    let mut dsum = u1.clone();
    let max_terms = 16 * u64::from(bits) + 1000;
    let mut k = 0u64;
    loop {
        let kk = int(k as i64);
        let lin = &a1.scale(&Real::from_int(k, bits)) + &b0;
        let first = (&(&lin * &h_a0) * &u1).scale(&Real::from_int(k + 1, bits));
        let quad = (&p.a + &kk) * (&p.b + &kk);
        let second = (&h2_a0 * &u0).scale(&ctx.rational(&quad));
        let u2 = (&second - &first).scale(&Real::from_int((k + 2) * (k + 1), bits).recip());
        sum = &sum + &u2;
        dsum = &dsum + &u2.scale(&Real::from_int(k + 2, bits));
        let extra = 64 - (k + 2).leading_zeros() as i64;
        let small = |u: &HPComplex| negligible(cmag(u).map(|m| m + extra), cmag(&sum), bits);
        if small(&u1) && small(&u2) {
            break;
        }
        u0 = u1;
        u1 = u2;
        k += 1;
        if k > max_terms {
            return Err(Error::NoConvergence("Taylor step did not converge".into()));
        }
    }
    Ok((sum, &dsum / h))
}

fn check_gamma_args(args: &[&Rational]) -> Result<()> {
    match args.iter().find(|x| is_nonpositive_integer(x)) {
        Some(x) => Err(Error::GammaPole(format!("Gamma({x})"))),
        None => Ok(()),
    }
}

fn gamma_prod(num: &[&Rational], den: &[&Rational], ctx: &Context) -> Result<Real> {
    let mut v = ctx.int(1);
    for x in num {
        v = &v * &gamma_rational(x, ctx)?;
    }
    for x in den {
        v = &v / &gamma_rational(x, ctx)?;
    }
    Ok(v)
}

/// `exp(e * L)` for a logarithm `L`.
fn power_from_log(log: &HPComplex, e: &Rational, ctx: &Context) -> HPComplex {
    ctx.cexp(&log.scale(&ctx.rational(e)))
}

/// Continuation of `2F1(a, b; c; z)` from a neighbourhood of `oo`:
///
/// ```text
/// G(1-b)G(c) / (G(a-b+1)G(c-a)) (1/z)^a 2F1(a-c+1, a; a-b+1; 1/z)
///   + G(1-b)G(c) / (G(a)G(c-a-b+1)) (1-1/z)^(c-a-b) (-1/z)^b 2F1(c-a, 1-a; c-a-b+1; 1-1/z)
/// ```
///
/// with principal powers, valid for `|arg z| < pi`.
pub fn transform_15_10_33(p: &F21Params, z: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    if z.im.is_zero() && !z.re.is_positive() {
        return Err(Error::OutOfDomain("transformation needs |arg z| < pi".into()));
    }
    let log_z = ctx.cln(z)?;
    transform_with_log(p, z, &log_z, None, ctx)
}

/// [`transform_15_10_33`] at a negative real `z` approached from `side`;
/// used where the defining series is evaluated at `-t^3 -+ i0`.
pub fn transform_15_10_33_boundary(p: &F21Params, z: &HPComplex, side: CutSide, ctx: &Context) -> Result<HPComplex> {
    if !(z.im.is_zero() && z.re.is_negative()) {
        return transform_15_10_33(p, z, ctx);
    }
    let arg = match side {
        CutSide::Above => ctx.pi(),
        CutSide::Below => -ctx.pi(),
    };
    let log_z = HPComplex::new(ctx.ln(&z.re.abs()), arg);
    // 1 - 1/z lies on (1, oo), on the same side as z.
    transform_with_log(p, z, &log_z, Some(side), ctx)
}

fn transform_with_log(
    p: &F21Params,
    z: &HPComplex,
    log_z: &HPComplex,
    inner_side: Option<CutSide>,
    ctx: &Context,
) -> Result<HPComplex> {
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let one = Rational::one();
    let one_minus_b = &one - b;
    let a_minus_b_1 = a - b + &one;
    let c_minus_a = c - a;
    let excess = c - a - b;
    let excess_1 = &excess + &one;
    check_gamma_args(&[&one_minus_b, c, &a_minus_b_1, &c_minus_a, a, &excess_1])?;

    let bits = ctx.bits();
    let inv_z = z.recip();
    let w = &HPComplex::one(bits) - &inv_z;

    let k1 = gamma_prod(&[&one_minus_b, c], &[&a_minus_b_1, &c_minus_a], ctx)?;
    let f1 = f21_eval(&F21Params::new(a - c + &one, a.clone(), a_minus_b_1.clone())?, &inv_z, ctx)?;
    // (1/z)^a = exp(-a Log z) off the negative axis, and by the same limit on it.
    let first = (&power_from_log(log_z, &-a, ctx) * &f1).scale(&k1);

    let k2 = gamma_prod(&[&one_minus_b, c], &[a, &excess_1], ctx)?;
    let p2 = F21Params::new(c_minus_a.clone(), &one - a, excess_1.clone())?;
    let f2 = match inner_side {
        Some(side) => f21_eval_boundary(&p2, &w, side, ctx)?,
        None => f21_eval(&p2, &w, ctx)?,
    };
    let log_w = ctx.cln(&w)?;
    // -1/z: principal logarithm is Log z - i pi sign(arg z), so it never
    // needs the cut convention.
    let neg_inv = -&inv_z;
    let log_neg_inv = if neg_inv.im.is_zero() && neg_inv.re.is_positive() {
        HPComplex::from_real(ctx.ln(&neg_inv.re))
    } else {
        ctx.cln(&neg_inv)?
    };
    let powers = &power_from_log(&log_w, &excess, ctx) * &power_from_log(&log_neg_inv, b, ctx);
    let second = (&powers * &f2).scale(&k2);
    Ok(&first + &second)
}

/// `2F1(a, b; 1/2; z)` through
/// `[F(2a, 2b; a+b+1/2; (1-sqrt z)/2) + F(2a, 2b; a+b+1/2; (1+sqrt z)/2)]`
/// divided by `2 G(1/2) G(a+b+1/2) / (G(a+1/2) G(b+1/2))`.
pub fn transform_quadratic_plus(p: &F21Params, z: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    if p.c != rat(1, 2) {
        return Err(Error::InvalidParameters("quadratic transformation needs c = 1/2".into()));
    }
    let half = rat(1, 2);
    let (a, b) = (&p.a, &p.b);
    let a_half = a + &half;
    let b_half = b + &half;
    let ab_half = a + b + &half;
    check_gamma_args(&[&a_half, &b_half, &ab_half])?;
    let inner = F21Params::new(a * int(2), b * int(2), ab_half.clone())?;
    let (lo, hi) = half_points(z, ctx)?;
    let sum = &f21_eval(&inner, &lo, ctx)? + &f21_eval(&inner, &hi, ctx)?;
    let k = gamma_prod(&[&a_half, &b_half], &[&half, &ab_half], ctx)?.mul_pow2(-1);
    Ok(sum.scale(&k))
}

/// `2F1(a, b; 3/2; z)` through
/// `[F(2a-1, 2b-1; a+b-1/2; (1-sqrt z)/2) - F(2a-1, 2b-1; a+b-1/2; (1+sqrt z)/2)]`
/// divided by `2 sqrt(z) G(-1/2) G(a+b-1/2) / (G(a-1/2) G(b-1/2))`.
pub fn transform_quadratic_minus(p: &F21Params, z: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    if p.c != rat(3, 2) {
        return Err(Error::InvalidParameters("quadratic transformation needs c = 3/2".into()));
    }
    if z.is_zero() {
        return Ok(HPComplex::one(ctx.bits()));
    }
    let half = rat(1, 2);
    let (a, b) = (&p.a, &p.b);
    let a_half = a - &half;
    let b_half = b - &half;
    let ab_half = a + b - &half;
    check_gamma_args(&[&a_half, &b_half, &ab_half])?;
    let inner = F21Params::new(a * int(2) - int(1), b * int(2) - int(1), ab_half.clone())?;
    let (lo, hi) = half_points(z, ctx)?;
    let diff = &f21_eval(&inner, &lo, ctx)? - &f21_eval(&inner, &hi, ctx)?;
    let k = gamma_prod(&[&a_half, &b_half], &[&rat(-1, 2), &ab_half], ctx)?.mul_pow2(-1);
    let root = ctx.csqrt(z);
    Ok((&diff / &root).scale(&k))
}

/// `((1 - sqrt z)/2, (1 + sqrt z)/2)` with the principal root.
fn half_points(z: &HPComplex, ctx: &Context) -> Result<(HPComplex, HPComplex)> {
    if z.im.is_zero() && z.re.is_negative() {
        return Err(Error::OutOfDomain("quadratic transformation needs |arg z| < pi".into()));
    }
    let root = ctx.csqrt(z).mul_pow2(-1);
    let half = HPComplex::from_real(Real::ratio(1, 2, ctx.bits()));
    Ok((&half - &root, &half + &root))
}

fn ratio_of_periods(p: &F21Params, x: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let one = HPComplex::one(ctx.bits());
    let den = f21_eval(p, x, ctx)?;
    if cmag(&den).is_none_or(|m| m < -i64::from(ctx.bits()) + 8) {
        return Err(Error::DivisionByZero);
    }
    let num = f21_eval(p, &(&one - x), ctx)?;
    Ok(&num / &den)
}

/// `tau = (i / sqrt 3) F(1/3, 2/3; 1; 1 - gamma) / F(1/3, 2/3; 1; gamma)`.
pub fn tau_from_gamma(gamma: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let p = F21Params::new(rat(1, 3), rat(2, 3), int(1))?;
    let r = ratio_of_periods(&p, gamma, ctx)?;
    let k = ctx.sqrt(&ctx.int(3)).recip();
    Ok(r.mul_i().scale(&k))
}

/// `tau = i F(1/2, 1/2; 1; 1 - lambda) / F(1/2, 1/2; 1; lambda)`.
pub fn tau_from_lambda(lambda: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let p = F21Params::new(rat(1, 2), rat(1, 2), int(1))?;
    Ok(ratio_of_periods(&p, lambda, ctx)?.mul_i())
}

/// `j = 27 (1 + 8 gamma)^3 / (gamma (1 - gamma)^3)`, exactly.
pub fn j_from_gamma(gamma: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let den = gamma * num_traits::pow(&one - gamma, 3);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(int(27) * num_traits::pow(one + gamma * int(8), 3) / den)
}

/// `j = 256 (1 - lambda + lambda^2)^3 / (lambda^2 (1 - lambda)^2)`, exactly.
pub fn j_from_lambda(lambda: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let den = num_traits::pow(lambda * (&one - lambda), 2);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(int(256) * num_traits::pow(&one - lambda + lambda * lambda, 3) / den)
}

/// Numerical [`j_from_gamma`].
pub fn j_from_gamma_numeric(gamma: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let one = HPComplex::one(ctx.bits());
    let den = gamma * &(&one - gamma).powi(3);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    let num = (&one + &gamma.mul_pow2(3)).powi(3).scale(&ctx.int(27));
    Ok(&num / &den)
}

/// Numerical [`j_from_lambda`].
pub fn j_from_lambda_numeric(lambda: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let one = HPComplex::one(ctx.bits());
    let den = (lambda * &(&one - lambda)).square();
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    let num = (&(&one - lambda) + &lambda.square()).powi(3).scale(&ctx.int(256));
    Ok(&num / &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::with_digits(40)
    }

    fn params(a: Rational, b: Rational, c: Rational) -> F21Params {
        F21Params::new(a, b, c).unwrap()
    }

    fn close(x: &HPComplex, y: &HPComplex, ctx: &Context) -> bool {
        x.dist(y) < ctx.contract_tolerance()
    }

    fn c(re: f64, im: f64, ctx: &Context) -> HPComplex {
        HPComplex::new(Real::from_f64(re, ctx.bits()), Real::from_f64(im, ctx.bits()))
    }

    #[test]
    fn value_at_origin_and_log_closed_form() {
        let ctx = ctx();
        let p = params(int(1), int(1), int(2));
        assert_eq!(f21_eval(&p, &HPComplex::zero(ctx.bits()), &ctx).unwrap(), HPComplex::one(ctx.bits()));
        let v = f21_eval(&p, &ctx.complex(&rat(1, 2), &int(0)), &ctx).unwrap();
        let expected = HPComplex::from_real(ctx.ln(&ctx.int(2)).mul_pow2(1));
        assert!(close(&v, &expected, &ctx));
    }

    #[test]
    fn log_closed_form_after_continuation() {
        // -ln(1 - z)/z at z = -3 + 2i and near the cut at 3 - 0.1i.
        let ctx = ctx();
        let p = params(int(1), int(1), int(2));
        for z in [c(-3.0, 2.0, &ctx), c(3.0, -0.1, &ctx), c(0.95, 0.0, &ctx)] {
            let one = HPComplex::one(ctx.bits());
            let expected = -&(&ctx.cln(&(&one - &z)).unwrap() / &z);
            assert!(close(&f21_eval(&p, &z, &ctx).unwrap(), &expected, &ctx), "{z:?}");
        }
    }

    #[test]
    fn cut_values_from_each_side() {
        // -ln(1 - x -+ i0)/x for x = 3: ln 2 -+ i pi, over -3.
        let ctx = ctx();
        let p = params(int(1), int(1), int(2));
        let z = ctx.complex(&int(3), &int(0));
        assert!(matches!(f21_eval(&p, &z, &ctx), Err(Error::OutOfDomain(_))));
        let above = f21_eval_boundary(&p, &z, CutSide::Above, &ctx).unwrap();
        let below = f21_eval_boundary(&p, &z, CutSide::Below, &ctx).unwrap();
        let third = ctx.ratio(1, 3);
        let re = &ctx.ln(&ctx.int(2)) * &third;
        let im = &ctx.pi() * &third;
        assert!(close(&above, &HPComplex::new(-&re, im.clone()), &ctx));
        assert!(close(&below, &HPComplex::new(-&re, -im), &ctx));
    }

    #[test]
    fn gauss_summation_at_one() {
        // 2F1(1/4, 1/4; 1; 1) = G(1/2) / G(3/4)^2
        let ctx = ctx();
        let p = params(rat(1, 4), rat(1, 4), int(1));
        let v = f21_eval(&p, &HPComplex::one(ctx.bits()), &ctx).unwrap();
        let g34 = gamma_rational(&rat(3, 4), &ctx).unwrap();
        let expected = &ctx.sqrt(&ctx.pi()) / &g34.square();
        assert!(close(&v, &HPComplex::from_real(expected), &ctx));
        let log_case = params(rat(1, 2), rat(1, 2), int(1));
        assert!(f21_eval(&log_case, &HPComplex::one(ctx.bits()), &ctx).is_err());
    }

    #[test]
    fn terminating_series_anywhere() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let ctx = ctx();
        let p = params(int(-2), rat(1, 3), rat(1, 2));
        let z = rat(7, 1);
        let exact = int(1) - int(2) * rat(1, 3) * &z / rat(1, 2) + rat(1, 3) * rat(4, 3) * &z * &z / (rat(1, 2) * rat(3, 2));
        let v = f21_eval(&p, &ctx.complex(&z, &int(0)), &ctx).unwrap();
        assert!(close(&v, &ctx.complex(&exact, &int(0)), &ctx));
        assert_eq!(p.terminates(), Some(2));
    }

    #[test]
    fn term_ratio_matches_pochhammer() {
        let p = params(rat(1, 3), rat(2, 3), rat(5, 4));
        let z = rat(-2, 7);
        let terms = f21_terms_exact(&p, &z, 8);
        let poch = |q: &Rational, n: usize| (0..n).fold(Rational::one(), |acc, k| acc * (q + int(k as i64)));
        for (n, t) in terms.iter().enumerate() {
            let fact = (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k));
            let expected = poch(&p.a, n) * poch(&p.b, n) / (poch(&p.c, n) * fact) * num_traits::pow(z.clone(), n);
            assert_eq!(t, &expected);
        }
    }

    #[test]
    fn nonpositive_c_rejected() {
        assert!(F21Params::new(int(1), int(1), int(-3)).is_err());
        assert!(F21Params::new(int(1), int(1), int(0)).is_err());
    }

    #[test]
    fn transform_matches_direct_evaluation() {
        let ctx = ctx();
        let p = params(rat(1, 5), rat(-9, 20), rat(3, 5));
        for z in [c(-2.0, 0.5, &ctx), c(0.3, 0.4, &ctx), c(-0.3, -2.0, &ctx), c(2.0, -0.1, &ctx)] {
            let t = transform_15_10_33(&p, &z, &ctx).unwrap();
            assert!(close(&t, &f21_eval(&p, &z, &ctx).unwrap(), &ctx), "{z:?}");
        }
    }

    #[test]
    fn transform_pole_detected() {
        let ctx = ctx();
        // 1 - b = 0
        let p = params(rat(1, 3), int(1), rat(2, 3));
        assert!(matches!(transform_15_10_33(&p, &c(-2.0, 1.0, &ctx), &ctx), Err(Error::GammaPole(_))));
    }

    #[test]
    fn transform_on_the_negative_axis() {
        // Both one-sided limits agree with the series at z = -1/8.
        let ctx = ctx();
        let p = params(rat(1, 3), rat(1, 3), rat(2, 3));
        let z = ctx.complex(&rat(-1, 8), &int(0));
        let direct = f21_eval(&p, &z, &ctx).unwrap();
        for side in [CutSide::Below, CutSide::Above] {
            assert!(close(&transform_15_10_33_boundary(&p, &z, side, &ctx).unwrap(), &direct, &ctx));
        }
        assert!(transform_15_10_33(&p, &z, &ctx).is_err());
    }

    #[test]
    fn quadratic_transforms() {
        let ctx = ctx();
        let z = ctx.complex(&rat(4, 9), &int(0));
        let p = params(rat(1, 4), rat(1, 4), rat(1, 2));
        let q = params(rat(3, 4), rat(3, 4), rat(3, 2));
        for (tr, p) in [(transform_quadratic_plus as fn(&_, &_, &_) -> _, p), (transform_quadratic_minus, q)] {
            let direct = f21_eval(&p, &z, &ctx).unwrap();
            assert!(close(&tr(&p, &z, &ctx).unwrap(), &direct, &ctx));
        }
        let q = params(rat(3, 4), rat(3, 4), rat(3, 2));
        assert_eq!(transform_quadratic_minus(&q, &HPComplex::zero(ctx.bits()), &ctx).unwrap(), HPComplex::one(ctx.bits()));
    }

    #[test]
    fn inversion_formulae_exact() {
        assert_eq!(j_from_lambda(&rat(1, 2)), Ok(int(1728)));
        assert_eq!(j_from_gamma(&rat(1, 2)), Ok(int(54000)));
        assert_eq!(j_from_lambda(&rat(2, 7)), j_from_lambda(&rat(5, 7)));
        assert_eq!(j_from_gamma(&int(1)), Err(Error::PoleInput));
        assert_eq!(j_from_lambda(&int(0)), Err(Error::PoleInput));
    }

    #[test]
    fn tau_at_symmetric_points() {
        let ctx = ctx();
        let half = ctx.complex(&rat(1, 2), &int(0));
        let tau = tau_from_lambda(&half, &ctx).unwrap();
        assert!(close(&tau, &ctx.i(), &ctx));
        let tau = tau_from_gamma(&half, &ctx).unwrap();
        let expected = HPComplex::new(ctx.int(0), ctx.sqrt(&ctx.int(3)).recip());
        assert!(close(&tau, &expected, &ctx));
        // Escapes to the cusp as gamma -> 0.
        let small = tau_from_gamma(&ctx.complex(&rat(1, 100), &int(0)), &ctx).unwrap();
        assert!(small.im > tau.im);
    }

    #[test]
    fn numeric_inversions_match_exact() {
        let ctx = ctx();
        let g = rat(2, 9);
        let v = j_from_gamma_numeric(&ctx.complex(&g, &int(0)), &ctx).unwrap();
        assert!(close(&v, &ctx.complex(&j_from_gamma(&g).unwrap(), &int(0)), &ctx));
        let l = rat(3, 7);
        let v = j_from_lambda_numeric(&ctx.complex(&l, &int(0)), &ctx).unwrap();
        let expected = ctx.complex(&j_from_lambda(&l).unwrap(), &int(0));
        assert!(v.dist(&expected) < &ctx.contract_tolerance() * &ctx.int(10000));
    }
}
