use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use super::{HPComplex, Real};
use crate::error::{Error, Result};
use crate::series::Rational;

/// Requested accuracy: `target_digits` decimal digits, computed internally
/// with `guard_digits` (at least 10) plus `extra_digits` more.
///
/// Results are meant to be good to `target_digits - guard_digits` digits;
/// the guard allowance is a heuristic, not a certified error bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub target_digits: u32,
    pub guard_digits: u32,
    pub extra_digits: u32,
}

impl PrecisionPolicy {
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const DEFAULT_GUARD: u32 = 15;
    pub const MIN_GUARD: u32 = 10;

    pub fn new(target_digits: u32) -> Self {
        Self { target_digits, guard_digits: Self::DEFAULT_GUARD, extra_digits: 0 }
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Self {
        Self { target_digits, guard_digits: guard_digits.max(Self::MIN_GUARD), extra_digits: 0 }
    }

    /// Adds one working digit per ten series terms that will be summed.
    pub fn for_series_terms(self, terms: usize) -> Self {
        Self { extra_digits: self.extra_digits.max((terms / 10) as u32), ..self }
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits + self.extra_digits
    }

    /// Digits the results are expected to carry, `D - G` (never below 1).
    pub fn contract_digits(&self) -> u32 {
        self.target_digits.saturating_sub(self.guard_digits).max(1)
    }

    pub fn working_bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DIGITS)
    }
}

/// Bits needed to represent `digits` decimal digits, plus a few spare.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((u64::from(digits) * 3_321_929).div_ceil(1_000_000) + 8) as u32
}

/// A precision policy together with the constants every elementary function
/// needs, computed once. Immutable, so it can be shared across threads.
#[derive(Clone, Debug)]
pub struct Context {
    policy: PrecisionPolicy,
    bits: u32,
    pi: Real,
    ln2: Real,
}

const CONST_GUARD: u32 = 64;
const FN_GUARD: u32 = 32;

impl Context {
    pub fn new(policy: PrecisionPolicy) -> Self {
        let bits = policy.working_bits();
        Self { policy, bits, pi: pi_fixed(bits + CONST_GUARD), ln2: ln2_fixed(bits + CONST_GUARD) }
    }

    pub fn with_digits(target_digits: u32) -> Self {
        Self::new(PrecisionPolicy::new(target_digits))
    }

    pub fn policy(&self) -> PrecisionPolicy {
        self.policy
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Context for the same target with more working digits.
    pub fn widened(&self, extra_digits: u32) -> Self {
        let mut policy = self.policy;
        policy.extra_digits += extra_digits;
        Self::new(policy)
    }

    pub fn int(&self, n: i64) -> Real {
        Real::from_int(n, self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Real::ratio(num, den, self.bits)
    }

    pub fn rational(&self, q: &Rational) -> Real {
        Real::from_rational(q, self.bits)
    }

    pub fn complex(&self, re: &Rational, im: &Rational) -> HPComplex {
        HPComplex::from_rationals(re, im, self.bits)
    }

    pub fn cint(&self, n: i64) -> HPComplex {
        HPComplex::from_int(n, self.bits)
    }

    pub fn i(&self) -> HPComplex {
        HPComplex::i(self.bits)
    }

    /// `10^(-k)` at working precision.
    pub fn pow10_neg(&self, k: u32) -> Real {
        let p = num_traits::pow(BigInt::from(10), k as usize);
        Real::one(self.bits) / Real::from_int(p, self.bits)
    }

    /// The contract tolerance `10^(-(D-G))`.
    pub fn contract_tolerance(&self) -> Real {
        self.pow10_neg(self.policy.contract_digits())
    }

    pub fn pi(&self) -> Real {
        self.pi.with_prec(self.bits)
    }

    fn pi_at(&self, prec: u32) -> Real {
        if prec <= self.pi.prec() {
            self.pi.with_prec(prec)
        } else {
            pi_fixed(prec)
        }
    }

    fn ln2_at(&self, prec: u32) -> Real {
        if prec <= self.ln2.prec() {
            self.ln2.with_prec(prec)
        } else {
            ln2_fixed(prec)
        }
    }

    fn out_prec(&self, x: &Real) -> u32 {
        self.bits.max(x.prec())
    }

    pub fn sqrt(&self, x: &Real) -> Real {
        x.with_prec(self.out_prec(x)).sqrt()
    }

    pub fn exp(&self, x: &Real) -> Real {
        let out = self.out_prec(x);
        let Some(mag) = x.magnitude() else {
            return Real::one(out);
        };
        let halvings = ((out as u64).sqrt() / 2).max(4) as i64;
        let p = out + FN_GUARD + halvings as u32 + mag.max(0) as u32;
        let x = x.with_prec(p);
        let ln2 = self.ln2_at(p);
        let k = (&x / &ln2).round();
        let k_i64 = k.to_i64().expect("exp argument out of range");
        let r = (&x - &(&ln2 * &Real::from_int(k, p))).mul_pow2(-halvings);
        let mut sum = Real::one(p);
        let mut term = Real::one(p);
        let mut n = 1i64;
        loop {
            term = &(&term * &r) / &Real::from_int(n, p);
            if term.is_zero() || term.magnitude().unwrap() < -(i64::from(p) + 2) {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        for _ in 0..halvings {
            sum = sum.square();
        }
        sum.mul_pow2(k_i64).with_prec(out)
    }

    /// Natural logarithm of a positive value.
    ///
    /// # Panics
    /// If `x <= 0`.
    pub fn ln(&self, x: &Real) -> Real {
        assert!(x.is_positive(), "logarithm of a nonpositive Real");
        let out = self.out_prec(x);
        let p = out + FN_GUARD;
        let mut k = x.magnitude().unwrap();
        let mut f = x.with_prec(p).mul_pow2(-k);
        // f in [1/2, 1); move it to [1/sqrt2, sqrt2) so |y| <= 0.172.
        if f < Real::ratio(7071, 10000, 32) {
            f = f.mul_pow2(1);
            k -= 1;
        }
        let one = Real::one(p);
        let y = &(&f - &one) / &(&f + &one);
        let y2 = y.square();
        let mut sum = y.clone();
        let mut pow = y;
        let mut n = 1i64;
        loop {
            pow = &pow * &y2;
            let term = &pow / &Real::from_int(2 * n + 1, p);
            if term.is_zero() || term.magnitude().unwrap() < -(i64::from(p) + 2) {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        let ln2 = self.ln2_at(p + 64);
        (&sum.mul_pow2(1) + &(&ln2 * &Real::from_int(k, p + 64))).with_prec(out)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self, x: &Real) -> (Real, Real) {
        let out = self.out_prec(x);
        let Some(mag) = x.magnitude() else {
            return (Real::zero(out), Real::one(out));
        };
        let halvings = ((out as u64).sqrt() / 2).max(4) as i64;
        let p = out + FN_GUARD + 2 * halvings as u32;
        let two_pi = self.pi_at(p + mag.max(0) as u32 + 8).mul_pow2(1);
        let x = x.with_prec(p + mag.max(0) as u32);
        let k = (&x / &two_pi).round();
        let r = (&x - &(&two_pi * &Real::from_int(k, two_pi.prec()))).with_prec(p).mul_pow2(-halvings);
        let r2 = r.square();
        let mut sin = r.clone();
        let mut cos = Real::one(p);
        let limit = -(i64::from(p) + 2);
        let mut term = r;
        let mut n = 1i64;
        loop {
            term = -(&(&term * &r2) / &Real::from_int((2 * n) * (2 * n + 1), p));
            if term.is_zero() || term.magnitude().unwrap() < limit {
                break;
            }
            sin = &sin + &term;
            n += 1;
        }
        // cos from its own Taylor series: sum (-1)^n r^(2n)/(2n)!
        let mut cterm = Real::one(p);
        let mut m = 1i64;
        loop {
            cterm = -(&(&cterm * &r2) / &Real::from_int((2 * m - 1) * (2 * m), p));
            if cterm.is_zero() || cterm.magnitude().unwrap() < limit {
                break;
            }
            cos = &cos + &cterm;
            m += 1;
        }
        for _ in 0..halvings {
            let s2 = (&sin * &cos).mul_pow2(1);
            let c2 = &(&cos - &sin) * &(&cos + &sin);
            sin = s2;
            cos = c2;
        }
        (sin.with_prec(out), cos.with_prec(out))
    }

    pub fn atan(&self, x: &Real) -> Real {
        let out = self.out_prec(x);
        if x.is_zero() {
            return Real::zero(out);
        }
        let p = out + FN_GUARD + 8;
        let one = Real::one(p);
        if x.abs() > one {
            let half_pi = self.pi_at(p).mul_pow2(-1);
            let inner = self.atan(&x.with_prec(p).recip());
            let signed_half_pi = if x.is_negative() { -half_pi } else { half_pi };
            return (&signed_half_pi - &inner).with_prec(out);
        }
        let mut y = x.with_prec(p);
        let halvings = 4;
        for _ in 0..halvings {
            let root = (&one + &y.square()).sqrt();
            y = &y / &(&one + &root);
        }
        let y2 = y.square();
        let mut sum = y.clone();
        let mut pow = y;
        let mut n = 1i64;
        loop {
            pow = -(&pow * &y2);
            let term = &pow / &Real::from_int(2 * n + 1, p);
            if term.is_zero() || term.magnitude().unwrap() < -(i64::from(p) + 2) {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        sum.mul_pow2(halvings).with_prec(out)
    }

    /// Angle of `(x, y)` in `(-pi, pi]`; 0 for the origin.
    pub fn atan2(&self, y: &Real, x: &Real) -> Real {
        let out = self.bits.max(x.prec()).max(y.prec());
        if x.is_zero() {
            let half_pi = self.pi_at(out).mul_pow2(-1);
            return match y.signum() {
                0 => Real::zero(out),
                1 => half_pi,
                _ => -half_pi,
            };
        }
        let p = out + 8;
        let base = self.atan(&(&y.with_prec(p) / &x.with_prec(p)));
        if x.is_positive() {
            return base.with_prec(out);
        }
        let pi = self.pi_at(p);
        let shifted = if y.is_negative() { &base - &pi } else { &base + &pi };
        shifted.with_prec(out)
    }

    pub fn arg(&self, z: &HPComplex) -> Real {
        self.atan2(&z.im, &z.re)
    }

    pub fn cexp(&self, z: &HPComplex) -> HPComplex {
        let m = self.exp(&z.re);
        if z.im.is_zero() {
            return HPComplex::from_real(m);
        }
        let (s, c) = self.sin_cos(&z.im);
        HPComplex::new(&m * &c, &m * &s)
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn cln(&self, z: &HPComplex) -> Result<HPComplex> {
        if z.is_zero() {
            return Err(Error::ZeroBase);
        }
        let re = self.ln(&z.norm_sqr()).mul_pow2(-1);
        Ok(HPComplex::new(re, self.arg(z)))
    }

    /// Principal square root (argument in `(-pi/2, pi/2]`).
    pub fn csqrt(&self, z: &HPComplex) -> HPComplex {
        if z.is_zero() {
            return z.clone();
        }
        let r = z.abs();
        let a = (&r + &z.re).mul_pow2(-1).sqrt();
        let b = (&r - &z.re).mul_pow2(-1).sqrt();
        if z.im.is_negative() {
            HPComplex::new(a, -b)
        } else {
            HPComplex::new(a, b)
        }
    }

    /// `exp(a * Log z)` on the principal branch. Integer exponents are done
    /// by repeated multiplication.
    pub fn cpow(&self, z: &HPComplex, a: &Rational) -> Result<HPComplex> {
        if z.is_zero() {
            return Err(Error::ZeroBase);
        }
        if a.is_integer() {
            let n = a.to_integer();
            let e = n.magnitude().to_u32().ok_or_else(|| Error::InvalidParameters("exponent too large".into()))?;
            let p = z.powi(e);
            return Ok(if n < BigInt::zero() { p.recip() } else { p });
        }
        if a.denom() == &BigInt::from(2) && a.numer() == &BigInt::one() {
            return Ok(self.csqrt(z));
        }
        let log = self.cln(z)?;
        Ok(self.cexp(&log.scale(&self.rational(a))))
    }
}

/// `atan(1/x) * 2^prec` for an integer `x > 1`, in fixed point.
fn atan_inv_fixed(x: u32, prec: u32) -> BigInt {
    let one = BigInt::one() << prec as usize;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x;
    let mut sum = power.clone();
    let mut k = 1u32;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// pi by Machin's formula.
fn pi_fixed(prec: u32) -> Real {
    let p = prec + 16;
    let v = atan_inv_fixed(5, p) * 16 - atan_inv_fixed(239, p) * 4;
    Real::from_parts(v, -(p as i64), prec)
}

/// ln 2 = sum_{k>=1} 1 / (k 2^k).
fn ln2_fixed(prec: u32) -> Real {
    let p = prec + 16;
    let mut power = BigInt::one() << p as usize;
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    loop {
        power >>= 1;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(k);
        k += 1;
    }
    Real::from_parts(sum, -(p as i64), prec)
}
