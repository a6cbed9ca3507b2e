use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::series::Rational;

/// Binary floating-point number `mantissa * 2^exponent`.
///
/// The mantissa is kept to at most `prec` bits with round-half-up on the
/// magnitude. Binary operations work at the larger precision of their
/// operands. There are no infinities, NaNs or signed zeros.
#[derive(Clone)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_parts(mant: BigInt, exp: i64, prec: u32) -> (BigInt, i64) {
    let bits = mant.bits();
    if bits <= u64::from(prec) {
        return (mant, exp);
    }
    let shift = bits - u64::from(prec);
    let (sign, mag) = mant.into_parts();
    let round_up = mag.bit(shift - 1);
    let mut mag = mag >> shift;
    if round_up {
        mag += 1u32;
    }
    (BigInt::from_biguint(sign, mag), exp + shift as i64)
}

impl Real {
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let prec = prec.max(2);
        if mant.is_zero() {
            return Self::zero(prec);
        }
        let (mant, exp) = round_parts(mant, exp, prec);
        Self { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self { mant: BigInt::zero(), exp: 0, prec: prec.max(2) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Self::from_parts(v.into(), 0, prec)
    }

    /// Nearest value to the exact rational `q` (one rounding).
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let num = Self::from_parts(q.numer().clone(), 0, u32::MAX);
        let den = Self::from_parts(q.denom().clone(), 0, u32::MAX);
        num.div_to(&den, prec)
    }

    /// Exact value of a finite `f64`.
    ///
    /// # Panics
    /// If `x` is infinite or NaN.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let (frac, e) = libm::frexp(x);
        let mant = libm::ldexp(frac, 53) as i64;
        Self::from_parts(BigInt::from(mant), i64::from(e) - 53, prec)
    }

    /// `num / den` for small integers.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_int(num, prec) / Self::from_int(den, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value rounded to (or widened to) `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// `e` with `2^(e-1) <= |x| < 2^e`, or `None` for zero.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    /// `x * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec).div_to(self, self.prec)
    }

    fn div_to(&self, rhs: &Self, prec: u32) -> Self {
        assert!(!rhs.is_zero(), "Real division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let extra = i64::from(prec) + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = extra.max(0);
        let q = (&self.mant << shift as usize) / &rhs.mant;
        Self::from_parts(q, self.exp - rhs.exp - shift, prec)
    }

    /// Square root of a nonnegative value.
    ///
    /// # Panics
    /// If the value is negative.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative Real");
        if self.is_zero() {
            return self.clone();
        }
        let target = 2 * (i64::from(self.prec) + 2);
        let mut shift = (target - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let root = (&self.mant << shift as usize).sqrt();
        Self::from_parts(root, (self.exp - shift) / 2, self.prec)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest integer (ties away from zero).
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let shift = (-self.exp) as u64;
        let (sign, mag) = self.mant.clone().into_parts();
        let round_up = shift <= mag.bits() && mag.bit(shift - 1);
        let mut mag = if shift > mag.bits() { num_bigint::BigUint::zero() } else { mag >> shift };
        if round_up {
            mag += 1u32;
        }
        BigInt::from_biguint(sign, mag)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let den = BigInt::one() << (-self.exp) as usize;
        self.mant.div_floor(&den)
    }

    /// Approximate `f64` value, for step-size heuristics and display only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 62 {
            (&self.mant >> (bits - 62) as usize, self.exp + bits - 62)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_i64().unwrap_or(0) as f64;
        let e = e.clamp(-4000, 4000) as i32;
        libm::ldexp(m, e)
    }

    /// Decimal rendering with exactly `frac_digits` digits after the point.
    pub fn to_decimal(&self, frac_digits: usize) -> String {
        let ten_pow = num_traits::pow(BigInt::from(10), frac_digits);
        let scaled = Real::from_parts(&self.mant * &ten_pow, self.exp, u32::MAX).round();
        let negative = scaled.is_negative();
        let digits = scaled.abs().to_str_radix(10);
        let digits = if digits.len() <= frac_digits {
            let mut padded = String::with_capacity(frac_digits + 1);
            for _ in 0..=(frac_digits - digits.len()) {
                padded.push('0');
            }
            padded.push_str(&digits);
            padded
        } else {
            digits
        };
        let split = digits.len() - frac_digits;
        let mut out = String::with_capacity(digits.len() + 2);
        if negative {
            out.push('-');
        }
        out.push_str(&digits[..split]);
        if frac_digits > 0 {
            out.push('.');
            out.push_str(&digits[split..]);
        }
        out
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.magnitude(), other.magnitude()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let e = self.exp.min(other.exp);
                let a = self.mant.abs() << (self.exp - e) as usize;
                let b = other.mant.abs() << (other.exp - e) as usize;
                a.cmp(&b)
            }
        }
    }

}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.signum() {
            0 => Ordering::Equal,
            1 => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({:e} @{}b)", self.to_f64(), self.prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_decimal(digits))
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;

    fn add(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        let (ma, mb) = match (self.magnitude(), rhs.magnitude()) {
            (None, _) => return rhs.with_prec(prec),
            (_, None) => return self.with_prec(prec),
            (Some(a), Some(b)) => (a, b),
        };
        let window = i64::from(prec) + 2;
        if ma > mb + window {
            return self.with_prec(prec);
        }
        if mb > ma + window {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let sum = (&self.mant << (self.exp - e) as usize) + (&rhs.mant << (rhs.exp - e) as usize);
        Real::from_parts(sum, e, prec)
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;

    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;

    fn mul(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;

    fn div(self, rhs: &Real) -> Real {
        self.div_to(rhs, self.prec.max(rhs.prec))
    }
}

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
