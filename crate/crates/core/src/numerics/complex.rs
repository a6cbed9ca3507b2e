use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::Real;
use crate::series::Rational;

/// Arbitrary-precision complex number with [`Real`] parts.
#[derive(Clone, PartialEq, Eq)]
pub struct HPComplex {
    pub re: Real,
    pub im: Real,
}

impl HPComplex {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Self { re, im: Real::zero(prec) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self::from_real(Real::from_rational(q, prec))
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        Self::new(Real::from_rational(re, prec), Real::from_rational(im, prec))
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_real(Real::from_int(n, prec))
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Real::zero(prec), Real::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    /// `i * z`.
    pub fn mul_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
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

    /// Approximate `|z|` as `f64`.
    pub fn abs_f64(&self) -> f64 {
        libm::hypot(self.re.to_f64(), self.im.to_f64())
    }

    /// `|self - other|`.
    pub fn dist(&self, other: &Self) -> Real {
        (self - other).abs()
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} {:+e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        let im = self.im.to_decimal(d);
        if im.starts_with('-') {
            write!(f, "{}{}i", self.re.to_decimal(d), im)
        } else {
            write!(f, "{}+{}i", self.re.to_decimal(d), im)
        }
    }
}

impl<'a> Add<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;

    fn add(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;

    fn sub(self, rhs: &HPComplex) -> HPComplex {
        HPComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;

    fn mul(self, rhs: &HPComplex) -> HPComplex {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        HPComplex::new(re, im)
    }
}

impl<'a> Div<&'a HPComplex> for &'a HPComplex {
    type Output = HPComplex;

    fn div(self, rhs: &HPComplex) -> HPComplex {
        if rhs.im.is_zero() {
            return HPComplex::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let n = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        HPComplex::new(&re / &n, &im / &n)
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;

    fn neg(self) -> HPComplex {
        HPComplex::new(-&self.re, -&self.im)
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;

    fn neg(self) -> HPComplex {
        HPComplex::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &HPComplex) -> HPComplex { (&self).$m(rhs) }
        }
        impl<'a> $tr<HPComplex> for &'a HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
