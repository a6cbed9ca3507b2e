//! Exact formal power series and polynomials over `Q`.
//!
//! A [`TruncatedSeries`] of order `N` knows the coefficients of `t^0..=t^N`;
//! everything above `t^N` is unknown rather than zero. Every operation states
//! the order of its result, so long composition chains never silently claim
//! more precision than their inputs carry.

pub mod multimodular;
mod poly;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use poly::{p_polynomials, Polynomial};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Power series `sum_{k <= order} c_k t^k` with an unknown tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series whose order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Self { coeffs }
    }

    /// Builds a series of the given order, zero-padding or cutting `coeffs`.
    pub fn with_order(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_integers(ints: &[i64], order: usize) -> Self {
        Self::with_order(ints.iter().map(|&n| int(n)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t` (order at least 1 is needed for it to be visible).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: Rational) {
        self.coeffs[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` if all known ones vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lowers the order to `order` (which must not exceed the current one).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Formal derivative; the order drops by one (stays 0 for constants).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self { coeffs }
    }

    /// `self * t^shift`, keeping the order (the top coefficients fall off).
    pub fn shift_up(&self, shift: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in shift..=n {
            out.coeffs[k] = self.coeffs[k - shift].clone();
        }
        out
    }

    /// Greatest common divisor of the exponents with nonzero coefficients,
    /// ignoring the constant term (0 if there are none).
    pub fn support_gcd(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .fold(0usize, |g, (k, _)| g.gcd(&k))
    }

    /// `S` with `self(t) = S(t^k)`, of order `order / k`; `None` unless every
    /// nonzero exponent is a multiple of `k`.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        assert!(k > 0, "deflation needs k > 0");
        if self.coeffs.iter().enumerate().any(|(j, c)| j % k != 0 && !c.is_zero()) {
            return None;
        }
        Some(Self { coeffs: self.coeffs.iter().step_by(k).cloned().collect() })
    }

    /// `self(t^k)`, known through `t^(k (order + 1) - 1)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0, "inflation needs k > 0");
        let mut out = Self::zero(k * (self.order() + 1) - 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * k] = c.clone();
        }
        out
    }

    /// Exponents (up to the order) whose coefficient is nonzero.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    fn mul_to(&self, other: &Self, order: usize) -> Self {
        let lhs: Vec<(usize, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .take(order + 1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let rhs: Vec<(usize, &Rational)> = other
            .coeffs
            .iter()
            .enumerate()
            .take(order + 1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = vec![Rational::zero(); order + 1];
        for &(i, a) in &lhs {
            for &(j, b) in &rhs {
                if i + j > order {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse. Order is kept.
    pub fn inverse(&self) -> Result<Self> {
        Self::constant(Rational::one(), self.order()).div(self)
    }

    /// Quotient `self / den` by long division; order is the minimum of both.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let d0 = den.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order().min(den.order());
        let inv_d0 = d0.recip();
        let den_support: Vec<usize> = den.support().into_iter().filter(|&k| k > 0 && k <= n).collect();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for &j in &den_support {
                if j > k {
                    break;
                }
                let prev = &q[k - j];
                if !prev.is_zero() {
                    acc -= &den.coeffs[j] * prev;
                }
            }
            q.push(acc * &inv_d0);
        }
        Ok(Self { coeffs: q })
    }

    /// Composition `self(inner(t))`.
    ///
    /// The result order is `min(inner.order, (self.order + 1) * v - 1)` where
    /// `v` is the valuation of `inner`, since the unknown tail of `self`
    /// starts contributing at `t^((self.order + 1) v)`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let v = inner.valuation().unwrap_or(inner.order() + 1);
        let n = inner.order().min((self.order() + 1) * v - 1);
        let gap = match self.truncate(self.order().min(n)).support_gcd() {
            0 => return Ok(Self::constant(self.coeffs[0].clone(), n)),
            g => g,
        };
        // Horner in u = inner^gap over the coefficients c_0, c_gap, c_2gap, ...
        let base = inner.truncate(n);
        let mut u = base.clone();
        for _ in 1..gap {
            u = u.mul_to(&base, n);
        }
        let top = (self.order() / gap).min(n / (gap * v));
        let mut acc = Self::constant(self.coeffs[top * gap].clone(), n);
        for m in (0..top).rev() {
            acc = acc.mul_to(&u, n);
            acc.coeffs[0] += &self.coeffs[m * gap];
        }
        Ok(acc)
    }

    /// Compositional inverse `r` with `self(r(t)) = t`, same order.
    ///
    /// Uses Lagrange inversion, `r_n = [t^(n-1)] phi^n / n` with
    /// `phi = t / self(t)`; each power is built with J.C.P. Miller's
    /// recurrence, so the cost is about `N^3 / 6` coefficient products.
    pub fn reversion(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        // phi = (self / t)^{-1}, known to order n - 1.
        let quotient = Self { coeffs: self.coeffs[1..].to_vec() };
        let phi = quotient.inverse()?;
        let phi0_inv = phi.coeffs[0].recip();
        let phi_support: Vec<usize> = phi.support().into_iter().filter(|&j| j > 0).collect();
        let mut out = Self::zero(n);
        let mut psi: Vec<Rational> = Vec::with_capacity(n);
        for power in 1..=n {
            let p = power as i64;
            psi.clear();
            psi.push(pow_rational(&phi.coeffs[0], power));
            for k in 1..power {
                let mut acc = Rational::zero();
                for &j in &phi_support {
                    if j > k {
                        break;
                    }
                    let prev = &psi[k - j];
                    if prev.is_zero() {
                        continue;
                    }
                    let weight = (p + 1) * j as i64 - k as i64;
                    if weight != 0 {
                        acc += &phi.coeffs[j] * prev * int(weight);
                    }
                }
                psi.push(acc * &phi0_inv / int(k as i64));
            }
            out.coeffs[power] = &psi[power - 1] / int(p);
        }
        Ok(out)
    }
}

fn pow_rational(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_to(rhs, self.order().min(rhs.order()))
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Coefficientwise sum; order is the minimum of the inputs.
pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a + b
}

/// Cauchy product truncated at the minimum input order.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    a * b
}

pub fn series_div(num: &TruncatedSeries, den: &TruncatedSeries) -> Result<TruncatedSeries> {
    num.div(den)
}

pub fn series_inverse_mul(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.inverse()
}

pub fn series_compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    outer.compose(inner)
}

pub fn series_reversion(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.reversion()
}

/// Taylor expansion of `p / q` at 0 through `t^order`.
pub fn rational_function_expand(p: &Polynomial, q: &Polynomial, order: usize) -> Result<TruncatedSeries> {
    if q.coeff(0).is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    p.to_series(order).div(&q.to_series(order))
}

/// The multifactorial `(Mn - r)!...!` (M exclamation marks), i.e. the product
/// `prod_{m=1..n} (M m - r)`; the empty product for `n = 0` is 1.
pub fn multifactorial(m: u64, n: u64, r: i64) -> Result<Rational> {
    if m == 0 || r <= 0 || r >= m as i64 {
        return Err(Error::InvalidParameters(alloc::format!(
            "multifactorial needs 0 < r < M, got M = {m}, r = {r}"
        )));
    }
    let product = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(m as i128 * k as i128 - r as i128));
    Ok(Rational::from_integer(product))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ints: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(ints, ints.len() - 1)
    }

    #[test]
    fn add_identity_and_cancellation() {
        let one_plus_t = s(&[1, 1]);
        assert_eq!(&one_plus_t + &TruncatedSeries::zero(1), one_plus_t);

        let a = TruncatedSeries::new(vec![int(0), int(1), int(0), rat(-1, 6)]);
        let b = TruncatedSeries::new(vec![int(0), int(0), int(0), rat(1, 6)]);
        assert_eq!(&a + &b, s(&[0, 1, 0, 0]));
    }

    #[test]
    fn deflate_and_inflate() {
        let even = s(&[1, 0, 2, 0, 3]);
        assert_eq!(even.deflate(2), Some(s(&[1, 2, 3])));
        assert_eq!(s(&[1, 0, 2, 0, 3, 0]).deflate(2), Some(s(&[1, 2, 3])));
        assert_eq!(s(&[1, 1, 2]).deflate(2), None);
        let back = s(&[1, 2, 3]).inflate(2);
        assert_eq!(back, s(&[1, 0, 2, 0, 3, 0]));
    }

    #[test]
    fn add_takes_min_order() {
        let a = s(&[1, 2, 3, 4]);
        let b = s(&[1, 1]);
        assert_eq!((&a + &b).order(), 1);
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = &s(&[1, 1, 0]) * &s(&[1, -1, 0]);
        assert_eq!(p, s(&[1, 0, -1]));
    }

    #[test]
    fn long_division_prefix() {
        // (t - t^4/3) / (1 - t^3/6) = t - t^4/6 + O(t^7)
        let num = TruncatedSeries::with_order(vec![int(0), int(1), int(0), int(0), rat(-1, 3)], 6);
        let den = TruncatedSeries::with_order(vec![int(1), int(0), int(0), rat(-1, 6)], 6);
        let q = num.div(&den).unwrap();
        let expected = TruncatedSeries::with_order(vec![int(0), int(1), int(0), int(0), rat(-1, 6)], 6);
        assert_eq!(q, expected);
    }

    #[test]
    fn division_by_zero_constant() {
        assert_eq!(s(&[1, 1]).div(&s(&[0, 1])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn compose_square() {
        let outer = s(&[0, 0, 1, 0, 0]);
        let inner = s(&[0, 1, 1, 0, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), s(&[0, 0, 1, 2, 1]));
    }

    #[test]
    fn compose_rejects_constant_inner() {
        assert_eq!(s(&[1, 1]).compose(&s(&[1, 1])), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn compose_order_follows_valuation() {
        // inner = t^2 (valuation 2); outer known to order 2, so the result
        // is known up to t^5.
        let outer = s(&[1, 1, 1]);
        let inner = TruncatedSeries::with_order(vec![int(0), int(0), int(1)], 10);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.order(), 5);
        assert_eq!(c, TruncatedSeries::with_order(vec![int(1), int(0), int(1), int(0), int(1)], 5));
    }

    #[test]
    fn reversion_of_t_plus_t_squared() {
        let r = s(&[0, 1, 1, 0, 0]).reversion().unwrap();
        assert_eq!(r, s(&[0, 1, -1, 2, -5]));
        assert_eq!(s(&[0, 1, 0]).reversion().unwrap(), s(&[0, 1, 0]));
    }

    #[test]
    fn reversion_preconditions() {
        assert_eq!(s(&[0, 0, 1]).reversion(), Err(Error::NotReversible));
        assert_eq!(s(&[1, 1, 1]).reversion(), Err(Error::NotReversible));
    }

    #[test]
    fn geometric_series() {
        let p = Polynomial::from_integers(&[1]);
        let q = Polynomial::from_integers(&[1, -1]);
        let g = rational_function_expand(&p, &q, 6).unwrap();
        assert_eq!(g, s(&[1; 7]));
        assert_eq!(
            rational_function_expand(&p, &Polynomial::from_integers(&[0, 1]), 3),
            Err(Error::PoleAtOrigin)
        );
    }

    #[test]
    fn multifactorial_values() {
        assert_eq!(multifactorial(3, 0, 1).unwrap(), int(1));
        assert_eq!(multifactorial(3, 2, 2).unwrap(), int(4));
        assert_eq!(multifactorial(4, 2, 1).unwrap(), int(21));
        assert!(matches!(multifactorial(3, 2, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(multifactorial(3, 2, 0), Err(Error::InvalidParameters(_))));
    }
}
