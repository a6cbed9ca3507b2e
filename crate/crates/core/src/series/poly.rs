use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, rat, Rational, TruncatedSeries};

/// Dense polynomial over `Q`; the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(ints: &[i64]) -> Self {
        Self::new(ints.iter().map(|&n| int(n)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_integers(&[1]), |acc, _| &acc * self)
    }

    /// Truncated power series of the polynomial (zero-padded if needed).
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::with_order(self.coeffs.clone(), order)
    }

    /// `self(s(t))` by Horner's rule; the order is that of `s`.
    pub fn compose_series(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let n = s.order();
        let mut acc = TruncatedSeries::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * s;
            let c0 = acc.coeff(0) + c;
            acc.set_coeff(0, c0);
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// The polynomials `p_0 .. p_{n_max}` with `p_0 = t^3`, `p_1 = -t^2` and
///
/// ```text
/// p_n = (t^3 - 1)/3 * p_{n-1}' - (n + 5)/6 * t^2 p_{n-1} - (n-1)(n-2)/144 * t p_{n-2}
/// ```
///
/// for `n >= 2`. Their constant terms give the expansion of `j` at `rho`,
/// `b_rho(n) = -1728 * 6^n * p_n(0) / n!`.
pub fn p_polynomials(n_max: usize) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Polynomial::monomial(Rational::one(), 3));
    if n_max >= 1 {
        out.push(Polynomial::monomial(int(-1), 2));
    }
    let cubic = Polynomial::new(vec![rat(-1, 3), int(0), int(0), rat(1, 3)]);
    for n in 2..=n_max {
        let prev = &out[n - 1];
        let prev2 = &out[n - 2];
        let first = &cubic * &prev.derivative();
        let second = &Polynomial::monomial(rat(n as i64 + 5, 6), 2) * prev;
        let k = ((n - 1) * (n - 2)) as i64;
        let third = &Polynomial::monomial(rat(k, 144), 1) * prev2;
        out.push(&(&first - &second) - &third);
    }
    out
}
