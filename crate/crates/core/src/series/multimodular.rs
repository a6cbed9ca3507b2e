//! Multi-modular evaluation of rational power series.
//!
//! A computation over `Q` whose intermediate denominators only involve small
//! primes can be run modulo word-size primes instead. The rational results
//! are recovered from the residues by Chinese remaindering and rational
//! reconstruction, and accepted once they also agree with the computation
//! modulo one more prime that was not used to build them.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// The field `Z/pZ` for a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < 1 << 63 && is_prime(p));
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    /// `None` when `p` divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.inv(self.from_bigint(q.denom()))?;
        Some(self.mul(self.from_bigint(q.numer()), den))
    }

    /// Truncated product; the length is the shorter of the two.
    pub fn series_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().min(b.len());
        let mut out = vec![0u64; n];
        for (i, &x) in a[..n].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b[..n - i].iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        out
    }

    /// Quotient by a series with invertible constant term.
    pub fn series_div(&self, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
        let n = a.len().min(b.len());
        let inv_b0 = self.inv(b[0])?;
        let mut q = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = a[k];
            for j in 1..=k {
                acc = self.sub(acc, self.mul(b[j], q[k - j]));
            }
            q.push(self.mul(acc, inv_b0));
        }
        Some(q)
    }

    /// Compositional inverse of `s` (`s[0] = 0`, `s[1]` invertible), by
    /// Lagrange inversion with Miller's power recurrence.
    pub fn series_reversion(&self, s: &[u64]) -> Option<Vec<u64>> {
        let n = s.len() - 1;
        if n == 0 || s[0] != 0 {
            return None;
        }
        let mut one = vec![0u64; n];
        one[0] = 1;
        let phi = self.series_div(&one, &s[1..])?;
        let phi0_inv = self.inv(phi[0])?;
        let mut out = vec![0u64; n + 1];
        let mut psi = Vec::with_capacity(n);
        for power in 1..=n {
            psi.clear();
            psi.push(self.pow(phi[0], power as u64));
            for k in 1..power {
                let mut acc = 0;
                for j in 1..=k {
                    let weight = self.from_int((power as i64 + 1) * j as i64 - k as i64);
                    acc = self.add(acc, self.mul(self.mul(phi[j], psi[k - j]), weight));
                }
                psi.push(self.mul(self.mul(acc, phi0_inv), self.inv(self.from_int(k as i64))?));
            }
            out[power] = self.mul(psi[power - 1], self.inv(self.from_int(power as i64))?);
        }
        Some(out)
    }

    /// `poly(s)` for a polynomial given by its coefficients.
    pub fn compose_poly(&self, poly: &[u64], s: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; s.len()];
        for &c in poly.iter().rev() {
            acc = self.series_mul(&acc, s);
            acc[0] = self.add(acc[0], c);
        }
        acc
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let powmod = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order.
pub fn word_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61) + 1..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

/// The rational `a/b` with `a ≡ b x (mod m)` and `|a|, b <= sqrt(m/2)`, if
/// there is one (Wang's algorithm).
pub fn reconstruct_mod(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = core::mem::replace(&mut r1, r2);
        s0 = core::mem::replace(&mut s1, s2);
    }
    if s1.abs() > bound || s1.is_zero() || !r1.gcd(&s1).is_one() {
        return None;
    }
    let sign = if s1.sign() == Sign::Minus { -BigInt::one() } else { BigInt::one() };
    Some(Rational::new(r1 * &sign, s1 * sign))
}

/// Recovers `len` rationals from their images modulo primes.
///
/// `compute` returns the images modulo the given prime, or `None` if the
/// prime is unusable (it divides some denominator). Residues are combined
/// until every coefficient reconstructs and the reconstruction agrees with
/// one further prime.
pub fn reconstruct_series<F>(len: usize, mut compute: F) -> Vec<Rational>
where
    F: FnMut(&PrimeField) -> Option<Vec<u64>>,
{
    let mut primes = word_primes();
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); len];
    let mut used = 0usize;
    let mut next_attempt = 2usize;
    loop {
        let field = PrimeField::new(primes.next().expect("enough 62-bit primes"));
        let Some(images) = compute(&field) else { continue };
        debug_assert_eq!(images.len(), len);
        if used >= next_attempt {
            if let Some(candidate) = attempt(&residues, &modulus) {
                let agrees = candidate.iter().zip(&images).all(|(q, &r)| field.from_rational(q) == Some(r));
                if agrees {
                    return candidate;
                }
            }
            next_attempt += next_attempt / 2;
        }
        combine(&field, &images, &mut residues, &mut modulus);
        used += 1;
    }
}

fn attempt(residues: &[BigInt], modulus: &BigInt) -> Option<Vec<Rational>> {
    // The last coefficients are usually the largest; try them first.
    let mut out = vec![Rational::zero(); residues.len()];
    for k in (0..residues.len()).rev() {
        out[k] = reconstruct_mod(&residues[k], modulus)?;
    }
    Some(out)
}

/// Chinese remaindering of `images (mod p)` into `residues (mod modulus)`.
fn combine(field: &PrimeField, images: &[u64], residues: &mut [BigInt], modulus: &mut BigInt) {
    let m_inv = field.inv(field.from_bigint(modulus)).expect("distinct primes");
    for (x, &r) in residues.iter_mut().zip(images) {
        let delta = field.mul(field.sub(r, field.from_bigint(x)), m_inv);
        *x += &*modulus * BigInt::from(delta);
    }
    *modulus *= BigInt::from(field.modulus());
}
