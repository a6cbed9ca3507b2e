use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Context, HPComplex, Real};
use crate::error::{Error, Result};
use crate::series::Rational;

/// Recovers the rational with denominator at most `den_bound` that `x`
/// approximates, using the context's contract tolerance relative to `|x|`.
pub fn rational_reconstruct(x: &HPComplex, den_bound: &BigInt, ctx: &Context) -> Result<Rational> {
    let scale = x.re.abs().max(Real::one(ctx.bits()));
    let tol = &ctx.contract_tolerance() * &scale;
    rational_reconstruct_within(x, den_bound, &tol)
}

/// Like [`rational_reconstruct`] with an explicit absolute tolerance.
///
/// Fails with `NoneFound` if no rational with denominator `<= den_bound`
/// lies within `tol` of `x`, and with `Ambiguous` if more than one does.
pub fn rational_reconstruct_within(x: &HPComplex, den_bound: &BigInt, tol: &Real) -> Result<Rational> {
    if x.im.abs() > *tol {
        return Err(Error::NotReal);
    }
    let centre = x.re.to_rational();
    let tol = tol.abs().to_rational();
    let lo = &centre - &tol;
    let hi = &centre + &tol;
    let best = simplest_between(&lo, &hi);
    if best.denom() > den_bound {
        return Err(Error::NoneFound);
    }
    let (prev, next) = farey_neighbours(&best, den_bound);
    if prev >= lo || next <= hi {
        return Err(Error::Ambiguous);
    }
    Ok(best)
}

/// The rational of least denominator in `[lo, hi]`, found by walking the
/// continued fractions of both ends.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() || lo.is_zero() {
        return simplest_nonneg(lo, hi);
    }
    if hi.is_negative() {
        return -simplest_nonneg(&-hi, &-lo);
    }
    Rational::zero()
}

fn simplest_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // Both ends share the integer part; recurse on the reciprocals of the
    // fractional parts (order flips).
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    fl + simplest_nonneg(&hi_frac.recip(), &lo_frac.recip()).recip()
}

/// Predecessor and successor of `q` among fractions with denominator at most
/// `bound` (`q` must itself qualify).
fn farey_neighbours(q: &Rational, bound: &BigInt) -> (Rational, Rational) {
    let (a, b) = (q.numer(), q.denom());
    // b c - a d = 1 for the successor, b c - a d = -1 for the predecessor.
    let gcd = b.extended_gcd(a);
    debug_assert!(gcd.gcd.is_one());
    // gcd.x * b + gcd.y * a = 1, so (c, d) = (x, -y) solves b c - a d = 1.
    let base_next = (gcd.x.clone(), -gcd.y.clone());
    let base_prev = (-gcd.x, gcd.y);
    let lift = |(c, d): (BigInt, BigInt)| {
        // Largest d' = d + k b with d' <= bound.
        let k = (bound - &d).div_floor(b);
        let d2 = &d + &k * b;
        let c2 = &c + &k * a;
        Rational::new(c2, d2)
    };
    (lift(base_prev), lift(base_next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn at(q: &Rational, prec: u32) -> HPComplex {
        HPComplex::from_rational(q, prec)
    }

    #[test]
    fn recovers_simple_values() {
        let ctx = Context::with_digits(50);
        let x = at(&rat(1, 2), ctx.bits());
        assert_eq!(rational_reconstruct(&x, &BigInt::from(100), &ctx), Ok(rat(1, 2)));
        let x = &at(&rat(1594112, 5), ctx.bits()) + &ctx.complex(&Rational::new(1.into(), num_traits::pow(BigInt::from(10), 30)), &int(0));
        assert_eq!(rational_reconstruct(&x, &BigInt::from(100), &ctx), Ok(rat(1594112, 5)));
    }

    #[test]
    fn from_six_decimals() {
        let x = at(&rat(8473884444, 1_000_000), 200);
        let tol = Real::ratio(1, 1_000_000, 200);
        assert_eq!(rational_reconstruct_within(&x, &BigInt::from(1000), &tol), Ok(rat(1906624, 225)));
    }

    #[test]
    fn ambiguous_and_missing() {
        let x = at(&rat(1, 3), 200);
        // [3/10, 11/30] holds both 1/3 and 4/11.
        let tol = Real::ratio(1, 30, 200);
        assert_eq!(rational_reconstruct_within(&x, &BigInt::from(20), &tol), Err(Error::Ambiguous));
        let tiny = Real::ratio(1, 10i64.pow(12), 200);
        let y = at(&rat(1, 997), 200);
        assert_eq!(rational_reconstruct_within(&y, &BigInt::from(100), &tiny), Err(Error::NoneFound));
        let z = HPComplex::new(Real::one(200), Real::one(200));
        assert_eq!(rational_reconstruct_within(&z, &BigInt::from(100), &tiny), Err(Error::NotReal));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-2, 5), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 5), &rat(1, 5)), int(0));
        assert_eq!(simplest_between(&rat(7, 5), &rat(7, 5)), rat(7, 5));
    }

    #[test]
    fn neighbours() {
        let (p, n) = farey_neighbours(&rat(1, 3), &BigInt::from(5));
        assert_eq!((p, n), (rat(1, 4), rat(2, 5)));
        let (p, n) = farey_neighbours(&int(2), &BigInt::from(4));
        assert_eq!((p, n), (rat(7, 4), rat(9, 4)));
    }
}
