//! Klein's `j` as a `q`-series and as a function on the upper half-plane,
//! the uniformizing maps at the CM points, their periods, and the elliptic
//! expansions `j(A(s^{-1}(w))) = sum b(n) w^n` with `A` from
//! [`expansion_argument`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::engine::flat_parts_exact;
use crate::error::{Error, Result};
use crate::numerics::{const_rho, gamma_eval, Context, HPComplex, Real};
use crate::series::multimodular::{reconstruct_series, PrimeField};
use crate::series::{factorial, int, p_polynomials, rat, Polynomial, Rational, TruncatedSeries};

/// The two CM points `rho = exp(pi i / 3)` and `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmCase {
    Rho,
    I,
}

impl CmCase {
    pub const ALL: [CmCase; 2] = [CmCase::Rho, CmCase::I];

    pub fn name(self) -> &'static str {
        match self {
            CmCase::Rho => "rho",
            CmCase::I => "i",
        }
    }

    pub fn tau_star(self, ctx: &Context) -> HPComplex {
        match self {
            CmCase::Rho => const_rho(ctx),
            CmCase::I => ctx.i(),
        }
    }

    /// Only every `gap`-th coefficient of the expansions is nonzero.
    pub fn coefficient_gap(self) -> usize {
        match self {
            CmCase::Rho => 3,
            CmCase::I => 2,
        }
    }

    /// Radius of the `t`-disk on which the flat-coordinate identity holds.
    pub fn convergence_radius(self) -> Rational {
        match self {
            CmCase::Rho => int(1),
            CmCase::I => rat(1, 2),
        }
    }
}

impl core::str::FromStr for CmCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" | "RHO" | "Rho" => Ok(CmCase::Rho),
            "i" | "I" => Ok(CmCase::I),
            _ => Err(Error::InvalidParameters(alloc::format!("unknown CM point {s:?}"))),
        }
    }
}

/// `j(q) = principal / q + coeffs[0] + coeffs[1] q + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JQSeries {
    pub principal: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl JQSeries {
    /// Coefficient of `q^n` for `n >= -1`.
    pub fn coeff(&self, n: i64) -> BigInt {
        if n == -1 {
            return self.principal.clone();
        }
        self.coeffs.get(n as usize).cloned().unwrap_or_default()
    }
}

fn sigma3(n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(3);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(3);
            }
        }
        d += 1;
    }
    s
}

/// Generalized pentagonal numbers `k(3k-1)/2` up to `n`, with signs, for
/// `prod (1 - q^m) = sum (-1)^k q^(k(3k-1)/2)`.
fn euler_product(n: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[0] = Rational::one();
    for k in 1i64.. {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let p1 = (k * (3 * k - 1) / 2) as usize;
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p1 > n {
            break;
        }
        coeffs[p1] += &sign;
        if p2 <= n {
            coeffs[p2] += &sign;
        }
    }
    TruncatedSeries::new(coeffs)
}

/// Fourier coefficients of `j` through `q^order`, from `E4^3 / Delta`.
pub fn j_q_expansion(order: usize) -> JQSeries {
    let n = order + 1;
    let mut e4 = vec![int(1)];
    e4.extend((1..=n as u64).map(|k| Rational::from_integer(sigma3(k) * 240)));
    let e4 = TruncatedSeries::new(e4);
    let e4_cubed = &(&e4 * &e4) * &e4;
    let eta24 = {
        let p = euler_product(n);
        let p2 = &p * &p;
        let p4 = &p2 * &p2;
        let p8 = &p4 * &p4;
        &(&p8 * &p8) * &p8
    };
    // q j = E4^3 / prod(1 - q^m)^24
    let qj = e4_cubed.div(&eta24).expect("unit constant term");
    let mut ints = qj.into_coeffs().into_iter().map(|c| c.to_integer());
    let principal = ints.next().unwrap_or_default();
    JQSeries { principal, coeffs: ints.collect() }
}

/// Reduces `tau` into `|Re tau| <= 1/2, |tau| >= 1` with `T` and `S`.
pub fn reduce_to_fundamental_domain(tau: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    if !tau.im.is_positive() {
        return Err(Error::NotUpperHalfPlane);
    }
    let one = ctx.int(1);
    let mut t = tau.with_prec(ctx.bits().max(tau.prec()));
    for _ in 0..1000 {
        let shift = t.re.round();
        if !shift.is_zero() {
            t = HPComplex::new(&t.re - &Real::from_int(shift, ctx.bits()), t.im.clone());
        }
        if t.norm_sqr() >= one {
            return Ok(t);
        }
        t = -t.recip();
    }
    Err(Error::NoConvergence("fundamental-domain reduction".into()))
}

/// `j(tau)` for `Im tau > 0`.
pub fn j_eval(tau: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let t = reduce_to_fundamental_domain(tau, ctx)?;
    let bits = ctx.bits();
    // q = exp(2 pi i t)
    let two_pi = ctx.pi().mul_pow2(1);
    let q = ctx.cexp(&t.mul_i().scale(&two_pi));
    let limit = -i64::from(bits) - 8;
    let mut e4 = HPComplex::one(bits);
    let mut qn = HPComplex::one(bits);
    for n in 1u64.. {
        qn = &qn * &q;
        let term = qn.scale(&Real::from_int(sigma3(n) * 240, bits));
        if term_mag(&term) < limit {
            break;
        }
        e4 = &e4 + &term;
    }
    // prod (1 - q^n) by the pentagonal-number series
    let mut euler = HPComplex::one(bits);
    for k in 1i64.. {
        let e1 = (k * (3 * k - 1) / 2) as u32;
        let e2 = (k * (3 * k + 1) / 2) as u32;
        let t1 = q.powi(e1);
        if term_mag(&t1) < limit {
            break;
        }
        let pair = &t1 + &q.powi(e2);
        euler = if k % 2 == 0 { &euler + &pair } else { &euler - &pair };
    }
    let delta = &q * &euler.powi(24);
    Ok(&e4.powi(3) / &delta)
}

fn term_mag(z: &HPComplex) -> i64 {
    match (z.re.magnitude(), z.im.magnitude()) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => i64::MIN,
    }
}

/// The Chowla-Selberg period
/// `Omega_rho = (6 pi)^(-1/2) (G(1/3)/G(2/3))^(3/2)`,
/// `Omega_i = (8 pi)^(-1/2) G(1/4)/G(3/4)`.
pub fn omega_period(case: CmCase, ctx: &Context) -> Real {
    let pi = ctx.pi();
    match case {
        CmCase::Rho => {
            let r = &gamma_eval(&rat(1, 3), ctx).unwrap() / &gamma_eval(&rat(2, 3), ctx).unwrap();
            let r32 = &r * &ctx.sqrt(&r);
            &r32 / &ctx.sqrt(&(&pi * &ctx.int(6)))
        }
        CmCase::I => {
            let r = &gamma_eval(&rat(1, 4), ctx).unwrap() / &gamma_eval(&rat(3, 4), ctx).unwrap();
            &r / &ctx.sqrt(&(&pi * &ctx.int(8)))
        }
    }
}

/// `2 pi Omega^2`, the radius of the disk `s(H)`.
pub fn disk_radius(case: CmCase, ctx: &Context) -> Real {
    (&ctx.pi() * &omega_period(case, ctx).square()).mul_pow2(1)
}

/// `S(tau) = (tau - tau*) / (tau - conj(tau*))`.
pub fn map_s(case: CmCase, tau: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let star = case.tau_star(ctx);
    let den = tau - &star.conj();
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(&(tau - &star) / &den)
}

/// `S^{-1}(w) = (tau* - w conj(tau*)) / (1 - w)`.
pub fn map_s_inv_unit(case: CmCase, w: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let star = case.tau_star(ctx);
    let den = &HPComplex::one(ctx.bits()) - w;
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(&(&star - &(w * &star.conj())) / &den)
}

/// `s^{-1}(w) = S^{-1}(w / (2 pi Omega^2))`.
pub fn map_s_inv(case: CmCase, w: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let radius = disk_radius(case, ctx);
    map_s_inv_unit(case, &w.scale(&radius.recip()), ctx)
}

/// The point where `j` is taken for `tau = s^{-1}(w)`: `(tau + 1)/3` for
/// `rho`, `tau` itself for `i`.  Both send `tau*` to a point equivalent to it.
pub fn expansion_argument(case: CmCase, tau: &HPComplex, ctx: &Context) -> HPComplex {
    match case {
        CmCase::Rho => (tau + &HPComplex::one(ctx.bits())).scale(&ctx.ratio(1, 3)),
        CmCase::I => tau.clone(),
    }
}

/// `b_rho(0..=order)` from `b_rho(n) = -1728 * 6^n * p_n(0) / n!`.
pub fn elliptic_expansion_rho(order: usize) -> TruncatedSeries {
    let ps = p_polynomials(order);
    let coeffs = ps
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let scale = Rational::new(BigInt::from(-1728) * BigInt::from(6).pow(n as u32), factorial(n as u64));
            p.coeff(0) * scale
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `b_i(0..=order)`: with `r` the compositional inverse of the flat
/// coordinate `c_i`, `sum b_i(n) w^n = 64 (3 + 4 r^2)^3 / (1 - 4 r^2)^2`.
///
/// `c_i` is odd, so everything is computed in `u = t^2`, `v = w^2`:
/// `r(w)^2` is the inverse of `u -> c_i(t)^2`.
pub fn elliptic_expansion_i(order: usize) -> TruncatedSeries {
    let order = order.max(1);
    let half = (order / 2).max(1);
    // c_i(t) = t C(t^2) with C = H/G, so b_i(w) = B(w^2) where
    // B = P(psi)/Q(psi) and psi reverts u C(u)^2.
    let (h, g) = flat_parts_exact(CmCase::I, 2 * half + 1);
    let big_g: Vec<&Rational> = g.coeffs().iter().step_by(2).take(half + 1).collect();
    let big_h: Vec<&Rational> = h.coeffs().iter().skip(1).step_by(2).take(half + 1).collect();
    let num = &Polynomial::from_integers(&[3, 4]).pow(3) * &Polynomial::from_integers(&[64]);
    let den = Polynomial::from_integers(&[1, -4]).pow(2);
    let reduce = |f: &PrimeField, qs: &[&Rational]| qs.iter().map(|q| f.from_rational(q)).collect::<Option<Vec<u64>>>();
    let coeffs = reconstruct_series(half + 1, |f| {
        let c = f.series_div(&reduce(f, &big_h)?, &reduce(f, &big_g)?)?;
        let c_squared = f.series_mul(&c, &c);
        let mut phi = vec![0u64; half + 1];
        phi[1..].copy_from_slice(&c_squared[..half]);
        let psi = f.series_reversion(&phi)?;
        let p = f.compose_poly(&reduce(f, &num.coeffs().iter().collect::<Vec<_>>())?, &psi);
        let q = f.compose_poly(&reduce(f, &den.coeffs().iter().collect::<Vec<_>>())?, &psi);
        f.series_div(&p, &q)
    });
    TruncatedSeries::new(coeffs).inflate(2).truncate(order)
}

/// Taylor coefficients of `w -> j(A(s^{-1}(w)))` at 0 estimated from samples
/// on a circle, with per-coefficient error estimates.
#[derive(Clone, Debug)]
pub struct ContourCoefficients {
    pub values: Vec<HPComplex>,
    pub tolerances: Vec<Real>,
    pub samples: usize,
    pub radius: Real,
}

/// Contour radius as a fraction of the disk radius `2 pi Omega^2`.
pub const CONTOUR_FRACTION: (i64, i64) = (1, 20);

/// `b(n)` from the trapezoidal rule on `|w| = r`, `r = 0.05 * 2 pi Omega^2`.
pub fn elliptic_expansion_numeric(case: CmCase, n: usize, ctx: &Context) -> Result<HPComplex> {
    Ok(elliptic_expansion_numeric_all(case, n, ctx)?.values.swap_remove(n))
}

/// `b(0..=n_max)` at once; see [`elliptic_expansion_numeric`].
pub fn elliptic_expansion_numeric_all(case: CmCase, n_max: usize, ctx: &Context) -> Result<ContourCoefficients> {
    elliptic_expansion_contour(case, n_max, &rat(CONTOUR_FRACTION.0, CONTOUR_FRACTION.1), ctx)
}

/// Contour estimate with the circle at `fraction` of the disk radius.
///
/// The sample count starts at `4 (n_max + 1)` and doubles until two
/// successive estimates agree to `D - 2G` digits.
pub fn elliptic_expansion_contour(
    case: CmCase,
    n_max: usize,
    fraction: &Rational,
    ctx: &Context,
) -> Result<ContourCoefficients> {
    if *fraction >= rat(1, 2) || *fraction <= Rational::zero() {
        return Err(Error::ContourTooLarge);
    }
    let bits = ctx.bits();
    let policy = ctx.policy();
    let agree_digits = policy.target_digits.saturating_sub(2 * policy.guard_digits).max(1);
    let radius = &disk_radius(case, ctx) * &ctx.rational(fraction);
    let unit_radius = ctx.rational(fraction);

    let mut m = 4 * (n_max + 1);
    let mut samples: Vec<HPComplex> = Vec::new();
    let mut previous: Option<Vec<HPComplex>> = None;
    loop {
        // Samples at angles 2 pi k / m; the even ones were computed before.
        let roots = roots_of_unity(m, ctx);
        let mut next = Vec::with_capacity(m);
        for (k, root) in roots.iter().enumerate() {
            if previous.is_some() && k % 2 == 0 {
                next.push(samples[k / 2].clone());
                continue;
            }
            let tau = map_s_inv_unit(case, &root.scale(&unit_radius), ctx)?;
            next.push(j_eval(&expansion_argument(case, &tau, ctx), ctx)?);
        }
        samples = next;
        let values = trapezoid(&samples, &roots, n_max, &radius, ctx);
        let max_f = samples.iter().map(|f| f.abs()).max().unwrap_or_else(|| ctx.int(0));
        let mut tolerances = Vec::with_capacity(n_max + 1);
        let mut scale = max_f.mul_pow2(-(i64::from(bits) - 40));
        for _ in 0..=n_max {
            tolerances.push(scale.clone());
            scale = &scale / &radius;
        }
        if let Some(prev) = &previous {
            let agreed = values.iter().zip(prev).zip(&tolerances).all(|((v, p), tol)| {
                let scale = v.abs().max(ctx.int(1));
                let diff = v.dist(p);
                diff <= &scale * &ctx.pow10_neg(agree_digits) || diff <= *tol
            });
            if agreed {
                return Ok(ContourCoefficients { values, tolerances, samples: m, radius });
            }
        }
        if m > 1 << 16 {
            return Err(Error::NoConvergence("contour estimates did not settle".into()));
        }
        previous = Some(values);
        m *= 2;
    }
}

/// `exp(2 pi i k / m)` for `k = 0..m`.
fn roots_of_unity(m: usize, ctx: &Context) -> Vec<HPComplex> {
    let step = &ctx.pi().mul_pow2(1) / &ctx.int(m as i64);
    (0..m)
        .map(|k| {
            let (s, c) = ctx.sin_cos(&(&step * &ctx.int(k as i64)));
            HPComplex::new(c, s)
        })
        .collect()
}

/// `b(n) = (1 / (m r^n)) sum_k f_k omega^(-k n)`.
fn trapezoid(samples: &[HPComplex], roots: &[HPComplex], n_max: usize, radius: &Real, ctx: &Context) -> Vec<HPComplex> {
    let m = samples.len();
    let inv_m = ctx.int(m as i64).recip();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut r_pow = ctx.int(1);
    for n in 0..=n_max {
        let mut acc = HPComplex::zero(ctx.bits());
        for (k, f) in samples.iter().enumerate() {
            let idx = (k * n) % m;
            let root = roots[idx].conj();
            acc = &acc + &(f * &root);
        }
        out.push(acc.scale(&(&inv_m / &r_pow)));
        r_pow = &r_pow * radius;
    }
    out
}

/// Exact coefficient of `w^n` in the case's expansion.
pub fn elliptic_coefficient(case: CmCase, n: usize) -> Rational {
    let series = match case {
        CmCase::Rho => elliptic_expansion_rho(n),
        CmCase::I => elliptic_expansion_i(n),
    };
    series.coeff(n).clone()
}
