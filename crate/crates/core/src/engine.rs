//! Flat coordinates `c(t) = h(t)/g(t)` at the two CM points and the checks of
//!
//! ```text
//! j((s_rho^{-1}(c_rho(t)) + 1) / 3) = 27 t^3 ((8 - t^3) / (1 + t^3))^3,    |t| < 1
//! j(s_i^{-1}(c_i(t)))               = 64 (3 + 4t^2)^3 / (1 - 4t^2)^2,      |t| < 1/2
//! ```
//!
//! both as identities of formal power series and numerically, plus the
//! hypergeometric closed forms of `g` and `h` and their six branch sectors
//! in the `rho` case.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{f21_eval, f21_eval_boundary, CutSide, F21Params};
use crate::modular::{disk_radius, elliptic_expansion_i, elliptic_expansion_rho, expansion_argument, j_eval, map_s_inv, CmCase};
use crate::numerics::{const_rho, gamma_eval, Context, HPComplex, Real};
use crate::series::{int, multifactorial, rat, rational_function_expand, Polynomial, Rational, TruncatedSeries};

/// Exact `h`, `g` and `c = h/g` through `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCoordinateSeries {
    pub case: CmCase,
    pub h: TruncatedSeries,
    pub g: TruncatedSeries,
    pub c: TruncatedSeries,
}

/// The multifactorial series
///
/// ```text
/// rho: g = sum (-1)^n ((3n-2)!!!)^3 t^(3n) / (3n)!,  h = sum (-1)^n ((3n-1)!!!)^3 t^(3n+1) / (3n+1)!
/// i:   g = sum ((4n-3)!!!!)^2 t^(2n) / (2n)!,        h = sum ((4n-1)!!!!)^2 t^(2n+1) / (2n+1)!
/// ```
pub fn flat_series(case: CmCase, order: usize) -> FlatCoordinateSeries {
    let (h, g) = flat_parts_exact(case, order);
    let c = h.div(&g).expect("g(0) = 1");
    FlatCoordinateSeries { case, h, g, c }
}

/// `(h, g)` of [`flat_series`] without the quotient.
pub(crate) fn flat_parts_exact(case: CmCase, order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let order = order.max(1);
    let mut g = TruncatedSeries::zero(order);
    let mut h = TruncatedSeries::zero(order);
    let (gap, power, sign) = match case {
        CmCase::Rho => (3usize, 3usize, -1i64),
        CmCase::I => (2, 2, 1),
    };
    let m = match case {
        CmCase::Rho => 3u64,
        CmCase::I => 4,
    };
    let mut fact = Rational::one();
    let mut k = 0usize;
    for n in 0.. {
        let e = gap * n;
        if e > order {
            break;
        }
        while k < e {
            k += 1;
            fact *= int(k as i64);
        }
        let s = if sign < 0 && n % 2 == 1 { int(-1) } else { int(1) };
        // (M n - r)!...! with (M, r) = (3, 2), (3, 1) for rho and (4, 3), (4, 1) for i
        let g_mf = multifactorial(m, n as u64, if case == CmCase::Rho { 2 } else { 3 }).unwrap();
        g.set_coeff(e, &s * num_traits::pow(g_mf, power) / &fact);
        if e < order {
            let h_mf = multifactorial(m, n as u64, 1).unwrap();
            let fact1 = &fact * int(e as i64 + 1);
            h.set_coeff(e + 1, &s * num_traits::pow(h_mf, power) / fact1);
        }
    }
    (h, g)
}

fn check_radius(case: CmCase, t: &HPComplex, ctx: &Context) -> Result<()> {
    let r = ctx.rational(&case.convergence_radius());
    if t.norm_sqr() >= r.square() {
        return Err(Error::OutOfDomain(format!("|t| must be below {}", case.convergence_radius())));
    }
    Ok(())
}

/// `(g(t), h(t), terms)` by summing the series with exact term ratios,
/// stopping at exponent `max_exponent` or once terms no longer matter.
pub fn flat_parts_series(case: CmCase, t: &HPComplex, max_exponent: usize, ctx: &Context) -> Result<(HPComplex, HPComplex, usize)> {
    check_radius(case, t, ctx)?;
    let bits = ctx.bits();
    let (x, gap) = match case {
        CmCase::Rho => (-t.powi(3), 3usize),
        CmCase::I => (t.square(), 2),
    };
    let mut g_term = HPComplex::one(bits);
    let mut h_term = t.clone();
    let mut g = g_term.clone();
    let mut h = h_term.clone();
    let mut used = 1usize;
    let limit = i64::from(bits) + 8;
    for n in 0u64.. {
        let next_exp = gap * (n as usize + 1);
        if next_exp > max_exponent {
            break;
        }
        let (gr, hr) = match case {
            CmCase::Rho => {
                let k = 3 * n;
                (rat_u(square(k + 1), (k + 2) * (k + 3)), rat_u(square(k + 2), (k + 3) * (k + 4)))
            }
            CmCase::I => {
                let k = 2 * n;
                (rat_u(square(2 * k + 1), (k + 1) * (k + 2)), rat_u(square(2 * k + 3), (k + 2) * (k + 3)))
            }
        };
        g_term = (&g_term * &x).scale(&ctx.rational(&gr));
        h_term = (&h_term * &x).scale(&ctx.rational(&hr));
        g = &g + &g_term;
        h = &h + &h_term;
        used += 1;
        let small = |term: &HPComplex, sum: &HPComplex| match (mag(term), mag(sum)) {
            (None, _) => true,
            (Some(a), Some(b)) => a < b - limit,
            _ => false,
        };
        if small(&g_term, &g) && small(&h_term, &h) {
            break;
        }
    }
    Ok((g, h, used))
}

fn square(n: u64) -> u64 {
    n * n
}

fn rat_u(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn mag(z: &HPComplex) -> Option<i64> {
    match (z.re.magnitude(), z.im.magnitude()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    }
}

/// `c(t)` from the series truncated at exponent `terms`.
pub fn flat_eval_series(case: CmCase, t: &HPComplex, terms: usize, ctx: &Context) -> Result<HPComplex> {
    let (g, h, _) = flat_parts_series(case, t, terms, ctx)?;
    Ok(&h / &g)
}

fn f21(a: Rational, b: Rational, c: Rational) -> F21Params {
    F21Params::new(a, b, c).expect("fixed parameters")
}

/// `(g(t), h(t))` through
/// `g_rho = F(1/3, 1/3; 2/3; -t^3)`, `h_rho = t F(2/3, 2/3; 4/3; -t^3)`,
/// `g_i = F(1/4, 1/4; 1/2; 4t^2)`, `h_i = t F(3/4, 3/4; 3/2; 4t^2)`.
pub fn flat_parts_hypergeometric(case: CmCase, t: &HPComplex, ctx: &Context) -> Result<(HPComplex, HPComplex)> {
    let (pg, ph, z) = match case {
        CmCase::Rho => (f21(rat(1, 3), rat(1, 3), rat(2, 3)), f21(rat(2, 3), rat(2, 3), rat(4, 3)), -t.powi(3)),
        CmCase::I => (f21(rat(1, 4), rat(1, 4), rat(1, 2)), f21(rat(3, 4), rat(3, 4), rat(3, 2)), t.square().mul_pow2(2)),
    };
    let g = f21_eval(&pg, &z, ctx)?;
    let h = t * &f21_eval(&ph, &z, ctx)?;
    Ok((g, h))
}

/// `c(t) = h(t)/g(t)` from the `2F1` closed forms.
pub fn flat_eval_hypergeometric(case: CmCase, t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    if t.is_zero() {
        return Ok(HPComplex::zero(ctx.bits()));
    }
    let (g, h) = flat_parts_hypergeometric(case, t, ctx)?;
    Ok(&h / &g)
}

/// Numerator and denominator of the right-hand side as polynomials in `t`.
pub fn conj_rhs_polynomials(case: CmCase) -> (Polynomial, Polynomial) {
    match case {
        CmCase::Rho => {
            // 27 t^3 (8 - t^3)^3 / (1 + t^3)^3
            let cube = Polynomial::monomial(int(27), 3);
            let num = &cube * &Polynomial::from_integers(&[8, 0, 0, -1]).pow(3);
            (num, Polynomial::from_integers(&[1, 0, 0, 1]).pow(3))
        }
        CmCase::I => {
            // 64 (3 + 4t^2)^3 / (1 - 4t^2)^2
            let num = &Polynomial::from_integers(&[64]) * &Polynomial::from_integers(&[3, 0, 4]).pow(3);
            (num, Polynomial::from_integers(&[1, 0, -4]).pow(2))
        }
    }
}

/// The right-hand side at a rational `t`, exactly.
pub fn conj_rhs(case: CmCase, t: &Rational) -> Result<Rational> {
    let (p, q) = conj_rhs_polynomials(case);
    let den = q.eval(t);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(p.eval(t) / den)
}

/// The right-hand side at complex `t`.
pub fn conj_rhs_numeric(case: CmCase, t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let (p, q) = conj_rhs_polynomials(case);
    let eval = |poly: &Polynomial| {
        poly.coeffs().iter().rev().fold(HPComplex::zero(ctx.bits()), |acc, c| &(&acc * t) + &HPComplex::from_rational(c, ctx.bits()))
    };
    let den = eval(&q);
    if den.is_zero() {
        return Err(Error::PoleInput);
    }
    Ok(&eval(&p) / &den)
}

/// Taylor expansion of the right-hand side through `t^order`.
pub fn conj_rhs_series(case: CmCase, order: usize) -> TruncatedSeries {
    let (p, q) = conj_rhs_polynomials(case);
    rational_function_expand(&p, &q, order).expect("denominator is 1 at t = 0")
}

/// The exact elliptic expansion of the case through `w^order`.
pub fn elliptic_expansion(case: CmCase, order: usize) -> TruncatedSeries {
    match case {
        CmCase::Rho => elliptic_expansion_rho(order),
        CmCase::I => elliptic_expansion_i(order),
    }
}

/// `sum b(n) c(t)^n` through `t^order`.
pub fn composed_series(case: CmCase, order: usize) -> TruncatedSeries {
    let b = elliptic_expansion(case, order);
    let c = flat_series(case, order).c;
    b.compose(&c).expect("c(0) = 0")
}

/// A value reported by a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    Complex(HPComplex),
    Series(TruncatedSeries),
}

/// One named sub-check inside a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub residual: Real,
    pub pass: bool,
}

/// Outcome of comparing the two sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: CmCase,
    pub t: Option<Value>,
    /// The point of the upper half-plane where `j` was evaluated.
    pub argument: Option<HPComplex>,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_residual: Real,
    pub digits_matched: u32,
    pub series_terms_used: usize,
    pub tolerance: Real,
    pub pass: bool,
    /// First coefficient index where exact series differ.
    pub first_mismatch: Option<usize>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

/// Default pass threshold `10^(-D/2)` for a target of `D` digits.
pub fn pass_tolerance(ctx: &Context) -> Real {
    ctx.pow10_neg(ctx.policy().target_digits.div_ceil(2))
}

/// Decimal digits of agreement implied by `residual` against `scale`,
/// capped at the context's contract.
pub fn digits_matched(residual: &Real, scale: &Real, ctx: &Context) -> u32 {
    let cap = ctx.policy().contract_digits();
    let Some(r) = residual.magnitude() else {
        return cap;
    };
    let s = scale.magnitude().unwrap_or(1).max(1);
    let bits = (s - r).max(0) as f64;
    ((bits * core::f64::consts::LOG10_2) as u32).min(cap)
}

/// Checks `sum b(n) c(t)^n` against the expansion of the right-hand side
/// coefficient by coefficient through `t^order`.
pub fn verify_exact(case: CmCase, order: usize) -> VerificationReport {
    let lhs = composed_series(case, order);
    let rhs = conj_rhs_series(case, order);
    let n = lhs.order().min(rhs.order());
    let first_mismatch = (0..=n).find(|&k| lhs.coeff(k) != rhs.coeff(k));
    let worst = (0..=n).map(|k| (lhs.coeff(k) - rhs.coeff(k)).abs()).max().unwrap_or_else(Rational::zero);
    let pass = first_mismatch.is_none();
    let abs_residual = Real::from_rational(&worst, 64);
    let mut notes = Vec::new();
    if case == CmCase::I {
        notes.push("b_i(n) are obtained by reverting c_i, so this checks internal consistency".into());
    }
    if let Some(k) = first_mismatch {
        notes.push(format!("first mismatch at t^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)));
    }
    VerificationReport {
        case,
        t: None,
        argument: None,
        lhs: Value::Series(lhs),
        rhs: Value::Series(rhs),
        abs_residual,
        digits_matched: if pass { u32::MAX } else { 0 },
        series_terms_used: n + 1,
        tolerance: Real::zero(64),
        pass,
        first_mismatch,
        checks: Vec::new(),
        notes,
    }
}

/// Default number of series terms for numerical flat coordinates.
pub const DEFAULT_TERMS: usize = 1000;

/// Evaluates `j` at `s^{-1}(c(t))` (shifted to `(. + 1)/3` for `rho`) and
/// compares with the right-hand side, with the default tolerance.
pub fn verify_numeric(case: CmCase, t: &HPComplex, terms: usize, ctx: &Context) -> Result<VerificationReport> {
    verify_numeric_with_tolerance(case, t, terms, &pass_tolerance(ctx), ctx)
}

/// The point where `j` is evaluated for the flat coordinate value `c`.
pub fn j_argument(case: CmCase, c: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    Ok(expansion_argument(case, &map_s_inv(case, c, ctx)?, ctx))
}

pub fn verify_numeric_with_tolerance(
    case: CmCase,
    t: &HPComplex,
    terms: usize,
    tol: &Real,
    ctx: &Context,
) -> Result<VerificationReport> {
    check_radius(case, t, ctx)?;
    if t.is_zero() {
        let v = match case {
            CmCase::Rho => int(0),
            CmCase::I => int(1728),
        };
        return Ok(VerificationReport {
            case,
            t: Some(Value::Complex(t.clone())),
            argument: None,
            lhs: Value::Exact(v.clone()),
            rhs: Value::Exact(v),
            abs_residual: Real::zero(ctx.bits()),
            digits_matched: ctx.policy().contract_digits(),
            series_terms_used: 0,
            tolerance: tol.clone(),
            pass: true,
            first_mismatch: None,
            checks: Vec::new(),
            notes: alloc::vec!["t = 0: both sides by direct calculation".into()],
        });
    }
    let (g, h, used) = flat_parts_series(case, t, terms, ctx)?;
    let c = &h / &g;
    let arg = j_argument(case, &c, ctx)?;
    let lhs = j_eval(&arg, ctx)?;
    let rhs = conj_rhs_numeric(case, t, ctx)?;
    let residual = lhs.dist(&rhs);
    let scale = rhs.abs().max(ctx.int(1));
    let pass = residual < *tol;
    Ok(VerificationReport {
        case,
        t: Some(Value::Complex(t.clone())),
        argument: Some(arg),
        lhs: Value::Complex(lhs),
        rhs: Value::Complex(rhs),
        digits_matched: digits_matched(&residual, &scale, ctx),
        abs_residual: residual,
        series_terms_used: used,
        tolerance: tol.clone(),
        pass,
        first_mismatch: None,
        checks: alloc::vec![Check { name: "flat coordinate".into(), residual: Real::zero(ctx.bits()), pass: true }],
        notes: alloc::vec![format!("c(t) = {}", c)],
    })
}

/// `c_rho(t) / (2 pi Omega_rho^2)`, the flat coordinate in the unit disk.
pub fn chat_rho(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let c = flat_eval_series(CmCase::Rho, t, usize::MAX, ctx)?;
    Ok(c.scale(&disk_radius(CmCase::Rho, ctx).recip()))
}

/// One column of the sector table: for `arg t` in
/// `[k pi/3, (k+1) pi/3)`, `g` and `h` are multiples of
/// `t^{-1} (rho^a F(1/3, 2/3; 1; 1 + t^-3) + rho^b F(1/3, 2/3; 1; -t^-3))`
/// with exponents `(a_g, b_g)` and `(a_h, b_h)`, and `c_rho / (2 pi Omega^2)`
/// is `(X - rho)/(X - conj rho)` for the row's Moebius image `X` of `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SectorSpec {
    pub index: usize,
    pub a_g: u32,
    pub b_g: u32,
    pub a_h: u32,
    pub b_h: u32,
}

pub const SECTORS: [SectorSpec; 6] = [
    SectorSpec { index: 0, a_g: 0, b_g: 1, a_h: 0, b_h: 2 },
    SectorSpec { index: 1, a_g: 2, b_g: 1, a_h: 4, b_h: 2 },
    SectorSpec { index: 2, a_g: 2, b_g: 3, a_h: 4, b_h: 0 },
    SectorSpec { index: 3, a_g: 4, b_g: 3, a_h: 2, b_h: 0 },
    SectorSpec { index: 4, a_g: 4, b_g: 5, a_h: 2, b_h: 4 },
    SectorSpec { index: 5, a_g: 0, b_g: 5, a_h: 0, b_h: 4 },
];

impl SectorSpec {
    pub fn label(&self) -> &'static str {
        ["[0, pi/3)", "(pi/3, 2pi/3)", "(2pi/3, pi)", "(pi, 4pi/3)", "(4pi/3, 5pi/3)", "(5pi/3, 2pi)"][self.index]
    }

    /// `X(tau)`: `3tau - 1`, `-1/(3tau + 1)`, `-1/(3tau - 2)`,
    /// `(3tau + 1)/(3tau + 2)`, `(3tau - 2)/(3tau - 1)`, `3tau + 2`.
    pub fn moebius(&self, tau: &HPComplex, ctx: &Context) -> HPComplex {
        let t3 = tau.scale(&ctx.int(3));
        let plus = |k: i64| &t3 + &ctx.cint(k);
        match self.index {
            0 => plus(-1),
            1 => -plus(1).recip(),
            2 => -plus(-2).recip(),
            3 => &plus(1) / &plus(2),
            4 => &plus(-2) / &plus(-1),
            _ => plus(2),
        }
    }
}

/// Width of the excluded band around sector boundaries, in radians.
pub const SECTOR_BOUNDARY_BAND: f64 = 1e-6;

/// The sector containing `arg t`, with `arg` taken in `[0, 2pi)`.
///
/// Fails with `SectorBoundary` within [`SECTOR_BOUNDARY_BAND`] of a multiple
/// of `pi/3`, except that `arg t` in `[0, band)` belongs to the first sector.
pub fn sector_of(t: &HPComplex, ctx: &Context) -> Result<&'static SectorSpec> {
    if t.is_zero() {
        return Err(Error::OutOfDomain("t = 0 has no sector".into()));
    }
    let mut arg = ctx.arg(t);
    let two_pi = ctx.pi().mul_pow2(1);
    if arg.is_negative() {
        arg = &arg + &two_pi;
    }
    let sixth = &ctx.pi() / &ctx.int(3);
    let x = &arg / &sixth;
    let k = x.round();
    let off = (&x - &Real::from_int(k.clone(), ctx.bits())).abs();
    let band = &Real::from_f64(SECTOR_BOUNDARY_BAND, ctx.bits()) / &sixth;
    let at_zero = k.is_zero() && !arg.is_negative();
    if off < band && !at_zero {
        return Err(Error::SectorBoundary);
    }
    let idx = x.floor();
    let idx: usize = idx.try_into().unwrap_or(0);
    Ok(&SECTORS[idx.min(5)])
}

/// `rho^k` for `k` in `0..6`.
fn rho_pow(k: u32, ctx: &Context) -> HPComplex {
    const_rho(ctx).powi(k % 6)
}

/// `(F(1 + t^-3), F(-t^-3))` with `F = 2F1(1/3, 2/3; 1; .)`; on the positive
/// real axis `1 + t^-3` is approached from below.
fn sector_hypergeometrics(t: &HPComplex, ctx: &Context) -> Result<(HPComplex, HPComplex)> {
    let p = f21(rat(1, 3), rat(2, 3), int(1));
    let inv3 = t.powi(3).recip();
    let f1 = f21_eval_boundary(&p, &(&HPComplex::one(ctx.bits()) + &inv3), CutSide::Below, ctx)?;
    let f2 = f21_eval(&p, &-inv3, ctx)?;
    Ok((f1, f2))
}

/// `Gamma(2/3)^2 / Gamma(1/3)` and `Gamma(1/3)^2 / (3 Gamma(2/3))`.
pub fn rho_prefactors(ctx: &Context) -> (Real, Real) {
    let g13 = gamma_eval(&rat(1, 3), ctx).unwrap();
    let g23 = gamma_eval(&rat(2, 3), ctx).unwrap();
    let kg = &g23.square() / &g13;
    let kh = &g13.square() / &(&g23 * &ctx.int(3));
    (kg, kh)
}

fn row_combination(a: u32, b: u32, f1: &HPComplex, f2: &HPComplex, t: &HPComplex, ctx: &Context) -> HPComplex {
    let s = &(&rho_pow(a, ctx) * f1) + &(&rho_pow(b, ctx) * f2);
    &s / t
}

/// `g_rho(t)` from the closed form of the sector containing `t`.
pub fn closed_form_g_rho(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let row = sector_of(t, ctx)?;
    let (f1, f2) = sector_hypergeometrics(t, ctx)?;
    Ok(row_combination(row.a_g, row.b_g, &f1, &f2, t, ctx).scale(&rho_prefactors(ctx).0))
}

/// `h_rho(t)` from the closed form of the sector containing `t`.
pub fn closed_form_h_rho(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let row = sector_of(t, ctx)?;
    let (f1, f2) = sector_hypergeometrics(t, ctx)?;
    Ok(row_combination(row.a_h, row.b_h, &f1, &f2, t, ctx).scale(&rho_prefactors(ctx).1))
}

/// `c_rho(t) = Gamma(1/3)^3 / (3 Gamma(2/3)^3) * (rho^a_h F1 + rho^b_h F2) / (rho^a_g F1 + rho^b_g F2)`.
pub fn closed_form_c_rho(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let row = sector_of(t, ctx)?;
    let (f1, f2) = sector_hypergeometrics(t, ctx)?;
    let (kg, kh) = rho_prefactors(ctx);
    let num = row_combination(row.a_h, row.b_h, &f1, &f2, t, ctx);
    let den = row_combination(row.a_g, row.b_g, &f1, &f2, t, ctx);
    Ok((&num / &den).scale(&(&kh / &kg)))
}

/// `(F(1/2, 1/2; 1; (1 - 2t)/2), F(1/2, 1/2; 1; (1 + 2t)/2))`.
fn i_hypergeometrics(t: &HPComplex, ctx: &Context) -> Result<(HPComplex, HPComplex)> {
    let p = f21(rat(1, 2), rat(1, 2), int(1));
    let half = HPComplex::from_real(ctx.ratio(1, 2));
    let lo = &half - t;
    let hi = &half + t;
    Ok((f21_eval(&p, &lo, ctx)?, f21_eval(&p, &hi, ctx)?))
}

/// `g_i(t) = Gamma(3/4)^2 / (2 sqrt pi) (F((1-2t)/2) + F((1+2t)/2))`.
pub fn closed_form_g_i(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let (lo, hi) = i_hypergeometrics(t, ctx)?;
    let k = &gamma_eval(&rat(3, 4), ctx)?.square() / &ctx.sqrt(&ctx.pi()).mul_pow2(1);
    Ok((&lo + &hi).scale(&k))
}

/// `h_i(t) = -Gamma(1/4)^2 / (8 sqrt pi) (F((1-2t)/2) - F((1+2t)/2))`.
pub fn closed_form_h_i(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let (lo, hi) = i_hypergeometrics(t, ctx)?;
    let k = &gamma_eval(&rat(1, 4), ctx)?.square() / &ctx.sqrt(&ctx.pi()).mul_pow2(3);
    Ok((&hi - &lo).scale(&k))
}

/// `c_i(t) = Gamma(1/4)^2 / (-4 Gamma(3/4)^2) (F_lo - F_hi) / (F_lo + F_hi)`.
pub fn closed_form_c_i(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let (lo, hi) = i_hypergeometrics(t, ctx)?;
    let k = &gamma_eval(&rat(1, 4), ctx)?.square() / &gamma_eval(&rat(3, 4), ctx)?.square().mul_pow2(2);
    Ok((&(&hi - &lo) / &(&hi + &lo)).scale(&k))
}

/// `tau = (i / sqrt 3) F(1 + t^-3) / F(-t^-3)`, the period ratio behind the
/// sector formulas.
pub fn sector_tau(t: &HPComplex, ctx: &Context) -> Result<HPComplex> {
    let (f1, f2) = sector_hypergeometrics(t, ctx)?;
    Ok((&f1 / &f2).mul_i().scale(&ctx.sqrt(&ctx.int(3)).recip()))
}

/// Checks the sector's row at `t`, after confirming `t` lies in it.
pub fn sector_check(sector: &SectorSpec, t: &HPComplex, ctx: &Context) -> Result<VerificationReport> {
    let actual = sector_of(t, ctx)?;
    if actual.index != sector.index {
        return Err(Error::OutOfDomain(format!("arg t is in sector {}, not {}", actual.label(), sector.label())));
    }
    sector_check_with_row(sector, t, ctx)
}

/// Checks a row of the sector table at `t` regardless of which sector `t`
/// is in; a row applied outside its sector is expected to fail.
///
/// * the constants `g / (t^-1 (rho^a_g F1 + rho^b_g F2))` and the `h`
///   analogue equal the first sector's Gamma ratios,
/// * the row's Moebius expression in `tau` equals `c_rho(t) / (2 pi Omega^2)`,
/// * `j((X + 1)/3)` equals the right-hand side.
pub fn sector_check_with_row(row: &SectorSpec, t: &HPComplex, ctx: &Context) -> Result<VerificationReport> {
    sector_of(t, ctx)?;
    let one = ctx.int(1);
    if t.norm_sqr() >= one {
        return Err(Error::OutOfDomain("|t| must be below 1".into()));
    }
    let tol = pass_tolerance(ctx);
    let (g, h, used) = flat_parts_series(CmCase::Rho, t, usize::MAX, ctx)?;
    let (f1, f2) = sector_hypergeometrics(t, ctx)?;
    let (kg, kh) = rho_prefactors(ctx);
    let unit = HPComplex::one(ctx.bits());

    let mut checks = Vec::new();
    let mut push = |name: &str, residual: Real| {
        let pass = residual < tol;
        checks.push(Check { name: name.into(), residual, pass });
    };
    let ratio_g = (&g / &row_combination(row.a_g, row.b_g, &f1, &f2, t, ctx)).scale(&kg.recip());
    push("g prefactor", ratio_g.dist(&unit));
    let ratio_h = (&h / &row_combination(row.a_h, row.b_h, &f1, &f2, t, ctx)).scale(&kh.recip());
    push("h prefactor", ratio_h.dist(&unit));

    let tau = (&f1 / &f2).mul_i().scale(&ctx.sqrt(&ctx.int(3)).recip());
    let x = row.moebius(&tau, ctx);
    let rho = const_rho(ctx);
    let moebius = &(&x - &rho) / &(&x - &rho.conj());
    let chat = (&h / &g).scale(&disk_radius(CmCase::Rho, ctx).recip());
    push("moebius", moebius.dist(&chat));

    let arg = (&x + &unit).scale(&ctx.ratio(1, 3));
    let rhs = conj_rhs_numeric(CmCase::Rho, t, ctx)?;
    let (lhs, j_residual) = if arg.im.is_positive() {
        let v = j_eval(&arg, ctx)?;
        let r = v.dist(&rhs);
        (v, r)
    } else {
        (HPComplex::zero(ctx.bits()), ctx.int(1 << 20))
    };
    let scale = rhs.abs().max(one.clone());
    let j_rel = &j_residual / &scale;
    push("j equivalence", j_rel.clone());

    let pass = checks.iter().all(|c| c.pass);
    let worst = checks.iter().map(|c| c.residual.clone()).max().unwrap_or_else(|| Real::zero(ctx.bits()));
    Ok(VerificationReport {
        case: CmCase::Rho,
        t: Some(Value::Complex(t.clone())),
        argument: Some(arg),
        lhs: Value::Complex(lhs),
        rhs: Value::Complex(rhs),
        digits_matched: digits_matched(&worst, &one, ctx),
        abs_residual: worst,
        series_terms_used: used,
        tolerance: tol,
        pass,
        first_mismatch: None,
        checks,
        notes: alloc::vec![format!("row {} applied to t = {}", row.label(), t)],
    })
}
