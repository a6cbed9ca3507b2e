//! Argument grammar for `t` and `tau`.
//!
//! Real numbers are exact: integers, fractions `p/q` and decimals `d.ddd`
//! (read as the rational with those digits). `t` additionally accepts the
//! token `sqrt3-1`. Complex literals are `a`, `bi`, `a+bi`, `a-bi`, with a
//! bare `i` standing for `1i`.

use moonshine_core::series::int;
use moonshine_core::{Context, HPComplex, Rational};
use num_bigint::BigInt;

/// A parsed value of `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact { re: Rational, im: Rational },
    SqrtThreeMinusOne,
}

impl Point {
    pub fn to_complex(&self, ctx: &Context) -> HPComplex {
        match self {
            Point::Exact { re, im } => ctx.complex(re, im),
            Point::SqrtThreeMinusOne => HPComplex::from_real(&ctx.sqrt(&ctx.int(3)) - &ctx.int(1)),
        }
    }

    /// The value as an exact rational when it is real and rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Point::Exact { re, im } if *im == int(0) => Some(re),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Point::Exact { re, im } if *im == int(0) => re.to_string(),
            Point::Exact { re, im } => format!("{re}{}{}i", if *im < int(0) { "" } else { "+" }, im),
            Point::SqrtThreeMinusOne => "sqrt3-1".into(),
        }
    }
}

/// Parses `-12`, `3/4`, `0.125`, `-.5`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a number: {s:?}");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let value = if let Some((p, q)) = body.split_once('/') {
        let p: BigInt = digits(p).ok_or_else(bad)?;
        let q: BigInt = digits(q).ok_or_else(bad)?;
        if q == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        Rational::new(p, q)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let whole = if whole.is_empty() { BigInt::from(0) } else { digits(whole).ok_or_else(bad)? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = if frac.is_empty() { BigInt::from(0) } else { digits(frac).ok_or_else(bad)? };
        Rational::new(whole * &scale + frac, scale)
    } else {
        Rational::from_integer(digits(body).ok_or_else(bad)?)
    };
    Ok(if neg { -value } else { value })
}

fn digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a complex literal into exact real and imaginary parts.
pub fn parse_complex(s: &str) -> Result<(Rational, Rational), String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok((parse_rational(&s)?, int(0)));
    };
    // Split before the last sign that is not the leading one.
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (int(0), body),
    };
    let im = match im {
        "" | "+" => int(1),
        "-" => int(-1),
        other => parse_rational(other)?,
    };
    Ok((re, im))
}

/// Parses `t`: a complex literal or `sqrt3-1`.
pub fn parse_point(s: &str) -> Result<Point, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.eq_ignore_ascii_case("sqrt3-1") || compact.eq_ignore_ascii_case("sqrt(3)-1") {
        return Ok(Point::SqrtThreeMinusOne);
    }
    let (re, im) = parse_complex(&compact)?;
    Ok(Point::Exact { re, im })
}
