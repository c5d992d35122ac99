//! Exact rational scalar type and literal parsing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an exact rational literal.
///
/// Accepted forms:
/// * `p/q` with integer `p`, `q` and `q != 0` (sign may sit on either part);
/// * integer literals such as `-12`;
/// * decimal literals parsed exactly, e.g. `0.25` -> `1/4`, including an
///   optional power-of-ten exponent (`2.5e-3` -> `1/400`).
///
/// Returns `None` for anything else; no floating-point rounding is involved.
pub fn parse_rational(token: &str) -> Option<Rat> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    if let Some((num, den)) = token.split_once('/') {
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    // Decimal literal: [sign] digits [. digits] [e [sign] digits]
    let (mantissa, exponent) = match token.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (token, None),
    };
    let exp: i64 = match exponent {
        Some(e) => e.parse().ok()?,
        None => 0,
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().ok()?
    };
    let ten = BigInt::from(10);
    for c in frac_part.chars() {
        numer = &numer * &ten + BigInt::from(c.to_digit(10).unwrap());
    }
    let scale = frac_part.len() as i64 - exp;
    let mut value = Rat::from_integer(numer * BigInt::from(sign));
    if scale > 0 {
        value /= Rat::from_integer(ten.pow(scale as u32));
    } else if scale < 0 {
        value *= Rat::from_integer(ten.pow((-scale) as u32));
    }
    Some(value)
}

/// Exact conversion of a finite `f64` into a rational.
///
/// Every finite double is a dyadic rational, so this never loses information.
/// Returns `None` for NaN and infinities.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rounds to the nearest `f64`; usable for all magnitudes arising here.
pub fn rat_to_f64(x: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or_else(|| {
        // Fall back to a sign-correct saturation for out-of-range values.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
