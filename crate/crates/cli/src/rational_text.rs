//! Text codec for exact rationals.
//!
//! The wire format is `"p"` for integers and `"p/q"` with `q > 0`
//! otherwise; floating-point text is rejected so certificates stay
//! bit-exact. Formatting is the inverse: integers render bare, other values
//! as `p/q` of the reduced fraction.

use std::str::FromStr;

use lfvo_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

/// Renders a rational as `"p"` or `"p/q"` (reduced, `q > 0`).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`; requires `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_text, den_text) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    let numer = BigInt::from_str(num_text.trim())
        .map_err(|_| format!("invalid integer numerator in rational: {s:?}"))?;
    let denom = match den_text {
        None => BigInt::one(),
        Some(d) => {
            let d = BigInt::from_str(d.trim())
                .map_err(|_| format!("invalid integer denominator in rational: {s:?}"))?;
            if !d.is_positive() {
                return Err(format!("rational denominator must be positive, got {s:?}"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Closest double, for the approximation columns of CSV traces.
pub fn approx_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders a vector as `(x1, x2, ...)` for text reports.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Parses a point or direction given as `a,b,...` optionally wrapped in
/// brackets or parentheses, with rational components.
pub fn parse_vector(s: &str) -> Result<Vec<Rational>, String> {
    let trimmed = s
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')']);
    if trimmed.trim().is_empty() {
        return Err(format!("empty vector: {s:?}"));
    }
    trimmed.split(',').map(parse_rational).collect()
}
