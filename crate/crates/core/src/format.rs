//! Rendering of exact values for reports.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn rational(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"1e-12"` or `"0.25"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Some(value)
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero, computed exactly.
pub fn decimal(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let neg = x.is_negative();
    let x = x.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= x < 10^(e+1)
    let mut e = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while x < pow(e) {
        e -= 1;
    }
    while x >= pow(e + 1) {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &x * pow(shift);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut digits = q;
    if r * 2 >= *scaled.denom() {
        digits += 1;
    }
    // rounding may carry into a new digit
    let mut shift = shift;
    if digits.to_string().len() > sig {
        digits /= 10;
        shift -= 1;
    }
    let s = digits.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else if (shift as usize) < s.len() {
        let (a, b) = s.split_at(s.len() - shift as usize);
        trim_fraction(format!("{a}.{b}"))
    } else {
        let zeros = "0".repeat(shift as usize - s.len());
        trim_fraction(format!("0.{zeros}{s}"))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(s: String) -> String {
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

/// Twelve significant digits, the report default.
pub fn decimal12(x: &BigRational) -> String {
    decimal(x, 12)
}

/// Nearest `f64`, for heuristics only.
pub fn to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators and denominators together
            let bits = x.numer().bits().max(x.denom().bits()) as i64;
            let shift = (bits - 900).max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if x.numer().sign() == Sign::Minus {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Exact rational equal to a finite `f64`.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `serialize_with` helpers for exact values.
pub mod serde_exact {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rational(x))
    }

    pub fn opt_rational<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&super::rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn decimal<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::decimal12(x))
    }

    pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn rationals<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(super::rational))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&r(4, 2)), "2");
        assert_eq!(rational(&r(13, 6)), "13/6");
        assert_eq!(rational(&r(-3, 9)), "-1/3");
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal12(&r(13, 6)), "2.16666666667");
        assert_eq!(decimal12(&r(2, 1)), "2");
        assert_eq!(decimal12(&r(1, 1000)), "0.001");
        assert_eq!(decimal(&r(999_999, 1_000_000), 3), "1");
        assert_eq!(decimal(&r(-5, 4), 2), "-1.3");
        assert_eq!(decimal(&r(123_456, 1), 3), "123000");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2"), Some(r(3, 2)));
        assert_eq!(parse_rational("1e-12"), Some(r(1, 1_000_000_000_000)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("-2.5e1"), Some(r(-25, 1)));
        assert_eq!(parse_rational("7"), Some(r(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn floats() {
        assert!((to_f64(&r(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        let huge = BigRational::new(BigInt::from(1) << 2000u32, (BigInt::from(1) << 1999u32) * 3);
        assert!((to_f64(&huge) - 2.0 / 3.0).abs() < 1e-12);
    }
}
