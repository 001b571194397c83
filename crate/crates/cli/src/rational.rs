//! Exact rational input and fixed-significance decimal output.

use fhaim_core::BigRat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Parses `p/q`, an integer, or a decimal with optional exponent
/// (`0.1`, `-2.5e-3`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRat, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("invalid numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("invalid denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRat::new(p, q));
    }
    parse_decimal(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn parse_decimal(s: &str) -> Option<BigRat> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let mut value = BigRat::from_integer(digits);
    if scale >= 0 {
        value *= BigRat::from_integer(pow10(scale as u32));
    } else {
        value /= BigRat::from_integer(pow10(scale.unsigned_abs()));
    }
    Some(if neg { -value } else { value })
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// `x` rounded half away from zero to `sig` significant digits, printed
/// without an exponent when `1e-6 ≤ |x| < 1e15` and with trailing zeros
/// removed.
pub fn format_decimal(x: &BigRat, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".into();
    }
    let a = x.abs();
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow = |k: i64| -> BigRat {
        if k >= 0 {
            BigRat::from_integer(pow10(k as u32))
        } else {
            BigRat::new(1.into(), pow10((-k) as u32))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    let scaled = &a * pow(sig as i64 - 1 - e);
    let half = BigRat::new(1.into(), 2.into());
    let mut m = (scaled + half).floor().to_integer();
    if m >= pow10(sig as u32) {
        m /= 10;
        e += 1;
    }
    let digits = m.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let body = if (-6..15).contains(&e) {
        let point = e + 1;
        if point <= 0 {
            trim(format!("0.{}{}", "0".repeat((-point) as usize), digits))
        } else if point as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
        } else {
            let (i, f) = digits.split_at(point as usize);
            trim(format!("{i}.{f}"))
        }
    } else {
        let (i, f) = digits.split_at(1);
        format!("{}e{e}", trim(format!("{i}.{f}")))
    };
    format!("{sign}{body}")
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// [`format_decimal`] of the exact value of a float.
pub fn format_f64(x: f64, sig: usize) -> String {
    match BigRat::from_float(x) {
        Some(r) => format_decimal(&r, sig),
        None => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("1/10").unwrap(), r(1, 10));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational("0.1").unwrap(), r(1, 10));
        assert_eq!(parse_rational("-.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rational("1e-6").unwrap(), r(1, 1_000_000));
        assert_eq!(parse_rational("2.5E2").unwrap(), r(250, 1));
        for bad in ["", "1/0", "abc", "1.2.3", "/", "e5", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_significant_digits() {
        assert_eq!(format_decimal(&r(14, 1), 12), "14");
        assert_eq!(format_decimal(&r(7, 5), 12), "1.4");
        assert_eq!(format_decimal(&r(1, 3), 12), "0.333333333333");
        assert_eq!(format_decimal(&r(-2, 3), 12), "-0.666666666667");
        assert_eq!(format_decimal(&r(9_999_999_999_995, 10), 12), "1000000000000");
        assert_eq!(format_decimal(&r(1, 1_000_000), 12), "0.000001");
        assert_eq!(format_decimal(&r(1, 10_000_000), 12), "1e-7");
        assert_eq!(format_decimal(&r(123_456, 1).pow(4), 3), "2.32e20");
        assert_eq!(format_decimal(&r(0, 1), 12), "0");
        assert_eq!(format_f64(0.1, 12), "0.1");
    }

    #[test]
    fn finite_decimals_round_trip() {
        for (n, d) in [(1, 80), (-3, 8), (2999, 20), (5, 1)] {
            let x = r(n, d);
            assert_eq!(parse_rational(&format_decimal(&x, 12)).unwrap(), x);
        }
    }
}
