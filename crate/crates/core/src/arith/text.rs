//! Parsing of the textual number forms.
//!
//! Accepted: `p/q`, integers, `(a+b*sqrt(d))/c`, `sqrtD`, `sqrtD±k`,
//! decimals with an optional exponent and `p<bits>` precision suffix, and
//! `-inf` where an extended value is expected.

use super::bigfloat::{BigFloat, DEFAULT_PRECISION, MAX_PRECISION};
use super::exact::ExactReal;
use super::mobius::ExtendedValue;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

fn int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_sqrt_term(s: &str) -> Result<(BigInt, u64)> {
    let s = s.trim();
    let (coef, rest) = match s.find("sqrt") {
        Some(0) => (BigInt::one(), &s[4..]),
        Some(i) => {
            let c = s[..i].trim_end_matches('*');
            let c = match c {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                c => int(c)?,
            };
            (c, &s[i + 4..])
        }
        None => return Err(Error::Parse(format!("missing sqrt in {s:?}"))),
    };
    let rest = rest.trim();
    let d = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    let d = u64::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad radicand {d:?}")))?;
    Ok((coef, d))
}

/// Splits `a ± b*sqrt(d)` at the sign preceding the sqrt term.
fn parse_surd_numerator(s: &str) -> Result<(BigInt, BigInt, u64)> {
    let s = s.trim();
    let idx = s.find("sqrt").ok_or_else(|| Error::Parse(format!("missing sqrt in {s:?}")))?;
    let head = &s[..idx];
    let split = head.rfind(['+', '-']);
    match split {
        Some(i) if i > 0 => {
            let a = int(&s[..i])?;
            let (b, d) = parse_sqrt_term(&s[i..])?;
            Ok((a, b, d))
        }
        _ => {
            // sqrt term first, optional trailing constant
            let tail_start = s[idx..].find(['+', '-']).map(|j| j + idx);
            match tail_start {
                Some(j) => {
                    let (b, d) = parse_sqrt_term(&s[..j])?;
                    Ok((int(&s[j..])?, b, d))
                }
                None => {
                    let (b, d) = parse_sqrt_term(s)?;
                    Ok((BigInt::zero(), b, d))
                }
            }
        }
    }
}

fn parse_decimal(s: &str, default_prec: u32) -> Result<ExactReal> {
    let (body, prec) = match s.rfind('p') {
        Some(i) => {
            let bits = u32::from_str(&s[i + 1..]).map_err(|_| Error::Parse(format!("bad precision in {s:?}")))?;
            (&s[..i], bits)
        }
        None => (s, default_prec),
    };
    if !(16..=MAX_PRECISION).contains(&prec) {
        return Err(Error::Parse(format!("precision {prec} outside 16..={MAX_PRECISION}")));
    }
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], i64::from_str(&body[i + 1..]).map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?),
        None => (body, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad decimal {s:?}")));
    }
    let digits = format!("{ip}{fp}");
    let mut n = int(if digits.is_empty() { "0" } else { &digits })?;
    if neg {
        n = -n;
    }
    let scale = exp - fp.len() as i64;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow((-scale) as u32))
    };
    Ok(ExactReal::Float(BigFloat::from_rational(&r, prec)))
}

/// Parses a real in any accepted form. Decimals become floats at
/// `default_prec` bits unless they carry a `p<bits>` suffix.
pub fn parse_real(s: &str, default_prec: u32) -> Result<ExactReal> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if t.contains("sqrt") {
        let (num, den) = match t.strip_prefix('(') {
            Some(rest) => {
                let close = rest.rfind(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
                let num = &rest[..close];
                let after = &rest[close + 1..];
                let den = match after.strip_prefix('/') {
                    Some(c) => int(c)?,
                    None if after.is_empty() => BigInt::one(),
                    None => return Err(Error::Parse(format!("unexpected {after:?} in {s:?}"))),
                };
                (num.to_string(), den)
            }
            None => (t.clone(), BigInt::one()),
        };
        let (a, b, d) = parse_surd_numerator(&num)?;
        if d < 2 {
            return Err(Error::NotASurd(format!("radicand {d} in {s:?}")));
        }
        return ExactReal::surd(a, b, den, d);
    }
    if let Some((p, q)) = t.split_once('/') {
        return ExactReal::big_ratio(int(p)?, int(q)?);
    }
    if t.contains(['.', 'e', 'E', 'p']) {
        return parse_decimal(&t, default_prec);
    }
    Ok(ExactReal::from(int(&t)?))
}

pub fn parse_real_default(s: &str) -> Result<ExactReal> {
    parse_real(s, DEFAULT_PRECISION)
}

pub fn parse_extended(s: &str, default_prec: u32) -> Result<ExtendedValue> {
    match s.trim() {
        "-inf" | "-infinity" | "-∞" => Ok(ExtendedValue::NegInf),
        "inf" | "+inf" | "infinity" => Err(Error::Pole("+inf is not representable".into())),
        t => Ok(ExtendedValue::Finite(parse_real(t, default_prec)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_round_trip_through_display() {
        for s in ["3/7", "-5/12", "(-1+1*sqrt(2))/1", "(1-3*sqrt(5))/4"] {
            assert_eq!(parse_real_default(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn shorthand_surds() {
        let a = parse_real_default("sqrt2-1").unwrap();
        assert_eq!(a, ExactReal::sqrt2_minus_1());
        let b = parse_real_default("sqrt(2)-1").unwrap();
        assert_eq!(a, b);
        let c = parse_real_default("-1+sqrt2").unwrap();
        assert_eq!(a, c);
        assert_eq!(parse_real_default("(2+2*sqrt(8))/2").unwrap().to_string(), "(1+2*sqrt(2))/1");
    }

    #[test]
    fn decimal_with_precision_suffix() {
        let x = parse_real("0.55p512", 256).unwrap();
        assert_eq!(x.precision(), Some(512));
        assert_eq!(x.to_string(), "0.55p512");
        assert_eq!(parse_real("-1.5e-2", 128).unwrap().to_string(), "-0.015p128");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_real_default("1/0").is_err());
        assert!(parse_real_default("abc").is_err());
        assert!(parse_real_default("sqrt1").is_err());
        assert!(parse_extended("+inf", 64).is_err());
        assert_eq!(parse_extended("-inf", 64).unwrap(), ExtendedValue::NegInf);
    }
}
