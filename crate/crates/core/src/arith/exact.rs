//! Tagged exact reals: rationals, quadratic surds, and error-tracked floats.

use super::bigfloat::BigFloat;
use super::surd::{QuadraticSurd, Reduced};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Float(BigFloat),
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactReal::Rational(a), ExactReal::Rational(b)) => a == b,
            (ExactReal::Surd(a), ExactReal::Surd(b)) => a == b,
            (ExactReal::Float(a), ExactReal::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl From<Reduced> for ExactReal {
    fn from(r: Reduced) -> Self {
        match r {
            Reduced::Rational(p, q) => ExactReal::Rational(BigRational::new(p, q)),
            Reduced::Surd(s) => ExactReal::Surd(s),
        }
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        ExactReal::Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for ExactReal {
    fn from(n: BigInt) -> Self {
        ExactReal::Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for ExactReal {
    fn from(r: BigRational) -> Self {
        ExactReal::Rational(r)
    }
}

impl From<BigFloat> for ExactReal {
    fn from(f: BigFloat) -> Self {
        ExactReal::Float(f)
    }
}

enum Op {
    Add,
    Mul,
}

impl ExactReal {
    pub fn zero() -> ExactReal {
        ExactReal::from(0)
    }

    pub fn one() -> ExactReal {
        ExactReal::from(1)
    }

    pub fn ratio(p: i64, q: i64) -> Result<ExactReal> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactReal::Rational(BigRational::new(p.into(), q.into())))
    }

    pub fn big_ratio(p: BigInt, q: BigInt) -> Result<ExactReal> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactReal::Rational(BigRational::new(p, q)))
    }

    /// `(a + b*sqrt(d)) / c`, collapsing to a rational when `b*sqrt(d)` is.
    pub fn surd(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<ExactReal> {
        QuadraticSurd::checked(a, b, c, d).map(ExactReal::from)
    }

    pub fn sqrt2_minus_1() -> ExactReal {
        ExactReal::surd((-1).into(), 1.into(), 1.into(), 2).expect("valid surd")
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ExactReal::Float(_))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactReal::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<u64> {
        match self {
            ExactReal::Surd(s) => Some(s.d()),
            _ => None,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self {
            ExactReal::Float(f) => Some(f.precision()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactReal::Rational(r) => r.is_zero(),
            ExactReal::Surd(_) => false,
            ExactReal::Float(f) => f.is_exact() && f.signum() == Ok(0),
        }
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        match self {
            ExactReal::Rational(r) => BigFloat::from_rational(r, prec),
            ExactReal::Surd(s) => s.to_bigfloat(prec),
            ExactReal::Float(f) => f.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => {
                let v = r.to_f64().unwrap_or(f64::NAN);
                if v.is_finite() && v != 0.0 || r.is_zero() {
                    v
                } else {
                    BigFloat::from_rational(r, 64).to_f64()
                }
            }
            ExactReal::Surd(s) => s.to_f64(),
            ExactReal::Float(f) => f.to_f64(),
        }
    }

    pub fn signum(&self) -> Result<i8> {
        match self {
            ExactReal::Rational(r) => Ok(if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }),
            ExactReal::Surd(s) => Ok(s.signum()),
            ExactReal::Float(f) => f.signum(),
        }
    }

    pub fn is_negative(&self) -> Result<bool> {
        Ok(self.signum()? < 0)
    }

    pub fn floor(&self) -> Result<BigInt> {
        match self {
            ExactReal::Rational(r) => Ok(r.numer().div_floor(r.denom())),
            ExactReal::Surd(s) => Ok(s.floor()),
            ExactReal::Float(f) => f.floor(),
        }
    }

    pub fn ceil(&self) -> Result<BigInt> {
        Ok(-self.neg().floor()?)
    }

    pub fn neg(&self) -> ExactReal {
        match self {
            ExactReal::Rational(r) => ExactReal::Rational(-r),
            ExactReal::Surd(s) => {
                let (a, b, c) = s.parts();
                QuadraticSurd::reduce(-a, -b, c, s.d()).expect("nonzero c").into()
            }
            ExactReal::Float(f) => ExactReal::Float(f.neg()),
        }
    }

    pub fn abs(&self) -> Result<ExactReal> {
        Ok(if self.signum()? < 0 { self.neg() } else { self.clone() })
    }

    fn float_prec(&self, other: &ExactReal) -> Option<u32> {
        match (self.precision(), other.precision()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    fn common_field(&self, other: &ExactReal) -> Result<u64> {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedField(a, b)),
            (a, b) => Ok(a.or(b).unwrap_or(2)),
        }
    }

    fn parts(&self) -> (BigInt, BigInt, BigInt) {
        match self {
            ExactReal::Rational(r) => (r.numer().clone(), BigInt::zero(), r.denom().clone()),
            ExactReal::Surd(s) => s.parts(),
            ExactReal::Float(_) => unreachable!("floats handled before field arithmetic"),
        }
    }

    fn binop(&self, other: &ExactReal, op: Op) -> Result<ExactReal> {
        if let Some(prec) = self.float_prec(other) {
            let a = self.to_bigfloat(prec);
            let b = other.to_bigfloat(prec);
            return Ok(ExactReal::Float(match op {
                Op::Add => a.add(&b),
                Op::Mul => a.mul(&b),
            }));
        }
        if let (ExactReal::Rational(a), ExactReal::Rational(b)) = (self, other) {
            return Ok(ExactReal::Rational(match op {
                Op::Add => a + b,
                Op::Mul => a * b,
            }));
        }
        let d = self.common_field(other)?;
        let r = match op {
            Op::Add => QuadraticSurd::add_parts(self.parts(), other.parts(), d)?,
            Op::Mul => QuadraticSurd::mul_parts(self.parts(), other.parts(), d)?,
        };
        Ok(r.into())
    }

    pub fn add(&self, other: &ExactReal) -> Result<ExactReal> {
        self.binop(other, Op::Add)
    }

    pub fn sub(&self, other: &ExactReal) -> Result<ExactReal> {
        self.binop(&other.neg(), Op::Add)
    }

    pub fn mul(&self, other: &ExactReal) -> Result<ExactReal> {
        self.binop(other, Op::Mul)
    }

    pub fn recip(&self) -> Result<ExactReal> {
        match self {
            ExactReal::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(ExactReal::Rational(r.recip()))
                }
            }
            ExactReal::Surd(s) => Ok(s.recip()?.into()),
            ExactReal::Float(f) => Ok(ExactReal::Float(f.recip()?)),
        }
    }

    pub fn div(&self, other: &ExactReal) -> Result<ExactReal> {
        self.mul(&other.recip()?)
    }

    pub fn add_int(&self, n: &BigInt) -> Result<ExactReal> {
        if let ExactReal::Rational(r) = self {
            return Ok(ExactReal::Rational(BigRational::new_raw(r.numer() + n * r.denom(), r.denom().clone())));
        }
        self.add(&ExactReal::from(n.clone()))
    }

    pub fn sub_int(&self, n: &BigInt) -> Result<ExactReal> {
        self.add_int(&-n)
    }

    pub fn mul_int(&self, n: &BigInt) -> Result<ExactReal> {
        self.mul(&ExactReal::from(n.clone()))
    }

    pub fn cmp(&self, other: &ExactReal) -> Result<Ordering> {
        if let (ExactReal::Rational(a), ExactReal::Rational(b)) = (self, other) {
            return Ok(a.cmp(b));
        }
        if self.is_exact() && other.is_exact() {
            // both approximations carry relative error below 1e-9
            let (a, b) = (self.to_f64(), other.to_f64());
            if a.is_finite() && b.is_finite() && (a - b).abs() > 1e-8 * a.abs().max(b.abs()) {
                return Ok(a.total_cmp(&b));
            }
        }
        Ok(self.sub(other)?.signum()?.cmp(&0))
    }

    pub fn lt(&self, other: &ExactReal) -> Result<bool> {
        Ok(self.cmp(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &ExactReal) -> Result<bool> {
        Ok(self.cmp(other)? != Ordering::Greater)
    }

    /// Square of a rational or surd stays exact.
    pub fn square(&self) -> Result<ExactReal> {
        self.mul(self)
    }

    pub fn min(&self, other: &ExactReal) -> Result<ExactReal> {
        Ok(if self.le(other)? { self.clone() } else { other.clone() })
    }

    pub fn max(&self, other: &ExactReal) -> Result<ExactReal> {
        Ok(if self.le(other)? { other.clone() } else { self.clone() })
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactReal::Rational(r) if r.is_one())
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExactReal::Surd(s) => {
                let sign = if s.b().is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}*sqrt({}))/{}", s.a(), sign, s.b().abs(), s.d(), s.c())
            }
            ExactReal::Float(x) => write!(f, "{}", x.to_decimal_string()),
        }
    }
}

impl serde::Serialize for ExactReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> ExactReal {
        ExactReal::ratio(p, q).unwrap()
    }

    #[test]
    fn surd_arithmetic_collapses_to_rational() {
        let a = ExactReal::sqrt2_minus_1();
        let b = a.add(&ExactReal::one()).unwrap();
        let sq = b.mul(&b).unwrap();
        assert_eq!(sq, q(2, 1));
        assert_eq!(a.recip().unwrap().to_string(), "(1+1*sqrt(2))/1");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = ExactReal::sqrt2_minus_1();
        let b = ExactReal::surd(0.into(), 1.into(), 1.into(), 3).unwrap();
        assert_eq!(a.add(&b), Err(Error::MixedField(2, 3)));
    }

    #[test]
    fn float_contaminates_and_keeps_precision() {
        let a = ExactReal::Float(BigFloat::from_rational(&BigRational::new(1.into(), 3.into()), 128));
        let b = a.add(&q(1, 2)).unwrap();
        assert_eq!(b.precision(), Some(128));
        assert!((b.to_f64() - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ordering_is_exact_across_kinds() {
        let a = ExactReal::sqrt2_minus_1();
        assert!(q(41, 99).lt(&a).unwrap());
        assert!(a.lt(&q(5, 12)).unwrap());
        assert_eq!(a.floor().unwrap(), BigInt::zero());
        assert_eq!(a.neg().floor().unwrap(), BigInt::from(-1));
    }
}
