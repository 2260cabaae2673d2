//! Integer 2x2 matrices acting by Möbius transformations on `R ∪ {-∞}`.

use super::exact::ExactReal;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// A real number or negative infinity. Positive infinity is never produced;
/// maps that would reach it fail with `Error::Pole`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedValue {
    Finite(ExactReal),
    NegInf,
}

impl ExtendedValue {
    pub fn finite(&self) -> Option<&ExactReal> {
        match self {
            ExtendedValue::Finite(x) => Some(x),
            ExtendedValue::NegInf => None,
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtendedValue::NegInf)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedValue::Finite(x) => x.to_f64(),
            ExtendedValue::NegInf => f64::NEG_INFINITY,
        }
    }

    /// Adds a finite constant; `-∞` absorbs it.
    pub fn add(&self, c: &ExactReal) -> Result<ExtendedValue> {
        match self {
            ExtendedValue::Finite(x) => Ok(ExtendedValue::Finite(x.add(c)?)),
            ExtendedValue::NegInf => Ok(ExtendedValue::NegInf),
        }
    }

    /// Compares with a finite value; `-∞` is below everything.
    pub fn le(&self, c: &ExactReal) -> Result<bool> {
        match self {
            ExtendedValue::Finite(x) => x.le(c),
            ExtendedValue::NegInf => Ok(true),
        }
    }
}

impl From<ExactReal> for ExtendedValue {
    fn from(x: ExactReal) -> Self {
        ExtendedValue::Finite(x)
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(x) => write!(f, "{x}"),
            ExtendedValue::NegInf => write!(f, "-inf"),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `[[a11, a12], [a21, a22]]` acting by `x ↦ (a11 x + a12) / (a21 x + a22)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMatrix {
    pub a11: BigInt,
    pub a12: BigInt,
    pub a21: BigInt,
    pub a22: BigInt,
}

impl MobiusMatrix {
    pub fn new(a11: impl Into<BigInt>, a12: impl Into<BigInt>, a21: impl Into<BigInt>, a22: impl Into<BigInt>) -> Self {
        MobiusMatrix { a11: a11.into(), a12: a12.into(), a21: a21.into(), a22: a22.into() }
    }

    pub fn identity() -> Self {
        MobiusMatrix::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn mul(&self, o: &MobiusMatrix) -> MobiusMatrix {
        MobiusMatrix {
            a11: &self.a11 * &o.a11 + &self.a12 * &o.a21,
            a12: &self.a11 * &o.a12 + &self.a12 * &o.a22,
            a21: &self.a21 * &o.a11 + &self.a22 * &o.a21,
            a22: &self.a21 * &o.a12 + &self.a22 * &o.a22,
        }
    }

    /// Inverse of a unimodular matrix; `None` unless `det = ±1`.
    pub fn inverse(&self) -> Option<MobiusMatrix> {
        let det = self.det();
        if det.abs() != BigInt::from(1) {
            return None;
        }
        Some(MobiusMatrix {
            a11: &self.a22 * &det,
            a12: -&self.a12 * &det,
            a21: -&self.a21 * &det,
            a22: &self.a11 * &det,
        })
    }

    /// Value at `-∞`: the limit `a11/a21`, or `-∞` when `a21 = 0` and the
    /// map preserves orientation at infinity.
    pub fn at_neg_inf(&self) -> Result<ExtendedValue> {
        if self.a21.is_zero() {
            if (&self.a11 * &self.a22).is_positive() {
                return Ok(ExtendedValue::NegInf);
            }
            return Err(Error::Pole("image of -inf is +inf".into()));
        }
        Ok(ExtendedValue::Finite(ExactReal::big_ratio(self.a11.clone(), self.a21.clone())?))
    }

    pub fn apply_finite(&self, x: &ExactReal) -> Result<ExtendedValue> {
        if let ExactReal::Rational(r) = x {
            let (p, q) = (r.numer(), r.denom());
            let num = &self.a11 * p + &self.a12 * q;
            let den = &self.a21 * p + &self.a22 * q;
            if den.is_zero() {
                return Err(Error::Pole(format!("denominator vanishes at {x}")));
            }
            let v = if self.det().abs().is_one() {
                if den.is_negative() {
                    BigRational::new_raw(-num, -den)
                } else {
                    BigRational::new_raw(num, den)
                }
            } else {
                BigRational::new(num, den)
            };
            return Ok(ExtendedValue::Finite(ExactReal::Rational(v)));
        }
        let den = x.mul_int(&self.a21)?.add_int(&self.a22)?;
        let num = x.mul_int(&self.a11)?.add_int(&self.a12)?;
        if den.is_zero() {
            if num.is_zero() {
                return Err(Error::Pole("0/0".into()));
            }
            return Err(Error::Pole(format!("denominator vanishes at {x}")));
        }
        Ok(ExtendedValue::Finite(num.div(&den)?))
    }

    pub fn apply(&self, x: &ExtendedValue) -> Result<ExtendedValue> {
        match x {
            ExtendedValue::Finite(v) => self.apply_finite(v),
            ExtendedValue::NegInf => self.at_neg_inf(),
        }
    }

    /// Derivative `det / (a21 x + a22)^2` at a finite point.
    pub fn derivative(&self, x: &ExactReal) -> Result<ExactReal> {
        let den = x.mul_int(&self.a21)?.add_int(&self.a22)?;
        if den.is_zero() {
            return Err(Error::Pole(format!("derivative at pole {x}")));
        }
        ExactReal::from(self.det()).div(&den.square()?)
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_limits() {
        let m = MobiusMatrix::new(-1, 0, 1, 1);
        assert_eq!(m.at_neg_inf().unwrap(), ExtendedValue::Finite(ExactReal::from(-1)));
        assert_eq!(MobiusMatrix::identity().at_neg_inf().unwrap(), ExtendedValue::NegInf);
        assert!(matches!(MobiusMatrix::new(-1, 0, 0, 1).at_neg_inf(), Err(Error::Pole(_))));
    }

    #[test]
    fn pole_is_reported() {
        let m = MobiusMatrix::new(1, 0, 1, 1);
        assert!(matches!(m.apply_finite(&ExactReal::from(-1)), Err(Error::Pole(_))));
    }

    #[test]
    fn inverse_undoes_action() {
        let m = MobiusMatrix::new(0, 1, 1, 3);
        let x = ExactReal::ratio(2, 7).unwrap();
        let y = m.apply_finite(&x).unwrap();
        let back = m.inverse().unwrap().apply(&y).unwrap();
        assert_eq!(back, ExtendedValue::Finite(x));
    }
}
