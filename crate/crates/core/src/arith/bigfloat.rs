//! Binary floating point with a rigorous error radius.
//!
//! A value is the ball `man * 2^exp ± rad`. Every operation widens the
//! radius by its own rounding error, so `floor` and `signum` either return
//! the answer for every point of the ball or fail with `Error::Precision`.

use super::mag::Mag;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 8192;

#[derive(Clone, Debug)]
pub struct BigFloat {
    man: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.man == other.man && self.exp == other.exp && self.rad == other.rad
    }
}

pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl BigFloat {
    fn rounded(man: BigInt, exp: i64, rad: Mag, prec: u32) -> BigFloat {
        let bits = man.bits();
        if bits > prec as u64 {
            let s = bits - prec as u64;
            let m = &man >> s;
            let inexact = (&m << s) != man;
            let rad = if inexact { rad.add_up(Mag::pow2(exp + s as i64)) } else { rad };
            BigFloat { man: m, exp: exp + s as i64, rad, prec }
        } else {
            BigFloat { man, exp, rad, prec }
        }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> BigFloat {
        BigFloat::rounded(n.clone(), 0, Mag::ZERO, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> BigFloat {
        let (p, q) = (r.numer(), r.denom());
        if q.is_one() {
            return BigFloat::from_int(p, prec);
        }
        let k = (prec as i64 + q.bits() as i64 - p.bits() as i64 + 2).max(0);
        let (man, rem) = (p << k as usize).div_mod_floor(q);
        let exp = -k;
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        BigFloat::rounded(man, exp, rad, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Result<BigFloat> {
        let r = BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))?;
        Ok(BigFloat::from_rational(&r, prec))
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> BigFloat {
        BigFloat::rounded(self.man.clone(), self.exp, self.rad, prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Midpoint as an exact rational.
    pub fn midpoint(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Upper bound on the error radius as an `f64`.
    pub fn radius(&self) -> f64 {
        self.rad.to_f64()
    }

    fn abs_up(&self) -> Mag {
        Mag::up_from(&self.man, self.exp).add_up(self.rad)
    }

    fn abs_mid_down(&self) -> Mag {
        Mag::down_from(&self.man, self.exp)
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat { man: -&self.man, ..self.clone() }
    }

    pub fn add(&self, o: &BigFloat) -> BigFloat {
        let prec = self.prec.max(o.prec);
        let rad = self.rad.add_up(o.rad);
        if self.man.is_zero() {
            return BigFloat::rounded(o.man.clone(), o.exp, rad, prec);
        }
        if o.man.is_zero() {
            return BigFloat::rounded(self.man.clone(), self.exp, rad, prec);
        }
        let lead = |x: &BigFloat| x.exp + x.man.bits() as i64;
        let (big, small) = if lead(self) >= lead(o) { (self, o) } else { (o, self) };
        if lead(big) - lead(small) > prec as i64 + 64 {
            let rad = rad.add_up(small.abs_up());
            return BigFloat::rounded(big.man.clone(), big.exp, rad, prec);
        }
        let e = self.exp.min(o.exp);
        let man = (&self.man << (self.exp - e) as usize) + (&o.man << (o.exp - e) as usize);
        BigFloat::rounded(man, e, rad, prec)
    }

    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        let prec = self.prec.max(o.prec);
        let a = Mag::up_from(&self.man, self.exp);
        let b = Mag::up_from(&o.man, o.exp);
        let rad = a.mul_up(o.rad).add_up(b.mul_up(self.rad)).add_up(self.rad.mul_up(o.rad));
        BigFloat::rounded(&self.man * &o.man, self.exp + o.exp, rad, prec)
    }

    pub fn div(&self, o: &BigFloat) -> Result<BigFloat> {
        let prec = self.prec.max(o.prec);
        if o.man.is_zero() {
            return Err(if o.rad.is_zero() {
                Error::DivisionByZero
            } else {
                Error::Precision("divisor ball contains zero".into())
            });
        }
        let b_lo = o
            .abs_mid_down()
            .sub_down(o.rad)
            .ok_or_else(|| Error::Precision("divisor ball contains zero".into()))?;
        let k = (prec as i64 + 2 + o.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << k as usize;
        let (q, r) = num.div_rem(&o.man);
        let exp = self.exp - k - o.exp;
        let mut rad = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let a = Mag::up_from(&self.man, self.exp);
            let b = Mag::up_from(&o.man, o.exp);
            let top = a.mul_up(o.rad).add_up(b.mul_up(self.rad));
            let bottom = o.abs_mid_down().mul_down(b_lo);
            rad = rad.add_up(top.div_up(bottom));
        }
        Ok(BigFloat::rounded(q, exp, rad, prec))
    }

    pub fn recip(&self) -> Result<BigFloat> {
        BigFloat::from_int(&BigInt::one(), self.prec).div(self)
    }

    pub fn sqrt(&self) -> Result<BigFloat> {
        if self.man.is_zero() && self.rad.is_zero() {
            return Ok(self.clone());
        }
        if self.man.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let lo = self
            .abs_mid_down()
            .sub_down(self.rad)
            .ok_or_else(|| Error::Precision("square root of a ball touching zero".into()))?;
        let bits = self.man.bits() as i64;
        let mut s = (2 * self.prec as i64 + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) == 1 {
            s += 1;
        }
        let shifted = &self.man << s as usize;
        let root = shifted.sqrt();
        let exp = (self.exp - s) / 2;
        let mut rad = if &root * &root == shifted { Mag::ZERO } else { Mag::pow2(exp) };
        if !self.rad.is_zero() {
            rad = rad.add_up(self.rad.div_up(lo.sqrt_down()));
        }
        Ok(BigFloat::rounded(root, exp, rad, self.prec))
    }

    fn floor_mid(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.man << self.exp as usize, BigInt::zero())
        } else {
            let s = (-self.exp) as usize;
            let fl = &self.man >> s;
            let frac = &self.man - (&fl << s);
            (fl, frac)
        }
    }

    /// Floor of every point of the ball, or `Error::Precision` when the
    /// ball straddles an integer.
    pub fn floor(&self) -> Result<BigInt> {
        let (fl, frac) = self.floor_mid();
        if self.rad.is_zero() {
            return Ok(fl);
        }
        if self.exp >= 0 {
            return Err(Error::Precision("integer midpoint with nonzero radius".into()));
        }
        let frac_lo = Mag::down_from(&frac, self.exp);
        let one = BigInt::one() << (-self.exp) as usize;
        let rest_lo = Mag::down_from(&(one - &frac), self.exp);
        if self.rad.cmp_value(frac_lo) != Ordering::Greater && self.rad.cmp_value(rest_lo) == Ordering::Less {
            Ok(fl)
        } else {
            Err(Error::Precision("floor undecided within error radius".into()))
        }
    }

    pub fn signum(&self) -> Result<i8> {
        let s = if self.man.is_positive() {
            1
        } else if self.man.is_negative() {
            -1
        } else {
            0
        };
        if self.rad.is_zero() {
            return Ok(s);
        }
        if s != 0 && self.abs_mid_down().cmp_value(self.rad) == Ordering::Greater {
            Ok(s)
        } else {
            Err(Error::Precision("sign undecided within error radius".into()))
        }
    }

    pub fn cmp(&self, o: &BigFloat) -> Result<Ordering> {
        Ok(self.sub(o).signum()?.cmp(&0))
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.man.bits();
        if bits <= 64 {
            return ldexp(self.man.to_f64().unwrap_or(0.0), self.exp);
        }
        let s = bits - 64;
        ldexp((&self.man >> s).to_f64().unwrap_or(0.0), self.exp + s as i64)
    }

    /// Midpoint in decimal with as many digits as the precision supports,
    /// followed by `p<bits>`.
    pub fn to_decimal_string(&self) -> String {
        let digits = ((self.prec as f64 * std::f64::consts::LOG10_2).floor() as i64 - 2).max(1) as u32;
        let scaled = &self.man * BigInt::from(10u32).pow(digits);
        let n = if self.exp >= 0 {
            scaled << self.exp as usize
        } else {
            let s = (-self.exp) as usize;
            ((scaled << 1) + (BigInt::one() << s)) >> (s + 1)
        };
        let neg = n.is_negative();
        let mut body = n.abs().to_string();
        if body.len() <= digits as usize {
            body = format!("{}{}", "0".repeat(digits as usize + 1 - body.len()), body);
        }
        let (int, frac) = body.split_at(body.len() - digits as usize);
        let frac = frac.trim_end_matches('0');
        let sign = if neg { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int}p{}", self.prec)
        } else {
            format!("{sign}{int}.{frac}p{}", self.prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn sqrt_two_matches_f64() {
        let two = BigFloat::from_int(&BigInt::from(2), 256);
        let s = two.sqrt().unwrap();
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(s.radius() < 1e-70);
    }

    #[test]
    fn floor_fails_near_integer_boundary() {
        let x = BigFloat::from_rational(&rat(1, 3), 64);
        let y = x.mul(&BigFloat::from_int(&BigInt::from(3), 64));
        assert!(matches!(y.floor(), Err(Error::Precision(_))));
        assert_eq!(BigFloat::from_rational(&rat(7, 3), 64).floor().unwrap(), BigInt::from(2));
    }

    #[test]
    fn negative_floor_rounds_down() {
        let x = BigFloat::from_rational(&rat(-7, 3), 128);
        assert_eq!(x.floor().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn decimal_round_trip_of_short_decimal() {
        let x = BigFloat::from_rational(&rat(11, 20), 256);
        assert_eq!(x.to_decimal_string(), "0.55p256");
        let y = BigFloat::from_rational(&rat(-5, 4), 64);
        assert_eq!(y.to_decimal_string(), "-1.25p64");
    }

    #[test]
    fn radius_grows_through_division_chain() {
        let three = BigFloat::from_int(&BigInt::from(3), 128);
        let mut x = three.sqrt().unwrap().sub(&BigFloat::from_int(&BigInt::one(), 128));
        for _ in 0..20 {
            x = x.recip().unwrap();
            let f = x.floor().unwrap();
            x = x.sub(&BigFloat::from_int(&f, 128));
        }
        assert!(x.radius() > 0.0);
    }
}
