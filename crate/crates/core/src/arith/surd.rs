//! Quadratic surds `(a + b*sqrt(d)) / c` with integer coefficients.

use super::bigfloat::BigFloat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Invariants: `c > 0`, `gcd(a, b, c) = 1`, `b != 0`, `d > 1` squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

/// Writes `d = s^2 * r` with `r` squarefree.
pub fn squarefree_split(d: u64) -> (u64, u64) {
    if d < 4 {
        return (1, d);
    }
    let mut s = 1u64;
    let mut r = 1u64;
    let mut n = d;
    let mut p = 2u64;
    while (p as u128).pow(3) <= d as u128 && p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            s *= p.pow(k / 2);
            if k % 2 == 1 {
                r *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // n now has at most two prime factors, both above the cube root of d
    let t = n.sqrt();
    if n > 1 && t * t == n {
        s *= t;
    } else {
        r *= n;
    }
    (s, r)
}

fn sign_of(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    use num_bigint::Sign::*;
    match (sa, sb) {
        (_, NoSign) => a.cmp(&BigInt::zero()),
        (NoSign, _) => b.cmp(&BigInt::zero()),
        (Plus, Plus) => Ordering::Greater,
        (Minus, Minus) => Ordering::Less,
        _ => {
            let aa = a * a;
            let bb = b * b * BigInt::from(d);
            if aa > bb {
                a.cmp(&BigInt::zero())
            } else {
                b.cmp(&BigInt::zero())
            }
        }
    }
}

/// Either a surd or, when `b` cancels, a rational `p/q`.
pub(crate) enum Reduced {
    Rational(BigInt, BigInt),
    Surd(QuadraticSurd),
}

impl QuadraticSurd {
    /// Normalizes a coefficient triple over an already squarefree `d`.
    pub(crate) fn reduce(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: u64) -> Result<Reduced> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if b.is_zero() || d == 1 {
            let num = if d == 1 { a + b } else { a };
            let g = num.gcd(&c);
            let g = if g.is_zero() { BigInt::one() } else { g };
            return Ok(Reduced::Rational(num / &g, c / g));
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(Reduced::Surd(QuadraticSurd { a, b, c, d }))
    }

    /// Validating constructor; square factors of `d` are moved into `b`.
    pub(crate) fn checked(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<Reduced> {
        if d == 0 {
            return QuadraticSurd::reduce(a, BigInt::zero(), c, 2);
        }
        let (s, r) = squarefree_split(d);
        let b = b * BigInt::from(s);
        if r == 1 {
            return QuadraticSurd::reduce(a + b, BigInt::zero(), c, 2);
        }
        QuadraticSurd::reduce(a, b, c, r)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd { b: -&self.b, ..self.clone() }
    }

    pub fn signum(&self) -> i8 {
        match sign_of(&self.a, &self.b, self.d) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        }
    }

    /// `floor(b*sqrt(d))`; exact because `b^2 d` is never a square.
    fn floor_b_root(b: &BigInt, d: u64) -> BigInt {
        let r = (b * b * BigInt::from(d)).sqrt();
        if b.is_negative() {
            -r - 1
        } else {
            r
        }
    }

    pub fn floor(&self) -> BigInt {
        let n = &self.a + QuadraticSurd::floor_b_root(&self.b, self.d);
        n.div_floor(&self.c)
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        let work = prec + 32;
        let root = BigFloat::from_int(&BigInt::from(self.d), work)
            .sqrt()
            .expect("d > 1");
        let num = BigFloat::from_int(&self.a, work).add(&BigFloat::from_int(&self.b, work).mul(&root));
        num.div(&BigFloat::from_int(&self.c, work))
            .expect("c > 0")
            .with_precision(prec)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt();
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let v = (a + b) / c;
        if v.is_finite() && (a + b).abs() > 1e-6 * (a.abs() + b.abs()) {
            return v;
        }
        let root = BigFloat::from_int(&BigInt::from(self.d), 128).sqrt().expect("d > 1");
        let b_root = BigFloat::from_int(&self.b, 128).mul(&root);
        let c = BigFloat::from_int(&self.c, 128);
        if self.a.is_negative() == self.b.is_negative() || self.a.is_zero() {
            return BigFloat::from_int(&self.a, 128).add(&b_root).div(&c).expect("c > 0").to_f64();
        }
        // a + b√d = (a² - b²d) / (a - b√d), and a - b√d has no cancellation
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        let conj = BigFloat::from_int(&self.a, 128).sub(&b_root);
        BigFloat::from_int(&norm, 128).div(&conj.mul(&c)).expect("conjugate is nonzero").to_f64()
    }

    /// Coefficients over a common `d`, treating a rational as `b = 0`.
    pub(crate) fn parts(&self) -> (BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub(crate) fn add_parts(x: (BigInt, BigInt, BigInt), y: (BigInt, BigInt, BigInt), d: u64) -> Result<Reduced> {
        let (a1, b1, c1) = x;
        let (a2, b2, c2) = y;
        QuadraticSurd::reduce(&a1 * &c2 + &a2 * &c1, &b1 * &c2 + &b2 * &c1, c1 * c2, d)
    }

    pub(crate) fn mul_parts(x: (BigInt, BigInt, BigInt), y: (BigInt, BigInt, BigInt), d: u64) -> Result<Reduced> {
        let (a1, b1, c1) = x;
        let (a2, b2, c2) = y;
        let dd = BigInt::from(d);
        QuadraticSurd::reduce(&a1 * &a2 + &b1 * &b2 * dd, &a1 * &b2 + &a2 * &b1, c1 * c2, d)
    }

    pub(crate) fn recip(&self) -> Result<Reduced> {
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        QuadraticSurd::reduce(&self.c * &self.a, -(&self.c * &self.b), norm, self.d)
    }
}
