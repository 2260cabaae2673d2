//! Regular continued fractions and the classical approximation theorems.

use crate::arith::ExactReal;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Gauss map `x ↦ 1/x - floor(1/x)` on `[0, 1)`, with `0 ↦ 0`.
pub fn gauss_step(x: &ExactReal) -> Result<ExactReal> {
    if x.signum()? < 0 || !x.lt(&ExactReal::one())? {
        return Err(Error::Domain(format!("{x} not in [0, 1)")));
    }
    if x.is_zero() {
        return Ok(ExactReal::zero());
    }
    let inv = x.recip()?;
    inv.sub_int(&inv.floor()?)
}

#[derive(Clone, Debug, Serialize)]
pub struct RcfExpansion {
    pub x: ExactReal,
    #[serde(serialize_with = "crate::export::ser_bigint")]
    pub a0: BigInt,
    #[serde(serialize_with = "crate::export::ser_bigints")]
    pub digits: Vec<BigInt>,
    /// `(p_n, q_n)` for `n = 1..=digits.len()`.
    #[serde(serialize_with = "crate::export::ser_pairs")]
    pub convergents: Vec<(BigInt, BigInt)>,
    /// `G^n(x - a0)` for `n = 0..=digits.len()`.
    pub remainders: Vec<ExactReal>,
    pub terminated: bool,
}

impl RcfExpansion {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `(p_n, q_n)` for `n >= -1`, with `p_{-1}/q_{-1} = 1/0` and
    /// `p_0/q_0 = a0/1`. Past the end of a terminated expansion the last
    /// convergent repeats.
    pub fn convergent(&self, n: i64) -> Result<(BigInt, BigInt)> {
        match n {
            i64::MIN..=-2 => Err(Error::Index { index: 0, len: self.len() }),
            -1 => Ok((BigInt::one(), BigInt::zero())),
            0 => Ok((self.a0.clone(), BigInt::one())),
            n => {
                let i = n as usize;
                if i <= self.len() {
                    Ok(self.convergents[i - 1].clone())
                } else if self.terminated {
                    self.convergent(self.len() as i64)
                } else {
                    Err(Error::Index { index: i, len: self.len() })
                }
            }
        }
    }
}

pub fn rcf_expand(x: &ExactReal, max_n: usize) -> Result<RcfExpansion> {
    let a0 = x.floor()?;
    let mut r = x.sub_int(&a0)?;
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut digits = Vec::new();
    let mut convergents = Vec::new();
    let mut remainders = vec![r.clone()];
    let mut terminated = r.is_zero();
    while digits.len() < max_n && !terminated {
        let inv = r.recip()?;
        let a = inv.floor()?;
        r = inv.sub_int(&a)?;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        digits.push(a);
        convergents.push((p.clone(), q.clone()));
        terminated = r.is_zero();
        remainders.push(r.clone());
    }
    Ok(RcfExpansion { x: x.clone(), a0, digits, convergents, remainders, terminated })
}

/// `Θ_n = q_n^2 |x - p_n/q_n|`.
pub fn theta_n(exp: &RcfExpansion, n: usize) -> Result<ExactReal> {
    let (p, q) = exp.convergent(n as i64)?;
    let approx = ExactReal::big_ratio(p, q.clone())?;
    exp.x.sub(&approx)?.abs()?.mul_int(&(&q * &q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationCheck {
    pub vahlen: bool,
    pub borel: bool,
    pub sharp_borel: bool,
}

/// Vahlen `min(Θ_{n-1}, Θ_n) < 1/2`, Borel `min(Θ_{n-1}, Θ_n, Θ_{n+1}) < 1/√5`
/// and its sharp form with `1/√(a_{n+1}^2 + 4)`. Requires `n >= 1`.
pub fn vahlen_borel_check(exp: &RcfExpansion, n: usize) -> Result<ApproximationCheck> {
    if n == 0 {
        return Err(Error::Index { index: 0, len: exp.len() });
    }
    let t0 = theta_n(exp, n - 1)?;
    let t1 = theta_n(exp, n)?;
    let t2 = theta_n(exp, n + 1)?;
    let m2 = t0.min(&t1)?;
    let m3 = m2.min(&t2)?;
    if m3.is_zero() {
        return Ok(ApproximationCheck { vahlen: true, borel: true, sharp_borel: true });
    }
    let half = ExactReal::ratio(1, 2)?;
    let vahlen = m2.lt(&half)?;
    let sq = m3.square()?;
    let borel = sq.mul_int(&BigInt::from(5))?.lt(&ExactReal::one())?;
    let sharp_borel = match exp.digits.get(n) {
        Some(a) => sq.mul_int(&(a * a + 4))?.lt(&ExactReal::one())?,
        None => true,
    };
    Ok(ApproximationCheck { vahlen, borel, sharp_borel })
}

/// Index `n` with `p/q = p_n/q_n`, given `|x - p/q| < 1/(2q^2)`.
pub fn legendre_check(x: &ExactReal, p: &BigInt, q: &BigInt) -> Result<usize> {
    if !q.is_positive() || !p.gcd(q).is_one() {
        return Err(Error::Precondition(format!("{p}/{q} is not in lowest terms with q > 0")));
    }
    let target = ExactReal::big_ratio(p.clone(), q.clone())?;
    let bound = ExactReal::big_ratio(BigInt::one(), BigInt::from(2) * q * q)?;
    if !x.sub(&target)?.abs()?.lt(&bound)? {
        return Err(Error::Precondition(format!("|x - {p}/{q}| is not below 1/(2q^2)")));
    }
    let max_n = 4 * q.bits() as usize + 8;
    let exp = rcf_expand(x, max_n)?;
    for n in 0..=exp.len() {
        let (pn, qn) = exp.convergent(n as i64)?;
        if &pn == p && &qn == q {
            return Ok(n);
        }
        if &qn > q {
            break;
        }
    }
    Err(Error::NotFound(format!("{p}/{q} among the convergents")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> ExactReal {
        ExactReal::ratio(p, q).unwrap()
    }

    #[test]
    fn five_twelfths() {
        let e = rcf_expand(&q(5, 12), 10).unwrap();
        let digits: Vec<i64> = e.digits.iter().map(|d| d.try_into().unwrap()).collect();
        assert_eq!(digits, vec![2, 2, 2]);
        assert!(e.terminated);
        assert_eq!(theta_n(&e, 0).unwrap(), q(5, 12));
        assert_eq!(theta_n(&e, 3).unwrap(), ExactReal::zero());
    }

    #[test]
    fn legendre_finds_index() {
        let x = ExactReal::sqrt2_minus_1();
        assert_eq!(legendre_check(&x, &BigInt::from(5), &BigInt::from(12)).unwrap(), 3);
        assert!(matches!(
            legendre_check(&x, &BigInt::from(1), &BigInt::from(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gauss_domain() {
        assert!(gauss_step(&q(1, 1)).is_err());
        assert_eq!(gauss_step(&q(3, 10)).unwrap(), q(1, 3));
    }
}
