//! α-continued fractions on `I_α = [α-1, α)`.

use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub fn check_alpha(alpha: &ExactReal) -> Result<()> {
    if alpha.signum()? <= 0 || alpha.cmp(&ExactReal::one())? == std::cmp::Ordering::Greater {
        return Err(Error::Domain(format!("alpha = {alpha} not in (0, 1]")));
    }
    Ok(())
}

/// `ε = sgn(x)` and `a = floor(1/|x| + 1 - α)` for `x != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaDigit {
    pub eps: i8,
    #[serde(serialize_with = "crate::export::ser_bigint")]
    pub a: BigInt,
}

impl AlphaDigit {
    /// Signed digit `ε a`.
    pub fn signed(&self) -> BigInt {
        &self.a * BigInt::from(self.eps)
    }
}

/// Digit and image of one `G_α` step without domain checks; `None` at 0.
fn digit_and_image(alpha: &ExactReal, x: &ExactReal) -> Result<Option<(AlphaDigit, ExactReal)>> {
    let s = x.signum()?;
    if s == 0 {
        return Ok(None);
    }
    let inv = x.recip()?;
    let inv = if s < 0 { inv.neg() } else { inv };
    let a = inv.add(&ExactReal::one().sub(alpha)?)?.floor()?;
    let image = inv.sub_int(&a)?;
    Ok(Some((AlphaDigit { eps: s, a }, image)))
}

pub fn alpha_digit(alpha: &ExactReal, x: &ExactReal) -> Result<Option<AlphaDigit>> {
    Ok(digit_and_image(alpha, x)?.map(|(d, _)| d))
}

fn in_interval(alpha: &ExactReal, x: &ExactReal, closed_right: bool) -> Result<bool> {
    let lo = alpha.sub(&ExactReal::one())?;
    let upper = if closed_right { x.le(alpha)? } else { x.lt(alpha)? };
    Ok(lo.le(x)? && upper)
}

/// `G_α(x) = |1/x| - floor(|1/x| + 1 - α)` on `[α-1, α)`, with `0 ↦ 0`.
pub fn alpha_gauss_step(alpha: &ExactReal, x: &ExactReal) -> Result<ExactReal> {
    check_alpha(alpha)?;
    if !in_interval(alpha, x, false)? {
        return Err(Error::Domain(format!("{x} not in [alpha-1, alpha)")));
    }
    Ok(digit_and_image(alpha, x)?.map(|(_, y)| y).unwrap_or_else(ExactReal::zero))
}

/// The unique `k0` with `1/(k0+α) <= α < 1/(k0-1+α)`; `1` at `α = 1`.
pub fn first_digit_of_alpha(alpha: &ExactReal) -> Result<BigInt> {
    check_alpha(alpha)?;
    let t = alpha.recip()?.sub(alpha)?;
    Ok(t.ceil()?.max(BigInt::one()))
}

/// A validated parameter together with the breakpoints the maps use.
#[derive(Clone, Debug)]
pub struct Alpha {
    pub value: ExactReal,
    /// `α - 1`
    pub lower: ExactReal,
    /// `1 - α`
    pub one_minus: ExactReal,
    /// `1/α`
    pub inv: ExactReal,
    /// `1/(1+α)`
    pub inv_one_plus: ExactReal,
    pub k0: BigInt,
}

impl Alpha {
    pub fn new(alpha: &ExactReal) -> Result<Alpha> {
        check_alpha(alpha)?;
        let one = ExactReal::one();
        Ok(Alpha {
            value: alpha.clone(),
            lower: alpha.sub(&one)?,
            one_minus: one.sub(alpha)?,
            inv: alpha.recip()?,
            inv_one_plus: one.add(alpha)?.recip()?,
            k0: first_digit_of_alpha(alpha)?,
        })
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// `α < 1/2`
    pub fn below_half(&self) -> Result<bool> {
        self.value.lt(&ExactReal::ratio(1, 2)?)
    }

    /// `x ∈ [α-1, α)`
    pub fn contains(&self, x: &ExactReal) -> Result<bool> {
        Ok(self.lower.le(x)? && x.lt(&self.value)?)
    }

    /// Digit and `G_α` image; `None` at 0.
    pub fn step(&self, x: &ExactReal) -> Result<Option<(AlphaDigit, ExactReal)>> {
        let s = x.signum()?;
        if s == 0 {
            return Ok(None);
        }
        let inv = x.recip()?;
        let inv = if s < 0 { inv.neg() } else { inv };
        let whole = inv.floor()?;
        let frac = inv.sub_int(&whole)?;
        let (a, image) = if self.value.le(&frac)? { (whole + 1, frac.sub_int(&BigInt::one())?) } else { (whole, frac) };
        Ok(Some((AlphaDigit { eps: s, a }, image)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaExpansion {
    pub alpha: ExactReal,
    pub x: ExactReal,
    #[serde(serialize_with = "crate::export::ser_digits")]
    pub digits: Vec<AlphaDigit>,
    /// `(p_n, q_n)` for `n = 1..=digits.len()`.
    #[serde(serialize_with = "crate::export::ser_pairs")]
    pub convergents: Vec<(BigInt, BigInt)>,
    /// `G_α^n(x)` for `n = 0..=digits.len()`.
    pub orbit: Vec<ExactReal>,
    pub terminated: bool,
}

impl AlphaExpansion {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `(p_n, q_n)` for `n >= -1` with `p_{-1}/q_{-1} = 1/0`, `p_0/q_0 = 0/1`.
    pub fn convergent(&self, n: i64) -> Result<(BigInt, BigInt)> {
        match n {
            -1 => Ok((BigInt::one(), BigInt::zero())),
            0 => Ok((BigInt::zero(), BigInt::one())),
            n if n > 0 && (n as usize) <= self.len() => Ok(self.convergents[n as usize - 1].clone()),
            n => Err(Error::Index { index: n.max(0) as usize, len: self.len() }),
        }
    }

    /// `[[p_{n-1}, p_n], [q_{n-1}, q_n]]`.
    pub fn matrix(&self, n: usize) -> Result<MobiusMatrix> {
        let (p0, q0) = self.convergent(n as i64 - 1)?;
        let (p1, q1) = self.convergent(n as i64)?;
        Ok(MobiusMatrix { a11: p0, a12: p1, a21: q0, a22: q1 })
    }

    /// `S_n = a_1 + ... + a_n`.
    pub fn partial_sums(&self) -> Vec<BigInt> {
        let mut s = BigInt::zero();
        let mut out = vec![s.clone()];
        for d in &self.digits {
            s += &d.a;
            out.push(s.clone());
        }
        out
    }
}

/// Expands `x ∈ [α-1, α]`; `x = α` is read as the left limit.
pub fn alpha_expand(alpha: &ExactReal, x: &ExactReal, max_n: usize) -> Result<AlphaExpansion> {
    alpha_expand_with(&Alpha::new(alpha)?, x, max_n)
}

pub fn alpha_expand_with(alpha: &Alpha, x: &ExactReal, max_n: usize) -> Result<AlphaExpansion> {
    if !(alpha.lower.le(x)? && x.le(&alpha.value)?) {
        return Err(Error::Domain(format!("{x} not in [alpha-1, alpha]")));
    }
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut digits = Vec::new();
    let mut convergents = Vec::new();
    let mut orbit = vec![x.clone()];
    let mut cur = x.clone();
    let mut terminated = cur.is_zero();
    while digits.len() < max_n && !terminated {
        let Some((d, next)) = alpha.step(&cur)? else { break };
        let eps = BigInt::from(d.eps);
        let p_next = &d.a * &p + &eps * &p_prev;
        let q_next = &d.a * &q + &eps * &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        convergents.push((p.clone(), q.clone()));
        digits.push(d);
        terminated = next.is_zero();
        orbit.push(next.clone());
        cur = next;
    }
    Ok(AlphaExpansion { alpha: alpha.value.clone(), x: x.clone(), digits, convergents, orbit, terminated })
}
