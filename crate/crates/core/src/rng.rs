//! Seeded, splittable random streams and exact random samples.
//!
//! Each `(seed, stream)` pair addresses an independent ChaCha8 keystream,
//! so batch item `i` always draws from stream `i` regardless of scheduling.

use crate::arith::{surd::squarefree_split, ExactReal};
use crate::error::{Error, Result};
use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Rational bounds `lo <= lo' < hi' <= hi` for exact endpoints.
fn rational_bounds(lo: &ExactReal, hi: &ExactReal) -> Result<(BigRational, BigRational)> {
    let scale = BigInt::one() << 96usize;
    let to_rat = |x: &ExactReal, up: bool| -> Result<BigRational> {
        if let Some(r) = x.as_rational() {
            return Ok(r.clone());
        }
        let s = x.mul_int(&scale)?;
        let n = if up { s.ceil()? } else { s.floor()? };
        Ok(BigRational::new(n, scale.clone()))
    };
    let (a, b) = (to_rat(lo, true)?, to_rat(hi, false)?);
    if a >= b {
        return Err(Error::Domain(format!("empty sampling interval [{lo}, {hi})")));
    }
    Ok((a, b))
}

/// Uniform rational in `[lo, hi)` with a denominator of about `bits` bits.
pub fn rational_in(rng: &mut StreamRng, lo: &ExactReal, hi: &ExactReal, bits: u32) -> Result<ExactReal> {
    let (a, b) = rational_bounds(lo, hi)?;
    let q: BigInt = (BigInt::one() << (bits as usize - 1)) + rng.gen_bigint_range(&BigInt::from(0), &(BigInt::one() << (bits as usize - 1)));
    let u = rng.gen_bigint_range(&BigInt::from(0), &q);
    Ok(ExactReal::Rational(&a + (&b - &a) * BigRational::new(u, q)))
}

/// Random point of `Q(sqrt d)` strictly inside `(lo, hi)`.
pub fn surd_in(rng: &mut StreamRng, lo: &ExactReal, hi: &ExactReal, d: u64) -> Result<ExactReal> {
    for _ in 0..64 {
        let r = rational_in(rng, lo, hi, 40)?;
        let k: i64 = rng.gen_range(1..1 << 20);
        let c: i64 = rng.gen_range(1 << 30..1i64 << 40);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let pert = ExactReal::surd(BigInt::from(0), BigInt::from(sign * k), BigInt::from(c), d)?;
        let x = r.add(&pert)?;
        if lo.lt(&x)? && x.lt(hi)? {
            return Ok(x);
        }
    }
    Err(Error::Domain(format!("could not place a surd in ({lo}, {hi})")))
}

/// A surd with a large squarefree radicand, used as a stand-in for a
/// typical point in long orbit experiments.
pub fn normal_like_surd(rng: &mut StreamRng, lo: &BigRational, hi: &BigRational) -> Result<ExactReal> {
    let d = loop {
        let cand: u64 = rng.gen_range(1u64 << 44..1u64 << 46);
        let (_, r) = squarefree_split(cand);
        if r > 1 << 40 {
            break r;
        }
    };
    let root = BigInt::from(d).sqrt();
    let c: u64 = rng.gen_range(1u64 << 10..1u64 << 12);
    // t = frac(sqrt(d) / c) in (0, 1)
    let t = ExactReal::surd(-(root.clone() / BigInt::from(c)) * BigInt::from(c), BigInt::one(), BigInt::from(c), d)?;
    let t = t.sub_int(&t.floor()?)?;
    let lo_e = ExactReal::Rational(lo.clone());
    lo_e.add(&t.mul(&ExactReal::Rational(hi - lo))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream(7, 3).gen();
        let b: u64 = stream(7, 3).gen();
        let c: u64 = stream(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn samples_respect_surd_bounds() {
        let alpha = ExactReal::sqrt2_minus_1();
        let lo = alpha.sub(&ExactReal::one()).unwrap();
        let mut rng = stream(1, 0);
        for _ in 0..200 {
            let x = rational_in(&mut rng, &lo, &alpha, 64).unwrap();
            assert!(lo.le(&x).unwrap() && x.lt(&alpha).unwrap());
            let y = surd_in(&mut rng, &lo, &alpha, 2).unwrap();
            assert!(y.field() == Some(2) && lo.lt(&y).unwrap());
        }
    }

    #[test]
    fn normal_like_surd_lies_in_range() {
        let mut rng = stream(2, 0);
        let lo = BigRational::new(0.into(), 1.into());
        let hi = BigRational::new(1.into(), 1.into());
        let x = normal_like_surd(&mut rng, &lo, &hi).unwrap();
        assert!(x.field().unwrap() > 1 << 40);
        let v = x.to_f64();
        assert!(v > 0.0 && v < 1.0);
    }
}
