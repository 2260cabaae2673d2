//! The cylinders `Ω*_{k,±}` of `Ω*_α` and the sets `Ω̂_{k,±}`.

use super::point::{PlanarPoint, RegionTag, TaggedPoint};
use crate::arith::{ExactReal, ExtendedValue};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub sign: i8,
    #[serde(serialize_with = "crate::export::ser_bigint")]
    pub k: BigInt,
}

/// Cylinder of `x ∈ I_α \ {0}`, by its `G_α` digit and sign.
pub fn classify_cylinder(alpha: &Alpha, x: &ExactReal) -> Result<Cylinder> {
    if !alpha.contains(x)? {
        return Err(Error::Domain(format!("{x} not in [alpha-1, alpha)")));
    }
    let (d, _) = alpha.step(x)?.ok_or_else(|| Error::Domain("0 lies in no cylinder".into()))?;
    Ok(Cylinder { sign: d.eps, k: d.a })
}

/// x-projection of `Ω*_{k,±}`: `(1/(k+α), 1/(k-1+α)]` or
/// `[-1/(k-1+α), -1/(k+α))`, cut to `I_α`. `None` when empty.
pub fn cylinder_interval(alpha: &Alpha, sign: i8, k: &BigInt) -> Result<Option<(ExactReal, ExactReal)>> {
    if k < &BigInt::one() {
        return Ok(None);
    }
    let near = alpha.value.add_int(k)?.recip()?;
    let far_den = alpha.value.add_int(&(k - 1))?;
    let (lo, hi) = if sign > 0 {
        let hi = if far_den.signum()? > 0 { far_den.recip()?.min(&alpha.value)? } else { alpha.value.clone() };
        (near, hi)
    } else {
        let lo = if far_den.signum()? > 0 { far_den.recip()?.neg().max(&alpha.lower)? } else { alpha.lower.clone() };
        (lo, near.neg())
    };
    Ok(if lo.lt(&hi)? { Some((lo, hi)) } else { None })
}

/// `(±1/x, ±1/y)` for a point of `Ω*_{k,±}`, tagged with its cylinder.
pub fn omega_hat(alpha: &Alpha, p: &PlanarPoint) -> Result<TaggedPoint> {
    let c = classify_cylinder(alpha, &p.x)?;
    let inv = |v: &ExactReal| -> Result<ExactReal> {
        let r = v.recip()?;
        Ok(if c.sign < 0 { r.neg() } else { r })
    };
    let x = inv(&p.x)?;
    let y = match &p.y {
        ExtendedValue::NegInf => ExtendedValue::Finite(ExactReal::zero()),
        ExtendedValue::Finite(v) => ExtendedValue::Finite(inv(v)?),
    };
    let k = c.k.to_u64().ok_or_else(|| Error::Domain("digit too large".into()))?;
    Ok(TaggedPoint::new(PlanarPoint::new(x, y), RegionTag::OmegaHat { sign: c.sign, k }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_k0_cylinder_is_empty_for_sqrt2_minus_1() {
        let a = Alpha::new(&ExactReal::sqrt2_minus_1()).unwrap();
        assert_eq!(a.k0, BigInt::from(2));
        assert!(cylinder_interval(&a, 1, &BigInt::from(2)).unwrap().is_none());
        assert!(cylinder_interval(&a, 1, &BigInt::from(3)).unwrap().is_some());
        assert!(cylinder_interval(&a, -1, &BigInt::from(2)).unwrap().is_some());
    }

    #[test]
    fn classify_examples() {
        let a = Alpha::new(&ExactReal::sqrt2_minus_1()).unwrap();
        let c = classify_cylinder(&a, &ExactReal::ratio(-1, 4).unwrap()).unwrap();
        assert_eq!(c, Cylinder { sign: -1, k: BigInt::from(4) });
        let d = classify_cylinder(&a, &ExactReal::ratio(1, 5).unwrap()).unwrap();
        assert_eq!(d, Cylinder { sign: 1, k: BigInt::from(5) });
    }

    #[test]
    fn cylinders_partition_sampled_points() {
        let a = Alpha::new(&ExactReal::ratio(3, 10).unwrap()).unwrap();
        for n in 1..200 {
            let x = ExactReal::ratio(-70 + n, 200).unwrap().add(&ExactReal::ratio(1, 997).unwrap()).unwrap();
            if x.is_zero() || !a.contains(&x).unwrap() {
                continue;
            }
            let c = classify_cylinder(&a, &x).unwrap();
            let (lo, hi) = cylinder_interval(&a, c.sign, &c.k).unwrap().unwrap();
            assert!(lo.le(&x).unwrap() && x.le(&hi).unwrap());
        }
    }
}
