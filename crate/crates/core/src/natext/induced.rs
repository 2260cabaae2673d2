//! Induced planar maps on `V_{α,♭,1}` and `V_{α,♭,2}`.
//!
//! `V_{α,♭,1}` is `Ω*_α` together with the shifted sets `Ω̂_{k,-} - (1,1)`
//! reached from `Ω*_{k,-} ∩ {x >= -1/2}` by one Farey step. `V_{α,♭,2}`
//! drops the negative points of `Ω*_α` with `y > -2`.

use super::maps::{apply_planar, ghat_star_matrix};
use super::point::{PlanarPoint, RegionTag, TaggedPoint};
use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use crate::farey::FareyTag;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

/// Branch matrix and image tag of the first-return map to `V_{α,♭,1}`.
pub fn flat1_branch(alpha: &Alpha, tp: &TaggedPoint) -> Result<(MobiusMatrix, RegionTag)> {
    let x = &tp.point.x;
    match tp.tag {
        RegionTag::OmegaStar => {
            let (m, d) = ghat_star_matrix(alpha, x)?;
            if d.eps < 0 && ExactReal::ratio(-1, 2)?.le(x)? {
                let k = d.a.to_u64().ok_or_else(|| Error::Domain("digit too large".into()))?;
                Ok((FareyTag::Minus.forward_matrix(), RegionTag::Shifted(k)))
            } else {
                Ok((m, RegionTag::OmegaStar))
            }
        }
        RegionTag::Shifted(k) => {
            let b = BigInt::from(k) - BigInt::one();
            Ok((MobiusMatrix { a11: -b, a12: BigInt::one(), a21: BigInt::one(), a22: BigInt::from(0) }, RegionTag::OmegaStar))
        }
        t => Err(Error::Tag(format!("{t} is not a tag of V_alpha,flat,1"))),
    }
}

pub fn flat1_step(alpha: &Alpha, tp: &TaggedPoint) -> Result<TaggedPoint> {
    let (m, tag) = flat1_branch(alpha, tp)?;
    Ok(TaggedPoint::new(apply_planar(&m, &tp.point)?, tag))
}

/// Membership of a tagged point of `V_{α,♭,1}` in `V_{α,♭,2}`.
pub fn in_flat2(tp: &TaggedPoint) -> Result<bool> {
    match tp.tag {
        RegionTag::OmegaStar if tp.point.x.signum()? < 0 => tp.point.y.le(&ExactReal::from(-2)),
        RegionTag::OmegaStar | RegionTag::Shifted(_) => Ok(true),
        t => Err(Error::Tag(format!("{t} is not a tag of V_alpha,flat,1"))),
    }
}

/// First return of `flat1_step` to `V_{α,♭,2}`, with the number of
/// `flat1_step` applications it took.
pub fn flat2_step(alpha: &Alpha, tp: &TaggedPoint, max_steps: usize) -> Result<(TaggedPoint, usize)> {
    let mut cur = tp.clone();
    for n in 1..=max_steps {
        cur = flat1_step(alpha, &cur)?;
        if in_flat2(&cur)? {
            return Ok((cur, n));
        }
    }
    Err(Error::Precondition(format!("no return to V_alpha,flat,2 within {max_steps} steps")))
}

/// Start point `(x, -∞)` of `V_{α,♭,1}` for `x ∈ I_α`.
pub fn flat1_start(x: ExactReal) -> TaggedPoint {
    TaggedPoint::new(PlanarPoint::bottom(x), RegionTag::OmegaStar)
}
