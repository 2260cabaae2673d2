//! The piecewise translation `ψ` between `V_1` and `V_{α,♭}`, and the
//! conjugacy residual `ψ^{-1} ∘ F̂_{α,♭} ∘ ψ` versus `F̂`.

use super::maps::{fhat_flat_step_tagged, fhat_one_step};
use super::point::{PlanarPoint, RegionTag, TaggedPoint};
use crate::arith::{ExactReal, ExtendedValue};
use crate::error::{Error, Result};
use crate::expansion::Alpha;

fn shift(p: &PlanarPoint, by: i64) -> Result<PlanarPoint> {
    let c = ExactReal::from(by);
    Ok(PlanarPoint { x: p.x.add(&c)?, y: p.y.add(&c)? })
}

/// `D1 ↦ (x-1, y-1)` tagged minus, `D2 ↦ identity` tagged plus.
pub fn psi_forward(tp: &TaggedPoint) -> Result<TaggedPoint> {
    match tp.tag {
        RegionTag::D1 => Ok(TaggedPoint::new(shift(&tp.point, -1)?, RegionTag::VFlatMinus)),
        RegionTag::D2 => Ok(TaggedPoint::new(tp.point.clone(), RegionTag::VFlatPlus)),
        t => Err(Error::Tag(format!("psi expects a D1/D2 tag, got {t}"))),
    }
}

pub fn psi_inverse(tp: &TaggedPoint) -> Result<TaggedPoint> {
    match tp.tag {
        RegionTag::VFlatMinus => Ok(TaggedPoint::new(shift(&tp.point, 1)?, RegionTag::D1)),
        RegionTag::VFlatPlus => Ok(TaggedPoint::new(tp.point.clone(), RegionTag::D2)),
        t => Err(Error::Tag(format!("psi inverse expects a V_alpha,flat tag, got {t}"))),
    }
}

fn coord_gap(a: &ExtendedValue, b: &ExtendedValue) -> Result<ExactReal> {
    match (a, b) {
        (ExtendedValue::NegInf, ExtendedValue::NegInf) => Ok(ExactReal::zero()),
        (ExtendedValue::Finite(u), ExtendedValue::Finite(v)) => u.sub(v)?.abs(),
        _ => Err(Error::InfiniteResidual),
    }
}

/// Sup-norm distance between `ψ^{-1}(F̂_{α,♭}(ψ(p)))` and `F̂(p)`.
pub fn conjugacy_residual(alpha: &Alpha, tp: &TaggedPoint) -> Result<ExactReal> {
    let via_flat = psi_inverse(&fhat_flat_step_tagged(alpha, &psi_forward(tp)?)?)?;
    let direct = fhat_one_step(&tp.point)?;
    let dx = via_flat.point.x.sub(&direct.x)?.abs()?;
    let dy = coord_gap(&via_flat.point.y, &direct.y)?;
    dx.max(&dy)
}
