//! Planar maps: `Ĝ*_α`, `F̂_α`, `F̂_{α,♭}` and `F̂` on `V_1`.
//!
//! Every branch is a Möbius matrix applied to both coordinates.

use super::point::{PlanarPoint, RegionTag, TaggedPoint};
use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::{Alpha, AlphaDigit};
use crate::farey::{flat_branch, flat_branch_matrix, FareyTag};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

pub fn apply_planar(m: &MobiusMatrix, p: &PlanarPoint) -> Result<PlanarPoint> {
    let x = m
        .apply_finite(&p.x)?
        .finite()
        .cloned()
        .ok_or_else(|| Error::Pole(format!("x-coordinate pole at {}", p.x)))?;
    let y = m.apply(&p.y)?;
    Ok(PlanarPoint { x, y })
}

/// `(±1/x - b, ±1/y - b)` as a matrix: `[[-b, ±1], [1, 0]]`.
pub fn ghat_star_matrix(alpha: &Alpha, x: &ExactReal) -> Result<(MobiusMatrix, AlphaDigit)> {
    let (d, _) = alpha.step(x)?.ok_or(Error::TerminatedOrbit(0))?;
    let m = MobiusMatrix { a11: -d.a.clone(), a12: BigInt::from(d.eps), a21: BigInt::one(), a22: BigInt::from(0) };
    Ok((m, d))
}

/// `Ĝ*_α(x, y) = (±1/x - b, ±1/y - b)` with `b` the `G_α` digit of `x`.
pub fn ghat_star_step(alpha: &Alpha, p: &PlanarPoint) -> Result<PlanarPoint> {
    if !alpha.contains(&p.x)? {
        return Err(Error::Domain(format!("{} not in [alpha-1, alpha)", p.x)));
    }
    let (m, _) = ghat_star_matrix(alpha, &p.x)?;
    apply_planar(&m, p)
}

/// Inverse branch of `Ĝ*_1` on `[0,1] × [-∞,-1]`: the previous digit is
/// `b = ceil(-y) - 1`.
pub fn ghat_star_one_inverse(p: &PlanarPoint) -> Result<(PlanarPoint, BigInt)> {
    let y = p.y.finite().ok_or_else(|| Error::Domain("past digits of y = -inf are undefined".into()))?;
    let b = y.neg().ceil()? - BigInt::one();
    if b < BigInt::one() {
        return Err(Error::Domain(format!("y = {y} not in [-inf, -1]")));
    }
    let m = MobiusMatrix { a11: BigInt::from(0), a12: BigInt::one(), a21: BigInt::one(), a22: b.clone() };
    Ok((apply_planar(&m, p)?, b))
}

/// `F̂_α` branch by position: minus on `[α-1,0)`, plus on `[0,1/(1+α))`,
/// `R` on `[1/(1+α),1/α)`.
pub fn fhat_alpha_branch(alpha: &Alpha, x: &ExactReal) -> Result<FareyTag> {
    if !(alpha.lower.le(x)? && x.lt(&alpha.inv)?) {
        return Err(Error::Domain(format!("{x} not in [alpha-1, 1/alpha)")));
    }
    Ok(if x.signum()? < 0 {
        FareyTag::Minus
    } else if x.lt(&alpha.inv_one_plus)? {
        FareyTag::Plus
    } else {
        FareyTag::R
    })
}

pub fn fhat_alpha_step(alpha: &Alpha, p: &PlanarPoint) -> Result<PlanarPoint> {
    let t = fhat_alpha_branch(alpha, &p.x)?;
    apply_planar(&t.forward_matrix(), p)
}

/// Branch chosen from the tag rather than the position, so that orbits
/// through branch boundaries follow the `G_α` digit convention.
pub fn fhat_alpha_tagged_branch(alpha: &Alpha, tp: &TaggedPoint) -> Result<(FareyTag, RegionTag)> {
    match tp.tag {
        RegionTag::OmegaStar => {
            let (d, _) = alpha.step(&tp.point.x)?.ok_or(Error::TerminatedOrbit(0))?;
            let a = d.a.to_u64().ok_or_else(|| Error::Domain(format!("digit {} too large", d.a)))?;
            Ok(if d.eps < 0 {
                (FareyTag::Minus, RegionTag::UpsilonInv(a - 1))
            } else if a == 1 {
                (FareyTag::R, RegionTag::OmegaStar)
            } else {
                (FareyTag::Plus, RegionTag::UpsilonInv(a - 1))
            })
        }
        RegionTag::UpsilonInv(j) if j >= 2 => Ok((FareyTag::Plus, RegionTag::UpsilonInv(j - 1))),
        RegionTag::UpsilonInv(1) => Ok((FareyTag::R, RegionTag::OmegaStar)),
        t => Err(Error::Tag(format!("{t} is not a tag of V_alpha"))),
    }
}

pub fn fhat_alpha_step_tagged(alpha: &Alpha, tp: &TaggedPoint) -> Result<TaggedPoint> {
    let (t, tag) = fhat_alpha_tagged_branch(alpha, tp)?;
    Ok(TaggedPoint::new(apply_planar(&t.forward_matrix(), &tp.point)?, tag))
}

/// `F̂_{α,♭}` by position. Same layout as the interval map except that
/// the fourth branch is closed at `1/(1+α)`.
pub fn fhat_flat_branch(alpha: &Alpha, x: &ExactReal) -> Result<u8> {
    let b = flat_branch(alpha, x)?;
    if b == 5 && x.cmp(&alpha.inv_one_plus)? == std::cmp::Ordering::Equal {
        return Ok(4);
    }
    Ok(b)
}

pub fn fhat_flat_step(alpha: &Alpha, p: &PlanarPoint) -> Result<PlanarPoint> {
    let b = fhat_flat_branch(alpha, &p.x)?;
    apply_planar(&flat_branch_matrix(b).0, p)
}

fn flat_image_tag(branch: u8) -> RegionTag {
    if branch == 1 || branch == 4 {
        RegionTag::VFlatMinus
    } else {
        RegionTag::VFlatPlus
    }
}

/// Branch and image tag for a tagged point of `V_{α,♭}`. A point at
/// `x = 0` tagged minus is `0⁻` and takes the `[-1/2, 0)` branch.
pub fn fhat_flat_tagged_branch(alpha: &Alpha, tp: &TaggedPoint) -> Result<(u8, RegionTag)> {
    let b = match tp.tag {
        RegionTag::VFlatMinus if tp.point.x.is_zero() => 2,
        RegionTag::VFlatMinus | RegionTag::VFlatPlus => fhat_flat_branch(alpha, &tp.point.x)?,
        t => return Err(Error::Tag(format!("{t} is not a tag of V_alpha,flat"))),
    };
    Ok((b, flat_image_tag(b)))
}

pub fn fhat_flat_step_tagged(alpha: &Alpha, tp: &TaggedPoint) -> Result<TaggedPoint> {
    let (b, tag) = fhat_flat_tagged_branch(alpha, tp)?;
    Ok(TaggedPoint::new(apply_planar(&flat_branch_matrix(b).0, &tp.point)?, tag))
}

/// `F̂` on `V_1 = [0,1] × [-∞,0]`: plus on `[0,1/2)`, `R` on `[1/2,1]`.
pub fn fhat_one_step(p: &PlanarPoint) -> Result<PlanarPoint> {
    let half = ExactReal::ratio(1, 2)?;
    if p.x.signum()? < 0 || !p.x.le(&ExactReal::one())? {
        return Err(Error::Domain(format!("{} not in [0, 1]", p.x)));
    }
    let t = if p.x.lt(&half)? { FareyTag::Plus } else { FareyTag::R };
    apply_planar(&t.forward_matrix(), p)
}

/// Tag of a start point `(x, -∞)` with `x ∈ I_α` in `V_{α,♭}`.
pub fn flat_tag_of(x: &ExactReal) -> Result<RegionTag> {
    Ok(if x.signum()? < 0 { RegionTag::VFlatMinus } else { RegionTag::VFlatPlus })
}

/// All branch matrices of the planar maps for a given α, used by the
/// measure-preservation checks. `Ĝ*` contributes digits up to `max_digit`.
pub fn branch_matrices(max_digit: u64) -> Vec<(String, MobiusMatrix)> {
    let mut out = Vec::new();
    for t in [FareyTag::Minus, FareyTag::Plus, FareyTag::R] {
        out.push((format!("fhat_alpha_{}", t.letter()), t.forward_matrix()));
    }
    for b in 1..=5u8 {
        out.push((format!("fhat_flat_{b}"), flat_branch_matrix(b).0));
    }
    for k in 1..=max_digit as i64 {
        out.push((format!("ghat_star_+{k}"), MobiusMatrix::new(-k, 1, 1, 0)));
        if k >= 2 {
            out.push((format!("ghat_star_-{k}"), MobiusMatrix::new(-k, -1, 1, 0)));
            out.push((format!("flat1_shift_{k}"), MobiusMatrix::new(-(k - 1), 1, 1, 0)));
        }
    }
    out
}
