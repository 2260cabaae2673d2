//! Points of the planar domains and the region tags that disambiguate them.

use crate::arith::{ExactReal, ExtendedValue};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanarPoint {
    pub x: ExactReal,
    pub y: ExtendedValue,
}

impl PlanarPoint {
    pub fn new(x: ExactReal, y: ExtendedValue) -> Self {
        PlanarPoint { x, y }
    }

    /// `(x, -∞)`
    pub fn bottom(x: ExactReal) -> Self {
        PlanarPoint { x, y: ExtendedValue::NegInf }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    /// `(x, -1/y)` with `-1/-∞ = 0`; the coordinates used for geometry.
    pub fn compactified(&self) -> (f64, f64) {
        let (x, y) = self.to_f64();
        (x, if y.is_infinite() { 0.0 } else { -1.0 / y })
    }
}

/// Which piece of a planar domain a point belongs to. Orbits carry tags so
/// that boundary points and overlapping coordinate ranges stay unambiguous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionTag {
    /// A point of `Ω*_α`.
    OmegaStar,
    /// A point of `Υ_{α,j}^{-1}`: `j` Farey steps remain before the next
    /// return to `Ω*_α`.
    UpsilonInv(u64),
    /// `V_{α,♭}` with `x < 0`, or `x = 0` approached from the left.
    VFlatMinus,
    VFlatPlus,
    /// The two pieces of `[0,1] × [-∞,0]` matched with `V_{α,♭}` by `ψ`.
    D1,
    D2,
    /// A point of `Ω̂_{k,-} - (1,1)` reached from `Ω*_{k,-}` by one Farey step.
    Shifted(u64),
    /// `(±1/x, ±1/y)` of a point of `Ω*_{k,±}`.
    OmegaHat { sign: i8, k: u64 },
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionTag::OmegaStar => write!(f, "omega_star"),
            RegionTag::UpsilonInv(j) => write!(f, "upsilon_inv_{j}"),
            RegionTag::VFlatMinus => write!(f, "vflat_minus"),
            RegionTag::VFlatPlus => write!(f, "vflat_plus"),
            RegionTag::D1 => write!(f, "d1"),
            RegionTag::D2 => write!(f, "d2"),
            RegionTag::Shifted(k) => write!(f, "shifted_{k}"),
            RegionTag::OmegaHat { sign, k } => write!(f, "omega_hat_{}{k}", if *sign < 0 { '-' } else { '+' }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaggedPoint {
    pub point: PlanarPoint,
    pub tag: RegionTag,
}

impl TaggedPoint {
    pub fn new(point: PlanarPoint, tag: RegionTag) -> Self {
        TaggedPoint { point, tag }
    }
}
