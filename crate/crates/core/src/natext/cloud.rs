//! Seeded point clouds of the planar domains, and their connected
//! components at a given gap.
//!
//! Every orbit starts at a random rational `(x0, -∞)`, runs `BURN_IN`
//! steps of `Ĝ*_α` so the second coordinate forgets the start, then
//! records points of the requested system. Orbit `i` draws from random
//! stream `i`, so the cloud does not depend on scheduling.

use super::cylinder::omega_hat;
use super::induced::{flat1_step, in_flat2};
use super::maps::{fhat_alpha_step_tagged, fhat_flat_step_tagged, flat_tag_of, ghat_star_step};
use super::measure::Region;
use super::point::{PlanarPoint, RegionTag, TaggedPoint};
use super::psi::psi_inverse;
use crate::arith::{ExactReal, ExtendedValue};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expansion::Alpha;
use crate::rng;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

const BURN_IN: usize = 12;
const POINTS_PER_ORBIT: usize = 40;
const START_BITS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordinateSystem {
    /// `Ω*_α` under `Ĝ*_α`.
    OmegaStar,
    /// `Ω̂_{k,±}`: the points of `Ω*_α` sent to `(±1/x, ±1/y)`.
    OmegaHat,
    /// `Ω̂_{k,-} - (1,1)` and `Ω̂_{k,+}`.
    OmegaHatShifted,
    /// `Υ_α`: inverses of the `Υ^{-1}` points of `V_α`.
    Upsilon,
    /// `V_α` under `F̂_α`.
    V,
    /// `V_{α,♭}` under `F̂_{α,♭}`.
    VFlat,
    /// `V_{α,♭}` pulled back to `V_1` by `ψ^{-1}`.
    VOne,
    /// `V_{α,♭,1}` under its induced map.
    VFlat1,
    /// `V_{α,♭,2}`: the `V_{α,♭,1}` orbit restricted to returns.
    VFlat2,
}

impl CoordinateSystem {
    pub const ALL: [CoordinateSystem; 9] = [
        CoordinateSystem::OmegaStar,
        CoordinateSystem::OmegaHat,
        CoordinateSystem::OmegaHatShifted,
        CoordinateSystem::Upsilon,
        CoordinateSystem::V,
        CoordinateSystem::VFlat,
        CoordinateSystem::VOne,
        CoordinateSystem::VFlat1,
        CoordinateSystem::VFlat2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoordinateSystem::OmegaStar => "omega-star",
            CoordinateSystem::OmegaHat => "omega-hat",
            CoordinateSystem::OmegaHatShifted => "omega-hat-shifted",
            CoordinateSystem::Upsilon => "upsilon",
            CoordinateSystem::V => "v",
            CoordinateSystem::VFlat => "v-flat",
            CoordinateSystem::VOne => "v-one",
            CoordinateSystem::VFlat1 => "v-flat1",
            CoordinateSystem::VFlat2 => "v-flat2",
        }
    }

    /// The system drawn in figure `n` (1 to 8) of the standard set for
    /// `α = √2 - 1`.
    pub fn figure(n: u8) -> Result<CoordinateSystem> {
        Ok(match n {
            1 => CoordinateSystem::OmegaStar,
            2 => CoordinateSystem::OmegaHat,
            3 => CoordinateSystem::OmegaHatShifted,
            4 => CoordinateSystem::Upsilon,
            5 => CoordinateSystem::V,
            6 => CoordinateSystem::VFlat,
            7 => CoordinateSystem::VOne,
            8 => CoordinateSystem::VFlat1,
            _ => return Err(Error::Domain(format!("no figure {n}; expected 1 to 8"))),
        })
    }
}

impl fmt::Display for CoordinateSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoordinateSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoordinateSystem::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown coordinate system '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainCloud {
    pub alpha: ExactReal,
    pub system: CoordinateSystem,
    pub seed: u64,
    /// Points recorded per orbit.
    pub orbit_length: usize,
    pub points: Vec<TaggedPoint>,
}

impl DomainCloud {
    /// Points in `(x, -1/y)` coordinates.
    pub fn compactified(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| p.point.compactified()).collect()
    }

    /// The cloud thickened to a raster of square cells of side `resolution`
    /// in `(x, -1/y)` coordinates, as a region in `(x, y)`. Points with
    /// `y >= 0` are skipped.
    pub fn raster(&self, resolution: f64) -> Region {
        let mut occupied: Vec<(i64, i64)> = self
            .compactified()
            .into_iter()
            .filter(|&(_, u)| u.is_finite() && u >= 0.0)
            .map(|(x, u)| ((x / resolution).floor() as i64, (u / resolution).floor() as i64))
            .collect();
        occupied.sort_unstable();
        occupied.dedup();
        Region::Cells(
            occupied
                .into_iter()
                .map(|(i, j)| {
                    let (u0, u1) = (j as f64 * resolution, (j + 1) as f64 * resolution);
                    let y0 = if u0 <= 0.0 { f64::NEG_INFINITY } else { -1.0 / u0 };
                    (i as f64 * resolution, (i + 1) as f64 * resolution, y0, -1.0 / u1)
                })
                .collect(),
        )
    }
}

fn is_terminal(e: &Error) -> bool {
    matches!(e, Error::TerminatedOrbit(_))
}

struct OrbitState {
    alpha: Alpha,
    system: CoordinateSystem,
}

impl OrbitState {
    fn start(&self, p: PlanarPoint) -> Result<TaggedPoint> {
        let tag = match self.system {
            CoordinateSystem::VFlat | CoordinateSystem::VOne => flat_tag_of(&p.x)?,
            _ => RegionTag::OmegaStar,
        };
        Ok(TaggedPoint::new(p, tag))
    }

    fn advance(&self, tp: &TaggedPoint) -> Result<TaggedPoint> {
        if tp.point.x.is_zero() && tp.tag != RegionTag::VFlatMinus {
            return Err(Error::TerminatedOrbit(0));
        }
        match self.system {
            CoordinateSystem::OmegaStar
            | CoordinateSystem::OmegaHat
            | CoordinateSystem::OmegaHatShifted => {
                Ok(TaggedPoint::new(ghat_star_step(&self.alpha, &tp.point)?, RegionTag::OmegaStar))
            }
            CoordinateSystem::V | CoordinateSystem::Upsilon => fhat_alpha_step_tagged(&self.alpha, tp),
            CoordinateSystem::VFlat | CoordinateSystem::VOne => fhat_flat_step_tagged(&self.alpha, tp),
            CoordinateSystem::VFlat1 | CoordinateSystem::VFlat2 => flat1_step(&self.alpha, tp),
        }
    }

    /// The recorded form of an orbit point, if it is recorded at all.
    fn view(&self, tp: &TaggedPoint) -> Result<Option<TaggedPoint>> {
        Ok(match self.system {
            CoordinateSystem::OmegaHat => Some(omega_hat(&self.alpha, &tp.point)?),
            CoordinateSystem::OmegaHatShifted => {
                let h = omega_hat(&self.alpha, &tp.point)?;
                match h.tag {
                    RegionTag::OmegaHat { sign, .. } if sign < 0 => {
                        let one = ExactReal::one();
                        let p = PlanarPoint::new(h.point.x.sub(&one)?, h.point.y.add(&one.neg())?);
                        Some(TaggedPoint::new(p, h.tag))
                    }
                    _ => Some(h),
                }
            }
            CoordinateSystem::Upsilon => match tp.tag {
                RegionTag::UpsilonInv(_) => {
                    let y = match &tp.point.y {
                        ExtendedValue::NegInf => ExtendedValue::Finite(ExactReal::zero()),
                        ExtendedValue::Finite(v) if v.is_zero() => return Ok(None),
                        ExtendedValue::Finite(v) => ExtendedValue::Finite(v.recip()?),
                    };
                    Some(TaggedPoint::new(PlanarPoint::new(tp.point.x.recip()?, y), tp.tag))
                }
                _ => None,
            },
            CoordinateSystem::VOne => Some(psi_inverse(tp)?),
            CoordinateSystem::VFlat2 => in_flat2(tp)?.then(|| tp.clone()),
            _ => Some(tp.clone()),
        })
    }

    /// Up to `quota` recorded points from orbits drawn from `r`. A start
    /// whose orbit terminates is replaced by a fresh draw.
    fn run(&self, r: &mut rng::StreamRng, quota: usize) -> Result<Vec<TaggedPoint>> {
        let mut out = Vec::with_capacity(quota);
        'orbits: while out.len() < quota {
            let x0 = rng::rational_in(r, &self.alpha.lower, &self.alpha.value, START_BITS)?;
            let mut p = PlanarPoint::bottom(x0);
            for _ in 0..BURN_IN {
                match ghat_star_step(&self.alpha, &p) {
                    Ok(q) => p = q,
                    Err(e) if is_terminal(&e) => continue 'orbits,
                    Err(e) => return Err(e),
                }
            }
            if p.x.is_zero() {
                continue;
            }
            let mut tp = self.start(p)?;
            let mut idle = 0usize;
            while out.len() < quota {
                if let Some(v) = self.view(&tp)? {
                    out.push(v);
                    idle = 0;
                } else {
                    idle += 1;
                    if idle > 1 << 16 {
                        continue 'orbits;
                    }
                }
                match self.advance(&tp) {
                    Ok(next) => tp = next,
                    Err(e) if is_terminal(&e) => continue 'orbits,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(out)
    }
}

/// A deterministic cloud of `n_points` points of `system` for the given α.
pub fn sample_domain(
    alpha: &ExactReal,
    system: CoordinateSystem,
    n_points: usize,
    seed: u64,
    exec: Execution,
) -> Result<DomainCloud> {
    let state = OrbitState { alpha: Alpha::new(alpha)?, system };
    let orbits = n_points.div_ceil(POINTS_PER_ORBIT) as u64;
    let chunks: Vec<Result<Vec<TaggedPoint>>> = exec.map_range(orbits, |i| {
        let quota = POINTS_PER_ORBIT.min(n_points - i as usize * POINTS_PER_ORBIT);
        state.run(&mut rng::stream(seed, i), quota)
    });
    let mut points = Vec::with_capacity(n_points);
    for c in chunks {
        points.extend(c?);
    }
    Ok(DomainCloud { alpha: alpha.clone(), system, seed, orbit_length: POINTS_PER_ORBIT, points })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub size: usize,
    /// `(x0, x1, u0, u1)` in the coordinates the points were given in.
    pub bounds: (f64, f64, f64, f64),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of the graph linking points at distance at most
/// `gap`, sorted by their left edge. Non-finite points are ignored.
pub fn components(points: &[(f64, f64)], gap: f64) -> Vec<Component> {
    let pts: Vec<(f64, f64)> = points.iter().copied().filter(|p| p.0.is_finite() && p.1.is_finite()).collect();
    // cells of side gap/√2: any two points sharing a cell are linked
    let side = gap / std::f64::consts::SQRT_2;
    let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        cells.entry(((x / side).floor() as i64, (y / side).floor() as i64)).or_default().push(i);
    }
    let mut uf = UnionFind((0..pts.len()).collect());
    let mut keys: Vec<(i64, i64)> = cells.keys().copied().collect();
    keys.sort_unstable();
    for members in cells.values() {
        for w in members.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let gap2 = gap * gap;
    for &(cx, cy) in &keys {
        let a = &cells[&(cx, cy)];
        for dx in -2..=2i64 {
            for dy in -2..=2i64 {
                if (dx, dy) <= (0, 0) {
                    continue;
                }
                let Some(b) = cells.get(&(cx + dx, cy + dy)) else { continue };
                if uf.find(a[0]) == uf.find(b[0]) {
                    continue;
                }
                'pairs: for &i in a {
                    for &j in b {
                        let (p, q) = (pts[i], pts[j]);
                        if (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2) <= gap2 {
                            uf.union(i, j);
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    let mut by_root: HashMap<usize, Component> = HashMap::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let c = by_root.entry(uf.find(i)).or_insert(Component { size: 0, bounds: (x, x, y, y) });
        c.size += 1;
        c.bounds = (c.bounds.0.min(x), c.bounds.1.max(x), c.bounds.2.min(y), c.bounds.3.max(y));
    }
    let mut out: Vec<Component> = by_root.into_values().collect();
    out.sort_by(|a, b| a.bounds.0.total_cmp(&b.bounds.0).then(a.bounds.2.total_cmp(&b.bounds.2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_respect_the_gap() {
        let pts = [(0.0, 0.0), (0.03, 0.0), (0.06, 0.01), (0.5, 0.5), (0.52, 0.5)];
        assert_eq!(components(&pts, 0.05).len(), 2);
        assert_eq!(components(&pts, 0.01).len(), 5);
        assert_eq!(components(&pts, 1.0).len(), 1);
    }

    #[test]
    fn cloud_is_deterministic_and_mode_independent() {
        let a = ExactReal::ratio(3, 10).unwrap();
        let s = sample_domain(&a, CoordinateSystem::V, 300, 9, Execution::Sequential).unwrap();
        let p = sample_domain(&a, CoordinateSystem::V, 300, 9, Execution::Parallel).unwrap();
        assert_eq!(s.points.len(), 300);
        assert_eq!(s.points, p.points);
    }

    #[test]
    fn v_one_cloud_lies_in_the_unit_strip() {
        let cloud = sample_domain(&ExactReal::one(), CoordinateSystem::V, 2000, 1, Execution::Parallel).unwrap();
        for tp in &cloud.points {
            let (x, y) = tp.point.to_f64();
            assert!((0.0..=1.0).contains(&x) && y <= 0.0, "{x} {y}");
        }
    }
}
