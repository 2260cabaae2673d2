//! δ-digit orbits of `F̂_{α,♭,1}` and their decomposition into returns to
//! `Ω*_α`.
//!
//! δ digits depend only on `x` and the region tag, so long orbits follow
//! the first coordinate exactly and keep only as much of `y` as decides
//! membership in `V_{α,♭,2}`.

use super::symbols::{DeltaClass, DeltaSymbol};
use crate::arith::{ExactReal, ExtendedValue, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use crate::farey::FareyTag;
use crate::natext::{classify_cylinder, in_flat2, RegionTag, TaggedPoint};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

fn small(k: &BigInt) -> Result<u64> {
    k.to_u64().ok_or_else(|| Error::Domain(format!("digit {k} too large")))
}

/// `δ(p)` for a point of `V_{α,♭,1}` tagged `OmegaStar` or `Shifted(k)`.
pub fn delta_digit(alpha: &Alpha, tp: &TaggedPoint) -> Result<DeltaSymbol> {
    match tp.tag {
        RegionTag::OmegaStar => {
            let c = classify_cylinder(alpha, &tp.point.x)?;
            let k = small(&c.k)?;
            Ok(if c.sign < 0 { DeltaSymbol::minus(k) } else { DeltaSymbol::plus(k) })
        }
        RegionTag::Shifted(k) => {
            if k == 2 && ExactReal::one().lt(&tp.point.x)? {
                return Err(Error::Domain(format!("zero-2 points need x <= 1, got {}", tp.point.x)));
            }
            Ok(DeltaSymbol::zero(k))
        }
        t => Err(Error::Tag(format!("{t} is not a tag of V_alpha,flat,1"))),
    }
}

/// `η(p)`: `δ(p)` restricted to `V_{α,♭,2}`.
pub fn eta_digit(alpha: &Alpha, tp: &TaggedPoint) -> Result<DeltaSymbol> {
    if !in_flat2(tp)? {
        return Err(Error::Domain("point is not in V_alpha,flat,2".into()));
    }
    delta_digit(alpha, tp)
}

#[derive(Clone, Debug)]
enum YState {
    Exact(ExtendedValue),
    /// `y < -1` at the last point of `Ω*_α`; holds whether the next point
    /// of `Ω*_α` has `y <= -2`.
    Generic { le_minus2: bool },
}

/// One symbol of a `F̂_{α,♭,1}` orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub symbol: DeltaSymbol,
    pub in_flat2: bool,
    /// For minus symbols: whether `x >= -1/2`.
    pub right_of_minus_half: bool,
}

/// Iterates `F̂_{α,♭,1}` on the first coordinate and the tag.
#[derive(Clone, Debug)]
pub struct Flat1Walker<'a> {
    alpha: &'a Alpha,
    x: ExactReal,
    tag: RegionTag,
    y: YState,
    minus_half: ExactReal,
}

impl<'a> Flat1Walker<'a> {
    pub fn new(alpha: &'a Alpha, tp: &TaggedPoint) -> Result<Self> {
        if !matches!(tp.tag, RegionTag::OmegaStar | RegionTag::Shifted(_)) {
            return Err(Error::Tag(format!("{} is not a tag of V_alpha,flat,1", tp.tag)));
        }
        let mut w = Flat1Walker {
            alpha,
            x: tp.point.x.clone(),
            tag: tp.tag,
            y: YState::Exact(tp.point.y.clone()),
            minus_half: ExactReal::ratio(-1, 2)?,
        };
        w.settle()?;
        Ok(w)
    }

    /// The walker for `(x, -∞)` in `Ω*_α`.
    pub fn from_x(alpha: &'a Alpha, x: &ExactReal) -> Result<Self> {
        Self::new(alpha, &crate::natext::flat1_start(x.clone()))
    }

    pub fn x(&self) -> &ExactReal {
        &self.x
    }

    pub fn tag(&self) -> RegionTag {
        self.tag
    }

    fn settle(&mut self) -> Result<()> {
        if self.tag != RegionTag::OmegaStar {
            return Ok(());
        }
        if let YState::Exact(ExtendedValue::Finite(v)) = &self.y {
            if v.lt(&ExactReal::from(-1))? {
                self.y = YState::Generic { le_minus2: v.le(&ExactReal::from(-2))? };
            }
        }
        Ok(())
    }

    fn move_y(&mut self, m: &MobiusMatrix, next_generic: Option<bool>) -> Result<()> {
        self.y = match &self.y {
            YState::Exact(v) => YState::Exact(m.apply(v)?),
            YState::Generic { le_minus2 } => YState::Generic { le_minus2: next_generic.unwrap_or(*le_minus2) },
        };
        Ok(())
    }

    /// The symbol of the current point, then one step. `None` once the orbit
    /// reaches `x = 0` in `Ω*_α`.
    pub fn next_visit(&mut self) -> Result<Option<Visit>> {
        match self.tag {
            RegionTag::OmegaStar => {
                let Some((d, image)) = self.alpha.step(&self.x)? else { return Ok(None) };
                let k = small(&d.a)?;
                let in_flat2 = d.eps > 0
                    || match &self.y {
                        YState::Exact(v) => v.le(&ExactReal::from(-2))?,
                        YState::Generic { le_minus2 } => *le_minus2,
                    };
                let right = d.eps < 0 && self.minus_half.le(&self.x)?;
                let symbol = if d.eps < 0 { DeltaSymbol::minus(k) } else { DeltaSymbol::plus(k) };
                let next_le = k >= 3 || (k == 2 && d.eps > 0);
                if right {
                    let m = FareyTag::Minus.forward_matrix();
                    self.x = m.apply_finite(&self.x)?.finite().cloned().ok_or(Error::DivisionByZero)?;
                    self.move_y(&m, Some(next_le))?;
                    self.tag = RegionTag::Shifted(k);
                } else {
                    let m = MobiusMatrix::new(-d.a.clone(), BigInt::from(d.eps), BigInt::one(), BigInt::zero());
                    self.x = image;
                    self.move_y(&m, Some(next_le))?;
                    self.settle()?;
                }
                Ok(Some(Visit { symbol, in_flat2, right_of_minus_half: right }))
            }
            RegionTag::Shifted(k) => {
                let visit = Visit { symbol: DeltaSymbol::zero(k), in_flat2: true, right_of_minus_half: false };
                if k == 2 && ExactReal::one().lt(&self.x)? {
                    return Err(Error::Domain(format!("zero-2 points need x <= 1, got {}", self.x)));
                }
                let b = BigInt::from(k) - 1;
                self.x = self.x.recip()?.sub_int(&b)?;
                self.move_y(&MobiusMatrix::new(-b, BigInt::one(), BigInt::one(), BigInt::zero()), None)?;
                self.tag = RegionTag::OmegaStar;
                self.settle()?;
                Ok(Some(visit))
            }
            t => Err(Error::Tag(format!("{t} is not a tag of V_alpha,flat,1"))),
        }
    }

    /// The next `n` visits; fails with `TerminatedOrbit` if the orbit ends
    /// first.
    pub fn take_visits(&mut self, n: usize) -> Result<Vec<Visit>> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            match self.next_visit()? {
                Some(v) => out.push(v),
                None => return Err(Error::TerminatedOrbit(out.len())),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleViolation {
    /// 1-based orbit index.
    pub index: usize,
    pub rule: &'static str,
}

/// Returns to `Ω*_α` and the split of `1..=N` into `N1` (plus and minus
/// symbols) and `N2` (zero symbols).
#[derive(Clone, Debug, Serialize)]
pub struct OrbitDecomposition {
    pub deltas: Vec<DeltaSymbol>,
    pub r: Vec<usize>,
    pub n2: Vec<usize>,
    pub violations: Vec<RuleViolation>,
}

impl OrbitDecomposition {
    pub fn n1_len(&self) -> usize {
        self.r.len()
    }

    pub fn n2_fraction(&self) -> f64 {
        if self.deltas.is_empty() {
            0.0
        } else {
            self.n2.len() as f64 / self.deltas.len() as f64
        }
    }
}

/// Checks the transition rules between consecutive δ digits of an orbit.
pub fn remark_rule_violations(visits: &[Visit], k0: u64) -> Vec<RuleViolation> {
    let mut out = Vec::new();
    let mut flag = |index: usize, rule: &'static str| out.push(RuleViolation { index, rule });
    let mut last_return: Option<usize> = None;
    for (i, v) in visits.iter().enumerate() {
        let n = i + 1;
        let s = v.symbol;
        let next = visits.get(i + 1).map(|w| w.symbol);
        let after = visits.get(i + 2).map(|w| w.symbol);
        match s.class {
            DeltaClass::Plus if s.k < k0 => flag(n, "plus digit below k0"),
            DeltaClass::Minus | DeltaClass::Zero if s.k < 2 => flag(n, "digit below 2"),
            _ => {}
        }
        if !s.is_zero_class() {
            if let Some(r) = last_return {
                if !(1..=2).contains(&(n - r)) {
                    flag(n, "return gap not 1 or 2");
                }
            } else if n > 2 {
                flag(n, "first return later than 2");
            }
            last_return = Some(n);
        }
        if let Some(nx) = next {
            if nx.is_zero_class() && s != DeltaSymbol::minus(nx.k) {
                flag(n + 1, "zero symbol not preceded by its minus symbol");
            }
            match s.class {
                DeltaClass::Minus if s.k >= 3 || v.right_of_minus_half => {
                    if nx != DeltaSymbol::zero(s.k) {
                        flag(n, "minus symbol right of -1/2 not followed by its zero symbol");
                    }
                    if after.is_some_and(|a| a.is_zero_class()) {
                        flag(n + 2, "two steps after a minus symbol is not a return");
                    }
                }
                DeltaClass::Minus => {
                    if nx.class != DeltaClass::Minus {
                        flag(n, "minus 2 left of -1/2 not followed by a minus symbol");
                    }
                }
                DeltaClass::Plus => {
                    if nx.is_zero_class() {
                        flag(n + 1, "plus symbol followed by a zero symbol");
                    }
                }
                DeltaClass::Zero if s.k == 2 => {
                    if nx.class != DeltaClass::Plus {
                        flag(n, "zero 2 not followed by a plus symbol");
                    }
                }
                DeltaClass::Zero => {}
            }
        }
    }
    out
}

/// The first `n` δ digits of the `F̂_{α,♭,1}` orbit of `tp`, decomposed
/// into returns, with every transition rule checked.
pub fn orbit_decomposition(alpha: &Alpha, tp: &TaggedPoint, n: usize) -> Result<OrbitDecomposition> {
    if n == 0 {
        return Err(Error::Precondition("orbit length must be at least 1".into()));
    }
    let visits = Flat1Walker::new(alpha, tp)?.take_visits(n)?;
    let k0 = alpha.k0.to_u64().unwrap_or(u64::MAX);
    let violations = remark_rule_violations(&visits, k0);
    let mut r = Vec::new();
    let mut n2 = Vec::new();
    for (i, v) in visits.iter().enumerate() {
        if v.symbol.is_zero_class() {
            n2.push(i + 1);
        } else {
            r.push(i + 1);
        }
    }
    Ok(OrbitDecomposition { deltas: visits.iter().map(|v| v.symbol).collect(), r, n2, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natext::{flat1_start, flat1_step, PlanarPoint};

    #[test]
    fn digit_examples() {
        let a = Alpha::new(&ExactReal::sqrt2_minus_1()).unwrap();
        let p = |x: ExactReal| TaggedPoint::new(PlanarPoint::new(x, ExtendedValue::Finite(ExactReal::from(-3))), RegionTag::OmegaStar);
        assert_eq!(delta_digit(&a, &p(ExactReal::ratio(-1, 4).unwrap())).unwrap(), DeltaSymbol::minus(4));
        assert_eq!(delta_digit(&a, &p(ExactReal::ratio(1, 5).unwrap())).unwrap(), DeltaSymbol::plus(5));
    }

    #[test]
    fn walker_agrees_with_planar_orbit() {
        let a = Alpha::new(&ExactReal::ratio(3, 10).unwrap()).unwrap();
        let x = ExactReal::surd(BigInt::from(-3), BigInt::from(1), BigInt::from(17), 7).unwrap();
        let mut tp = flat1_start(x.clone());
        let mut w = Flat1Walker::from_x(&a, &x).unwrap();
        for _ in 0..200 {
            let v = w.next_visit().unwrap().unwrap();
            assert_eq!(v.symbol, delta_digit(&a, &tp).unwrap());
            assert_eq!(v.in_flat2, in_flat2(&tp).unwrap());
            tp = flat1_step(&a, &tp).unwrap();
            assert_eq!(w.x(), &tp.point.x);
            assert_eq!(w.tag(), tp.tag);
        }
    }
}
