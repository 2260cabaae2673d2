//! Search for cylinders of `G_α` whose `ℓ`-th image is short.

use crate::arith::{ExactReal, ExtendedValue, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::{Alpha, AlphaDigit};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Closed interval with exact endpoints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: ExactReal,
    pub hi: ExactReal,
}

impl Interval {
    pub fn length(&self) -> Result<ExactReal> {
        self.hi.sub(&self.lo)
    }

    fn sorted(a: ExactReal, b: ExactReal) -> Result<Interval> {
        Ok(if a.le(&b)? { Interval { lo: a, hi: b } } else { Interval { lo: b, hi: a } })
    }
}

/// A cylinder `⟨c_1, ..., c_ℓ⟩_α` with `G_α^ℓ` acting on it as the Möbius
/// map `matrix`, which sends `cylinder` monotonically onto `image`.
#[derive(Clone, Debug, Serialize)]
pub struct ThinCylinder {
    pub word: Vec<i64>,
    pub cylinder: Interval,
    #[serde(rename = "image_interval")]
    pub image: Interval,
    pub length: f64,
    #[serde(skip)]
    pub matrix: MobiusMatrix,
    /// Orbit whose digits gave the word: `"alpha-1"`, `"alpha"` or `"x"`.
    pub source: &'static str,
}

/// `[lo, hi]` closure of the digit cylinder `{x ∈ I_α : digit = (ε, a)}`.
fn digit_cylinder(alpha: &Alpha, d: &AlphaDigit) -> Result<Interval> {
    let near = ExactReal::from(d.a.clone()).add(&alpha.value)?.recip()?;
    let far_den = ExactReal::from(&d.a - BigInt::one()).add(&alpha.value)?;
    if d.eps > 0 {
        let hi = if far_den.signum()? <= 0 { alpha.value.clone() } else { far_den.recip()?.min(&alpha.value)? };
        Ok(Interval { lo: near, hi })
    } else {
        let lo = if far_den.signum()? <= 0 { alpha.lower.clone() } else { far_den.recip()?.neg().max(&alpha.lower)? };
        Ok(Interval { lo, hi: near.neg() })
    }
}

/// The branch `x ↦ ε/x - a` as a matrix.
fn branch(d: &AlphaDigit) -> MobiusMatrix {
    MobiusMatrix::new(-d.a.clone(), BigInt::from(d.eps), BigInt::one(), BigInt::zero())
}

fn finite(v: ExtendedValue) -> Result<ExactReal> {
    v.finite().cloned().ok_or_else(|| Error::Pole("cylinder endpoint maps to infinity".into()))
}

/// Cylinder data for every prefix of `word`: the image interval of
/// `G_α^ℓ` on `⟨c_1..c_ℓ⟩` and the composed branch matrix.
fn prefix_images(alpha: &Alpha, digits: &[AlphaDigit]) -> Result<Vec<(Interval, MobiusMatrix)>> {
    let mut current = Interval { lo: alpha.lower.clone(), hi: alpha.value.clone() };
    let mut matrix = MobiusMatrix::identity();
    let mut out = Vec::with_capacity(digits.len());
    for d in digits {
        let c = digit_cylinder(alpha, d)?;
        let (lo, hi) = (current.lo.max(&c.lo)?, current.hi.min(&c.hi)?);
        if hi.le(&lo)? {
            return Err(Error::Domain(format!("empty cylinder at digit {}", d.signed())));
        }
        let b = branch(d);
        current = Interval::sorted(finite(b.apply_finite(&lo)?)?, finite(b.apply_finite(&hi)?)?)?;
        matrix = b.mul(&matrix);
        out.push((current.clone(), matrix.clone()));
    }
    Ok(out)
}

/// The cylinder interval `M^{-1}(image)`.
fn pull_back(matrix: &MobiusMatrix, image: &Interval) -> Result<Interval> {
    let inv = matrix.inverse().ok_or_else(|| Error::Domain("branch composition is not unimodular".into()))?;
    Interval::sorted(finite(inv.apply_finite(&image.lo)?)?, finite(inv.apply_finite(&image.hi)?)?)
}

fn orbit_digits(alpha: &Alpha, x: &ExactReal, max_len: usize) -> Result<Vec<AlphaDigit>> {
    let mut out = Vec::new();
    let mut x = x.clone();
    while out.len() < max_len {
        let Some((d, image)) = alpha.step(&x)? else { break };
        out.push(d);
        x = image;
    }
    Ok(out)
}

fn certify(alpha: &Alpha, digits: &[AlphaDigit], image: Interval, matrix: MobiusMatrix, source: &'static str) -> Result<ThinCylinder> {
    let cylinder = pull_back(&matrix, &image)?;
    let word = digits.iter().map(|d| d.signed().to_i64().ok_or_else(|| Error::Domain("digit exceeds i64".into()))).collect::<Result<Vec<_>>>()?;
    let length = image.length()?.to_f64();
    let _ = alpha;
    Ok(ThinCylinder { word, cylinder, image, length, matrix, source })
}

/// The first prefix cylinder, along the orbits of `α - 1`, then `α` (left
/// limit), then each of `extra_starts`, whose `ℓ`-th image is shorter than
/// `eps`. The empty word qualifies when `|I_α| = 1 < eps`.
pub fn thin_cylinder_search_from(alpha_value: &ExactReal, eps: &ExactReal, max_len: usize, extra_starts: &[ExactReal]) -> Result<ThinCylinder> {
    let alpha = Alpha::new(alpha_value)?;
    if eps.signum()? <= 0 {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let whole = Interval { lo: alpha.lower.clone(), hi: alpha.value.clone() };
    if whole.length()?.lt(eps)? {
        return certify(&alpha, &[], whole, MobiusMatrix::identity(), "alpha-1");
    }
    let mut sources: Vec<(&'static str, ExactReal)> = vec![("alpha-1", alpha.lower.clone()), ("alpha", alpha.value.clone())];
    for x in extra_starts {
        if !alpha.contains(x)? {
            return Err(Error::Domain(format!("{x} not in [alpha-1, alpha)")));
        }
        sources.push(("x", x.clone()));
    }
    let orbits = sources.iter().map(|(_, x)| orbit_digits(&alpha, x, max_len)).collect::<Result<Vec<_>>>()?;
    let images = orbits.iter().map(|o| prefix_images(&alpha, o)).collect::<Result<Vec<_>>>()?;
    for len in 1..=max_len {
        for (k, imgs) in images.iter().enumerate() {
            let Some((image, matrix)) = imgs.get(len - 1) else { continue };
            if image.length()?.lt(eps)? {
                return certify(&alpha, &orbits[k][..len], image.clone(), matrix.clone(), sources[k].0);
            }
        }
    }
    Err(Error::NotFound(format!("no cylinder of length <= {max_len} has image shorter than {eps}")))
}

pub fn thin_cylinder_search(alpha: &ExactReal, eps: &ExactReal, max_len: usize) -> Result<ThinCylinder> {
    thin_cylinder_search_from(alpha, eps, max_len, &[])
}

/// Structural check of a certificate: the matrix is the composition of the
/// word's branches, it has no pole inside the cylinder, and it maps the
/// cylinder endpoints onto the image endpoints.
pub fn check_certificate(alpha_value: &ExactReal, c: &ThinCylinder) -> Result<bool> {
    let mut m = MobiusMatrix::identity();
    for &w in &c.word {
        let d = AlphaDigit { eps: if w > 0 { 1 } else { -1 }, a: BigInt::from(w.abs()) };
        m = branch(&d).mul(&m);
    }
    if m != c.matrix {
        return Ok(false);
    }
    let alpha = Alpha::new(alpha_value)?;
    if c.cylinder.lo.lt(&alpha.lower)? || alpha.value.lt(&c.cylinder.hi)? {
        return Ok(false);
    }
    if !m.a21.is_zero() {
        let pole = ExactReal::big_ratio(-m.a22.clone(), m.a21.clone())?;
        if c.cylinder.lo.lt(&pole)? && pole.lt(&c.cylinder.hi)? {
            return Ok(false);
        }
    }
    let ends = Interval::sorted(finite(m.apply_finite(&c.cylinder.lo)?)?, finite(m.apply_finite(&c.cylinder.hi)?)?)?;
    Ok(ends == c.image && c.image.lo.lt(&c.image.hi)? && !m.det().is_zero() && m.det().abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::alpha_expand;
    use crate::rng;

    fn q(p: i64, r: i64) -> ExactReal {
        ExactReal::ratio(p, r).unwrap()
    }

    #[test]
    fn wide_epsilon_takes_the_empty_word() {
        let c = thin_cylinder_search(&q(1, 2), &q(3, 2), 5).unwrap();
        assert!(c.word.is_empty());
        assert_eq!(c.image.length().unwrap(), ExactReal::one());
    }

    #[test]
    fn full_branches_never_shrink() {
        assert!(matches!(thin_cylinder_search(&ExactReal::one(), &q(1, 10), 30), Err(Error::NotFound(_))));
        let x = ExactReal::surd(BigInt::from(-2), BigInt::from(1), BigInt::from(3), 7).unwrap();
        assert!(matches!(thin_cylinder_search_from(&ExactReal::one(), &q(1, 10), 30, &[x]), Err(Error::NotFound(_))));
    }

    #[test]
    fn certificate_matches_sampled_digits() {
        let root41 = ExactReal::surd(BigInt::from(0), BigInt::from(1), BigInt::from(10), 41).unwrap();
        for (alpha, eps) in [(q(11, 20), q(1, 10)), (q(3, 10), q(1, 2)), (q(7, 10), q(1, 2)), (root41, q(1, 10))] {
            let c = thin_cylinder_search(&alpha, &eps, 60).unwrap();
            assert!(c.image.length().unwrap().lt(&eps).unwrap());
            assert!(check_certificate(&alpha, &c).unwrap());
            let mut r = rng::stream(3, 0);
            for _ in 0..50 {
                let x = rng::rational_in(&mut r, &c.cylinder.lo, &c.cylinder.hi, 64).unwrap();
                let e = alpha_expand(&alpha, &x, c.word.len()).unwrap();
                let word: Vec<i64> = e.digits.iter().map(|d| d.signed().to_i64().unwrap()).collect();
                assert_eq!(word, c.word, "alpha {alpha} x {x}");
            }
        }
    }
}
