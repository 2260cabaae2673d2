//! Matching of the orbits of `α - 1` and `α` under `G_α`.

use crate::arith::{BigFloat, ExactReal};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use num_bigint::BigInt;
use serde::Serialize;

/// Digits that must agree after a floating-point match.
pub const FLOAT_TAIL_DIGITS: usize = 100;
/// Working precision ceiling for floating-point matching.
pub const MAX_PRECISION: u32 = 8192;

/// `G_α^{alpha_steps}(α) = G_α^{alpha_minus_one_steps}(α - 1)`, the pair with
/// the smallest larger index, ties broken by the total.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Matching {
    #[serde(rename = "n0")]
    pub alpha_steps: usize,
    #[serde(rename = "m0")]
    pub alpha_minus_one_steps: usize,
    /// Consecutive verified digit agreements after the match.
    #[serde(rename = "tail_len")]
    pub tail_len: usize,
    pub value: ExactReal,
    pub exact: bool,
}

/// Orbit values `x, G x, ...` (at most `steps` images) with their digits;
/// 0 is absorbing and has digit `None`. Stops early when a floor or
/// comparison cannot be decided.
struct Orbit {
    values: Vec<ExactReal>,
    digits: Vec<Option<BigInt>>,
    truncated: bool,
}

fn orbit(alpha: &Alpha, x: &ExactReal, steps: usize) -> Result<Orbit> {
    let mut values = vec![x.clone()];
    let mut digits = Vec::with_capacity(steps);
    let mut truncated = false;
    while digits.len() < steps {
        let cur = values.last().unwrap();
        match alpha.step(cur) {
            Ok(Some((d, image))) => {
                digits.push(Some(d.signed()));
                values.push(image);
            }
            Ok(None) => {
                digits.push(None);
                values.push(ExactReal::zero());
            }
            Err(Error::Precision(_)) if !cur.is_exact() => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Orbit { values, digits, truncated })
}

fn exactly_equal(a: &ExactReal, b: &ExactReal) -> Result<bool> {
    Ok(a == b || a.cmp(b)? == std::cmp::Ordering::Equal)
}

/// Pairs `(n, m)` with `n, m <= max`, ordered by `max(n, m)`, then `n + m`,
/// then `n`.
fn pairs(max: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=max).flat_map(|k| {
        let mut ring: Vec<(usize, usize)> = (0..k).flat_map(|i| [(i, k), (k, i)]).collect();
        ring.push((k, k));
        ring.sort_by_key(|&(n, m)| (n + m, n));
        ring
    })
}

fn exact_matching(alpha: &Alpha, max_steps: usize) -> Result<Option<Matching>> {
    let right = orbit(alpha, &alpha.value, max_steps)?;
    let left = orbit(alpha, &alpha.lower, max_steps)?;
    for (n, m) in pairs(max_steps) {
        if !exactly_equal(&right.values[n], &left.values[m])? {
            continue;
        }
        let mut tail = 0;
        while n + tail < max_steps && m + tail < max_steps && right.digits[n + tail] == left.digits[m + tail] {
            tail += 1;
        }
        return Ok(Some(Matching { alpha_steps: n, alpha_minus_one_steps: m, tail_len: tail, value: right.values[n].clone(), exact: true }));
    }
    Ok(None)
}

enum FloatOutcome {
    Found(Matching),
    NeedPrecision,
    Absent,
}

fn float_attempt(alpha: &Alpha, max_steps: usize) -> Result<FloatOutcome> {
    let right = orbit(alpha, &alpha.value, max_steps)?;
    let left = orbit(alpha, &alpha.lower, max_steps)?;
    let mut undecided = right.truncated || left.truncated;
    let reach = (right.digits.len(), left.digits.len());
    for (n, m) in pairs(max_steps) {
        if n > reach.0 || m > reach.1 {
            continue;
        }
        match right.values[n].cmp(&left.values[m]) {
            Ok(std::cmp::Ordering::Equal) | Err(Error::Precision(_)) => {}
            Ok(_) => continue,
            Err(e) => return Err(e),
        }
        let mut tail = 0;
        let mut broke = false;
        while tail < FLOAT_TAIL_DIGITS && n + tail < reach.0 && m + tail < reach.1 {
            if right.digits[n + tail] != left.digits[m + tail] {
                broke = true;
                break;
            }
            tail += 1;
        }
        if broke {
            continue;
        }
        if tail < FLOAT_TAIL_DIGITS || undecided {
            return Ok(FloatOutcome::NeedPrecision);
        }
        return Ok(FloatOutcome::Found(Matching { alpha_steps: n, alpha_minus_one_steps: m, tail_len: tail, value: right.values[n].clone(), exact: false }));
    }
    undecided |= reach.0 < max_steps || reach.1 < max_steps;
    Ok(if undecided { FloatOutcome::NeedPrecision } else { FloatOutcome::Absent })
}

/// Matching with `α` supplied at any requested precision; precision doubles
/// from `precision` up to [`MAX_PRECISION`] until a match is confirmed by
/// [`FLOAT_TAIL_DIGITS`] agreeing digits or ruled out within `max_steps`.
pub fn matching_detect_float(alpha_at: &dyn Fn(u32) -> Result<ExactReal>, max_steps: usize, precision: u32) -> Result<Option<Matching>> {
    let mut prec = precision.max(64);
    loop {
        let alpha = Alpha::new(&alpha_at(prec)?)?;
        match float_attempt(&alpha, max_steps.max(FLOAT_TAIL_DIGITS + 1))? {
            FloatOutcome::Found(m) => return Ok(Some(m)),
            FloatOutcome::Absent => return Ok(None),
            FloatOutcome::NeedPrecision if prec >= MAX_PRECISION => {
                return Err(Error::Precision(format!("matching undecided at {prec} bits")));
            }
            FloatOutcome::NeedPrecision => prec = (prec * 2).min(MAX_PRECISION),
        }
    }
}

/// Smallest `(n0, m0)` with `G_α^{n0}(α) = G_α^{m0}(α - 1)` within
/// `max_steps`, where `G_α(α)` is read as the left limit. Rational and surd
/// α are compared exactly; a floating α is refined to at least `precision`
/// bits.
pub fn matching_detect(alpha: &ExactReal, max_steps: usize, precision: u32) -> Result<Option<Matching>> {
    match alpha {
        ExactReal::Float(b) => {
            let b = b.clone();
            matching_detect_float(&move |p| Ok(ExactReal::Float(b.with_precision(p.max(b.precision())))), max_steps, precision)
        }
        _ => exact_matching(&Alpha::new(alpha)?, max_steps),
    }
}

/// Floating-point route for a surd α, evaluated afresh at each precision.
pub fn surd_at_precision(alpha: &ExactReal) -> impl Fn(u32) -> Result<ExactReal> + '_ {
    move |p| match alpha {
        ExactReal::Surd(s) => Ok(ExactReal::Float(s.to_bigfloat(p))),
        ExactReal::Rational(r) => Ok(ExactReal::Float(BigFloat::from_rational(r, p))),
        ExactReal::Float(b) => Ok(ExactReal::Float(b.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> ExactReal {
        ExactReal::ratio(p, r).unwrap()
    }

    #[test]
    fn pairs_are_ordered_by_total() {
        let v: Vec<_> = pairs(2).collect();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], (0, 0));
        assert_eq!(v[1..4], [(0, 1), (1, 0), (1, 1)]);
        assert!(v.windows(2).all(|w| w[0].0.max(w[0].1) <= w[1].0.max(w[1].1)));
    }

    #[test]
    fn rational_parameters_match_at_the_stated_steps() {
        let m = matching_detect(&q(11, 20), 50, 128).unwrap().unwrap();
        assert_eq!((m.alpha_steps, m.alpha_minus_one_steps), (2, 2));
        assert_eq!(m.value, q(1, 2));
        let m = matching_detect(&q(7, 10), 50, 128).unwrap().unwrap();
        assert_eq!((m.alpha_steps, m.alpha_minus_one_steps), (2, 1));
        assert_eq!(m.value, q(1, 3));
    }

    #[test]
    fn exact_and_float_routes_agree_on_a_surd() {
        // sqrt(3/10) lies in (1/2, (sqrt5-1)/2)
        let a = ExactReal::surd(BigInt::from(0), BigInt::from(1), BigInt::from(10), 30).unwrap();
        let exact = matching_detect(&a, 40, 128).unwrap().unwrap();
        assert_eq!((exact.alpha_steps, exact.alpha_minus_one_steps), (2, 2));
        let float = matching_detect_float(&surd_at_precision(&a), 120, 128).unwrap().unwrap();
        assert_eq!((float.alpha_steps, float.alpha_minus_one_steps), (2, 2));
        assert!(float.tail_len >= FLOAT_TAIL_DIGITS);
        assert!(!float.exact);
    }
}
