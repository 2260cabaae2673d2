//! The Farey map, the α-Farey map `F_α`, its induced maps `F_{α,♭}`,
//! `F_{α,♯}` and the jump-transformation identity with `G_α`.

use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};
use crate::expansion::Alpha;
use serde::Serialize;

/// Branch symbols of `F_α`. Each carries the matrix `A` of the inverse
/// branch, so that `x = A(F_α(x))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FareyTag {
    Minus,
    Id,
    Plus,
    R,
}

impl FareyTag {
    pub fn matrix(self) -> MobiusMatrix {
        match self {
            FareyTag::Minus => MobiusMatrix::new(-1, 0, 1, 1),
            FareyTag::Id => MobiusMatrix::identity(),
            FareyTag::Plus => MobiusMatrix::new(1, 0, 1, 1),
            FareyTag::R => MobiusMatrix::new(0, 1, 1, 1),
        }
    }

    /// Matrix of the forward branch `F_α` on this symbol's interval.
    pub fn forward_matrix(self) -> MobiusMatrix {
        match self {
            FareyTag::Minus => MobiusMatrix::new(-1, 0, 1, 1),
            FareyTag::Id => MobiusMatrix::identity(),
            FareyTag::Plus => MobiusMatrix::new(1, 0, -1, 1),
            FareyTag::R => MobiusMatrix::new(-1, 1, 1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            FareyTag::Minus => 'M',
            FareyTag::Id => 'I',
            FareyTag::Plus => 'P',
            FareyTag::R => 'R',
        }
    }
}

fn apply(m: &MobiusMatrix, x: &ExactReal) -> Result<ExactReal> {
    m.apply_finite(x)?
        .finite()
        .cloned()
        .ok_or_else(|| Error::Pole(format!("branch pole at {x}")))
}

/// Classical Farey map on `[0, 1]`.
pub fn farey_step(x: &ExactReal) -> Result<ExactReal> {
    let one = ExactReal::one();
    if x.signum()? < 0 || !x.le(&one)? {
        return Err(Error::Domain(format!("{x} not in [0, 1]")));
    }
    let half = ExactReal::ratio(1, 2)?;
    if x.lt(&half)? {
        apply(&FareyTag::Plus.forward_matrix(), x)
    } else {
        apply(&FareyTag::R.forward_matrix(), x)
    }
}

/// `x ∈ [α-1, 1/α]`
pub fn check_farey_domain(alpha: &Alpha, x: &ExactReal) -> Result<()> {
    if alpha.lower.le(x)? && x.le(&alpha.inv)? {
        Ok(())
    } else {
        Err(Error::Domain(format!("{x} not in [alpha-1, 1/alpha]")))
    }
}

/// Symbol of `x` under `F_α`: minus on `[α-1, 0)`, identity at 0, plus on
/// `(0, 1/(1+α)]`, `R` on `(1/(1+α), 1/α]`.
pub fn symbol_of(alpha: &Alpha, x: &ExactReal) -> Result<FareyTag> {
    check_farey_domain(alpha, x)?;
    Ok(match x.signum()? {
        -1 => FareyTag::Minus,
        0 => FareyTag::Id,
        _ if x.le(&alpha.inv_one_plus)? => FareyTag::Plus,
        _ => FareyTag::R,
    })
}

/// One step of `F_α` together with its symbol.
pub fn alpha_farey_step_tagged(alpha: &Alpha, x: &ExactReal) -> Result<(ExactReal, FareyTag)> {
    let tag = symbol_of(alpha, x)?;
    let y = match tag {
        FareyTag::Id => ExactReal::zero(),
        t => apply(&t.forward_matrix(), x)?,
    };
    Ok((y, tag))
}

pub fn alpha_farey_step(alpha: &ExactReal, x: &ExactReal) -> Result<ExactReal> {
    Ok(alpha_farey_step_tagged(&Alpha::new(alpha)?, x)?.0)
}

/// `k` points `F_α^1(x), ..., F_α^k(x)` with the symbols `A_1, ..., A_k`.
pub fn farey_orbit(alpha: &Alpha, x: &ExactReal, k: usize) -> Result<Vec<(ExactReal, FareyTag)>> {
    let mut out = Vec::with_capacity(k);
    let mut cur = x.clone();
    for _ in 0..k {
        let (y, t) = alpha_farey_step_tagged(alpha, &cur)?;
        out.push((y.clone(), t));
        cur = y;
    }
    Ok(out)
}

/// `Π_k = A_1 ⋯ A_k` along the `F_α` orbit of `x`.
pub fn pi_product(alpha: &Alpha, x: &ExactReal, k: usize) -> Result<MobiusMatrix> {
    let mut m = MobiusMatrix::identity();
    for (_, t) in farey_orbit(alpha, x, k)? {
        m = m.mul(&t.matrix());
    }
    Ok(m)
}

/// Least `k >= 0` with `F_α^k(x) ∈ (1/(1+α), 1/α]`; `j(0) = 0`.
pub fn j_index(alpha: &Alpha, x: &ExactReal, max_steps: usize) -> Result<usize> {
    if !alpha.contains(x)? {
        return Err(Error::Domain(format!("{x} not in [alpha-1, alpha)")));
    }
    if x.is_zero() {
        return Ok(0);
    }
    let mut cur = x.clone();
    for k in 0..=max_steps {
        let (y, t) = alpha_farey_step_tagged(alpha, &cur)?;
        if t == FareyTag::R {
            return Ok(k);
        }
        cur = y;
    }
    Err(Error::Precondition(format!("j(x) exceeds {max_steps} steps")))
}

/// `F_α^{j(x)+1}(x)`, which equals `G_α(x)`.
pub fn induced_fj(alpha: &Alpha, x: &ExactReal, max_steps: usize) -> Result<ExactReal> {
    let j = j_index(alpha, x, max_steps)?;
    let mut cur = x.clone();
    for _ in 0..=j {
        cur = alpha_farey_step_tagged(alpha, &cur)?.0;
    }
    Ok(cur)
}

/// Branch of `F_{α,♭}` at `x`, numbered in order along `[α-1, 1]`.
/// For `α < 1/2`: `[α-1,-1/2)`, `[-1/2,0)`, `[0,1/2)`, `[1/2,1/(1+α))`,
/// `[1/(1+α),1]`. For `α >= 1/2`: `[α-1,0)`, `[0,1/2)`, `[1/2,1/(1+α)]`,
/// `(1/(1+α),1]`, reported as branches 2..=5.
pub fn flat_branch(alpha: &Alpha, x: &ExactReal) -> Result<u8> {
    let one = ExactReal::one();
    if !(alpha.lower.le(x)? && x.le(&one)?) {
        return Err(Error::Domain(format!("{x} not in [alpha-1, 1]")));
    }
    let half = ExactReal::ratio(1, 2)?;
    let neg_half = half.neg();
    Ok(if alpha.below_half()? {
        if x.lt(&neg_half)? {
            1
        } else if x.signum()? < 0 {
            2
        } else if x.lt(&half)? {
            3
        } else if x.lt(&alpha.inv_one_plus)? {
            4
        } else {
            5
        }
    } else if x.signum()? < 0 {
        2
    } else if x.lt(&half)? {
        3
    } else if x.le(&alpha.inv_one_plus)? {
        4
    } else {
        5
    })
}

/// Matrix of the `F_{α,♭}` branch and its induced time `K`.
pub fn flat_branch_matrix(branch: u8) -> (MobiusMatrix, u32) {
    match branch {
        1 => (MobiusMatrix::new(-2, -1, 1, 0), 2),
        2 => (MobiusMatrix::new(-1, 0, 1, 1), 1),
        3 => (MobiusMatrix::new(1, 0, -1, 1), 1),
        4 => (MobiusMatrix::new(-2, 1, 1, 0), 2),
        _ => (MobiusMatrix::new(-1, 1, 1, 0), 1),
    }
}

/// Farey symbols traversed by one `F_{α,♭}` step on `branch`.
pub fn flat_branch_symbols(branch: u8, x_is_zero: bool) -> &'static [FareyTag] {
    match branch {
        1 => &[FareyTag::Minus, FareyTag::R],
        2 => &[FareyTag::Minus],
        3 if x_is_zero => &[FareyTag::Id],
        3 => &[FareyTag::Plus],
        4 => &[FareyTag::Plus, FareyTag::R],
        _ => &[FareyTag::R],
    }
}

/// `F_{α,♭}(x)` and the number `K(x)` of `F_α` steps it spans.
pub fn flat_step(alpha: &Alpha, x: &ExactReal) -> Result<(ExactReal, u32)> {
    let b = flat_branch(alpha, x)?;
    let (m, k) = flat_branch_matrix(b);
    Ok((apply(&m, x)?, k))
}

/// `F_{α,♯}`: `-x/(1+2x)` on `[α-1,0)`, `x/(1-x)` on `[0,1/(1+α))`,
/// `(1-x)/x` on `[1/(1+α),1/α]`.
pub fn sharp_step(alpha: &Alpha, x: &ExactReal) -> Result<ExactReal> {
    check_farey_domain(alpha, x)?;
    let m = if x.signum()? < 0 {
        MobiusMatrix::new(-1, 0, 2, 1)
    } else if x.lt(&alpha.inv_one_plus)? {
        MobiusMatrix::new(1, 0, -1, 1)
    } else {
        MobiusMatrix::new(-1, 1, 1, 0)
    };
    apply(&m, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> ExactReal {
        ExactReal::ratio(p, q).unwrap()
    }

    #[test]
    fn two_fifths_orbit_and_symbols() {
        let a = Alpha::new(&q(2, 5)).unwrap();
        let orbit = farey_orbit(&a, &q(-3, 8), 7).unwrap();
        let xs: Vec<String> = orbit.iter().map(|(x, _)| x.to_string()).collect();
        assert_eq!(xs, ["3/5", "3/2", "-1/3", "1/2", "1/1", "0/1", "0/1"]);
        let word: String = orbit.iter().map(|(_, t)| t.letter()).collect();
        assert_eq!(word, "MPRMPRI");
        assert_eq!(pi_product(&a, &q(-3, 8), 6).unwrap(), MobiusMatrix::new(-1, -3, 3, 8));
    }

    #[test]
    fn j_index_examples() {
        let a = Alpha::new(&q(4, 5)).unwrap();
        assert_eq!(j_index(&a, &q(7, 10), 10).unwrap(), 0);
        let b = Alpha::new(&q(1, 10)).unwrap();
        assert_eq!(j_index(&b, &q(0, 1), 10).unwrap(), 0);
    }

    #[test]
    fn flat_step_examples() {
        let a = Alpha::new(&q(2, 5)).unwrap();
        assert_eq!(flat_step(&a, &q(-3, 8)).unwrap(), (q(3, 5), 1));
        assert_eq!(flat_step(&a, &q(3, 5)).unwrap(), (q(-1, 3), 2));
        assert_eq!(flat_step(&a, &q(1, 2)).unwrap(), (q(0, 1), 2));
    }

    #[test]
    fn farey_map_boundaries() {
        assert_eq!(farey_step(&q(1, 2)).unwrap(), q(1, 1));
        assert_eq!(farey_step(&q(0, 1)).unwrap(), q(0, 1));
        assert!(farey_step(&q(3, 2)).is_err());
    }
}
