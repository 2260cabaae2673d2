//! Invariance of the density `dx dy / (x - y)^2` under Möbius branches.

use crate::arith::{ExactReal, MobiusMatrix};
use crate::error::{Error, Result};

/// `|M'(x) M'(y)| (x-y)^2 / (M(x) - M(y))^2`, which is 1 for every
/// invertible `M` away from its pole.
pub fn density_ratio(m: &MobiusMatrix, x: &ExactReal, y: &ExactReal) -> Result<ExactReal> {
    let diff = x.sub(y)?;
    if diff.is_zero() {
        return Err(Error::Domain("density is singular on the diagonal".into()));
    }
    let fx = m.apply_finite(x)?.finite().cloned().ok_or_else(|| Error::Pole(x.to_string()))?;
    let fy = m.apply_finite(y)?.finite().cloned().ok_or_else(|| Error::Pole(y.to_string()))?;
    let jac = m.derivative(x)?.mul(&m.derivative(y)?)?.abs()?;
    jac.mul(&diff.square()?)?.div(&fx.sub(&fy)?.square()?)
}
