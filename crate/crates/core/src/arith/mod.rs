//! Exact real arithmetic: rationals, quadratic surds, error-tracked floats,
//! and integer Möbius matrices.

pub mod bigfloat;
pub mod exact;
mod mag;
pub mod mobius;
pub mod surd;
pub mod text;

pub use bigfloat::{BigFloat, DEFAULT_PRECISION, MAX_PRECISION};
pub use exact::ExactReal;
pub use mobius::{ExtendedValue, MobiusMatrix};
pub use surd::QuadraticSurd;
pub use text::{parse_extended, parse_real, parse_real_default};
