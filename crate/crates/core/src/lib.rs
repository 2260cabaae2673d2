//! Exact α-continued fractions, α-Farey maps, their planar natural
//! extensions, and the ergodic diagnostics built on top of them.

pub mod arith;
pub mod error;

pub use arith::{BigFloat, ExactReal, ExtendedValue, MobiusMatrix, QuadraticSurd};
pub use error::{Error, Result};
pub mod exec;
pub mod rng;

pub use exec::Execution;
pub mod expansion;
pub mod export;
pub mod farey;
pub mod natext;
pub mod ergodic;
pub mod verify;
