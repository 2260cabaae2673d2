//! Regular and α-continued fraction expansions.

pub mod alpha;
pub mod rcf;

pub use alpha::{
    alpha_digit, alpha_expand, alpha_expand_with, alpha_gauss_step, Alpha, check_alpha, first_digit_of_alpha, AlphaDigit, AlphaExpansion,
};
pub use rcf::{gauss_step, legendre_check, rcf_expand, theta_n, vahlen_borel_check, ApproximationCheck, RcfExpansion};
