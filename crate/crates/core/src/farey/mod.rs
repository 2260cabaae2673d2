//! Farey-type interval maps and the mediant convergent streams they generate.

pub mod maps;
pub mod stream;

pub use maps::{
    alpha_farey_step, alpha_farey_step_tagged, check_farey_domain, farey_orbit, farey_step, flat_branch,
    flat_branch_matrix, flat_step, induced_fj, j_index, pi_product, sharp_step, symbol_of, FareyTag,
};
pub use stream::{flat_mediant_sequence, mediant_sequence, ConvergentKind, MediantStream, StreamEntry};
