//! Planar natural extensions: the maps, their domains, the conjugacy `ψ`,
//! and the invariant density `dx dy / (x - y)^2`.

pub mod cloud;
pub mod cylinder;
pub mod density;
pub mod induced;
pub mod maps;
pub mod measure;
pub mod point;
pub mod psi;

pub use cloud::{components, sample_domain, CoordinateSystem, DomainCloud};
pub use cylinder::{classify_cylinder, cylinder_interval, omega_hat, Cylinder};
pub use density::density_ratio;
pub use induced::{flat1_start, flat1_step, flat2_step, in_flat2};
pub use maps::{
    branch_matrices, fhat_alpha_step, fhat_alpha_step_tagged, fhat_flat_step, fhat_flat_step_tagged, fhat_one_step,
    flat_tag_of, ghat_star_one_inverse, ghat_star_step,
};
pub use measure::{measure_estimate, MeasureEstimate, Method, Region};
pub use point::{PlanarPoint, RegionTag, TaggedPoint};
pub use psi::{conjugacy_residual, psi_forward, psi_inverse};
