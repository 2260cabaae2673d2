//! Symbolic dynamics of the induced maps, orbit frequencies, matching and
//! thin cylinders.

pub mod frequency;
pub mod matching;
pub mod orbit;
pub mod symbols;
pub mod thin;

pub use frequency::{cylinder_frequency, farey_normality_report, signed_digits, typical_start, CylinderSpec, Frequency, NormalityReport, ReportSettings};
pub use orbit::{delta_digit, eta_digit, orbit_decomposition, remark_rule_violations, Flat1Walker, OrbitDecomposition, RuleViolation, Visit};
pub use symbols::{check_delta_word, check_eta_word, delta_to_eta, eta_to_delta, parse_word, random_delta_word, DeltaClass, DeltaSymbol};
pub use matching::{matching_detect, matching_detect_float, surd_at_precision, Matching};
pub use thin::{check_certificate, thin_cylinder_search, thin_cylinder_search_from, Interval, ThinCylinder};
