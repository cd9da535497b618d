//! Boolean functions, partial assignments and exact complexity measures.

mod bits;
mod measures;
pub mod packing;
mod partial;
mod table;

pub use bits::BitString;
pub use measures::{
    block_sensitivity, block_sensitivity_at, certificate_at, certificate_complexity,
    certificate_profile, minimal_sensitive_blocks, sensitivity, sensitivity_at,
    sensitivity_profile, CertificateProfile, MeasureBudget, MeasureReport, SensitivityProfile,
};
pub use partial::PartialAssignment;
pub use table::{TruthTable, MAX_VARS};
