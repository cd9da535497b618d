//! Structural bounds and finite-n verification: support sizes, distance
//! clusters around a minterm, property scans and scaling reports.

mod claims;
mod oracle;
mod scaling;
mod scan;
mod search;
mod support;

pub use claims::{
    anchored_cluster, claim1_holds, claim2_holds, cluster_s0_bound, max_clique, near_cluster,
    packed_cluster, verify_claim1, verify_claim2, Cluster, ClusterReport, S0Bound,
    DEFAULT_ENUM_CAP, DEFAULT_R_MAX, HISTOGRAM_CUTOFF,
};
pub use oracle::{bruteforce_oracle, OracleReport, ORACLE_MAX_VARS};
pub use scaling::{
    ols_slope, scaling_report, ScalingOptions, ScalingReport, ScalingRow, CSV_HEADER,
};
pub use scan::{
    class_count_by_generators, isomorphism_classes, scan_properties, IsoClasses, ScanMode,
    ScanRecord, ScanSummary, DEFAULT_PROPERTY_CAP, MAX_SCAN_VARS,
};
pub use search::{search_sensitivity_lower, SearchOutcome, STEPS_PER_RESTART};
pub use support::support_size_formula;
