//! Linear codes from highly nonlinear functions over finite fields.
//!
//! The library constructs the trace codes parameterized by an additive
//! subgroup of GF(p^m), computes their exact weight distributions by
//! enumeration, evaluates the matching closed-form tables, derives dual and
//! extended codes through exact MacWilliams transforms and nullspace
//! algebra, and builds the downstream combinatorial objects: block designs
//! from fixed-weight supports and secret-sharing access structures from
//! minimal codes.
//!
//! Everything is exact: field arithmetic is polynomial-basis integer
//! arithmetic, multiplicities are arbitrary-precision integers, and every
//! verifier is an exhaustive scan with an explicit size cap rather than a
//! sampling heuristic.

pub mod codes;
pub mod designs;
pub mod functions;
pub mod galois;
pub mod sharing;

pub use codes::{
    build_code, dual_code, dual_weight_distribution, enumerate_weight_distribution, extend_code,
    macwilliams_transform, min_distance, pless_check, CodesError, LinearCode, Provenance,
    WeightDistribution, WeightDistributionRecord, WeightEnumerator,
};
pub use designs::{
    assmus_mattson_applicable, design_params_ab, extract_blocks, verify_design, BlockSet,
    DesignError, DesignParams, DesignVerdict,
};
pub use functions::{
    function_from_id, is_almost_bent, is_planar, is_semi_bent, lambda_value, walsh_spectrum,
    walsh_value, Classification, FunctionError, FunctionSpec, NonlinearFunction, SpectrumReport,
};
pub use galois::{AdditiveSubgroup, Field, FieldElement, GaloisError};
pub use sharing::{
    access_structure, enumerate_minimal_access_sets, is_minimal_bruteforce, minimality_ratio,
    AccessStructureSummary, CoverageRule, MinimalityEvidence, MinimalityReport, SharingError,
};
