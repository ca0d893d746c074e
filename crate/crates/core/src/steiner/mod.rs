//! q-Steiner systems: verification, enumeration, the incidence matrix and
//! the rank pipeline.

pub mod certificate;
pub mod design;
pub mod exact_cover;
pub mod gram;
pub mod io;
pub mod params;
pub mod pipeline;

pub use certificate::{inclusion_matrix, rank_certificate, saturate, RankCertificate, SaturationRun};
pub use design::{
    cover_sets, enumerate_steiner, sample_steiner, verify, verify_design, CoverageWitness, Design, DesignVerdict,
    SampleResult, WitnessReport,
};
pub use exact_cover::{ExactCover, SearchOutcome};
pub use gram::{
    check_intersect_counts, dimension_formula, empirical_coefficients, gram_check, gram_matrix, incidence_matrix,
    intersect_count, kappa_formula, kappa_i_formula, mu_eigenvalue, mu_via_scheme, spectral_check, GramCoefficients,
    IntersectCheck, SpectralReport,
};
pub use params::{lambda_i, ParamSet, ParamSummary};
pub use pipeline::{run_dimension, Acquisition, DimensionReport};
