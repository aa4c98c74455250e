//! Oracles, Monte Carlo estimation, closed-form bounds and trace checkers.

mod bounds;
mod certify;
mod estimate;
mod forbidden;
mod hat;
mod oracle;

use thiserror::Error;

use crate::instances::InstanceError;
use crate::matroid::{ElementId, MatroidError};
use crate::sim::SimError;

pub use bounds::{alpha_p, dynkin_best_probability, modified_hat_bounds, ModifiedHatBounds};
pub use certify::{certify_no_size1_strong_fs, CertificateViolation, ImpossibilityCertificate};
pub use estimate::{
    estimate, estimate_with_check, round_sig9, BoundDirection, CheckOutcome, CheckTally,
    ElementFrequency, EstimateReport,
};
pub use forbidden::{
    check_first_after_sample, check_forbidden_consistency, ConsistencyReport, ForbiddenSetOracle,
    HatForbiddenTable,
};
pub use hat::{check_claw_blocker, check_modified_hat_lemma1, check_top_element};
pub use oracle::{brute_force_mwb, BRUTE_FORCE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("brute force is limited to {limit} elements, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error("two independent sets share the maximum weight")]
    TiedOptimum,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("p = {0} must lie strictly between 0 and 1")]
    OpenUnitInterval(f64),
    #[error("forbidden set for {element} is not a subset of Y \\ {{u}}: {reason}")]
    Oracle { element: ElementId, reason: String },
    #[error("no forbidden set is defined for {element} with Y = {y:?}")]
    Uncovered { element: ElementId, y: Vec<ElementId> },
    #[error("instance is not a {0}")]
    WrongFamily(&'static str),
    #[error("trial {trial}: {source}")]
    Trial { trial: u64, source: SimError },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}
