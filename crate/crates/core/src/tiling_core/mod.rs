//! Certification of multiple lattice tilings and the brute-force oracle.

mod bolle;
mod decompose;
mod oracle;
mod search;

use thiserror::Error;

use crate::exact_geom::Rat;

pub use bolle::{
    bolle_check, half_lattice_point_on_open_segment, BolleFailure, EdgeEvidence, FailureReason,
    TilingCertificate,
};
pub use decompose::{multiplicity_decomposition_at, BoundaryIncidence, MultiplicityDecomposition};
pub use oracle::{covering_multiplicity_at, sample_multiplicities, Oracle, OracleSummary};
pub use search::{find_tiling_lattice, find_tiling_lattice_report, LatticeSearch};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TilingError {
    #[error("polygon is not centred at the origin")]
    NotCentered,
    #[error("edge conditions hold but area/det = {0} is not an integer")]
    NonIntegerMultiplicity(Rat),
    #[error("{0}")]
    BolleFailed(BolleFailure),
    #[error("oracle disagrees with k = {expected}: observed interior counts {observed:?}")]
    MultiplicityMismatch {
        expected: u64,
        observed: Vec<(u64, u64)>,
    },
    #[error("pair is not certified: {0}")]
    NotCertified(BolleFailure),
    #[error("edge decomposition is inconsistent: {0}")]
    Inconsistent(String),
    #[error("every generator choice is rank deficient; search incomplete")]
    RankDeficientGenerators,
    #[error("multiplicity must be at least 1")]
    InvalidK,
}

impl TilingError {
    /// Errors that signal a defect in this library rather than a negative verdict.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            TilingError::NonIntegerMultiplicity(_)
                | TilingError::MultiplicityMismatch { .. }
                | TilingError::Inconsistent(_)
        )
    }
}

pub use bolle::verify_kfold;
