//! Finite searches re-deriving the octagon and decagon classifications.

pub mod audit;
pub mod classify;
pub mod octagons;
pub mod q10;
pub mod reduce;
pub mod tuples;

pub use audit::{write_audit, AuditRecord};
pub use classify::{classify, classify_strings, match_parametric, Classification, Verdict};
pub use octagons::{
    bound_readings, enumerate_octagons, run_octagons, EdgeKind, IsolatedTile, OctagonFamilyReport,
    OctagonRun, OctagonSkeleton,
};
pub use q10::{
    enumerate_q10, horizontal_edge_midpoints, run_q10, step_labels, Q10Candidate, Q10Class,
    Q10Config, Q10Run, XBound,
};
pub use reduce::{reduce_long_edge, reduction_area_loss, stretch_edge};
pub use tuples::{subcase_decagon, subcase_tuples, twice_area, SubcaseParams, Tuple};

use thiserror::Error;

use crate::exact_geom::GeomError;
use crate::tiling_core::TilingError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerationError {
    #[error("edge {edge} cannot be reduced: {reason}")]
    EdgeNotReducible { edge: usize, reason: String },
    #[error("irrational or inexact coordinate {0:?}; only exact rationals are supported")]
    IrrationalInput(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}
