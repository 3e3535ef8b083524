//! Constructors for the classified tile families and the free-vertex
//! regions of the midpoint-specified decagons.

mod decagon;
mod octagon;

use thiserror::Error;

use crate::exact_geom::{GeomError, Rat, Rat2};

pub use decagon::{
    decagon_from_midpoints, family_midpoints, free_vertex_of, freedom_region, freedom_regions,
    DecagonFamily, FreedomRegion, MidpointSpec,
};
pub use octagon::{
    octagon_family, sign_flip_distance, AffineVertex, OctagonVariant, ParametricFamily,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("parameter {value} of {family} is outside the open interval ({lo}, {hi})")]
    ParameterOutOfRange {
        family: String,
        value: Rat,
        lo: Rat,
        hi: Rat,
    },
    #[error("midpoints violate the alternating closure: sum is {0}")]
    ClosureViolated(Rat2),
    #[error("free vertex {free_vertex} {}", if *.on_boundary { "on region boundary" } else { "outside the freedom region" })]
    NotStrictlyConvex {
        on_boundary: bool,
        free_vertex: Rat2,
    },
    #[error("midpoint specs need an odd number m >= 3 of midpoints, got {0}")]
    UnsupportedMidpointCount(usize),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
