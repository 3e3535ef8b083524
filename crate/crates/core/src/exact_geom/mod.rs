//! Exact rational planar primitives.

pub mod affine;
pub mod canonical;
pub mod json;
pub mod lattice;
pub mod pick;
pub mod polygon;
pub mod rat;
pub mod region;

use thiserror::Error;

pub use affine::{apply_affine, AffineMap};
pub use canonical::{
    canonical_form, canonical_form_rational, canonical_form_with_map, unimodular_equivalence,
};
pub use lattice::Lattice;
pub use pick::{pick_count, shoelace, PickCount};
pub use polygon::{CSPolygon, Location};
pub use rat::{int, parse_rat, rat, Rat, Rat2};
pub use region::HalfPlane;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("not centrally symmetric: {0}")]
    NotCentrallySymmetric(String),
    #[error("not strictly convex: {0}")]
    NotStrictlyConvex(String),
    #[error("too few points: {0}")]
    TooFewPoints(usize),
    #[error("vertices are not lattice points")]
    VerticesNotOnLattice,
    #[error("singular map")]
    SingularMap,
    #[error("lattice generators have rank below two")]
    DegenerateLattice,
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn polygon_from_points(points: &[Rat2]) -> Result<CSPolygon, GeomError> {
    CSPolygon::from_points(points)
}

pub fn point_location(p: &CSPolygon, q: &Rat2) -> Location {
    p.locate(q)
}

pub fn area(p: &CSPolygon) -> Rat {
    p.area()
}
