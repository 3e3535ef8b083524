//! Exact verification, construction and enumeration of multiple lattice
//! tilings of the plane by centrally symmetric convex polygons.

pub mod cli;
pub mod enumeration;
pub mod exact_geom;
pub mod families;
pub mod tiling_core;
