use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use super::oracle::Oracle;
use super::{bolle_check, TilingError};
use crate::exact_geom::{CSPolygon, Lattice, Location, Rat, Rat2};

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryIncidence {
    pub translate: Rat2,
    /// `"edge"` or `"vertex"`.
    pub kind: &'static str,
    pub index: usize,
    pub angle: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityDecomposition {
    pub at: Rat2,
    pub k: u64,
    /// Translates whose interior contains the point.
    pub interior_count: u64,
    pub boundary_translates: Vec<BoundaryIncidence>,
    /// Sum of incident inner angles over 2π.
    pub turning: f64,
    /// `k - interior_count`, which `turning` must match.
    pub turning_exact: u64,
    /// A generic point near `at` and its interior count.
    pub perturbed: (Rat2, u64),
}

const TOL: f64 = 1e-9;

/// Splits the multiplicity `k` at `p` into the interior count and the
/// turning of the translates whose boundary passes through `p`.
pub fn multiplicity_decomposition_at(
    poly: &CSPolygon,
    l: &Lattice,
    p: &Rat2,
) -> Result<MultiplicityDecomposition, TilingError> {
    let cert = bolle_check(poly, l).map_err(|e| match e {
        TilingError::BolleFailed(f) => TilingError::NotCertified(f),
        other => other,
    })?;
    let k = cert.k;
    let oracle = Oracle::new(poly, l);
    let c = l.coords(p);
    let mut interior = 0u64;
    let mut boundary = Vec::new();
    for ((n1, n2), inner) in oracle.translates_at_coords(&c) {
        if inner {
            interior += 1;
            continue;
        }
        let t = l.point(&Rat::from_integer(n1), &Rat::from_integer(n2));
        match poly.locate(&(p - &t)) {
            Location::OnEdge { edge, .. } => boundary.push(BoundaryIncidence {
                translate: t,
                kind: "edge",
                index: edge,
                angle: PI,
            }),
            Location::AtVertex(i) => boundary.push(BoundaryIncidence {
                translate: t,
                kind: "vertex",
                index: i,
                angle: poly.interior_angle(i),
            }),
            other => {
                return Err(TilingError::Inconsistent(format!(
                    "oracle boundary translate {t} locates as {other:?}"
                )))
            }
        }
    }
    let turning: f64 = boundary.iter().map(|b| b.angle).sum::<f64>() / (2.0 * PI);
    if (2.0 * turning - (2.0 * turning).round()).abs() > TOL {
        return Err(TilingError::Inconsistent(format!(
            "turning {turning} is off the half-integer grid"
        )));
    }
    let turning_exact = k.checked_sub(interior).ok_or_else(|| {
        TilingError::Inconsistent(format!("{interior} interior translates exceed k = {k}"))
    })?;
    if (turning - turning_exact as f64).abs() > TOL {
        return Err(TilingError::Inconsistent(format!(
            "interior {interior} + turning {turning} != k = {k}"
        )));
    }
    let perturbed = generic_neighbour(&oracle, &c);
    if perturbed.1 != k {
        return Err(TilingError::MultiplicityMismatch {
            expected: k,
            observed: vec![(perturbed.1, 1)],
        });
    }
    Ok(MultiplicityDecomposition {
        at: p.clone(),
        k,
        interior_count: interior,
        boundary_translates: boundary,
        turning,
        turning_exact,
        perturbed,
    })
}

fn generic_neighbour(oracle: &Oracle, c: &(Rat, Rat)) -> (Rat2, u64) {
    let l = oracle.lattice();
    for j in 1..64i64 {
        let d1 = Rat::new(1.into(), (1_000_003i64 * j).into());
        let d2 = Rat::new(1.into(), (1_299_709i64 * j + 7).into());
        let q = (&c.0 + &d1, &c.1 + &d2);
        let (inner, on) = oracle.counts_at_coords(&q);
        if on.is_zero() {
            return (l.point(&q.0, &q.1), inner);
        }
    }
    unreachable!("a generic neighbour exists")
}
