use num_traits::{Signed, Zero};
use serde::Serialize;

use super::FamilyError;
use crate::exact_geom::region::{canonical_rotation, inside_open, intersect_half_planes};
use crate::exact_geom::{int, rat, CSPolygon, HalfPlane, Rat, Rat2};

/// Half-cycle edge midpoints `u_1..u_m`; the rest are their negatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MidpointSpec {
    pub u: Vec<Rat2>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DecagonFamily {
    A,
    B,
    /// The five-fold decagon, kept as a verification fixture.
    FiveFold,
}

impl DecagonFamily {
    pub const ALL: [DecagonFamily; 3] =
        [DecagonFamily::A, DecagonFamily::B, DecagonFamily::FiveFold];

    pub fn cli_name(self) -> &'static str {
        match self {
            DecagonFamily::A => "decagon-A",
            DecagonFamily::B => "decagon-B",
            DecagonFamily::FiveFold => "decagon5",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.cli_name() == s)
    }

    pub fn k(self) -> u64 {
        match self {
            DecagonFamily::FiveFold => 5,
            _ => 6,
        }
    }

    /// Anchor whose freedom region is the published quadrilateral.
    pub fn reference_anchor(self) -> usize {
        match self {
            DecagonFamily::A | DecagonFamily::FiveFold => 0,
            DecagonFamily::B => 4,
        }
    }

    pub fn default_free_vertex(self) -> Rat2 {
        match self {
            DecagonFamily::A => Rat2::q(-1, 8, 5, 6),
            DecagonFamily::B => Rat2::q(0, 1, 7, 6),
            DecagonFamily::FiveFold => {
                let r = freedom_region(&family_midpoints(self), self.reference_anchor())
                    .expect("fixture satisfies closure");
                r.interior_point().expect("fixture region is nonempty")
            }
        }
    }

    pub fn instance(self) -> CSPolygon {
        decagon_from_midpoints(
            &family_midpoints(self),
            &self.default_free_vertex(),
            self.reference_anchor(),
        )
        .expect("default free vertex is admissible")
    }
}

pub fn family_midpoints(which: DecagonFamily) -> MidpointSpec {
    let u = match which {
        DecagonFamily::A => vec![
            Rat2::q(-1, 1, 1, 2),
            Rat2::q(1, 2, 1, 1),
            Rat2::q(3, 2, 1, 1),
            Rat2::q(2, 1, 1, 2),
            Rat2::q(2, 1, 0, 1),
        ],
        DecagonFamily::B => vec![
            Rat2::q(1, 2, -1, 1),
            Rat2::q(3, 2, -1, 2),
            Rat2::q(2, 1, 0, 1),
            Rat2::q(3, 2, 1, 2),
            Rat2::q(1, 2, 1, 1),
        ],
        DecagonFamily::FiveFold => vec![
            Rat2::q(0, 1, 1, 1),
            Rat2::q(1, 1, 1, 1),
            Rat2::q(3, 2, 1, 2),
            Rat2::q(3, 2, 0, 1),
            Rat2::q(1, 1, -1, 2),
        ],
    };
    MidpointSpec { u }
}

impl MidpointSpec {
    pub fn m(&self) -> usize {
        self.u.len()
    }

    /// `u_i` for any index, using `u_{i+m} = -u_i`.
    pub fn at(&self, i: usize) -> Rat2 {
        let m = self.m();
        let j = i % (2 * m);
        if j < m {
            self.u[j].clone()
        } else {
            -&self.u[j - m]
        }
    }

    /// `sum_{i=1..m} (-1)^i u_i`.
    pub fn closure_sum(&self) -> Rat2 {
        self.u.iter().enumerate().fold(
            Rat2::zero(),
            |acc, (j, u)| if j % 2 == 0 { acc - u } else { acc + u },
        )
    }

    pub fn check(&self) -> Result<(), FamilyError> {
        if self.m() < 3 || self.m().is_multiple_of(2) {
            return Err(FamilyError::UnsupportedMidpointCount(self.m()));
        }
        let s = self.closure_sum();
        if !s.is_zero() {
            return Err(FamilyError::ClosureViolated(s));
        }
        Ok(())
    }

    /// Orientation of the midpoint polygon: `1` counterclockwise, `-1` clockwise.
    pub fn orientation(&self) -> i8 {
        let n = 2 * self.m();
        let s: Rat = (0..n).map(|i| self.at(i).cross(&self.at(i + 1))).sum();
        if s.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Vertices as `sigma_j * f + c_j`, listed from the free vertex `f`
    /// (the end of edge `anchor`) onwards.
    fn affine_vertices(&self, anchor: usize) -> Vec<(i8, Rat2)> {
        let n = 2 * self.m();
        let mut out = Vec::with_capacity(n + 1);
        let (mut s, mut c) = (1i8, Rat2::zero());
        out.push((s, c.clone()));
        for j in 0..n {
            c = self.at(anchor + 1 + j).double() - c;
            s = -s;
            out.push((s, c.clone()));
        }
        out
    }

    /// `(midpoint, edge vector)` of every edge when the free vertex is `f`;
    /// defined on the closure of the freedom region as well.
    pub fn edges_at(&self, anchor: usize, f: &Rat2) -> Vec<(Rat2, Rat2)> {
        let n = 2 * self.m();
        let w: Vec<Rat2> = self
            .affine_vertices(anchor % n)
            .into_iter()
            .map(|(s, c)| if s > 0 { f + &c } else { c - f })
            .collect();
        (0..n)
            .map(|j| (self.at(anchor + 1 + j), &w[j + 1] - &w[j]))
            .collect()
    }

    /// Convexity constraints `cross(e_{j-1}, e_j)` at every vertex, as
    /// affine functions of the free vertex (the quadratic part cancels).
    fn turn_forms(&self, anchor: usize) -> Vec<HalfPlane> {
        let w = self.affine_vertices(anchor);
        let n = 2 * self.m();
        let edge = |j: usize| {
            let (s0, c0) = &w[j % n];
            let (s1, c1) = &w[j % n + 1];
            (int((*s1 - *s0) as i64), c1 - c0)
        };
        let sign = int(self.orientation() as i64);
        (0..n)
            .map(|j| {
                let (al, a) = edge(j + n - 1);
                let (be, b) = edge(j);
                let v = b.scale(&al) - a.scale(&be);
                HalfPlane {
                    a: &v.y * &sign,
                    b: -&v.x * &sign,
                    c: a.cross(&b) * &sign,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreedomRegion {
    pub anchor: usize,
    pub orientation: i8,
    pub half_planes: Vec<HalfPlane>,
    /// Closure vertices, counterclockwise from the least vertex; empty when
    /// the open region is empty.
    pub vertices: Vec<Rat2>,
}

const REGION_BOX: i64 = 1 << 24;

impl FreedomRegion {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, f: &Rat2) -> bool {
        self.half_planes.iter().all(|h| h.contains(f))
    }

    pub fn interior_point(&self) -> Option<Rat2> {
        if self.is_empty() {
            return None;
        }
        let n = self.vertices.len() as i64;
        let s = self.vertices.iter().fold(Rat2::zero(), |a, v| a + v);
        let p = s.scale(&rat(1, n));
        debug_assert!(inside_open(&self.vertices, &p));
        Some(p)
    }

    pub fn is_bounded(&self) -> bool {
        let b = int(REGION_BOX);
        self.vertices.iter().all(|v| v.x.abs() < b && v.y.abs() < b)
    }

    pub fn same_vertices(&self, other: &[Rat2]) -> bool {
        let mut a = self.vertices.clone();
        let mut b = other.to_vec();
        a.sort();
        b.sort();
        a == b
    }
}

/// Open set of free-vertex positions (free vertex = end of edge `anchor`)
/// that yield a strictly convex polygon with the given midpoints.
pub fn freedom_region(spec: &MidpointSpec, anchor: usize) -> Result<FreedomRegion, FamilyError> {
    spec.check()?;
    let half_planes = spec.turn_forms(anchor % (2 * spec.m()));
    let vertices = canonical_rotation(&intersect_half_planes(&half_planes, REGION_BOX));
    Ok(FreedomRegion {
        anchor,
        orientation: spec.orientation(),
        half_planes,
        vertices,
    })
}

/// Regions for all `m` symmetry-distinct anchors.
pub fn freedom_regions(spec: &MidpointSpec) -> Result<Vec<FreedomRegion>, FamilyError> {
    (0..spec.m()).map(|a| freedom_region(spec, a)).collect()
}

/// Places the free vertex at the end of edge `anchor` and propagates
/// `v_{i+1} = 2u_i - v_i` around the polygon.
pub fn decagon_from_midpoints(
    spec: &MidpointSpec,
    free_vertex: &Rat2,
    anchor: usize,
) -> Result<CSPolygon, FamilyError> {
    spec.check()?;
    let n = 2 * spec.m();
    let anchor = anchor % n;
    let sign = int(spec.orientation() as i64);
    let w: Vec<Rat2> = spec
        .affine_vertices(anchor)
        .into_iter()
        .map(|(s, c)| {
            if s > 0 {
                free_vertex + &c
            } else {
                c - free_vertex
            }
        })
        .collect();
    if w[n] != w[0] || w[spec.m()] != -&w[0] {
        return Err(FamilyError::ClosureViolated(spec.closure_sum()));
    }
    let mut on_boundary = false;
    for j in 0..n {
        let t = (&w[j] - &w[(j + n - 1) % n]).cross(&(&w[j + 1] - &w[j])) * &sign;
        if t.is_negative() {
            return Err(FamilyError::NotStrictlyConvex {
                on_boundary: false,
                free_vertex: free_vertex.clone(),
            });
        }
        on_boundary |= t.is_zero();
    }
    if on_boundary {
        return Err(FamilyError::NotStrictlyConvex {
            on_boundary: true,
            free_vertex: free_vertex.clone(),
        });
    }
    let poly = CSPolygon::from_points(&w[..n]).map_err(|_| FamilyError::NotStrictlyConvex {
        on_boundary: false,
        free_vertex: free_vertex.clone(),
    })?;
    let mut got = poly.midpoints();
    let mut want: Vec<Rat2> = (0..n).map(|i| spec.at(i)).collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(FamilyError::NotStrictlyConvex {
            on_boundary: false,
            free_vertex: free_vertex.clone(),
        });
    }
    Ok(poly)
}

/// Free vertices of the polygon that realise the spec at `anchor`: every
/// vertex of the polygon is a candidate, keep those reproducing it.
pub fn free_vertex_of(poly: &CSPolygon, spec: &MidpointSpec, anchor: usize) -> Option<Rat2> {
    poly.vertices()
        .iter()
        .find(|v| decagon_from_midpoints(spec, v, anchor).as_ref() == Ok(poly))
        .cloned()
}
