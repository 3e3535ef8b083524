use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::audit::AuditRecord;
use super::tuples::{is_strictly_convex_cw, twice_area, Tuple};
use crate::exact_geom::{canonical_form, CSPolygon, Lattice, Rat, Rat2};
use crate::families::{
    decagon_from_midpoints, family_midpoints, freedom_regions, DecagonFamily, FreedomRegion,
    MidpointSpec,
};
use crate::tiling_core::verify_kfold;

type P = (i64, i64);

/// Bound on the x-coordinates of `u'_2..u'_5` when `u'_1 = (0, g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum XBound {
    /// `2 g x <= area`: the decagon contains the quadrilateral on
    /// `±u'_1, ±u'_j`.
    AreaOnly,
    /// `2 g x + 3 <= area`: the six remaining vertices lie in caps over the
    /// quadrilateral's sides, each cap a lattice polygon of area at least
    /// half its number of extra vertices.
    PickRefined,
}

impl XBound {
    pub fn x_max(self, area_max: i64, g: i64) -> i64 {
        match self {
            XBound::AreaOnly => area_max / (2 * g),
            XBound::PickRefined => (area_max - 3).max(0) / (2 * g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Q10Config {
    pub k_filter: u64,
    /// Largest admissible area of the doubled-midpoint decagon, `4k - 1`.
    pub area_max: i64,
    pub x_bound: XBound,
    pub samples: usize,
    pub seed: u64,
}

impl Q10Config {
    pub fn new(k_filter: u64, x_bound: XBound) -> Self {
        Q10Config {
            k_filter,
            area_max: 4 * k_filter as i64 - 1,
            x_bound,
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q10Candidate {
    /// `u'_1 = (0, g)`.
    pub g: i64,
    pub half: [P; 5],
    /// `(p1, q1, p2, q2)`, with `u'_3 - u'_4 = (p1, q1)` and `u'_5 - u'_6 = (p2, q2)`.
    pub deltas: Tuple,
    /// Slopes of `u'_{i+1} - u'_i`, `i = 1..5`, as exact strings (`inf` for vertical).
    pub slopes: Vec<String>,
    pub area: i64,
}

impl Q10Candidate {
    pub fn from_half(g: i64, half: [P; 5]) -> Self {
        let [_, _, u3, u4, u5] = half;
        let u6 = (0, -g);
        let mut pts = half.to_vec();
        pts.push(u6);
        let slopes = (0..5)
            .map(|i| {
                let (dx, dy) = (pts[i + 1].0 - pts[i].0, pts[i + 1].1 - pts[i].1);
                if dx == 0 {
                    "inf".to_string()
                } else {
                    Rat::new(dy.into(), dx.into()).to_string()
                }
            })
            .collect();
        Q10Candidate {
            g,
            half,
            deltas: (u3.0 - u4.0, u3.1 - u4.1, u5.0 - u6.0, u5.1 - u6.1),
            slopes,
            area: twice_area(&half) / 2,
        }
    }

    pub fn polygon(&self) -> CSPolygon {
        CSPolygon::from_half_cycle(&self.half.map(|(x, y)| Rat2::ints(x, y)))
            .expect("candidate is strictly convex")
    }

    pub fn midpoint_spec(&self) -> MidpointSpec {
        MidpointSpec {
            u: self
                .half
                .iter()
                .map(|&(x, y)| Rat2::q(x, 2, y, 2))
                .collect(),
        }
    }

    pub fn branch(&self) -> &'static str {
        if self.g == 1 {
            "primitive"
        } else if self.g.is_odd() {
            "odd multiple"
        } else {
            "even multiple"
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Q10Class {
    pub representative: Q10Candidate,
    /// Canonical half-cycle under GL2(Z).
    pub canonical: Vec<[String; 2]>,
    /// Normalized candidates falling in this class.
    pub members: usize,
    /// Members whose first edge `u'_2 - u'_1` is horizontal.
    pub flat_members: usize,
    /// Anchors (0-based) with a nonempty freedom region.
    pub nonempty_anchors: Vec<usize>,
    pub anchor: usize,
    pub free_vertex: Option<Rat2>,
    /// Multiplicity certified for the instantiated decagon.
    pub k: Option<u64>,
    pub labels: Vec<String>,
    /// `(rise, run)` of `u'_3 - u'_2` over all primitive normalizations.
    pub step_labels: Vec<(i64, i64)>,
    /// Primitive doubled midpoints `u'` whose edge turns horizontal, for some
    /// free vertex in the open region, once `u'` is mapped to `(0, 1)`.
    pub horizontal_edge_midpoints: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Q10Counts {
    pub closed_convex: u64,
    pub area_pruned: u64,
    pub within_area: u64,
    /// Candidates within the area bound whose first edge is horizontal.
    pub flat_first_edge: u64,
    pub by_branch: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Q10Run {
    pub config: Q10Config,
    pub counts: Q10Counts,
    /// All classes within the area bound, any multiplicity.
    pub classes: Vec<Q10Class>,
    #[serde(skip)]
    pub audit: Vec<AuditRecord>,
}

impl Q10Run {
    pub fn matching(&self) -> Vec<&Q10Class> {
        self.classes
            .iter()
            .filter(|c| c.k == Some(self.config.k_filter))
            .collect()
    }
}

fn cross(a: P, b: P) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

/// Strictly between the line through `u'_1, u'_2` and its reflection.
fn in_strip(g: i64, u2: P, p: P) -> bool {
    let lhs = p.1 * u2.0;
    let mid = (u2.1 - g) * p.0;
    -g * u2.0 + mid < lhs && lhs < g * u2.0 + mid
}

fn strip_range(g: i64, u2: P, x: i64) -> std::ops::RangeInclusive<i64> {
    let mid = (u2.1 - g) * x;
    Integer::div_floor(&(mid - g * u2.0), &u2.0)..=Integer::div_floor(&(mid + g * u2.0), &u2.0) + 1
}

/// Closed strictly convex clockwise decagons with `u'_1 = (0, g)`, the first
/// edge sheared to slope in `[0, 1)`, and x-coordinates within the bound.
fn sweep_branch(g: i64, x_max: i64, area_max: i64) -> (Vec<[P; 5]>, u64, u64) {
    let u1 = (0, g);
    let per_x2: Vec<(Vec<[P; 5]>, u64, u64)> = (1..=x_max)
        .into_par_iter()
        .map(|x2| {
            let mut found = Vec::new();
            let (mut closed, mut pruned) = (0u64, 0u64);
            for y2 in g..g + x2 {
                let u2 = (x2, y2);
                let e1 = sub(u2, u1);
                for x3 in 1..=x_max {
                    for y3 in strip_range(g, u2, x3) {
                        let u3 = (x3, y3);
                        if !in_strip(g, u2, u3) || cross(e1, sub(u3, u2)) >= 0 {
                            continue;
                        }
                        let e2 = sub(u3, u2);
                        for x4 in 1..=x_max {
                            for y4 in strip_range(g, u2, x4) {
                                let u4 = (x4, y4);
                                if !in_strip(g, u2, u4) || cross(e2, sub(u4, u3)) >= 0 {
                                    continue;
                                }
                                let u5 = (x4 - x3 + x2, y4 - y3 + y2 - g);
                                if u5.0 < 1 || u5.0 > x_max || !in_strip(g, u2, u5) {
                                    continue;
                                }
                                let half = [u1, u2, u3, u4, u5];
                                if !is_strictly_convex_cw(&half) {
                                    continue;
                                }
                                closed += 1;
                                if twice_area(&half) > 2 * area_max {
                                    pruned += 1;
                                    continue;
                                }
                                found.push(half);
                            }
                        }
                    }
                }
            }
            (found, closed, pruned)
        })
        .collect();
    let mut all = Vec::new();
    let (mut c, mut p) = (0, 0);
    for (f, cc, pp) in per_x2 {
        all.extend(f);
        c += cc;
        p += pp;
    }
    (all, c, p)
}

fn known_classes() -> Vec<(String, CSPolygon)> {
    DecagonFamily::ALL
        .iter()
        .map(|f| {
            let q = CSPolygon::from_half_cycle(
                &family_midpoints(*f)
                    .u
                    .iter()
                    .map(Rat2::double)
                    .collect::<Vec<_>>(),
            )
            .expect("doubled midpoints form a convex decagon");
            (
                f.cli_name().to_string(),
                canonical_form(&q).expect("integral"),
            )
        })
        .collect()
}

/// `(rise, run)` of `u'_3 - u'_2` over every normalization putting a primitive
/// vertex at `(0, 1)`, listing clockwise, with first-edge slope in `[0, 1)`
/// and `u'_3` of largest x-coordinate.
pub fn step_labels(q: &CSPolygon) -> Vec<(i64, i64)> {
    let v: Vec<P> = q
        .vertices()
        .iter()
        .map(|p| {
            (
                p.x.to_integer().try_into().unwrap(),
                p.y.to_integer().try_into().unwrap(),
            )
        })
        .collect();
    let n = v.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = v[i];
        let eg = a.extended_gcd(&b);
        if eg.gcd != 1 {
            continue;
        }
        // Rows map v_i to (0, 1): [[b, -a], [x, y]] with x*a + y*b = 1.
        let base = [[b, -a], [eg.x, eg.y]];
        for dir in [n - 1, 1] {
            let at = |j: usize| v[(i + j * dir) % n];
            let apply = |m: &[[i64; 2]; 2], p: P| {
                (m[0][0] * p.0 + m[0][1] * p.1, m[1][0] * p.0 + m[1][1] * p.1)
            };
            let mut m = base;
            if apply(&m, at(1)).0 < 0 {
                m[0] = [-m[0][0], -m[0][1]];
            }
            let w = apply(&m, at(1));
            // Shear y += s x so that 0 <= w.1 - 1 < w.0.
            let s = -Integer::div_floor(&(w.1 - 1), &w.0);
            m[1] = [m[1][0] + s * m[0][0], m[1][1] + s * m[0][1]];
            let u: Vec<P> = (0..5).map(|j| apply(&m, at(j))).collect();
            if !is_strictly_convex_cw(&u) || u.iter().any(|p| p.0 > u[2].0) {
                continue;
            }
            out.push((u[2].1 - u[1].1, u[2].0 - u[1].0));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Edges whose direction can be made parallel to a lattice vector `w` with
/// `det(w, u') = 1`, i.e. horizontal in a frame sending `u'` to `(0, 1)`.
pub fn horizontal_edge_midpoints(spec: &MidpointSpec, region: &FreedomRegion) -> Vec<Rat2> {
    let mut out = Vec::new();
    if region.is_empty() {
        return out;
    }
    let per_vertex: Vec<Vec<(Rat2, Rat2)>> = region
        .vertices
        .iter()
        .map(|f| spec.edges_at(region.anchor, f))
        .collect();
    for j in 0..per_vertex[0].len() {
        let u2 = per_vertex[0][j].0.double();
        let (Some(a), Some(b)) = (u2.x.to_integer().to_i64(), u2.y.to_integer().to_i64()) else {
            continue;
        };
        if !u2.is_integral() || a.gcd(&b) != 1 {
            continue;
        }
        let eg = b.extended_gcd(&-a);
        let w0 = Rat2::ints(eg.x, eg.y);
        let mut ts = Vec::new();
        let mut unbounded = false;
        for edges in &per_vertex {
            let d = &edges[j].1;
            let den = d.cross(&u2);
            if den.is_zero() {
                unbounded = true;
                break;
            }
            ts.push((-d.cross(&w0) / &den, den.is_positive()));
        }
        unbounded |= ts.iter().any(|t| t.1 != ts[0].1);
        let hit = unbounded || {
            let lo = ts.iter().map(|t| &t.0).min().expect("nonempty");
            let hi = ts.iter().map(|t| &t.0).max().expect("nonempty");
            if lo == hi {
                lo.is_integer()
            } else {
                lo.floor() + Rat::one() < *hi
            }
        };
        if hit && !out.contains(&u2) && !out.contains(&-&u2) {
            out.push(u2);
        }
    }
    out
}

/// Complete sweep of doubled-midpoint decagons within the area bound.
pub fn run_q10(cfg: &Q10Config) -> Q10Run {
    let mut counts = Q10Counts::default();
    let mut audit = Vec::new();
    let mut classes: BTreeMap<CSPolygon, (Q10Candidate, usize, usize)> = BTreeMap::new();
    let mut g = 1;
    loop {
        let x_max = cfg.x_bound.x_max(cfg.area_max, g);
        if x_max < 1 {
            break;
        }
        let (found, closed, pruned) = sweep_branch(g, x_max, cfg.area_max);
        counts.closed_convex += closed;
        counts.area_pruned += pruned;
        counts.within_area += found.len() as u64;
        for half in found {
            let cand = Q10Candidate::from_half(g, half);
            *counts
                .by_branch
                .entry(cand.branch().to_string())
                .or_default() += 1;
            let flat = half[1].1 == g;
            counts.flat_first_edge += flat as u64;
            let key = canonical_form(&cand.polygon()).expect("integral");
            let entry = classes.entry(key).or_insert((cand, 0, 0));
            entry.1 += 1;
            entry.2 += flat as usize;
        }
        if pruned > 0 {
            audit.push(AuditRecord::new(
                json!({ "branch_g": g }),
                "area",
                format!("{pruned} closed convex candidates exceed the area bound"),
                json!({ "area_max": cfg.area_max, "x_max": x_max, "count": pruned }),
            ));
        }
        g += 1;
    }
    let known = known_classes();
    let mut out = Vec::new();
    for (canon, (rep, members, flat_members)) in classes {
        let spec = rep.midpoint_spec();
        let regions = freedom_regions(&spec).expect("closure holds by construction");
        let nonempty: Vec<usize> = regions
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.anchor)
            .collect();
        let labels: Vec<String> = known
            .iter()
            .filter(|(_, c)| *c == canon)
            .map(|(n, _)| n.clone())
            .collect();
        let canonical = canon.vertices()[..5].iter().map(Rat2::strings).collect();
        let mut class = Q10Class {
            representative: rep.clone(),
            canonical,
            members,
            flat_members,
            nonempty_anchors: nonempty.clone(),
            anchor: 0,
            free_vertex: None,
            k: None,
            labels,
            step_labels: step_labels(&canon),
            horizontal_edge_midpoints: Vec::new(),
        };
        let Some(&anchor) = nonempty.first() else {
            audit.push(AuditRecord::new(
                json!(rep),
                "freedom_region",
                "no free-vertex position gives a convex decagon",
                json!({ "area": rep.area }),
            ));
            out.push(class);
            continue;
        };
        class.horizontal_edge_midpoints = horizontal_edge_midpoints(&spec, &regions[anchor])
            .iter()
            .map(Rat2::strings)
            .collect();
        let f = regions[anchor].interior_point().expect("nonempty");
        let poly = decagon_from_midpoints(&spec, &f, anchor).expect("interior point is admissible");
        let area = poly.area();
        class.anchor = anchor;
        class.free_vertex = Some(f);
        if area.is_integer() {
            let k: u64 = area.to_integer().try_into().expect("small area");
            match verify_kfold(&poly, &Lattice::integer(), k, cfg.samples, cfg.seed) {
                Ok(_) => class.k = Some(k),
                Err(e) => audit.push(AuditRecord::new(
                    json!(rep),
                    "verify",
                    e.to_string(),
                    json!({ "k": k }),
                )),
            }
        }
        if class.k != Some(cfg.k_filter) {
            audit.push(AuditRecord::new(
                json!(rep),
                "multiplicity",
                format!("decagon area {area} differs from the requested multiplicity"),
                json!({ "area": area.to_string(), "k_filter": cfg.k_filter }),
            ));
        }
        out.push(class);
    }
    Q10Run {
        config: cfg.clone(),
        counts,
        classes: out,
        audit,
    }
}

/// Classes whose decagons tile with multiplicity `k_filter`.
pub fn enumerate_q10(k_filter: u64) -> Vec<Q10Class> {
    let run = run_q10(&Q10Config::new(k_filter, XBound::AreaOnly));
    run.matching().into_iter().cloned().collect()
}
