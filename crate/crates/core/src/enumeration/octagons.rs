use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;

use super::audit::AuditRecord;
use crate::exact_geom::json::ser_rat;
use crate::exact_geom::{canonical_form_rational, int, rat, CSPolygon, Lattice, Rat, Rat2};
use crate::families::{AffineVertex, OctagonVariant, ParametricFamily};
use crate::tiling_core::{bolle_check, verify_kfold};

/// How an edge of the half-cycle after the bottom edge meets the edge
/// conditions: midpoint in the half-lattice, or lattice edge vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    #[serde(rename = "M")]
    Midpoint,
    #[serde(rename = "L")]
    LatticeVector,
}

/// `c + s * x` in the free coordinate `x = x_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lin {
    c: Rat,
    s: Rat,
}

impl Lin {
    fn at(&self, x: &Rat) -> Rat {
        &self.c + &self.s * x
    }
}

/// Octagon with bottom edge `(kappa, 0)` at height `-height/2`, vertices
/// `v_1 = (x, -height/2)`, `v_2 = v_1 + (kappa, 0)`, and
/// `v_3, v_4` at x-coordinates `signs[i] * x + offsets[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OctagonSkeleton {
    pub kappa: i64,
    pub height: i64,
    /// Rises of the edges `v_2 v_3`, `v_3 v_4`, `v_4 v_5`.
    pub increments: [i64; 3],
    pub kinds: [EdgeKind; 3],
    pub signs: [i64; 2],
    pub offsets: [i64; 2],
}

impl OctagonSkeleton {
    fn ys(&self) -> [Rat; 4] {
        let y1 = rat(-self.height, 2);
        let y3 = &y1 + int(self.increments[0]);
        let y4 = &y3 + int(self.increments[1]);
        [y1.clone(), y1, y3, y4]
    }

    fn xs(&self) -> [Lin; 4] {
        [
            Lin {
                c: Rat::zero(),
                s: Rat::one(),
            },
            Lin {
                c: int(self.kappa),
                s: Rat::one(),
            },
            Lin {
                c: int(self.offsets[0]),
                s: int(self.signs[0]),
            },
            Lin {
                c: int(self.offsets[1]),
                s: int(self.signs[1]),
            },
        ]
    }

    /// Half-cycle `v_1..v_4` as affine functions of `x_1`.
    pub fn vertices(&self) -> Vec<AffineVertex> {
        self.xs()
            .into_iter()
            .zip(self.ys())
            .map(|(x, y)| AffineVertex {
                base: Rat2::new(x.c, y),
                slope: Rat2::new(x.s, Rat::zero()),
            })
            .collect()
    }

    /// All eight vertices, as (x affine, y constant).
    fn full(&self) -> Vec<(Lin, Rat)> {
        let half: Vec<(Lin, Rat)> = self.xs().into_iter().zip(self.ys()).collect();
        let neg = half.iter().map(|(x, y)| (Lin { c: -&x.c, s: -&x.s }, -y));
        half.clone().into_iter().chain(neg).collect()
    }

    /// Turns at `v_2, v_3, v_4, v_5`; the other four repeat them.
    fn turns(&self) -> Vec<Lin> {
        let v = self.full();
        let edge = |i: usize| {
            let (a, b) = (&v[i % 8], &v[(i + 1) % 8]);
            (
                Lin {
                    c: &b.0.c - &a.0.c,
                    s: &b.0.s - &a.0.s,
                },
                &b.1 - &a.1,
            )
        };
        (0..4)
            .map(|i| {
                let (e, f) = (edge(i), edge(i + 1));
                Lin {
                    c: &e.0.c * &f.1 - &e.1 * &f.0.c,
                    s: &e.0.s * &f.1 - &e.1 * &f.0.s,
                }
            })
            .collect()
    }

    fn area(&self) -> Lin {
        let v = self.full();
        let (mut c, mut s) = (Rat::zero(), Rat::zero());
        for i in 0..8 {
            let (a, b) = (&v[i], &v[(i + 1) % 8]);
            c += &a.0.c * &b.1 - &a.1 * &b.0.c;
            s += &a.0.s * &b.1 - &a.1 * &b.0.s;
        }
        Lin {
            c: c / int(2),
            s: s / int(2),
        }
    }

    /// Whether the edge conditions hold for every `x_1`.
    pub fn is_continuous(&self) -> bool {
        self.kinds.iter().all(|k| *k == EdgeKind::Midpoint) && self.signs[1] == 1
    }

    /// Window of `x_1` values met by one member of every shear orbit.
    pub fn window(&self) -> (Rat, Rat) {
        shear_window(self.kappa, self.height)
    }

    /// Every admissible `x_1` of a discrete skeleton lies on this grid.
    pub fn grid_denominator(&self) -> i64 {
        2 * self.increments.iter().fold(1, |a, h| a.lcm(h))
    }

    pub fn polygon(&self, x: &Rat) -> Option<CSPolygon> {
        let pts: Vec<Rat2> = self.vertices().iter().map(|v| v.at(x)).collect();
        CSPolygon::from_half_cycle(&pts).ok()
    }
}

fn shear_window(kappa: i64, height: i64) -> (Rat, Rat) {
    let centre = rat(-kappa, 2);
    let half = rat(height, 4);
    (&centre - &half, centre + half)
}

/// Open interval where all forms are positive, or `None`.
fn open_interval(forms: &[Lin]) -> Option<(Option<Rat>, Option<Rat>)> {
    let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
    for f in forms {
        if f.s.is_zero() {
            if !f.c.is_positive() {
                return None;
            }
            continue;
        }
        let root = -&f.c / &f.s;
        if f.s.is_positive() {
            lo = Some(lo.map_or(root.clone(), |l| l.max(root)));
        } else {
            hi = Some(hi.map_or(root.clone(), |h| h.min(root)));
        }
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l >= h => None,
        _ => Some((lo, hi)),
    }
}

/// Points where all forms are nonnegative but some vanish, when no point
/// makes all of them positive.
fn collapsed_point(forms: &[Lin]) -> Option<Rat> {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for f in forms {
        if f.s.is_zero() {
            if f.c.is_negative() {
                return None;
            }
            continue;
        }
        let root = -&f.c / &f.s;
        if f.s.is_positive() {
            lo = Some(lo.map_or(root.clone(), |l| l.max(root)));
        } else {
            hi = Some(hi.map_or(root.clone(), |h| h.min(root)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l == h => Some(l),
        _ => None,
    }
}

fn vanishing(turns: &[Lin], x: &Rat) -> usize {
    2 * turns.iter().filter(|t| t.at(x).is_zero()).count()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OctagonCounts {
    pub skeletons: u64,
    pub convex: u64,
    pub in_window: u64,
    pub area_rejected: u64,
    pub raw_families: u64,
    pub candidates: u64,
    pub edge_rejected: u64,
    pub isolated_tiles: u64,
    pub degenerations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OctagonFamilyReport {
    pub family: ParametricFamily,
    pub skeleton: OctagonSkeleton,
    #[serde(serialize_with = "ser_rat")]
    pub skeleton_lo: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub skeleton_hi: Rat,
    /// Skeletons found describing the same family.
    pub raw_count: usize,
    pub label: Option<String>,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedTile {
    pub skeleton: OctagonSkeleton,
    #[serde(serialize_with = "ser_rat")]
    pub x1: Rat,
    pub vertices: Vec<[String; 2]>,
    pub k: u64,
    /// Family containing the tile, by matching its all-midpoint skeleton.
    pub member_of: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OctagonRun {
    pub k_filter: u64,
    /// How each finite range of the search was obtained.
    pub bounds: Vec<String>,
    pub max_offset: i64,
    pub counts: OctagonCounts,
    pub families: Vec<OctagonFamilyReport>,
    pub isolated: Vec<IsolatedTile>,
    #[serde(skip)]
    pub audit: Vec<AuditRecord>,
}

fn compositions3(h: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in 1..h {
        for b in 1..h - a {
            out.push([a, b, h - a - b]);
        }
    }
    out
}

fn signs_for(kinds: [EdgeKind; 3]) -> [i64; 2] {
    let flip = |s: i64, k: EdgeKind| if k == EdgeKind::Midpoint { -s } else { s };
    let s3 = flip(1, kinds[0]);
    [s3, flip(s3, kinds[1])]
}

/// Integer offsets `c` with `s*x + c` strictly right of the chord `v_2 v_5`
/// and at most `dmax` beyond it, for some `x` in the window.
fn offset_range(kappa: i64, height: i64, rise: i64, sign: i64, dmax: &Rat) -> (i64, i64) {
    let (w0, w1) = shear_window(kappa, height);
    // Chord x at height y_1 + rise: x + kappa - rise * (2x + kappa) / height.
    let t = rat(rise, height);
    let chord = |x: &Rat| x + int(kappa) - &t * (x * int(2) + int(kappa));
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for x in [&w0, &w1] {
        let base = chord(x) - int(sign) * x;
        let top = &base + dmax;
        lo = Some(lo.map_or(base.clone(), |l: Rat| l.min(base)));
        hi = Some(hi.map_or(top.clone(), |h: Rat| h.max(top)));
    }
    let lo = lo.expect("two endpoints").floor().to_integer();
    let hi = hi.expect("two endpoints").ceil().to_integer();
    (lo.try_into().expect("small"), hi.try_into().expect("small"))
}

fn known_families() -> Vec<(OctagonVariant, Rat, CSPolygon)> {
    OctagonVariant::ALL
        .into_iter()
        .filter(|v| v.is_tile_family())
        .map(|v| {
            let f = v.family();
            let p = f
                .instantiate(&f.midpoint_parameter())
                .expect("midpoint lies in the interval");
            (v, &f.hi - &f.lo, canonical_form_rational(&p))
        })
        .collect()
}

/// Parametric search over octagon skeletons for `k`-fold tiles of the
/// integer lattice with a lattice-vector bottom edge.
pub fn run_octagons(k_filter: u64, samples: usize, seed: u64) -> OctagonRun {
    let k = k_filter as i64;
    let kr = int(k);
    let lattice = Lattice::integer();
    let mut counts = OctagonCounts::default();
    let mut audit = Vec::new();
    let mut raw: Vec<(OctagonSkeleton, Rat, Rat)> = Vec::new();
    let mut isolated = Vec::new();
    let mut max_offset = 0i64;
    let bounds = vec![
        "the octagon strictly contains the parallelogram on its bottom and top edges, so kappa*H < k".to_string(),
        "each of the three edges between them rises by a positive integer, so H >= 3".to_string(),
        "a shear fixing the bottom edge moves x_1 by H/2, so x_1 is taken in [-kappa/2 - H/4, -kappa/2 + H/4)".to_string(),
        "the caps beyond the chord v_2 v_5 have area at most k - kappa*H, so v_3 and v_4 lie within (k - kappa*H)/H of it horizontally".to_string(),
        "edge conditions make x-offsets integers; a lattice-vector edge of rise h needs a half-lattice point inside it, putting x_1 on the grid Z/(2h)".to_string(),
    ];

    let mut kappa = 1;
    while 3 * kappa < k {
        let mut height = 3;
        while kappa * height < k {
            let dmax = rat(k - kappa * height, height);
            let (w0, w1) = shear_window(kappa, height);
            for inc in compositions3(height) {
                for kinds in edge_kind_patterns() {
                    let signs = signs_for(kinds);
                    let r3 = offset_range(kappa, height, inc[0], signs[0], &dmax);
                    let r4 = offset_range(kappa, height, inc[0] + inc[1], signs[1], &dmax);
                    for c3 in r3.0..=r3.1 {
                        for c4 in r4.0..=r4.1 {
                            counts.skeletons += 1;
                            let sk = OctagonSkeleton {
                                kappa,
                                height,
                                increments: inc,
                                kinds,
                                signs,
                                offsets: [c3, c4],
                            };
                            let turns = sk.turns();
                            let Some((lo, hi)) = open_interval(&turns) else {
                                if let Some(x) = collapsed_point(&turns) {
                                    if w0 <= x && x < w1 {
                                        counts.degenerations += 1;
                                        audit.push(degeneration_record(&sk, &x, &turns));
                                    }
                                }
                                continue;
                            };
                            counts.convex += 1;
                            let lo = lo.map_or(w0.clone(), |l| l.max(w0.clone()));
                            let hi_w = hi.clone().map_or(w1.clone(), |h| h.min(w1.clone()));
                            if lo >= hi_w {
                                continue;
                            }
                            counts.in_window += 1;
                            max_offset = max_offset.max(c3.abs()).max(c4.abs());
                            let area = sk.area();
                            let mut xs: Vec<Rat> = Vec::new();
                            if area.s.is_zero() {
                                if area.c != kr {
                                    counts.area_rejected += 1;
                                    continue;
                                }
                                if sk.is_continuous() {
                                    let (flo, fhi) = open_interval(&turns).expect("checked above");
                                    let (flo, fhi) = (flo.expect("bounded"), fhi.expect("bounded"));
                                    counts.raw_families += 1;
                                    for end in [&flo, &fhi] {
                                        counts.degenerations += 1;
                                        audit.push(degeneration_record(&sk, end, &turns));
                                    }
                                    raw.push((sk, flo, fhi));
                                    continue;
                                }
                                let d = sk.grid_denominator();
                                let mut j = (&lo * int(d)).floor().to_integer();
                                loop {
                                    let x = Rat::new(j.clone(), d.into());
                                    if x >= hi_w {
                                        break;
                                    }
                                    if x > lo || open_contains(&turns, &x) {
                                        xs.push(x);
                                    }
                                    j += 1;
                                }
                            } else {
                                let x = (&kr - &area.c) / &area.s;
                                let inside =
                                    (x > lo || (x == lo && open_contains(&turns, &x))) && x < hi_w;
                                if !inside {
                                    counts.area_rejected += 1;
                                    continue;
                                }
                                xs.push(x);
                            }
                            for x in xs {
                                counts.candidates += 1;
                                let poly = sk.polygon(&x).expect("turns are positive");
                                match bolle_check(&poly, &lattice) {
                                    Ok(c) if c.k == k_filter => {
                                        let verified =
                                            verify_kfold(&poly, &lattice, k_filter, samples, seed)
                                                .is_ok();
                                        if verified {
                                            counts.isolated_tiles += 1;
                                            isolated.push(IsolatedTile {
                                                skeleton: sk.clone(),
                                                x1: x,
                                                vertices: poly
                                                    .vertices()
                                                    .iter()
                                                    .map(Rat2::strings)
                                                    .collect(),
                                                k: k_filter,
                                                member_of: None,
                                            });
                                        }
                                    }
                                    Ok(c) => {
                                        counts.area_rejected += 1;
                                        audit.push(AuditRecord::new(
                                            json!({ "skeleton": sk, "x1": x.to_string() }),
                                            "multiplicity",
                                            format!(
                                                "certified multiplicity {} differs from {k_filter}",
                                                c.k
                                            ),
                                            json!({ "k": c.k }),
                                        ));
                                    }
                                    Err(e) => {
                                        counts.edge_rejected += 1;
                                        audit.push(AuditRecord::new(
                                            json!({ "skeleton": sk, "x1": x.to_string() }),
                                            "edge_conditions",
                                            e.to_string(),
                                            json!({ "area": poly.area().to_string() }),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            height += 1;
        }
        kappa += 1;
    }

    // Deduplicate families and label them.
    let known = known_families();
    let mut classes: BTreeMap<(CSPolygon, Rat), Vec<(OctagonSkeleton, Rat, Rat)>> = BTreeMap::new();
    for (sk, lo, hi) in &raw {
        let mid = (lo + hi) * rat(1, 2);
        let p = sk.polygon(&mid).expect("interior parameter");
        classes
            .entry((canonical_form_rational(&p), hi - lo))
            .or_default()
            .push((sk.clone(), lo.clone(), hi.clone()));
    }
    let mut families = Vec::new();
    for ((canon, len), members) in &classes {
        let (sk, lo, hi) = members[0].clone();
        let variant = known
            .iter()
            .find(|(_, l, c)| l == len && c == canon)
            .map(|(v, _, _)| *v);
        let family = match variant {
            Some(v) => v.family(),
            None => ParametricFamily {
                name: format!("octagon{k_filter}-x{}", families.len()),
                symbol: "x1".into(),
                vertices: sk.vertices(),
                lo: lo.clone(),
                hi: hi.clone(),
                k: k_filter,
                lattice: Some(Lattice::integer()),
            },
        };
        let mid = family.midpoint_parameter();
        let certified = family
            .instantiate(&mid)
            .ok()
            .map(|p| verify_kfold(&p, &lattice, k_filter, samples, seed).is_ok())
            .unwrap_or(false);
        families.push(OctagonFamilyReport {
            family,
            skeleton: sk,
            skeleton_lo: lo,
            skeleton_hi: hi,
            raw_count: members.len(),
            label: variant.map(|v| v.cli_name().to_string()),
            certified,
        });
    }

    for f in &families {
        audit.push(bound_reading_record(&f.family));
    }

    for t in &mut isolated {
        t.member_of = family_membership(&t.skeleton, &t.x1, &raw, &classes, &families);
        if t.member_of.is_none() {
            audit.push(AuditRecord::new(
                json!(t),
                "none",
                "isolated tile outside every parametric family",
                json!({ "k": t.k }),
            ));
        }
    }

    OctagonRun {
        k_filter,
        bounds,
        max_offset,
        counts,
        families,
        isolated,
        audit,
    }
}

/// Lower bound `4 * 2x - 2(2x - 1)` for an octagon whose midpoints
/// `u_2, u_3` share the largest x-coordinate, evaluated with `x = x_2` and
/// with `x = x_3` on a family member. The two readings agree exactly when
/// the hypothesis `x_2 = x_3` holds.
pub fn bound_readings(family: &ParametricFamily) -> Option<(Rat, Rat, bool)> {
    let t = family.midpoint_parameter();
    family.instantiate(&t).ok()?;
    let v: Vec<Rat2> = family.points(&t);
    let u = |a: &Rat2, b: &Rat2| (a + b).half();
    let (u2, u3, u4) = (u(&v[1], &v[2]), u(&v[2], &v[3]), u(&v[3], &-&v[0]));
    let bound = |x: &Rat| int(4) * x + int(2);
    let hypothesis = u2.x == u3.x && u3.x > u4.x;
    Some((bound(&u2.x), bound(&u3.x), hypothesis))
}

fn bound_reading_record(family: &ParametricFamily) -> AuditRecord {
    let Some((with_x2, with_x3, hypothesis)) = bound_readings(family) else {
        return AuditRecord::new(
            json!({ "family": family.name }),
            "none",
            "no interior member",
            json!({}),
        );
    };
    let k = int(family.k as i64);
    let matches: Vec<&str> = [("x_2", &with_x2), ("x_3", &with_x3)]
        .into_iter()
        .filter(|(_, b)| **b == k)
        .map(|(n, _)| n)
        .collect();
    AuditRecord::new(
        json!({ "family": family.name }),
        "none",
        if !hypothesis {
            "midpoints u_2, u_3 do not share the largest x-coordinate".to_string()
        } else if matches.is_empty() {
            "neither reading of the bound 4x + 2 is attained".to_string()
        } else {
            format!(
                "bound 4x + 2 attained with x = {}",
                matches.join(" and x = ")
            )
        },
        json!({
            "bound_x2": with_x2.to_string(),
            "bound_x3": with_x3.to_string(),
            "shared_largest_x": hypothesis,
            "k": family.k,
        }),
    )
}

fn open_contains(turns: &[Lin], x: &Rat) -> bool {
    turns.iter().all(|t| t.at(x).is_positive())
}

fn degeneration_record(sk: &OctagonSkeleton, x: &Rat, turns: &[Lin]) -> AuditRecord {
    let lost = vanishing(turns, x);
    let gon = 8 - lost;
    let shape = match gon {
        4 => "parallelogram".to_string(),
        6 => "hexagon".to_string(),
        n => format!("{n}-gon"),
    };
    AuditRecord::new(
        json!({ "skeleton": sk, "x1": x.to_string() }),
        "convexity",
        format!("degenerates to a {shape}"),
        json!({ "vanishing_turns": lost, "area": sk.area().at(x).to_string() }),
    )
}

/// Matches an isolated tile to the all-midpoint skeleton through the same
/// vertices, when its midpoints all lie in the half-lattice.
fn family_membership(
    sk: &OctagonSkeleton,
    x: &Rat,
    raw: &[(OctagonSkeleton, Rat, Rat)],
    classes: &BTreeMap<(CSPolygon, Rat), Vec<(OctagonSkeleton, Rat, Rat)>>,
    families: &[OctagonFamilyReport],
) -> Option<String> {
    let verts: Vec<Rat2> = sk.vertices().iter().map(|v| v.at(x)).collect();
    let all_m = OctagonSkeleton {
        kinds: [EdgeKind::Midpoint; 3],
        signs: [-1, 1],
        offsets: [
            (&verts[2].x + x).to_integer().try_into().ok()?,
            (&verts[3].x - x).to_integer().try_into().ok()?,
        ],
        ..sk.clone()
    };
    if all_m.xs().iter().zip(&verts).any(|(l, v)| l.at(x) != v.x) {
        return None;
    }
    let (found, lo, hi) = raw.iter().find(|(s, _, _)| *s == all_m)?;
    if !(lo < x && x < hi) {
        return None;
    }
    classes
        .values()
        .position(|ms| ms.iter().any(|(s, _, _)| s == found))
        .map(|i| families[i].family.name.clone())
}

fn edge_kind_patterns() -> Vec<[EdgeKind; 3]> {
    let kinds = [EdgeKind::Midpoint, EdgeKind::LatticeVector];
    let mut out = Vec::new();
    for a in kinds {
        for b in kinds {
            for c in kinds {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Maximal parametric families of `k`-fold octagon tiles.
pub fn enumerate_octagons(k_filter: u64) -> Vec<ParametricFamily> {
    run_octagons(k_filter, 1000, 0)
        .families
        .into_iter()
        .map(|f| f.family)
        .collect()
}
