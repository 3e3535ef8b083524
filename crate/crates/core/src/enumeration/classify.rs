use num_traits::Zero;
use serde::Serialize;

use super::EnumerationError;
use crate::exact_geom::json::lattice_to_value;
use crate::exact_geom::{
    parse_rat, unimodular_equivalence, AffineMap, CSPolygon, Lattice, Rat, Rat2,
};
use crate::families::{
    family_midpoints, free_vertex_of, DecagonFamily, OctagonVariant, ParametricFamily,
};
use crate::tiling_core::find_tiling_lattice;

/// Largest multiplicity tried when searching for a lattice.
pub const MAX_K: u64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Parallelograms and centrally symmetric hexagons tile by translation.
    OneFold,
    FamilyMember,
    /// Certified for some `k <= 6`, but matches no stored family.
    CertifiedOutsideFamilies,
    /// No lattice gives a `k`-fold tiling for any `k <= 6`.
    NoLatticeUpToSix,
    /// Not searched; a published lower bound on the multiplicity applies.
    CitedLowerBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub m: usize,
    pub shape: String,
    pub verdict: Verdict,
    pub k: Option<u64>,
    pub family: Option<String>,
    /// Family parameter, or free vertex for decagon families.
    pub parameter: Option<String>,
    /// Every stored family the polygon belongs to, when several coincide.
    pub equivalent_families: Vec<String>,
    pub lattice: Option<serde_json::Value>,
    /// A consumed result this verdict rests on, not checked by this library.
    pub cited: Option<String>,
    pub verified: bool,
    pub message: String,
}

fn shape_name(m: usize) -> String {
    match m {
        2 => "parallelogram".into(),
        3 => "hexagon".into(),
        4 => "octagon".into(),
        5 => "decagon".into(),
        6 => "dodecagon".into(),
        _ => format!("{}-gon", 2 * m),
    }
}

/// Sends `l` to the integer lattice by taking coordinates in its basis.
fn to_integer_frame(p: &CSPolygon, l: &Lattice) -> CSPolygon {
    p.map_vertices(|v| {
        let (a, b) = l.coords(v);
        Rat2::new(a, b)
    })
    .expect("linear bijection preserves validity")
}

type M2 = [[Rat; 2]; 2];

fn mat_vec(m: &M2, v: &Rat2) -> Rat2 {
    Rat2::new(
        &m[0][0] * &v.x + &m[0][1] * &v.y,
        &m[1][0] * &v.x + &m[1][1] * &v.y,
    )
}

fn mat_mul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn columns(a: &Rat2, b: &Rat2) -> M2 {
    [[a.x.clone(), b.x.clone()], [a.y.clone(), b.y.clone()]]
}

fn inverse(m: &M2) -> M2 {
    let d = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    [
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ]
}

/// Parameter `t` of `fam` and a unimodular map sending `q` onto `fam(t)`.
///
/// Every equivalence maps two adjacent vertices of `q` onto two adjacent
/// vertices of `fam(t)`, which fixes the map as an affine function of `t`;
/// the remaining vertices then give linear equations for `t`.
pub fn match_parametric(q: &CSPolygon, fam: &ParametricFamily) -> Option<(Rat, AffineMap)> {
    let n = q.len();
    if 2 * fam.vertices.len() != n {
        return None;
    }
    let base: Vec<Rat2> = fam
        .vertices
        .iter()
        .map(|v| v.base.clone())
        .chain(fam.vertices.iter().map(|v| -&v.base))
        .collect();
    let slope: Vec<Rat2> = fam
        .vertices
        .iter()
        .map(|v| v.slope.clone())
        .chain(fam.vertices.iter().map(|v| -&v.slope))
        .collect();
    let qinv = inverse(&columns(q.vertex(0), q.vertex(1)));
    for r in 0..n {
        for dir in [1, n - 1] {
            let sigma = |j: usize| (r + dir * j) % n;
            let u0 = mat_mul(&columns(&base[sigma(0)], &base[sigma(1)]), &qinv);
            let u1 = mat_mul(&columns(&slope[sigma(0)], &slope[sigma(1)]), &qinv);
            let mut t: Option<Rat> = None;
            let mut ok = true;
            'eq: for j in 2..n {
                let a = &mat_vec(&u0, q.vertex(j)) - &base[sigma(j)];
                let b = &mat_vec(&u1, q.vertex(j)) - &slope[sigma(j)];
                for (a, b) in [(&a.x, &b.x), (&a.y, &b.y)] {
                    if b.is_zero() {
                        if !a.is_zero() {
                            ok = false;
                            break 'eq;
                        }
                    } else {
                        let root = -a / b;
                        if t.as_ref().is_some_and(|t| *t != root) {
                            ok = false;
                            break 'eq;
                        }
                        t = Some(root);
                    }
                }
            }
            if !ok {
                continue;
            }
            let t = t.unwrap_or_else(|| fam.midpoint_parameter());
            if !fam.contains(&t) {
                continue;
            }
            let u = [
                [&u0[0][0] + &u1[0][0] * &t, &u0[0][1] + &u1[0][1] * &t],
                [&u0[1][0] + &u1[1][0] * &t, &u0[1][1] + &u1[1][1] * &t],
            ];
            if let Ok(map) = AffineMap::linear(u) {
                if map.is_unimodular() {
                    return Some((t, map));
                }
            }
        }
    }
    None
}

/// Decagon families whose midpoints match those of `q`, with the free
/// vertex in each family's frame.
fn match_decagon(q: &CSPolygon, k: u64) -> Vec<(DecagonFamily, Option<Rat2>)> {
    let mut out = Vec::new();
    let Ok(doubled) = CSPolygon::from_half_cycle(
        &q.midpoints()[..q.m()]
            .iter()
            .map(Rat2::double)
            .collect::<Vec<_>>(),
    ) else {
        return out;
    };
    if !doubled.is_integral() {
        return out;
    }
    for fam in DecagonFamily::ALL {
        if fam.k() != k {
            continue;
        }
        let spec = family_midpoints(fam);
        let target =
            CSPolygon::from_half_cycle(&spec.u.iter().map(Rat2::double).collect::<Vec<_>>())
                .expect("family midpoints form a convex decagon");
        if let Ok(Some(map)) = unimodular_equivalence(&doubled, &target) {
            let image = map.apply_polygon(q).expect("linear map");
            out.push((fam, free_vertex_of(&image, &spec, fam.reference_anchor())));
        }
    }
    out
}

fn cited_bound(m: usize) -> (u64, String) {
    match m {
        6 => (7, "published bound: a centrally symmetric convex dodecagon is no k-fold lattice tile for k < 7".into()),
        7 => (7, "published bound: a centrally symmetric convex tetradecagon is no k-fold translative tile for k < 7".into()),
        _ => {
            let b = if m.is_multiple_of(2) { m - 1 } else { m - 2 } as u64;
            (b, format!("published bound: a centrally symmetric convex {}-gon is no k-fold translative tile for k < {b}", 2 * m))
        }
    }
}

/// Classifies `p` as a `k`-fold lattice tile with `k <= 6`.
pub fn classify(p: &CSPolygon) -> Result<Classification, EnumerationError> {
    let m = p.m();
    let shape = shape_name(m);
    let mut c = Classification {
        m,
        shape: shape.clone(),
        verdict: Verdict::NoLatticeUpToSix,
        k: None,
        family: None,
        parameter: None,
        equivalent_families: Vec::new(),
        lattice: None,
        cited: None,
        verified: true,
        message: String::new(),
    };
    if m >= 6 {
        let (bound, fact) = cited_bound(m);
        c.verdict = Verdict::CitedLowerBound;
        c.verified = false;
        c.cited = Some(fact);
        c.message = format!("not a six-fold lattice tile: multiplicity at least {bound} for every {shape} (cited, not verified)");
        return Ok(c);
    }
    let max_k = if m <= 3 { 1 } else { MAX_K };
    for k in 1..=max_k {
        let lattices = find_tiling_lattice(p, k)?;
        let Some(l) = lattices.first() else { continue };
        c.k = Some(k);
        c.lattice = Some(lattice_to_value(l));
        if m <= 3 {
            c.verdict = Verdict::OneFold;
            c.message = format!("{shape}: one-fold lattice tile");
            return Ok(c);
        }
        for l in &lattices {
            let q = to_integer_frame(p, l);
            if m == 4 {
                for v in OctagonVariant::ALL
                    .into_iter()
                    .filter(|v| v.is_tile_family())
                {
                    let fam = v.family();
                    if fam.k != k {
                        continue;
                    }
                    if let Some((t, _)) = match_parametric(&q, &fam) {
                        c.verdict = Verdict::FamilyMember;
                        c.family = Some(v.cli_name().into());
                        c.parameter = Some(format!("{}={t}", fam.symbol));
                        c.lattice = Some(lattice_to_value(l));
                        c.message = format!(
                            "{shape} in family {} at {}={t}, {k}-fold",
                            v.cli_name(),
                            fam.symbol
                        );
                        return Ok(c);
                    }
                }
            } else {
                let found = match_decagon(&q, k);
                let Some((fam, f)) = found.first() else {
                    continue;
                };
                let names: Vec<&str> = found.iter().map(|(f, _)| f.cli_name()).collect();
                c.verdict = Verdict::FamilyMember;
                c.family = Some(fam.cli_name().into());
                c.equivalent_families = names.iter().map(|s| s.to_string()).collect();
                c.parameter = f.as_ref().map(|f| format!("free_vertex={f}"));
                c.lattice = Some(lattice_to_value(l));
                c.message = format!("{shape} in family {}, {k}-fold", names.join(" = "));
                return Ok(c);
            }
        }
        c.verdict = Verdict::CertifiedOutsideFamilies;
        c.message = format!("{shape}: {k}-fold lattice tile outside the stored families");
        return Ok(c);
    }
    c.message = format!("{shape}: no lattice gives a k-fold tiling for k <= {max_k}");
    Ok(c)
}

/// Parses vertex strings, reporting decimals and symbolic constants as
/// irrational input, then classifies.
pub fn classify_strings(points: &[[String; 2]]) -> Result<Classification, EnumerationError> {
    let parse = |s: &str| -> Result<Rat, EnumerationError> {
        parse_rat(s.trim()).map_err(|_| EnumerationError::IrrationalInput(s.to_string()))
    };
    let pts = points
        .iter()
        .map(|[x, y]| Ok::<_, EnumerationError>(Rat2::new(parse(x)?, parse(y)?)))
        .collect::<Result<Vec<_>, _>>()?;
    classify(&CSPolygon::from_points(&pts)?)
}
