use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_geom::rat::to_f64;
use crate::exact_geom::{CSPolygon, Lattice, Rat, Rat2};
use crate::tiling_core::Oracle;

const FILLS: [&str; 8] = [
    "#ffffff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6", "#4292c6", "#2171b5", "#084594",
];

#[derive(Clone, Debug, Serialize)]
pub struct HeatSummary {
    pub cells: usize,
    pub on_boundary: usize,
    /// `(interior count, cells)` over cells whose centre avoids every boundary.
    pub counts: Vec<(u64, usize)>,
    pub expected: Option<u64>,
    pub defects: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RenderSummary {
    pub translates: usize,
    pub heat: Option<HeatSummary>,
}

fn fmt(r: &Rat) -> String {
    format!("{:.6}", to_f64(r))
}

fn range(lo: &Rat, hi: &Rat) -> std::ops::RangeInclusive<i64> {
    let a: i64 = lo.floor().to_integer().try_into().expect("window fits i64");
    let b: i64 = hi.ceil().to_integer().try_into().expect("window fits i64");
    a..=b
}

/// Translates `P + λ` whose bounding box meets the square `[-w, w]^2`.
fn translates(p: &CSPolygon, l: &Lattice, w: &Rat) -> Vec<Vec<Rat2>> {
    let corners = [
        (-w.clone(), -w.clone()),
        (w.clone(), -w.clone()),
        (w.clone(), w.clone()),
        (-w.clone(), w.clone()),
    ];
    let cc: Vec<(Rat, Rat)> = corners
        .iter()
        .map(|(x, y)| l.coords(&Rat2::new(x.clone(), y.clone())))
        .collect();
    let pc: Vec<(Rat, Rat)> = p.vertices().iter().map(|v| l.coords(v)).collect();
    let min = |v: &[(Rat, Rat)], f: fn(&(Rat, Rat)) -> &Rat| {
        v.iter().map(f).min().expect("nonempty").clone()
    };
    let max = |v: &[(Rat, Rat)], f: fn(&(Rat, Rat)) -> &Rat| {
        v.iter().map(f).max().expect("nonempty").clone()
    };
    let r0 = range(
        &(min(&cc, |c| &c.0) - max(&pc, |c| &c.0)),
        &(max(&cc, |c| &c.0) - min(&pc, |c| &c.0)),
    );
    let r1 = range(
        &(min(&cc, |c| &c.1) - max(&pc, |c| &c.1)),
        &(max(&cc, |c| &c.1) - min(&pc, |c| &c.1)),
    );
    let mut out = Vec::new();
    for i in r0 {
        for j in r1.clone() {
            let t = l.point(
                &Rat::from_integer(BigInt::from(i)),
                &Rat::from_integer(BigInt::from(j)),
            );
            let pts: Vec<Rat2> = p.vertices().iter().map(|v| v + &t).collect();
            let lo_x = pts.iter().map(|q| &q.x).min().expect("nonempty");
            let hi_x = pts.iter().map(|q| &q.x).max().expect("nonempty");
            let lo_y = pts.iter().map(|q| &q.y).min().expect("nonempty");
            let hi_y = pts.iter().map(|q| &q.y).max().expect("nonempty");
            let nw = -w.clone();
            if *hi_x > nw && *lo_x < *w && *hi_y > nw && *lo_y < *w {
                out.push(pts);
            }
        }
    }
    out
}

/// SVG of the translates of `p` by `l` inside `[-w, w]^2`, optionally over
/// a `heat x heat` grid shaded by oracle multiplicity at cell centres.
pub fn render_svg(
    p: &CSPolygon,
    l: &Lattice,
    w: &Rat,
    heat: usize,
    warning: Option<&str>,
) -> (String, RenderSummary) {
    let ts = translates(p, l, w);
    let width = fmt(&(w * Rat::from_integer(2.into())));
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x} {x} {width} {width}" width="600" height="600">"#,
        x = fmt(&-w.clone())
    );
    let _ = writeln!(svg, r#"<g transform="scale(1,-1)">"#);
    let mut heat_summary = None;
    if heat > 0 {
        let oracle = Oracle::new(p, l);
        let step = w * Rat::from_integer(2.into()) / Rat::from_integer(BigInt::from(heat));
        let half = &step / Rat::from_integer(2.into());
        let centres: Vec<(usize, usize, Rat2)> = (0..heat)
            .flat_map(|i| (0..heat).map(move |j| (i, j)))
            .map(|(i, j)| {
                let x = -w.clone() + &step * Rat::from_integer(BigInt::from(i)) + &half;
                let y = -w.clone() + &step * Rat::from_integer(BigInt::from(j)) + &half;
                (i, j, Rat2::new(x, y))
            })
            .collect();
        let counts: Vec<(u64, u64)> = centres
            .par_iter()
            .map(|(_, _, c)| oracle.counts_at(c))
            .collect();
        let ratio = p.area() / l.det();
        let expected = ratio
            .is_integer()
            .then(|| u64::try_from(ratio.to_integer()).ok())
            .flatten();
        let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
        for (inner, b) in &counts {
            if *b == 0 {
                *hist.entry(*inner).or_default() += 1;
            }
        }
        let modal = hist
            .iter()
            .max_by_key(|(c, n)| (**n, std::cmp::Reverse(**c)))
            .map(|(c, _)| *c);
        let target = expected.or(modal);
        let top = hist.keys().max().copied().unwrap_or(1).max(1);
        let mut defects = 0;
        let mut on_boundary = 0;
        let _ = writeln!(svg, r#"<g id="heat" stroke="none">"#);
        for ((_, _, c), (inner, b)) in centres.iter().zip(&counts) {
            let x = fmt(&(&c.x - &half));
            let y = fmt(&(&c.y - &half));
            let s = fmt(&step);
            if *b > 0 {
                on_boundary += 1;
                let _ = writeln!(
                    svg,
                    r##"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="#bdbdbd"/>"##
                );
                continue;
            }
            let idx = ((*inner as usize) * (FILLS.len() - 1))
                .div_ceil(top as usize)
                .min(FILLS.len() - 1);
            let defect = target.is_some_and(|t| t != *inner);
            if defect {
                defects += 1;
                let _ = writeln!(
                    svg,
                    r##"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="#d62728"/>"##
                );
            } else {
                let _ = writeln!(
                    svg,
                    r#"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="{}"/>"#,
                    FILLS[idx]
                );
            }
        }
        let _ = writeln!(svg, "</g>");
        heat_summary = Some(HeatSummary {
            cells: counts.len(),
            on_boundary,
            counts: hist.into_iter().collect(),
            expected,
            defects,
        });
    }
    let _ = writeln!(
        svg,
        r##"<g id="translates" fill="none" stroke="#333333" stroke-width="{}">"##,
        fmt(&(w / Rat::from_integer(300.into())))
    );
    for t in &ts {
        let d: Vec<String> = t
            .iter()
            .map(|q| format!("{},{}", fmt(&q.x), fmt(&q.y)))
            .collect();
        let _ = writeln!(svg, r#"<polygon points="{}"/>"#, d.join(" "));
    }
    let _ = writeln!(svg, "</g>");
    let d: Vec<String> = p
        .vertices()
        .iter()
        .map(|q| format!("{},{}", fmt(&q.x), fmt(&q.y)))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polygon id="tile" points="{}" fill="none" stroke="#e6550d" stroke-width="{}"/>"##,
        d.join(" "),
        fmt(&(w / Rat::from_integer(120.into())))
    );
    let _ = writeln!(svg, "</g>");
    if let Some(msg) = warning {
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="{}" fill="#d62728">{}</text>"##,
            fmt(&-w.clone()),
            fmt(&(-w.clone() + w / Rat::from_integer(15.into()))),
            fmt(&(w / Rat::from_integer(20.into()))),
            escape(msg)
        );
    }
    let _ = writeln!(svg, "</svg>");
    (
        svg,
        RenderSummary {
            translates: ts.len(),
            heat: heat_summary,
        },
    )
}

/// SVG of a freedom region with the points given.
pub fn region_svg(vertices: &[Rat2]) -> String {
    let mut svg = String::new();
    if vertices.is_empty() {
        svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\"></svg>\n");
        return svg;
    }
    let lo_x = vertices.iter().map(|v| &v.x).min().expect("nonempty");
    let hi_x = vertices.iter().map(|v| &v.x).max().expect("nonempty");
    let lo_y = vertices.iter().map(|v| &v.y).min().expect("nonempty");
    let hi_y = vertices.iter().map(|v| &v.y).max().expect("nonempty");
    let pad = (hi_x - lo_x).max(hi_y - lo_y) / Rat::from_integer(10.into());
    let (x0, y0) = (lo_x - &pad, lo_y - &pad);
    let size = (hi_x - lo_x).max(hi_y - lo_y) + &pad * Rat::from_integer(2.into());
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {s} {s}" width="400" height="400">"#,
        fmt(&x0),
        fmt(&-(&y0 + &size)),
        s = fmt(&size)
    );
    let d: Vec<String> = vertices
        .iter()
        .map(|q| format!("{},{}", fmt(&q.x), fmt(&-q.y.clone())))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polygon points="{}" fill="#9ecae1" stroke="#08519c" stroke-width="{}"/>"##,
        d.join(" "),
        fmt(&(&size / Rat::from_integer(200.into())))
    );
    let _ = writeln!(svg, "</svg>");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
