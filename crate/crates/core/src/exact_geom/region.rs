use num_traits::{Signed, Zero};
use serde::Serialize;

use super::rat::{int, Rat, Rat2};

/// Open half-plane `a*x + b*y + c > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HalfPlane {
    #[serde(serialize_with = "crate::exact_geom::json::ser_rat")]
    pub a: Rat,
    #[serde(serialize_with = "crate::exact_geom::json::ser_rat")]
    pub b: Rat,
    #[serde(serialize_with = "crate::exact_geom::json::ser_rat")]
    pub c: Rat,
}

impl HalfPlane {
    pub fn eval(&self, p: &Rat2) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Rat2) -> bool {
        self.eval(p).is_positive()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Vertices (counterclockwise, collinear points removed) of the closure of
/// the open intersection of `planes` with the box `|x|,|y| < bound`.
/// Empty when the open intersection is empty.
pub fn intersect_half_planes(planes: &[HalfPlane], bound: i64) -> Vec<Rat2> {
    let b = int(bound);
    let mut poly = vec![
        Rat2::new(-&b, -&b),
        Rat2::new(b.clone(), -&b),
        Rat2::new(b.clone(), b.clone()),
        Rat2::new(-&b, b.clone()),
    ];
    for h in planes {
        if h.is_trivial() {
            if h.c.is_positive() {
                continue;
            }
            return Vec::new();
        }
        poly = clip(&poly, h);
        if poly.len() < 3 {
            return Vec::new();
        }
    }
    let poly = simplify(poly);
    if poly.len() < 3 {
        return Vec::new();
    }
    poly
}

fn clip(poly: &[Rat2], h: &HalfPlane) -> Vec<Rat2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let fp = h.eval(p);
        let fq = h.eval(q);
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let t = &fp / (&fp - &fq);
            out.push(p + &(q - p).scale(&t));
        }
    }
    out
}

fn simplify(mut poly: Vec<Rat2>) -> Vec<Rat2> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    loop {
        let n = poly.len();
        if n < 3 {
            return poly;
        }
        let idx = (0..n).find(|&i| {
            let a = &poly[(i + n - 1) % n];
            let b = &poly[i];
            let c = &poly[(i + 1) % n];
            (b - a).cross(&(c - b)).is_zero()
        });
        match idx {
            Some(i) => {
                poly.remove(i);
            }
            None => return poly,
        }
    }
}

/// Strict point-in-open-convex-polygon test for counterclockwise vertices.
pub fn inside_open(poly: &[Rat2], p: &Rat2) -> bool {
    let n = poly.len();
    n >= 3
        && (0..n).all(|i| {
            (&poly[(i + 1) % n] - &poly[i])
                .cross(&(p - &poly[i]))
                .is_positive()
        })
}

/// Rotates a cyclic vertex list to start at its lexicographically least vertex.
pub fn canonical_rotation(poly: &[Rat2]) -> Vec<Rat2> {
    if poly.is_empty() {
        return Vec::new();
    }
    let start = (0..poly.len())
        .min_by(|&a, &b| poly[a].cmp(&poly[b]))
        .unwrap();
    poly[start..]
        .iter()
        .chain(poly[..start].iter())
        .cloned()
        .collect()
}
