use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::lattice::Lattice;
use super::rat::{rat, Rat, Rat2};
use super::GeomError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PickCount {
    pub interior_points: u64,
    pub boundary_points: u64,
    /// Euclidean area.
    #[serde(serialize_with = "crate::exact_geom::json::ser_rat")]
    pub area: Rat,
}

impl PickCount {
    /// Area in units of the lattice determinant, by Pick's formula.
    pub fn pick_area(&self) -> Rat {
        Rat::from_integer(BigInt::from(self.interior_points)) + rat(self.boundary_points as i64, 2)
            - rat(1, 1)
    }
}

/// Shoelace area of a simple polygon given in cyclic order.
pub fn shoelace(vertices: &[Rat2]) -> Rat {
    let n = vertices.len();
    let twice: Rat = (0..n)
        .map(|i| vertices[i].cross(&vertices[(i + 1) % n]))
        .sum();
    (twice * rat(1, 2)).abs()
}

/// Lattice-point counts of a convex lattice polygon (either orientation) by
/// enumeration over its bounding box in lattice coordinates.
pub fn pick_count(vertices: &[Rat2], lattice: &Lattice) -> Result<PickCount, GeomError> {
    let n = vertices.len();
    if n < 3 {
        return Err(GeomError::TooFewPoints(n));
    }
    let mut pts: Vec<(BigInt, BigInt)> = Vec::with_capacity(n);
    for v in vertices {
        let (a, b) = lattice.coords(v);
        if !a.is_integer() || !b.is_integer() {
            return Err(GeomError::VerticesNotOnLattice);
        }
        pts.push((a.to_integer(), b.to_integer()));
    }
    let orient: BigInt = (0..n)
        .map(|i| {
            let (p, q) = (&pts[i], &pts[(i + 1) % n]);
            &p.0 * &q.1 - &p.1 * &q.0
        })
        .sum();
    if orient.is_zero() {
        return Err(GeomError::NotStrictlyConvex("zero area".into()));
    }
    let sign = if orient.is_positive() { 1 } else { -1 };
    let lines: Vec<(BigInt, BigInt, BigInt)> = (0..n)
        .map(|i| {
            let (p, q) = (&pts[i], &pts[(i + 1) % n]);
            let ex = &q.0 - &p.0;
            let ey = &q.1 - &p.1;
            let c = &ey * &p.0 - &ex * &p.1;
            (-ey * sign, ex * sign, c * sign)
        })
        .collect();
    let lo_x = pts.iter().map(|p| p.0.clone()).min().unwrap();
    let hi_x = pts.iter().map(|p| p.0.clone()).max().unwrap();
    let lo_y = pts.iter().map(|p| p.1.clone()).min().unwrap();
    let hi_y = pts.iter().map(|p| p.1.clone()).max().unwrap();
    let (mut interior, mut boundary) = (0u64, 0u64);
    let mut x = lo_x;
    while x <= hi_x {
        let mut y = lo_y.clone();
        while y <= hi_y {
            let mut on = false;
            let mut out = false;
            for (a, b, c) in &lines {
                let s = a * &x + b * &y + c;
                if s.is_negative() {
                    out = true;
                    break;
                }
                on |= s.is_zero();
            }
            if !out {
                if on {
                    boundary += 1;
                } else {
                    interior += 1;
                }
            }
            y += 1;
        }
        x += 1;
    }
    Ok(PickCount {
        interior_points: interior,
        boundary_points: boundary,
        area: shoelace(vertices),
    })
}

/// Boundary lattice points from edge gcds.
pub fn boundary_by_gcd(vertices: &[Rat2], lattice: &Lattice) -> Result<u64, GeomError> {
    let n = vertices.len();
    let mut total = BigInt::zero();
    for i in 0..n {
        let (a, b) = lattice.coords(&(&vertices[(i + 1) % n] - &vertices[i]));
        if !a.is_integer() || !b.is_integer() {
            return Err(GeomError::VerticesNotOnLattice);
        }
        total += a.to_integer().gcd(&b.to_integer());
    }
    Ok(u64::try_from(total).expect("boundary count fits in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_triangle() {
        let t = [Rat2::ints(0, 0), Rat2::ints(1, 0), Rat2::ints(0, 1)];
        let c = pick_count(&t, &Lattice::integer()).unwrap();
        assert_eq!((c.interior_points, c.boundary_points), (0, 3));
        assert_eq!(c.area, rat(1, 2));
        assert_eq!(c.pick_area(), c.area);
    }

    #[test]
    fn decagon_area() {
        let h = [(0, 1), (5, 2), (7, 2), (6, 1), (4, 0)];
        let mut v: Vec<Rat2> = h.iter().map(|&(x, y)| Rat2::ints(x, y)).collect();
        v.extend(h.iter().map(|&(x, y)| Rat2::ints(-x, -y)));
        let c = pick_count(&v, &Lattice::integer()).unwrap();
        assert_eq!(c.area, rat(22, 1));
        assert_eq!(c.pick_area(), c.area);
        assert_eq!(
            boundary_by_gcd(&v, &Lattice::integer()).unwrap(),
            c.boundary_points
        );
    }

    #[test]
    fn off_lattice() {
        let t = [Rat2::ints(0, 0), Rat2::q(1, 2, 0, 1), Rat2::ints(0, 1)];
        assert!(matches!(
            pick_count(&t, &Lattice::integer()),
            Err(GeomError::VerticesNotOnLattice)
        ));
    }
}
