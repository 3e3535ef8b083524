use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rat::{lcm_denominators, rat, Rat, Rat2};
use super::GeomError;

/// Centrally symmetric, strictly convex 2m-gon centred at the origin.
///
/// Vertices are stored counterclockwise, starting at the first vertex met
/// when sweeping from the positive x-axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CSPolygon {
    vertices: Vec<Rat2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// Relative interior of edge `edge`, at `t` in (0,1) from its start vertex.
    OnEdge {
        edge: usize,
        t: Rat,
    },
    AtVertex(usize),
    Exterior,
}

pub(crate) fn polar_cmp(a: &Rat2, b: &Rat2) -> Ordering {
    a.half_plane()
        .cmp(&b.half_plane())
        .then_with(|| Rat::zero().cmp(&a.cross(b)))
}

pub fn turn(a: &Rat2, b: &Rat2, c: &Rat2) -> Rat {
    (b - a).cross(&(c - b))
}

impl CSPolygon {
    /// Builds the polygon from an unordered point set closed under negation.
    pub fn from_points(points: &[Rat2]) -> Result<Self, GeomError> {
        let mut pts: Vec<Rat2> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 4 {
            return Err(GeomError::TooFewPoints(pts.len()));
        }
        if pts.iter().any(|p| p.is_zero()) {
            return Err(GeomError::NotStrictlyConvex(
                "origin is among the points".into(),
            ));
        }
        for p in &pts {
            if pts.binary_search(&-p).is_err() {
                return Err(GeomError::NotCentrallySymmetric(format!(
                    "{p} has no antipode"
                )));
            }
        }
        pts.sort_by(polar_cmp);
        let n = pts.len();
        for i in 0..n {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            if !a.cross(b).is_positive() {
                return Err(GeomError::NotStrictlyConvex(format!(
                    "{a} and {b} are collinear with the centre"
                )));
            }
        }
        for i in 0..n {
            let t = turn(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
            if !t.is_positive() {
                return Err(GeomError::NotStrictlyConvex(format!(
                    "{} is not a strict vertex of the hull",
                    pts[(i + 1) % n]
                )));
            }
        }
        Ok(CSPolygon { vertices: pts })
    }

    /// Builds the polygon from a half-cycle `v_1..v_m` (the rest by negation).
    pub fn from_half_cycle(half: &[Rat2]) -> Result<Self, GeomError> {
        let mut pts: Vec<Rat2> = half.to_vec();
        pts.extend(half.iter().map(|p| -p));
        Self::from_points(&pts)
    }

    pub fn vertices(&self) -> &[Rat2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn m(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn vertex(&self, i: usize) -> &Rat2 {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> Rat2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    pub fn midpoint(&self, i: usize) -> Rat2 {
        (self.vertex(i) + self.vertex(i + 1)).half()
    }

    pub fn edges(&self) -> Vec<Rat2> {
        (0..self.len()).map(|i| self.edge(i)).collect()
    }

    pub fn midpoints(&self) -> Vec<Rat2> {
        (0..self.len()).map(|i| self.midpoint(i)).collect()
    }

    pub fn area(&self) -> Rat {
        let n = self.len();
        let twice: Rat = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        twice * rat(1, 2)
    }

    /// Interior angle at vertex `i`, in radians.
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let v = self.vertex(i);
        let a = (self.vertex(i + n - 1) - v).to_f64();
        let b = (self.vertex(i + 1) - v).to_f64();
        let cross = a.0 * b.1 - a.1 * b.0;
        let dot = a.0 * b.0 + a.1 * b.1;
        cross.abs().atan2(dot)
    }

    pub fn locate(&self, p: &Rat2) -> Location {
        let n = self.len();
        let mut zero = Vec::new();
        for i in 0..n {
            let e = self.edge(i);
            let s = e.cross(&(p - self.vertex(i)));
            if s.is_negative() {
                return Location::Exterior;
            }
            if s.is_zero() {
                zero.push(i);
            }
        }
        match zero.as_slice() {
            [] => Location::Interior,
            [i] => {
                let e = self.edge(*i);
                let t = e.dot(&(p - self.vertex(*i))) / e.dot(&e);
                Location::OnEdge { edge: *i, t }
            }
            [a, b] => {
                if (a + 1) % n == *b {
                    Location::AtVertex(*b)
                } else {
                    Location::AtVertex(*a)
                }
            }
            _ => {
                unreachable!("a point lies on at most two edge lines of a strictly convex polygon")
            }
        }
    }

    pub fn map_vertices(&self, f: impl Fn(&Rat2) -> Rat2) -> Result<CSPolygon, GeomError> {
        let pts: Vec<Rat2> = self.vertices.iter().map(f).collect();
        CSPolygon::from_points(&pts)
    }

    pub fn scale(&self, s: &Rat) -> Result<CSPolygon, GeomError> {
        self.map_vertices(|p| p.scale(s))
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(Rat2::is_integral)
    }

    pub fn denominator_lcm(&self) -> BigInt {
        lcm_denominators(self.vertices.iter().flat_map(|p| [&p.x, &p.y]))
    }

    pub fn is_centered(&self) -> bool {
        let m = self.m();
        (0..m).all(|i| self.vertices[i + m] == -&self.vertices[i])
    }
}

/// Integer edge-line form `a*X + b*Y + c*D`, positive strictly inside, for a
/// point `(X/D, Y/D)`.
#[derive(Clone, Debug)]
pub struct EdgeLines {
    pub lines: Vec<[BigInt; 3]>,
}

impl EdgeLines {
    pub fn of(p: &CSPolygon) -> Self {
        let lines = (0..p.len())
            .map(|i| {
                let v = p.vertex(i);
                let e = p.edge(i);
                let coef = [-e.y.clone(), e.x.clone(), &e.y * &v.x - &e.x * &v.y];
                let l = Rat::from_integer(lcm_denominators(coef.iter()));
                coef.map(|c| (c * &l).to_integer())
            })
            .collect();
        EdgeLines { lines }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> CSPolygon {
        CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 1, 2), Rat2::q(-1, 2, 1, 2)]).unwrap()
    }

    #[test]
    fn unit_square() {
        let s = square();
        assert_eq!(s.m(), 2);
        assert_eq!(s.area(), rat(1, 1));
        assert_eq!(s.locate(&Rat2::zero()), Location::Interior);
        assert!(matches!(
            s.locate(&Rat2::q(1, 2, 0, 1)),
            Location::OnEdge { .. }
        ));
        assert!(matches!(
            s.locate(&Rat2::q(1, 2, 1, 2)),
            Location::AtVertex(_)
        ));
        assert_eq!(s.locate(&Rat2::ints(1, 0)), Location::Exterior);
    }

    #[test]
    fn edges_sum_to_zero() {
        let s = square();
        let sum = s.edges().iter().fold(Rat2::zero(), |a, e| a + e);
        assert!(sum.is_zero());
    }

    #[test]
    fn rejections() {
        let pts = [
            Rat2::ints(0, 0),
            Rat2::ints(1, 0),
            Rat2::ints(-1, 0),
            Rat2::ints(0, 1),
            Rat2::ints(0, -1),
        ];
        assert!(CSPolygon::from_points(&pts).is_err());
        assert!(matches!(
            CSPolygon::from_points(&[Rat2::ints(1, 0), Rat2::ints(-1, 0)]),
            Err(GeomError::TooFewPoints(2))
        ));
        assert!(matches!(
            CSPolygon::from_points(&[
                Rat2::ints(1, 0),
                Rat2::ints(-1, 0),
                Rat2::ints(0, 1),
                Rat2::ints(1, 1)
            ]),
            Err(GeomError::NotCentrallySymmetric(_))
        ));
        // (1,0) sits on the segment from (1,1) to (1,-1).
        let flat = [(1, 1), (1, 0), (1, -1)].map(|(x, y)| Rat2::ints(x, y));
        assert!(matches!(
            CSPolygon::from_half_cycle(&flat),
            Err(GeomError::NotStrictlyConvex(_))
        ));
    }

    #[test]
    fn edge_lines_agree_with_locate() {
        let p = CSPolygon::from_half_cycle(&[
            Rat2::q(1, 3, -2, 1),
            Rat2::q(4, 3, -2, 1),
            Rat2::q(5, 2, 1, 7),
        ])
        .unwrap();
        let lines = EdgeLines::of(&p);
        for (x, y) in [(0, 0), (1, 0), (3, 1), (-1, 2)] {
            let q = Rat2::ints(x, y);
            let inside = lines
                .lines
                .iter()
                .all(|[a, b, c]| (a * BigInt::from(x) + b * BigInt::from(y) + c).is_positive());
            assert_eq!(inside, p.locate(&q) == Location::Interior, "{q}");
        }
    }
}
