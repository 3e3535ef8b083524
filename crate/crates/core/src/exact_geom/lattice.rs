use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{lcm_denominators, Rat, Rat2};
use super::GeomError;

/// Rank-2 lattice. The stored basis is the unique Hermite basis
/// `b1 = (a, b)`, `b2 = (0, d)` with `a, d > 0` and `0 <= b < d`, so two
/// lattices are equal iff their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    b1: Rat2,
    b2: Rat2,
}

/// Integer Hermite basis of the row lattice spanned by `rows`.
/// Returns `None` when the rows span a lattice of rank below two.
pub(crate) fn hermite_rows(rows: &[[BigInt; 2]]) -> Option<([BigInt; 2], [BigInt; 2])> {
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut d = BigInt::zero();
    for r in rows {
        if r[0].is_zero() {
            d = d.gcd(&r[1]);
            continue;
        }
        match pivot.take() {
            None => pivot = Some(r.clone()),
            Some(p) => {
                let eg = p[0].extended_gcd(&r[0]);
                let g = eg.gcd;
                let np = [&eg.x * &p[0] + &eg.y * &r[0], &eg.x * &p[1] + &eg.y * &r[1]];
                let (pa, ra) = (&p[0] / &g, &r[0] / &g);
                let rest = &ra * &p[1] - &pa * &r[1];
                d = d.gcd(&rest);
                pivot = Some(np);
            }
        }
    }
    let mut p = pivot?;
    if d.is_zero() {
        return None;
    }
    if p[0].is_negative() {
        p = [-&p[0], -&p[1]];
    }
    let b = p[1].mod_floor(&d);
    Some(([p[0].clone(), b], [BigInt::zero(), d]))
}

impl Lattice {
    pub fn new(b1: Rat2, b2: Rat2) -> Result<Self, GeomError> {
        if b1.cross(&b2).is_zero() {
            return Err(GeomError::DegenerateLattice);
        }
        Self::from_generators(&[b1, b2])
    }

    pub fn integer() -> Self {
        Lattice {
            b1: Rat2::ints(1, 0),
            b2: Rat2::ints(0, 1),
        }
    }

    /// Lattice generated by an arbitrary finite set of rational vectors.
    pub fn from_generators(gens: &[Rat2]) -> Result<Self, GeomError> {
        let l = lcm_denominators(gens.iter().flat_map(|g| [&g.x, &g.y]));
        let lr = Rat::from_integer(l.clone());
        let rows: Vec<[BigInt; 2]> = gens
            .iter()
            .map(|g| [(&g.x * &lr).to_integer(), (&g.y * &lr).to_integer()])
            .collect();
        let (r1, r2) = hermite_rows(&rows).ok_or(GeomError::DegenerateLattice)?;
        let f = |r: [BigInt; 2]| {
            Rat2::new(
                Rat::new(r[0].clone(), l.clone()),
                Rat::new(r[1].clone(), l.clone()),
            )
        };
        Ok(Lattice {
            b1: f(r1),
            b2: f(r2),
        })
    }

    pub fn basis(&self) -> [&Rat2; 2] {
        [&self.b1, &self.b2]
    }

    pub fn det(&self) -> Rat {
        self.b1.cross(&self.b2).abs()
    }

    /// Coordinates `(c1, c2)` with `p = c1*b1 + c2*b2`.
    pub fn coords(&self, p: &Rat2) -> (Rat, Rat) {
        let c1 = &p.x / &self.b1.x;
        let c2 = (&p.y - &c1 * &self.b1.y) / &self.b2.y;
        (c1, c2)
    }

    pub fn point(&self, c1: &Rat, c2: &Rat) -> Rat2 {
        self.b1.scale(c1) + self.b2.scale(c2)
    }

    pub fn contains(&self, p: &Rat2) -> bool {
        let (a, b) = self.coords(p);
        a.is_integer() && b.is_integer()
    }

    /// Membership in the half-lattice `{p : 2p in L}`.
    pub fn contains_half(&self, p: &Rat2) -> bool {
        self.contains(&p.double())
    }

    pub fn lattice_contains(&self, p: &Rat2, half: bool) -> bool {
        if half {
            self.contains_half(p)
        } else {
            self.contains(p)
        }
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        other.contains(&self.b1) && other.contains(&self.b2)
    }

    /// All lattices containing `self` with index `n`.
    pub fn superlattices(&self, n: u64) -> Vec<Lattice> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let nn = BigInt::from(n);
        for a in 1..=n {
            if !n.is_multiple_of(a) {
                continue;
            }
            let d = n / a;
            for b in 0..d {
                // Dual of the index-n sublattice with Hermite rows (a,b),(0,d).
                let v1 = self.b1.scale(&Rat::new(BigInt::one(), BigInt::from(a)));
                let v2 = self.b1.scale(&Rat::new(-BigInt::from(b), nn.clone()))
                    + self.b2.scale(&Rat::new(BigInt::one(), BigInt::from(d)));
                out.push(Lattice::new(v1, v2).expect("superlattice basis is nondegenerate"));
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::rat::rat;

    #[test]
    fn hermite_is_canonical() {
        let a = Lattice::new(Rat2::ints(2, 1), Rat2::ints(1, 3)).unwrap();
        let b = Lattice::new(Rat2::ints(3, 4), Rat2::ints(1, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.det(), rat(5, 1));
    }

    #[test]
    fn membership() {
        let z = Lattice::integer();
        assert!(z.contains_half(&Rat2::q(1, 2, -2, 1)));
        assert!(!z.contains_half(&Rat2::q(2, 5, 1, 1)));
        let l = Lattice::new(Rat2::ints(1, 0), Rat2::q(1, 2, 1, 2)).unwrap();
        assert!(l.contains(&Rat2::q(5, 2, 3, 2)));
        assert!(!l.contains(&Rat2::q(1, 2, 0, 1)));
    }

    #[test]
    fn rank_deficient() {
        assert!(Lattice::from_generators(&[Rat2::ints(1, 2), Rat2::ints(-2, -4)]).is_err());
        let l = Lattice::from_generators(&[Rat2::ints(4, 0), Rat2::ints(6, 0), Rat2::ints(1, 5)])
            .unwrap();
        assert_eq!(l.det(), rat(10, 1));
    }

    fn sigma(n: u64) -> usize {
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as usize).sum()
    }

    #[test]
    fn superlattice_counts_match_brute_force() {
        let base = Lattice::new(Rat2::ints(2, 1), Rat2::ints(-1, 3)).unwrap();
        for n in 1..=8u64 {
            let sups = base.superlattices(n);
            assert_eq!(sups.len(), sigma(n), "n={n}");
            let mut dedup = sups.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), sups.len());
            for s in &sups {
                assert!(base.is_sublattice_of(s));
                assert_eq!(base.det() / s.det(), Rat::from_integer(BigInt::from(n)));
            }
        }
    }

    #[test]
    fn superlattices_of_z_index_two_brute_force() {
        // Index-2 superlattices of Z^2 are Z^2 + Z*h for h in (1/2)Z^2 / Z^2, h != 0.
        let z = Lattice::integer();
        let mut expect: Vec<Lattice> = [(1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(a, b)| {
                Lattice::from_generators(&[Rat2::ints(1, 0), Rat2::ints(0, 1), Rat2::q(a, 2, b, 2)])
                    .unwrap()
            })
            .collect();
        expect.sort();
        assert_eq!(z.superlattices(2), expect);
    }
}
