use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::oracle::{sample_multiplicities, Oracle, OracleSummary};
use super::TilingError;
use crate::exact_geom::json::{lattice_to_value, polygon_to_value, ser_rat};
use crate::exact_geom::{CSPolygon, Lattice, Rat, Rat2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EdgeEvidence {
    MidpointInHalfLattice {
        edge: usize,
        midpoint: Rat2,
    },
    EdgeIsLatticeVector {
        edge: usize,
        vector: Rat2,
        witness: Rat2,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FailureReason {
    /// The open edge misses the half-lattice.
    NoHalfLatticePoint {
        edge: usize,
        start: Rat2,
        end: Rat2,
        midpoint: Rat2,
    },
    /// The midpoint is off the half-lattice and the edge vector is not a lattice vector.
    NotLatticeVector {
        edge: usize,
        vector: Rat2,
        midpoint: Rat2,
    },
    WrongMultiplicity {
        requested: u64,
        #[serde(serialize_with = "ser_rat")]
        area_over_det: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BolleFailure {
    pub reasons: Vec<FailureReason>,
}

impl fmt::Display for BolleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .reasons
            .iter()
            .map(|r| match r {
                FailureReason::NoHalfLatticePoint { edge, start, end, .. } => {
                    format!("edge {edge} from {start} to {end} has no half-lattice point in its relative interior")
                }
                FailureReason::NotLatticeVector { edge, vector, midpoint } => format!(
                    "edge {edge} has midpoint {midpoint} off the half-lattice and vector {vector} off the lattice"
                ),
                FailureReason::WrongMultiplicity { requested, area_over_det } => {
                    format!("area/det = {area_over_det}, not the requested {requested}")
                }
            })
            .collect();
        write!(f, "Bolle conditions fail: {}", parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TilingCertificate {
    pub polygon: CSPolygon,
    pub lattice: Lattice,
    pub k: u64,
    /// Evidence for every edge; symmetric edges carry negated evidence.
    pub per_edge: Vec<EdgeEvidence>,
    /// Edges of the half-cycle whose vector is a lattice vector.
    pub lattice_vector_edges: Vec<usize>,
    pub oracle: Option<OracleSummary>,
}

impl TilingCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": "pass",
            "k": self.k,
            "area": self.polygon.area().to_string(),
            "det": self.lattice.det().to_string(),
            "polygon": polygon_to_value(&self.polygon),
            "lattice": lattice_to_value(&self.lattice),
            "per_edge": self.per_edge,
            "lattice_vector_edges": self.lattice_vector_edges,
            "oracle": self.oracle,
        })
    }
}

fn floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Solves `a*n ≡ b (mod m)`; returns `(n0, modulus)` or `None`.
fn solve_congruence(a: &BigInt, b: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let g = a.gcd(m);
    if !b.is_multiple_of(&g) {
        return None;
    }
    let mm = m / &g;
    if mm.is_one() {
        return Some((BigInt::zero(), mm));
    }
    let ag = (a / &g).mod_floor(&mm);
    let eg = ag.extended_gcd(&mm);
    let n0 = ((b / &g) * eg.x).mod_floor(&mm);
    Some((n0, mm))
}

/// A point of the half-lattice on the open segment `(a, b)`, if any.
///
/// In lattice coordinates the doubled segment is `A + t*E`; one coordinate of
/// `E` is nonzero, so integer points correspond to integers `n` strictly
/// between the ends of that coordinate satisfying one linear congruence.
pub fn half_lattice_point_on_open_segment(l: &Lattice, a: &Rat2, b: &Rat2) -> Option<Rat2> {
    let (a0, a1) = l.coords(&a.double());
    let (b0, b1) = l.coords(&b.double());
    let (mut e0, mut e1) = (&b0 - &a0, &b1 - &a1);
    let (mut a0, mut a1) = (a0, a1);
    if e0.is_zero() {
        if e1.is_zero() {
            return None;
        }
        std::mem::swap(&mut e0, &mut e1);
        std::mem::swap(&mut a0, &mut a1);
    }
    let r = &e1 / &e0;
    let c = &a1 - &a0 * &r;
    let (p, q) = (r.numer().clone(), r.denom().clone());
    let (cn, cd) = (c.numer().clone(), c.denom().clone());
    let (n0, modulus) = solve_congruence(&(&p * &cd), &(-&cn * &q), &(&cd * &q))?;
    let (lo, hi) = if e0.is_positive() {
        (a0.clone(), &a0 + &e0)
    } else {
        (&a0 + &e0, a0.clone())
    };
    let first: BigInt = floor(&lo) + BigInt::one();
    let n = &first + (&n0 - &first).mod_floor(&modulus);
    let nr = Rat::from_integer(n);
    if nr >= hi {
        return None;
    }
    let t = (nr - &a0) / &e0;
    Some(a + &(b - a).scale(&t))
}

/// Checks the edge conditions of Bolle's criterion for `(p, l)`.
pub fn bolle_check(p: &CSPolygon, l: &Lattice) -> Result<TilingCertificate, TilingError> {
    if !p.is_centered() {
        return Err(TilingError::NotCentered);
    }
    let n = p.len();
    let mut per_edge = Vec::with_capacity(n);
    let mut reasons = Vec::new();
    for i in 0..n {
        let u = p.midpoint(i);
        let e = p.edge(i);
        if l.contains_half(&u) {
            per_edge.push(EdgeEvidence::MidpointInHalfLattice {
                edge: i,
                midpoint: u,
            });
            continue;
        }
        let witness = half_lattice_point_on_open_segment(l, p.vertex(i), p.vertex(i + 1));
        let lattice_vec = l.contains(&e);
        match (witness, lattice_vec) {
            (Some(w), true) => per_edge.push(EdgeEvidence::EdgeIsLatticeVector {
                edge: i,
                vector: e,
                witness: w,
            }),
            (w, lv) => {
                if i < p.m() {
                    if w.is_none() {
                        reasons.push(FailureReason::NoHalfLatticePoint {
                            edge: i,
                            start: p.vertex(i).clone(),
                            end: p.vertex(i + 1).clone(),
                            midpoint: u.clone(),
                        });
                    }
                    if !lv {
                        reasons.push(FailureReason::NotLatticeVector {
                            edge: i,
                            vector: e,
                            midpoint: u,
                        });
                    }
                }
            }
        }
    }
    if !reasons.is_empty() {
        return Err(TilingError::BolleFailed(BolleFailure { reasons }));
    }
    let ratio = p.area() / l.det();
    if !ratio.is_integer() || !ratio.is_positive() {
        return Err(TilingError::NonIntegerMultiplicity(ratio));
    }
    let k = ratio
        .to_integer()
        .to_u64()
        .ok_or_else(|| TilingError::Inconsistent("k overflows u64".into()))?;
    let lattice_vector_edges = (0..p.m()).filter(|&i| l.contains(&p.edge(i))).collect();
    Ok(TilingCertificate {
        polygon: p.clone(),
        lattice: l.clone(),
        k,
        per_edge,
        lattice_vector_edges,
        oracle: None,
    })
}

/// Bolle check for multiplicity `k` followed by oracle sampling of
/// `samples` generic points.
pub fn verify_kfold(
    p: &CSPolygon,
    l: &Lattice,
    k: u64,
    samples: usize,
    seed: u64,
) -> Result<TilingCertificate, TilingError> {
    if k == 0 {
        return Err(TilingError::InvalidK);
    }
    let mut cert = bolle_check(p, l)?;
    if cert.k != k {
        return Err(TilingError::BolleFailed(BolleFailure {
            reasons: vec![FailureReason::WrongMultiplicity {
                requested: k,
                area_over_det: p.area() / l.det(),
            }],
        }));
    }
    if p.m().is_multiple_of(2) && cert.lattice_vector_edges.is_empty() {
        return Err(TilingError::Inconsistent(
            "certified tile with an even number of edge pairs has no lattice-vector edge".into(),
        ));
    }
    let oracle = Oracle::new(p, l);
    let summary = sample_multiplicities(&oracle, samples, seed);
    if summary.observed.iter().any(|&(m, _)| m != k) {
        return Err(TilingError::MultiplicityMismatch {
            expected: k,
            observed: summary.observed.clone(),
        });
    }
    cert.oracle = Some(summary);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::rat;

    fn brute_half_points(l: &Lattice, a: &Rat2, b: &Rat2) -> Vec<Rat2> {
        // Half-lattice points of Z^2-like lattices with small coordinates.
        let mut out = Vec::new();
        let [b1, b2] = l.basis();
        for i in -40..=40 {
            for j in -40..=40 {
                let q = (b1.scale(&rat(i, 2))) + b2.scale(&rat(j, 2));
                let d = b - a;
                let w = &q - a;
                if d.cross(&w).is_zero() {
                    let t = d.dot(&w) / d.dot(&d);
                    if t.is_positive() && t < Rat::one() {
                        out.push(q);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn witness_agrees_with_enumeration() {
        let l = Lattice::new(Rat2::ints(1, 0), Rat2::q(1, 3, 1, 1)).unwrap();
        let segs = [
            (Rat2::q(1, 10, 2, 1), Rat2::q(9, 10, 0, 1)),
            (Rat2::q(-1, 7, -2, 1), Rat2::q(13, 7, 1, 1)),
            (Rat2::q(0, 1, 0, 1), Rat2::q(3, 1, 1, 2)),
            (Rat2::q(1, 4, 1, 3), Rat2::q(1, 4, 7, 3)),
            (Rat2::q(2, 5, 1, 5), Rat2::q(3, 5, 1, 5)),
        ];
        for lat in [Lattice::integer(), l] {
            for (a, b) in &segs {
                let brute = brute_half_points(&lat, a, b);
                let found = half_lattice_point_on_open_segment(&lat, a, b);
                assert_eq!(found.is_some(), !brute.is_empty(), "{a} {b}");
                if let Some(w) = found {
                    assert!(brute.contains(&w));
                }
            }
        }
    }

    #[test]
    fn unit_square() {
        let sq = CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 1, 2), Rat2::q(-1, 2, 1, 2)]).unwrap();
        let c = bolle_check(&sq, &Lattice::integer()).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.per_edge.len(), 4);
    }
}
