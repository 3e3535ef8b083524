use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lattice::Lattice;
use super::polygon::CSPolygon;
use super::rat::{Rat, Rat2};
use super::GeomError;

/// `p -> M p + t` with a nonsingular rational matrix `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    m: [[Rat; 2]; 2],
    t: Rat2,
}

impl AffineMap {
    pub fn new(m: [[Rat; 2]; 2], t: Rat2) -> Result<Self, GeomError> {
        let a = AffineMap { m, t };
        if a.det().is_zero() {
            return Err(GeomError::SingularMap);
        }
        Ok(a)
    }

    pub fn linear(m: [[Rat; 2]; 2]) -> Result<Self, GeomError> {
        Self::new(m, Rat2::zero())
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<Self, GeomError> {
        Self::linear(m.map(|r| r.map(|v| Rat::from_integer(BigInt::from(v)))))
    }

    pub fn from_big(m: [[BigInt; 2]; 2]) -> Result<Self, GeomError> {
        Self::linear(m.map(|r| r.map(Rat::from_integer)))
    }

    pub fn identity() -> Self {
        AffineMap::from_ints([[1, 0], [0, 1]]).unwrap()
    }

    pub fn matrix(&self) -> &[[Rat; 2]; 2] {
        &self.m
    }

    pub fn translation(&self) -> &Rat2 {
        &self.t
    }

    pub fn det(&self) -> Rat {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn is_linear(&self) -> bool {
        self.t.is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_integer()) && self.det().abs().is_one()
    }

    pub fn apply_linear(&self, p: &Rat2) -> Rat2 {
        Rat2::new(
            &self.m[0][0] * &p.x + &self.m[0][1] * &p.y,
            &self.m[1][0] * &p.x + &self.m[1][1] * &p.y,
        )
    }

    pub fn apply(&self, p: &Rat2) -> Rat2 {
        self.apply_linear(p) + &self.t
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let a = &self.m;
        let b = &other.m;
        let m = [
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ];
        AffineMap {
            m,
            t: self.apply(&other.t),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let d = self.det();
        let a = &self.m;
        let m = [
            [&a[1][1] / &d, -&a[0][1] / &d],
            [-&a[1][0] / &d, &a[0][0] / &d],
        ];
        let lin = AffineMap { m, t: Rat2::zero() };
        let t = -lin.apply_linear(&self.t);
        AffineMap { t, ..lin }
    }

    pub fn apply_polygon(&self, p: &CSPolygon) -> Result<CSPolygon, GeomError> {
        if !self.is_linear() {
            return Err(GeomError::NotCentrallySymmetric(
                "a translated polygon is no longer centred at the origin".into(),
            ));
        }
        p.map_vertices(|v| self.apply_linear(v))
    }

    pub fn apply_lattice(&self, l: &Lattice) -> Lattice {
        let [b1, b2] = l.basis();
        Lattice::new(self.apply_linear(b1), self.apply_linear(b2)).expect("nonsingular image")
    }
}

pub fn apply_affine(p: &CSPolygon, t: &AffineMap) -> Result<CSPolygon, GeomError> {
    t.apply_polygon(p)
}
