use serde::Serialize;

use super::FamilyError;
use crate::exact_geom::json::ser_rat;
use crate::exact_geom::{rat, CSPolygon, Lattice, Rat, Rat2};

/// Vertex `base + t * slope` of a one-parameter family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineVertex {
    pub base: Rat2,
    pub slope: Rat2,
}

impl AffineVertex {
    pub fn at(&self, t: &Rat) -> Rat2 {
        &self.base + &self.slope.scale(t)
    }
}

/// One-parameter polygon family on an open parameter interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametricFamily {
    pub name: String,
    pub symbol: String,
    /// Half-cycle vertices; the polygon is their union with the negatives.
    pub vertices: Vec<AffineVertex>,
    #[serde(serialize_with = "ser_rat")]
    pub lo: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub hi: Rat,
    pub k: u64,
    #[serde(skip)]
    pub lattice: Option<Lattice>,
}

impl ParametricFamily {
    pub fn contains(&self, t: &Rat) -> bool {
        &self.lo < t && t < &self.hi
    }

    pub fn points(&self, t: &Rat) -> Vec<Rat2> {
        self.vertices.iter().map(|v| v.at(t)).collect()
    }

    pub fn instantiate(&self, t: &Rat) -> Result<CSPolygon, FamilyError> {
        if !self.contains(t) {
            return Err(FamilyError::ParameterOutOfRange {
                family: self.name.clone(),
                value: t.clone(),
                lo: self.lo.clone(),
                hi: self.hi.clone(),
            });
        }
        self.instantiate_unchecked(t)
    }

    pub fn instantiate_unchecked(&self, t: &Rat) -> Result<CSPolygon, FamilyError> {
        Ok(CSPolygon::from_half_cycle(&self.points(t))?)
    }

    pub fn midpoint_parameter(&self) -> Rat {
        (&self.lo + &self.hi) * rat(1, 2)
    }

    /// `count` evenly spaced interior parameters.
    pub fn grid(&self, count: usize) -> Vec<Rat> {
        let step = (&self.hi - &self.lo) / Rat::from_integer((count as i64 + 1).into());
        (1..=count)
            .map(|i| &self.lo + &step * Rat::from_integer((i as i64).into()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OctagonVariant {
    SixFoldCorrected,
    SixFoldAsPrinted,
    /// The six-fold family with bottom edge at height -5/2.
    SixFoldExtra,
    FiveFoldBeta,
    FiveFoldAlpha,
}

impl OctagonVariant {
    pub const ALL: [OctagonVariant; 5] = [
        OctagonVariant::SixFoldCorrected,
        OctagonVariant::SixFoldAsPrinted,
        OctagonVariant::SixFoldExtra,
        OctagonVariant::FiveFoldBeta,
        OctagonVariant::FiveFoldAlpha,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            OctagonVariant::SixFoldCorrected => "octagon6",
            OctagonVariant::SixFoldAsPrinted => "octagon6-printed",
            OctagonVariant::SixFoldExtra => "octagon6-extra",
            OctagonVariant::FiveFoldBeta => "octagon5-beta",
            OctagonVariant::FiveFoldAlpha => "octagon5-alpha",
        }
    }

    pub fn from_cli_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.cli_name() == s)
    }

    /// Whether the family is a certified tile family (the as-printed list is not).
    pub fn is_tile_family(self) -> bool {
        self != OctagonVariant::SixFoldAsPrinted
    }

    pub fn family(self) -> ParametricFamily {
        // Each entry is (x0, x_slope, y) with y constant.
        let (symbol, rows, lo, hi, k): (&str, [(Rat, i64, Rat); 4], Rat, Rat, u64) = match self {
            OctagonVariant::SixFoldCorrected => (
                "alpha",
                [
                    (rat(0, 1), -1, rat(-2, 1)),
                    (rat(1, 1), -1, rat(-2, 1)),
                    (rat(1, 1), 1, rat(-1, 1)),
                    (rat(1, 1), -1, rat(0, 1)),
                ],
                rat(0, 1),
                rat(1, 6),
                6,
            ),
            OctagonVariant::SixFoldAsPrinted => (
                "alpha",
                [
                    (rat(-1, 1), 1, rat(2, 1)),
                    (rat(0, 1), 1, rat(-2, 1)),
                    (rat(1, 1), -1, rat(0, 1)),
                    (rat(1, 1), 1, rat(-1, 1)),
                ],
                rat(0, 1),
                rat(1, 6),
                6,
            ),
            OctagonVariant::SixFoldExtra => (
                "t",
                [
                    (rat(0, 1), 1, rat(-5, 2)),
                    (rat(1, 1), 1, rat(-5, 2)),
                    (rat(1, 1), -1, rat(-1, 2)),
                    (rat(0, 1), 1, rat(3, 2)),
                ],
                rat(1, 6),
                rat(1, 4),
                6,
            ),
            OctagonVariant::FiveFoldBeta => (
                "beta",
                [
                    (rat(0, 1), 1, rat(-2, 1)),
                    (rat(1, 1), 1, rat(-2, 1)),
                    (rat(1, 1), -1, rat(0, 1)),
                    (rat(0, 1), 1, rat(1, 1)),
                ],
                rat(1, 4),
                rat(1, 3),
                5,
            ),
            OctagonVariant::FiveFoldAlpha => (
                "alpha",
                [
                    (rat(0, 1), -1, rat(-3, 2)),
                    (rat(1, 1), -1, rat(-3, 2)),
                    (rat(1, 1), 1, rat(-1, 2)),
                    (rat(1, 1), -1, rat(1, 2)),
                ],
                rat(0, 1),
                rat(1, 4),
                5,
            ),
        };
        let vertices = rows
            .into_iter()
            .map(|(x0, s, y)| AffineVertex {
                base: Rat2::new(x0, y),
                slope: Rat2::new(rat(s, 1), rat(0, 1)),
            })
            .collect();
        ParametricFamily {
            name: self.cli_name().to_string(),
            symbol: symbol.to_string(),
            vertices,
            lo,
            hi,
            k,
            lattice: self.is_tile_family().then(Lattice::integer),
        }
    }
}

pub fn octagon_family(variant: OctagonVariant, parameter: &Rat) -> Result<CSPolygon, FamilyError> {
    variant.family().instantiate(parameter)
}

/// Number of vertex pairs of `a` that match a vertex of `b` only after one
/// coordinate changes sign, or `None` if some pair matches neither way.
pub fn sign_flip_distance(a: &[Rat2], b: &CSPolygon) -> Option<usize> {
    let bv = b.vertices();
    let mut flips = 0;
    for v in a {
        if bv.contains(v) {
            continue;
        }
        let fx = Rat2::new(-&v.x, v.y.clone());
        let fy = Rat2::new(v.x.clone(), -&v.y);
        if bv.contains(&fx) || bv.contains(&fy) {
            flips += 1;
        } else {
            return None;
        }
    }
    Some(flips)
}
