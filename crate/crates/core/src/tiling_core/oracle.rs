use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_geom::polygon::EdgeLines;
use crate::exact_geom::rat::lcm_denominators;
use crate::exact_geom::{CSPolygon, Lattice, Rat, Rat2};

/// Sample coordinates are `s / 2^31` in lattice coordinates.
pub const SAMPLE_DENOMINATOR_BITS: u32 = 31;

/// Brute-force translate counter for a fixed pair `(P, L)`, working in the
/// coordinates of the lattice basis where translates are integer shifts.
#[derive(Clone, Debug)]
pub struct Oracle {
    lines: Vec<[BigInt; 3]>,
    small: Option<Vec<[i128; 3]>>,
    lo: (Rat, Rat),
    hi: (Rat, Rat),
    lattice: Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub requested: usize,
    pub tested: usize,
    pub resampled_on_boundary: usize,
    pub seed: u64,
    pub denominator: String,
    /// `(interior count, number of sample points)` pairs.
    pub observed: Vec<(u64, u64)>,
}

const SMALL: i128 = 1 << 50;

fn to_small(v: &BigInt) -> Option<i128> {
    v.to_i128().filter(|x| x.abs() < SMALL)
}

impl Oracle {
    pub fn new(p: &CSPolygon, l: &Lattice) -> Self {
        let pts: Vec<Rat2> = p
            .vertices()
            .iter()
            .map(|v| {
                let (a, b) = l.coords(v);
                Rat2::new(a, b)
            })
            .collect();
        let q = CSPolygon::from_points(&pts).expect("linear image of a valid polygon");
        let lines = EdgeLines::of(&q).lines;
        let small = lines
            .iter()
            .map(|r| Some([to_small(&r[0])?, to_small(&r[1])?, to_small(&r[2])?]))
            .collect::<Option<Vec<_>>>();
        let min = |f: fn(&Rat2) -> &Rat| pts.iter().map(f).min().unwrap().clone();
        let max = |f: fn(&Rat2) -> &Rat| pts.iter().map(f).max().unwrap().clone();
        Oracle {
            lo: (min(|p| &p.x), min(|p| &p.y)),
            hi: (max(|p| &p.x), max(|p| &p.y)),
            lines,
            small,
            lattice: l.clone(),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Translates `n` (lattice coordinates) with `c - n` in the closed polygon,
    /// flagged `true` when `c - n` is interior.
    pub fn translates_at_coords(&self, c: &(Rat, Rat)) -> Vec<((BigInt, BigInt), bool)> {
        let d = lcm_denominators([&c.0, &c.1]);
        let dr = Rat::from_integer(d.clone());
        let x = (&c.0 * &dr).to_integer();
        let y = (&c.1 * &dr).to_integer();
        let n1_lo = (&c.0 - &self.hi.0).ceil().to_integer();
        let n1_hi = (&c.0 - &self.lo.0).floor().to_integer();
        let n2_lo = (&c.1 - &self.hi.1).ceil().to_integer();
        let n2_hi = (&c.1 - &self.lo.1).floor().to_integer();
        let mut out = Vec::new();
        if let (Some(lines), Some(xs), Some(ys), Some(ds)) =
            (&self.small, to_small(&x), to_small(&y), to_small(&d))
        {
            let range = (
                n1_lo.to_i64(),
                n1_hi.to_i64(),
                n2_lo.to_i64(),
                n2_hi.to_i64(),
            );
            if let (Some(a0), Some(a1), Some(b0), Some(b1)) = range {
                if a1 - a0 < 1 << 20 && b1 - b0 < 1 << 20 {
                    let base: Vec<(i128, i128, i128)> = lines
                        .iter()
                        .map(|[a, b, cc]| (a * xs + b * ys + cc * ds, a * ds, b * ds))
                        .collect();
                    for n1 in a0..=a1 {
                        'n2: for n2 in b0..=b1 {
                            let mut on = false;
                            for (b, ad, bd) in &base {
                                let v = b - ad * n1 as i128 - bd * n2 as i128;
                                if v < 0 {
                                    continue 'n2;
                                }
                                on |= v == 0;
                            }
                            out.push(((BigInt::from(n1), BigInt::from(n2)), !on));
                        }
                    }
                    return out;
                }
            }
        }
        let mut n1 = n1_lo;
        while n1 <= n1_hi {
            let mut n2 = n2_lo.clone();
            'n: while n2 <= n2_hi {
                let mut on = false;
                for [a, b, cc] in &self.lines {
                    let v = a * (&x - &n1 * &d) + b * (&y - &n2 * &d) + cc * &d;
                    if v.is_negative() {
                        n2 += 1;
                        continue 'n;
                    }
                    on |= v.is_zero();
                }
                out.push(((n1.clone(), n2.clone()), !on));
                n2 += 1;
            }
            n1 += 1;
        }
        out
    }

    pub fn counts_at_coords(&self, c: &(Rat, Rat)) -> (u64, u64) {
        let t = self.translates_at_coords(c);
        let inner = t.iter().filter(|(_, i)| *i).count() as u64;
        (inner, t.len() as u64 - inner)
    }

    pub fn counts_at(&self, p: &Rat2) -> (u64, u64) {
        self.counts_at_coords(&self.lattice.coords(p))
    }
}

/// `(interior_count, boundary_count)` of the translates `P + λ` at `p`.
pub fn covering_multiplicity_at(p: &CSPolygon, l: &Lattice, q: &Rat2) -> (u64, u64) {
    Oracle::new(p, l).counts_at(q)
}

/// Samples generic points of the fundamental parallelogram; points on any
/// translate's boundary are rejected and replaced.
pub fn sample_multiplicities(oracle: &Oracle, samples: usize, seed: u64) -> OracleSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = BigInt::from(1u64 << SAMPLE_DENOMINATOR_BITS);
    let mut observed: BTreeMap<u64, u64> = BTreeMap::new();
    let (mut tested, mut rejected) = (0usize, 0usize);
    while tested < samples {
        let need = samples - tested;
        let batch: Vec<(Rat, Rat)> = (0..need)
            .map(|_| {
                let a: u64 = rng.gen_range(0..1u64 << SAMPLE_DENOMINATOR_BITS);
                let b: u64 = rng.gen_range(0..1u64 << SAMPLE_DENOMINATOR_BITS);
                (
                    Rat::new(BigInt::from(a), den.clone()),
                    Rat::new(BigInt::from(b), den.clone()),
                )
            })
            .collect();
        let counts: Vec<(u64, u64)> = batch
            .par_iter()
            .map(|c| oracle.counts_at_coords(c))
            .collect();
        for (inner, boundary) in counts {
            if boundary > 0 {
                rejected += 1;
                continue;
            }
            tested += 1;
            *observed.entry(inner).or_default() += 1;
        }
        if tested == 0 && rejected > 64 * samples.max(1) {
            break;
        }
    }
    OracleSummary {
        requested: samples,
        tested,
        resampled_on_boundary: rejected,
        seed,
        denominator: format!("2^{SAMPLE_DENOMINATOR_BITS}"),
        observed: observed.into_iter().collect(),
    }
}
