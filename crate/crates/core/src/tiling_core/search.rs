use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{bolle_check, TilingError};
use crate::exact_geom::{CSPolygon, Lattice, Rat, Rat2};

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSearch {
    pub k: u64,
    pub subsets: usize,
    pub rank_deficient: usize,
    pub superlattices_checked: usize,
    #[serde(skip)]
    pub lattices: Vec<Lattice>,
}

/// Every lattice `L` for which `P + L` passes Bolle's criterion with
/// multiplicity `k`.
///
/// Each edge pair either has its doubled midpoint in `L` or is itself a
/// lattice vector, so `L` contains one of `2^m` generator lattices `L0` and
/// has index `det(L0) * k / area` over it.
pub fn find_tiling_lattice_report(p: &CSPolygon, k: u64) -> Result<LatticeSearch, TilingError> {
    if k == 0 {
        return Err(TilingError::InvalidK);
    }
    let m = p.m();
    let area = p.area();
    let kr = Rat::from_integer(k.into());
    let mut bases = BTreeSet::new();
    let mut rank_deficient = 0;
    for mask in 0u64..(1u64 << m) {
        let gens: Vec<Rat2> = (0..m)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    p.midpoint(i).double()
                } else {
                    p.edge(i)
                }
            })
            .collect();
        match Lattice::from_generators(&gens) {
            Ok(l0) => {
                let n = l0.det() * &kr / &area;
                if n.is_integer() && n.is_positive() {
                    if let Some(n) = n.to_integer().to_u64() {
                        bases.insert((l0, n));
                    }
                }
            }
            Err(_) => rank_deficient += 1,
        }
    }
    if rank_deficient == 1 << m {
        return Err(TilingError::RankDeficientGenerators);
    }
    let candidates: Vec<Lattice> = bases
        .iter()
        .flat_map(|(l0, n)| l0.superlattices(*n))
        .collect();
    let checked = candidates.len();
    let found: BTreeSet<Lattice> = candidates
        .into_par_iter()
        .filter(|l| matches!(bolle_check(p, l), Ok(c) if c.k == k))
        .collect();
    Ok(LatticeSearch {
        k,
        subsets: 1 << m,
        rank_deficient,
        superlattices_checked: checked,
        lattices: found.into_iter().collect(),
    })
}

pub fn find_tiling_lattice(p: &CSPolygon, k: u64) -> Result<Vec<Lattice>, TilingError> {
    Ok(find_tiling_lattice_report(p, k)?.lattices)
}
