use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::affine::AffineMap;
use super::polygon::CSPolygon;
use super::rat::{Rat, Rat2};
use super::GeomError;

fn big(r: &Rat) -> BigInt {
    r.to_integer()
}

/// Unimodular `U` sending `v` to `(g, 0)` and `w` into `0 <= x < y`.
fn normalizing_matrix(v: &Rat2, w: &Rat2) -> [[BigInt; 2]; 2] {
    let (p, q) = (big(&v.x), big(&v.y));
    let eg = p.extended_gcd(&q);
    let g = eg.gcd;
    let mut u = [[eg.x, eg.y], [-&q / &g, &p / &g]];
    let (wx, wy) = (big(&w.x), big(&w.y));
    let mut y = &u[1][0] * &wx + &u[1][1] * &wy;
    if y.is_negative() {
        u[1] = [-&u[1][0], -&u[1][1]];
        y = -y;
    }
    let x = &u[0][0] * &wx + &u[0][1] * &wy;
    let s = -x.div_floor(&y);
    u[0] = [&u[0][0] + &s * &u[1][0], &u[0][1] + &s * &u[1][1]];
    u
}

/// Canonical representative of an integral polygon's orbit under GL2(Z),
/// together with a unimodular map sending `p` onto it.
///
/// Any equivalence sends a pair of adjacent vertices to a pair of adjacent
/// vertices, and each adjacent pair pins down a unique normalizing matrix, so
/// the minimum over all 4m pairs is a complete invariant. No search bound is
/// involved.
pub fn canonical_form_with_map(p: &CSPolygon) -> Result<(CSPolygon, AffineMap), GeomError> {
    if !p.is_integral() {
        return Err(GeomError::VerticesNotOnLattice);
    }
    let n = p.len();
    let mut best: Option<(CSPolygon, AffineMap)> = None;
    for i in 0..n {
        for w in [p.vertex(i + 1), p.vertex(i + n - 1)] {
            let u = AffineMap::from_big(normalizing_matrix(p.vertex(i), w))?;
            debug_assert!(u.is_unimodular());
            let img = u.apply_polygon(p)?;
            if best.as_ref().is_none_or(|(b, _)| img < *b) {
                best = Some((img, u));
            }
        }
    }
    Ok(best.expect("polygon has vertices"))
}

pub fn canonical_form(p: &CSPolygon) -> Result<CSPolygon, GeomError> {
    Ok(canonical_form_with_map(p)?.0)
}

/// Canonical form of a rational polygon: scale to integers by the least
/// common denominator, canonicalize, scale back.
pub fn canonical_form_rational(p: &CSPolygon) -> CSPolygon {
    let l = Rat::from_integer(p.denominator_lcm());
    let scaled = p.scale(&l).expect("scaling preserves validity");
    let c = canonical_form(&scaled).expect("scaled polygon is integral");
    c.scale(&l.recip()).expect("scaling preserves validity")
}

/// A unimodular map sending `a` onto `b`, if one exists.
pub fn unimodular_equivalence(
    a: &CSPolygon,
    b: &CSPolygon,
) -> Result<Option<AffineMap>, GeomError> {
    let (ca, ua) = canonical_form_with_map(a)?;
    let (cb, ub) = canonical_form_with_map(b)?;
    if ca != cb {
        return Ok(None);
    }
    Ok(Some(ub.inverse().compose(&ua)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(h: &[(i64, i64)]) -> CSPolygon {
        CSPolygon::from_half_cycle(&h.iter().map(|&(x, y)| Rat2::ints(x, y)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn invariant_under_shear() {
        let p = poly(&[(0, 1), (5, 2), (7, 2), (6, 1), (4, 0)]);
        let t = AffineMap::from_ints([[1, 3], [0, 1]]).unwrap();
        let q = t.apply_polygon(&p).unwrap();
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
        let c = canonical_form(&p).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
    }

    #[test]
    fn square_and_diamond_differ() {
        let sq = poly(&[(1, 1), (-1, 1)]);
        let di = poly(&[(1, 0), (0, 1)]);
        assert_ne!(canonical_form(&sq).unwrap(), canonical_form(&di).unwrap());
    }

    #[test]
    fn the_two_six_fold_lattice_decagons_are_equivalent() {
        let a = poly(&[(0, 1), (5, 2), (7, 2), (6, 1), (4, 0)]);
        let b = poly(&[(0, 1), (5, 3), (8, 4), (7, 3), (4, 1)]);
        let t = AffineMap::from_ints([[-3, 5], [-1, 2]]).unwrap();
        assert_eq!(t.apply_polygon(&b).unwrap(), a);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let found = unimodular_equivalence(&b, &a).unwrap().unwrap();
        assert_eq!(found.apply_polygon(&b).unwrap(), a);
    }

    #[test]
    fn rejects_rational() {
        let p = CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 0, 1), Rat2::ints(0, 1)]).unwrap();
        assert!(matches!(
            canonical_form(&p),
            Err(GeomError::VerticesNotOnLattice)
        ));
    }
}
