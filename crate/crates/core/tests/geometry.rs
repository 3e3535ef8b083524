use proptest::prelude::*;
use sixfold::exact_geom::json::{polygon_from_json, polygon_to_json};
use sixfold::exact_geom::{
    canonical_form, canonical_form_with_map, pick_count, rat, shoelace, unimodular_equivalence,
    AffineMap, CSPolygon, Lattice, Location, Rat2,
};
use sixfold::families::{DecagonFamily, OctagonVariant};
use sixfold::tiling_core::{bolle_check, Oracle};

fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Products of elementary shears and sign changes.
fn unimodular(steps: &[(u8, i64)]) -> AffineMap {
    let mut m = AffineMap::identity();
    for &(kind, s) in steps {
        let e = match kind % 4 {
            0 => [[1, s], [0, 1]],
            1 => [[1, 0], [s, 1]],
            2 => [[0, 1], [1, 0]],
            _ => [[-1, 0], [0, 1]],
        };
        m = AffineMap::from_ints(e).unwrap().compose(&m);
    }
    m
}

fn steps() -> impl Strategy<Value = Vec<(u8, i64)>> {
    prop::collection::vec((0u8..4, -3i64..=3), 1..6)
}

fn tiles() -> Vec<CSPolygon> {
    let mut out: Vec<CSPolygon> = DecagonFamily::ALL.iter().map(|f| f.instance()).collect();
    out.push(
        OctagonVariant::SixFoldCorrected
            .family()
            .instantiate(&rat(1, 10))
            .unwrap(),
    );
    out.push(
        OctagonVariant::FiveFoldBeta
            .family()
            .instantiate(&rat(3, 10))
            .unwrap(),
    );
    out.push(
        OctagonVariant::SixFoldAsPrinted
            .family()
            .instantiate(&rat(1, 10))
            .unwrap(),
    );
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pick_matches_shoelace(pts in prop::collection::vec((-12i64..=12, -12i64..=12), 3..14),
                             basis in ((1i64..4, -3i64..=3), (-3i64..=3, 1i64..4), 1i64..4)) {
        let h = hull(pts);
        prop_assume!(h.len() >= 3);
        let ((a, b), (c, d), den) = basis;
        prop_assume!(a * d - b * c != 0);
        let b1 = Rat2::new(rat(a, den), rat(b, den));
        let b2 = Rat2::new(rat(c, den), rat(d, den));
        let l = Lattice::new(b1.clone(), b2.clone()).unwrap();
        let verts: Vec<Rat2> = h
            .iter()
            .map(|&(x, y)| &b1.scale(&rat(x, 1)) + &b2.scale(&rat(y, 1)))
            .collect();
        let pc = pick_count(&verts, &l).unwrap();
        prop_assert_eq!(pc.pick_area() * l.det(), shoelace(&verts));
        prop_assert_eq!(pc.area, shoelace(&verts));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn verdicts_are_unimodular_invariant(s in steps()) {
        let u = unimodular(&s);
        prop_assert!(u.is_unimodular());
        let z = Lattice::integer();
        for p in tiles() {
            let before = bolle_check(&p, &z).map(|c| c.k).ok();
            let q = u.apply_polygon(&p).unwrap();
            prop_assert_eq!(bolle_check(&q, &u.apply_lattice(&z)).map(|c| c.k).ok(), before);
            prop_assert_eq!(bolle_check(&q, &z).map(|c| c.k).ok(), before);
        }
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(s in steps()) {
        let u = unimodular(&s);
        for f in DecagonFamily::ALL {
            let q = CSPolygon::from_half_cycle(
                &sixfold::families::family_midpoints(f).u.iter().map(Rat2::double).collect::<Vec<_>>(),
            )
            .unwrap();
            let img = u.apply_polygon(&q).unwrap();
            prop_assert_eq!(canonical_form(&img).unwrap(), canonical_form(&q).unwrap());
            let t = unimodular_equivalence(&q, &img).unwrap().unwrap();
            prop_assert_eq!(t.apply_polygon(&q).unwrap(), img);
        }
    }

    #[test]
    fn counts_are_translation_invariant(x in -40i64..40, y in -40i64..40, den in 3i64..50,
                                        a in -5i64..5, b in -5i64..5) {
        let z = Lattice::integer();
        for p in tiles() {
            let o = Oracle::new(&p, &z);
            let q = Rat2::new(rat(x, den), rat(y, den));
            let shifted = &q + &Rat2::ints(a, b);
            prop_assert_eq!(o.counts_at(&q), o.counts_at(&shifted));
        }
    }
}

#[test]
fn canonical_map_reaches_the_form() {
    let q = CSPolygon::from_half_cycle(&[
        Rat2::ints(0, 1),
        Rat2::ints(5, 2),
        Rat2::ints(7, 2),
        Rat2::ints(6, 1),
        Rat2::ints(4, 0),
    ])
    .unwrap();
    assert_eq!(q.area(), rat(22, 1));
    let (form, map) = canonical_form_with_map(&q).unwrap();
    assert!(map.is_unimodular());
    assert_eq!(map.apply_polygon(&q).unwrap(), form);
}

#[test]
fn doubled_midpoints_map_onto_family_a() {
    let q = [(0, 1), (5, 2), (7, 2), (6, 1), (4, 0)];
    // x' = (x - 2y) / 2, y' = y / 2
    let m = AffineMap::linear([[rat(1, 2), rat(-1, 1)], [rat(0, 1), rat(1, 2)]]).unwrap();
    let got: Vec<Rat2> = q.iter().map(|&(x, y)| m.apply(&Rat2::ints(x, y))).collect();
    assert_eq!(got, sixfold::families::family_midpoints(DecagonFamily::A).u);
}

#[test]
fn locate_on_unit_square() {
    let sq = CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 1, 2), Rat2::q(-1, 2, 1, 2)]).unwrap();
    assert_eq!(sq.area(), rat(1, 1));
    assert_eq!(sq.locate(&Rat2::zero()), Location::Interior);
    assert!(matches!(
        sq.locate(&Rat2::q(1, 2, 0, 1)),
        Location::OnEdge { .. }
    ));
    assert!(matches!(
        sq.locate(&Rat2::q(1, 2, 1, 2)),
        Location::AtVertex(_)
    ));
    assert_eq!(sq.locate(&Rat2::q(1, 1, 0, 1)), Location::Exterior);
}

#[test]
fn json_is_bit_exact() {
    for p in tiles() {
        let s = polygon_to_json(&p);
        assert_eq!(polygon_to_json(&polygon_from_json(&s).unwrap()), s);
    }
    let zero = CSPolygon::from_half_cycle(&[Rat2::ints(1, 0), Rat2::ints(0, 1)]).unwrap();
    assert!(polygon_to_json(&zero).contains("\"0\""));
    assert!(!polygon_to_json(&zero).contains("0/1"));
}
