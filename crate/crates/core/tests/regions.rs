use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sixfold::exact_geom::region::inside_open;
use sixfold::exact_geom::{rat, Lattice, Rat, Rat2};
use sixfold::families::{
    decagon_from_midpoints, family_midpoints, free_vertex_of, freedom_region, DecagonFamily,
    FamilyError, FreedomRegion,
};
use sixfold::tiling_core::bolle_check;

fn region(f: DecagonFamily) -> FreedomRegion {
    freedom_region(&family_midpoints(f), f.reference_anchor()).unwrap()
}

fn centroid(r: &FreedomRegion) -> Rat2 {
    r.interior_point().unwrap()
}

/// Random point of the open region as a positive combination of its vertices.
fn random_inside(r: &FreedomRegion, rng: &mut ChaCha8Rng) -> Rat2 {
    let w: Vec<i64> = r.vertices.iter().map(|_| rng.gen_range(1..50)).collect();
    let total: i64 = w.iter().sum();
    r.vertices
        .iter()
        .zip(&w)
        .fold(Rat2::zero(), |acc, (v, &wi)| {
            &acc + &v.scale(&rat(wi, total))
        })
}

#[test]
fn area_does_not_depend_on_the_free_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for fam in DecagonFamily::ALL {
        let r = region(fam);
        let spec = family_midpoints(fam);
        let k = Rat::from_integer(fam.k().into());
        for _ in 0..50 {
            let f = random_inside(&r, &mut rng);
            let p = decagon_from_midpoints(&spec, &f, r.anchor).unwrap();
            assert_eq!(p.area(), k, "{fam:?} at {f}");
            assert_eq!(bolle_check(&p, &Lattice::integer()).unwrap().k, fam.k());
            assert_eq!(free_vertex_of(&p, &spec, r.anchor), Some(f));
        }
    }
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum Side {
    Inside,
    Boundary,
    Outside,
}

/// Forty probes: shrunk and stretched copies of the vertices and edge
/// midpoints about the centroid, plus vertices and edge points.
fn probes(r: &FreedomRegion) -> Vec<(Rat2, Side)> {
    let c = centroid(r);
    let n = r.vertices.len();
    let toward = |p: &Rat2, s: Rat| &c + &(p - &c).scale(&s);
    let mut out = vec![(c.clone(), Side::Inside)];
    for i in 0..n {
        let v = &r.vertices[i];
        let w = &r.vertices[(i + 1) % n];
        let mid = (v + w).half();
        for s in [rat(1, 3), rat(2, 3), rat(9, 10)] {
            out.push((toward(v, s), Side::Inside));
        }
        out.push((toward(&mid, rat(99, 100)), Side::Inside));
        out.push((v.clone(), Side::Boundary));
        for t in [rat(1, 3), rat(1, 2)] {
            out.push((v + &(w - v).scale(&t), Side::Boundary));
        }
        for s in [rat(11, 10), rat(2, 1)] {
            out.push((toward(v, s), Side::Outside));
        }
        out.push((toward(&mid, rat(101, 100)), Side::Outside));
    }
    out.truncate(40);
    out
}

#[test]
fn membership_matches_construction_on_forty_probes() {
    for fam in [DecagonFamily::A, DecagonFamily::B] {
        let r = region(fam);
        assert_eq!(r.vertices.len(), 4);
        let spec = family_midpoints(fam);
        let ps = probes(&r);
        assert_eq!(ps.len(), 40);
        for side in [Side::Inside, Side::Boundary, Side::Outside] {
            assert!(ps.iter().filter(|(_, s)| *s == side).count() >= 8);
        }
        for (f, side) in ps {
            let built = decagon_from_midpoints(&spec, &f, r.anchor);
            assert_eq!(r.contains(&f), side == Side::Inside, "{fam:?} {f}");
            assert_eq!(inside_open(&r.vertices, &f), side == Side::Inside);
            match side {
                Side::Inside => assert!(built.is_ok(), "{fam:?} {f}"),
                Side::Boundary => assert!(matches!(
                    built,
                    Err(FamilyError::NotStrictlyConvex {
                        on_boundary: true,
                        ..
                    })
                )),
                Side::Outside => assert!(
                    matches!(
                        built,
                        Err(FamilyError::NotStrictlyConvex {
                            on_boundary: false,
                            ..
                        })
                    ),
                    "{fam:?} {f}"
                ),
            }
        }
    }
}

#[test]
fn regions_move_with_the_midpoints() {
    let spec = family_midpoints(DecagonFamily::A);
    let r = freedom_region(&spec, 0).unwrap();
    // y -> y + x keeps Z^2; the region is carried along.
    let shear = |p: &Rat2| Rat2::new(p.x.clone(), &p.y + &p.x);
    let moved = sixfold::families::MidpointSpec {
        u: spec.u.iter().map(shear).collect(),
    };
    let r2 = freedom_region(&moved, 0).unwrap();
    let image: Vec<Rat2> = r.vertices.iter().map(shear).collect();
    assert!(r2.same_vertices(&image));
}
