use sixfold::exact_geom::{rat, CSPolygon, Lattice, Rat, Rat2};
use sixfold::families::*;
use sixfold::tiling_core::{bolle_check, find_tiling_lattice, verify_kfold, TilingError};

fn q(a: i64, b: i64, c: i64, d: i64) -> Rat2 {
    Rat2::q(a, b, c, d)
}

#[test]
fn family_a_region_is_q() {
    let r = freedom_region(&family_midpoints(DecagonFamily::A), 0).unwrap();
    assert!(r.same_vertices(&[q(0, 1, 1, 1), q(0, 1, 5, 6), q(-1, 4, 3, 4), q(-1, 3, 5, 6)]));
}

#[test]
fn family_b_region_is_q_star() {
    let r = freedom_region(&family_midpoints(DecagonFamily::B), 4).unwrap();
    assert!(r.same_vertices(&[q(0, 1, 5, 4), q(1, 6, 7, 6), q(0, 1, 1, 1), q(-1, 6, 7, 6)]));
}

#[test]
fn every_anchor_has_a_nonempty_bounded_region() {
    for fam in DecagonFamily::ALL {
        for r in freedom_regions(&family_midpoints(fam)).unwrap() {
            assert!(
                !r.is_empty() && r.is_bounded(),
                "{fam:?} anchor {}",
                r.anchor
            );
            let f = r.interior_point().unwrap();
            let p = decagon_from_midpoints(&family_midpoints(fam), &f, r.anchor).unwrap();
            assert_eq!(p.area(), Rat::from_integer(fam.k().into()));
        }
    }
}

#[test]
fn family_a_instance() {
    let spec = family_midpoints(DecagonFamily::A);
    let p = decagon_from_midpoints(&spec, &q(-1, 8, 5, 6), 0).unwrap();
    assert_eq!(p.area(), rat(6, 1));
    assert!(p.vertices().contains(&q(-15, 8, 1, 6)));
    let err = decagon_from_midpoints(&spec, &q(0, 1, 1, 1), 0).unwrap_err();
    assert!(matches!(
        err,
        FamilyError::NotStrictlyConvex {
            on_boundary: true,
            ..
        }
    ));
    assert!(err.to_string().contains("free vertex"));
}

#[test]
fn closure_violation() {
    let spec = MidpointSpec {
        u: vec![q(1, 1, 0, 1), q(0, 1, 1, 1), q(1, 2, 1, 2)],
    };
    assert!(matches!(
        freedom_region(&spec, 0),
        Err(FamilyError::ClosureViolated(_))
    ));
    assert!(matches!(
        decagon_from_midpoints(&spec, &Rat2::zero(), 0),
        Err(FamilyError::ClosureViolated(_))
    ));
}

#[test]
fn decagons_certify() {
    for fam in DecagonFamily::ALL {
        let c = verify_kfold(&fam.instance(), &Lattice::integer(), fam.k(), 300, 7).unwrap();
        assert_eq!(c.k, fam.k());
    }
    let wrong = verify_kfold(&DecagonFamily::A.instance(), &Lattice::integer(), 5, 10, 1);
    assert!(matches!(wrong, Err(TilingError::BolleFailed(_))));
}

#[test]
fn octagons() {
    let beta = octagon_family(OctagonVariant::FiveFoldBeta, &rat(3, 10)).unwrap();
    assert_eq!(beta.area(), rat(5, 1));
    assert_eq!(bolle_check(&beta, &Lattice::integer()).unwrap().k, 5);
    for a in [rat(1, 10), rat(1, 12), rat(1, 7)] {
        let p = octagon_family(OctagonVariant::SixFoldCorrected, &a).unwrap();
        assert_eq!(p.area(), rat(6, 1));
        assert_eq!(bolle_check(&p, &Lattice::integer()).unwrap().k, 6);
        let printed = octagon_family(OctagonVariant::SixFoldAsPrinted, &a).unwrap();
        assert_eq!(printed.area(), rat(6, 1) - a.clone() * rat(4, 1));
    }
    let extra = octagon_family(OctagonVariant::SixFoldExtra, &rat(1, 5)).unwrap();
    assert_eq!(bolle_check(&extra, &Lattice::integer()).unwrap().k, 6);
    assert!(matches!(
        octagon_family(OctagonVariant::SixFoldCorrected, &rat(1, 6)),
        Err(FamilyError::ParameterOutOfRange { .. })
    ));
}

#[test]
fn endpoints_degenerate() {
    for v in OctagonVariant::ALL
        .into_iter()
        .filter(|v| v.is_tile_family())
    {
        let f = v.family();
        for t in [&f.lo, &f.hi] {
            assert!(f.instantiate_unchecked(t).is_err(), "{v:?} at {t}");
        }
    }
}

#[test]
fn printed_octagon_has_no_lattice() {
    for a in [rat(1, 10), rat(1, 12)] {
        let p = octagon_family(OctagonVariant::SixFoldAsPrinted, &a).unwrap();
        assert!(find_tiling_lattice(&p, 6).unwrap().is_empty());
        let c = octagon_family(OctagonVariant::SixFoldCorrected, &a).unwrap();
        assert!(find_tiling_lattice(&c, 6)
            .unwrap()
            .contains(&Lattice::integer()));
        let printed = OctagonVariant::SixFoldAsPrinted.family().points(&a);
        assert_eq!(sign_flip_distance(&printed, &c), Some(1));
    }
}

#[test]
fn unit_square_lattice() {
    let sq = CSPolygon::from_half_cycle(&[q(1, 2, 1, 2), q(-1, 2, 1, 2)]).unwrap();
    assert!(find_tiling_lattice(&sq, 1)
        .unwrap()
        .contains(&Lattice::integer()));
}
