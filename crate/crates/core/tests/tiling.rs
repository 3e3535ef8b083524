use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sixfold::exact_geom::{rat, CSPolygon, Lattice, Rat2};
use sixfold::families::{DecagonFamily, OctagonVariant};
use sixfold::tiling_core::{
    bolle_check, covering_multiplicity_at, find_tiling_lattice, multiplicity_decomposition_at,
    verify_kfold, EdgeEvidence, FailureReason, TilingError,
};

fn certified() -> Vec<(String, CSPolygon, u64)> {
    let mut out: Vec<(String, CSPolygon, u64)> = DecagonFamily::ALL
        .iter()
        .map(|f| (f.cli_name().to_string(), f.instance(), f.k()))
        .collect();
    for (v, t) in [
        (OctagonVariant::SixFoldCorrected, rat(1, 10)),
        (OctagonVariant::SixFoldCorrected, rat(1, 7)),
        (OctagonVariant::SixFoldExtra, rat(1, 5)),
        (OctagonVariant::FiveFoldBeta, rat(3, 10)),
        (OctagonVariant::FiveFoldAlpha, rat(1, 8)),
    ] {
        let f = v.family();
        out.push((
            format!("{} {t}", v.cli_name()),
            f.instantiate(&t).unwrap(),
            f.k,
        ));
    }
    let hex = CSPolygon::from_half_cycle(&[Rat2::ints(1, 0), Rat2::ints(1, 1), Rat2::ints(0, 1)])
        .unwrap();
    out.push(("hexagon".into(), hex, 3));
    out
}

/// Vertices, edge points and lattice translates of them, topped up with
/// random rational points.
fn probe_points(p: &CSPolygon, rng: &mut ChaCha8Rng) -> Vec<Rat2> {
    let mut pts = Vec::new();
    for i in 0..p.len() {
        pts.push(p.vertex(i).clone());
        pts.push(p.midpoint(i));
        for j in [1, 2, 5] {
            pts.push(p.vertex(i) + &p.edge(i).scale(&rat(j, 7)));
        }
    }
    let shifted: Vec<Rat2> = pts
        .iter()
        .take(20)
        .map(|q| q + &Rat2::ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    pts.extend(shifted);
    pts.push(Rat2::zero());
    pts.push(Rat2::q(1, 2, 0, 1));
    while pts.len() < 100 {
        let d = rng.gen_range(2..40);
        pts.push(Rat2::q(
            rng.gen_range(-60..60),
            d,
            rng.gen_range(-60..60),
            d,
        ));
    }
    pts.truncate(100);
    pts
}

#[test]
fn interior_count_plus_turning_is_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let z = Lattice::integer();
    for (name, p, k) in certified() {
        let pts = probe_points(&p, &mut rng);
        assert_eq!(pts.len(), 100);
        let mut incidences = 0;
        for q in &pts {
            let d = multiplicity_decomposition_at(&p, &z, q)
                .unwrap_or_else(|e| panic!("{name} at {q}: {e}"));
            assert_eq!(d.k, k);
            assert_eq!(d.interior_count + d.turning_exact, k, "{name} at {q}");
            assert!((2.0 * d.turning - (2.0 * d.turning).round()).abs() < 1e-9);
            assert!((d.turning - d.turning_exact as f64).abs() < 1e-9);
            assert_eq!(d.perturbed.1, k);
            incidences += usize::from(!d.boundary_translates.is_empty());
        }
        assert!(
            incidences >= 40,
            "{name}: only {incidences} boundary points"
        );
    }
}

#[test]
fn oracle_agrees_within_budget() {
    let z = Lattice::integer();
    for (name, p, k) in certified() {
        let t = Instant::now();
        let c = verify_kfold(&p, &z, k, 1000, 0).unwrap();
        assert!(
            t.elapsed().as_secs_f64() < 2.0,
            "{name} took {:?}",
            t.elapsed()
        );
        let o = c.oracle.unwrap();
        assert_eq!(o.tested, 1000);
        assert_eq!(o.observed, vec![(k, 1000)]);
        assert_eq!(c.per_edge.len(), p.len());
    }
}

#[test]
fn lattice_edges_carry_witnesses() {
    let p = OctagonVariant::SixFoldCorrected
        .family()
        .instantiate(&rat(1, 10))
        .unwrap();
    let c = bolle_check(&p, &Lattice::integer()).unwrap();
    let lattice_edges = c
        .per_edge
        .iter()
        .filter(|e| matches!(e, EdgeEvidence::EdgeIsLatticeVector { .. }))
        .count();
    assert_eq!(lattice_edges, 2);
}

#[test]
fn printed_octagon_fails_at_the_sign_flipped_edge() {
    let p = OctagonVariant::SixFoldAsPrinted
        .family()
        .instantiate(&rat(1, 10))
        .unwrap();
    assert_eq!(p.area(), rat(28, 5));
    let Err(TilingError::BolleFailed(f)) = bolle_check(&p, &Lattice::integer()) else {
        panic!("printed octagon passed");
    };
    let from = Rat2::q(9, 10, 0, 1);
    let to = Rat2::q(-1, 10, 2, 1);
    let bad: Vec<usize> = f
        .reasons
        .iter()
        .filter_map(|r| match r {
            FailureReason::NoHalfLatticePoint { edge, .. }
            | FailureReason::NotLatticeVector { edge, .. } => Some(*edge),
            _ => None,
        })
        .collect();
    assert!(!bad.is_empty());
    for i in bad {
        let (a, b) = (p.vertex(i), p.vertex(i + 1));
        assert!(
            (a == &from && b == &to) || (a == &-&from && b == &-&to),
            "edge {i}"
        );
    }
}

#[test]
fn lattice_search() {
    let sq = CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 1, 2), Rat2::q(-1, 2, 1, 2)]).unwrap();
    let ls = find_tiling_lattice(&sq, 2).unwrap();
    assert!(!ls.is_empty());
    for l in &ls {
        assert_eq!(l.det(), rat(1, 2));
        assert_eq!(bolle_check(&sq, l).unwrap().k, 2);
    }
    let a = DecagonFamily::A.instance();
    assert!(find_tiling_lattice(&a, 6)
        .unwrap()
        .contains(&Lattice::integer()));
    assert!(find_tiling_lattice(&a, 5).unwrap().is_empty());
    assert_eq!(find_tiling_lattice(&a, 0), Err(TilingError::InvalidK));
}

#[test]
fn covering_counts_at_special_points() {
    let sq = CSPolygon::from_half_cycle(&[Rat2::q(1, 2, 1, 2), Rat2::q(-1, 2, 1, 2)]).unwrap();
    let z = Lattice::integer();
    assert_eq!(covering_multiplicity_at(&sq, &z, &Rat2::zero()), (1, 0));
    assert_eq!(
        covering_multiplicity_at(&sq, &z, &Rat2::q(1, 2, 0, 1)),
        (0, 2)
    );
    assert_eq!(
        covering_multiplicity_at(&sq, &z, &Rat2::q(1, 2, 1, 2)),
        (0, 4)
    );
}
