use super::*;
use crate::algebra::{make_presentation, PresId, Regime};
use crate::qrat::CParam;
use crate::reps::{build_cross_i, build_cross_ii, build_podles, build_yc, ParamSet, Sector, Sign};
use num_rational::BigRational;

fn rat(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn params(c: CParam) -> ParamSet {
    ParamSet::new(rat(1, 2), c).unwrap()
}

fn h(d: i64) -> HalfInt {
    HalfInt::from_doubled(d)
}

#[test]
fn spin_rep_is_exact() {
    let rep = build_spin(h(3), &rat(1, 2)).unwrap();
    let p = make_presentation(PresId::Uq, Regime::CFinite);
    let reports = check_relations(&rep, &p, 1e-12).unwrap();
    assert!(all_pass(&reports));
    for r in &reports {
        assert_eq!(r.vectors_skipped, 0, "{} skipped vectors", r.relation_id);
    }
    let stars = check_star(&rep, &p, 1e-12).unwrap();
    assert!(all_pass(&stars));
}

#[test]
fn podles_passes_with_boundary_skips() {
    let rep = build_podles(&params(CParam::Finite(rat(1, 1))), Sector::Plus).unwrap();
    let p = make_presentation(PresId::Podles, Regime::CFinite);
    let reports = check_relations(&rep, &p, 1e-9).unwrap();
    assert!(all_pass(&reports));
    let bbs = reports
        .iter()
        .find(|r| r.relation_id.starts_with("BB*"))
        .unwrap();
    // the B* step escapes from the top level only
    assert_eq!(bbs.vectors_skipped, 1);
    assert_eq!(bbs.vectors_checked, 8);
}

#[test]
fn perturbed_entry_is_detected() {
    let mut rep = build_podles(&params(CParam::Finite(rat(1, 1))), Sector::Plus).unwrap();
    let p = make_presentation(PresId::Podles, Regime::CFinite);
    rep.ops
        .get_mut("B")
        .unwrap()
        .mat
        .add_to(3, 4, num_complex::Complex64::new(1e-3, 0.0));
    let reports = check_relations(&rep, &p, 1e-9).unwrap();
    assert!(!all_pass(&reports));
    let bsb = reports
        .iter()
        .find(|r| r.relation_id.starts_with("B*B"))
        .unwrap();
    assert!(!bsb.pass);
}

#[test]
fn star_checks_yc_and_podles() {
    let rep = build_yc(&params(CParam::Finite(rat(1, 1)))).unwrap();
    let p = make_presentation(PresId::Yc, Regime::CFinite);
    let reports = check_star(&rep, &p, 1e-12).unwrap();
    assert!(all_pass(&reports), "{:?}", reports);
    let rep = build_podles(&params(CParam::Finite(rat(1, 1))), Sector::Minus).unwrap();
    let p = make_presentation(PresId::Podles, Regime::CFinite);
    assert!(all_pass(&check_star(&rep, &p, 1e-12).unwrap()));
}

#[test]
fn commutant_negative_control() {
    let rep = build_cross_i(&params(CParam::Finite(rat(1, 1)))).unwrap();
    let e = rep.op("E").unwrap();
    let a = rep.op("A").unwrap();
    let b = rep.op("B").unwrap();
    let reports = check_commutant(&rep.basis, &[("E", e)], &[("A", a), ("B", b)], 1e-9);
    // E does not commute with the sphere: EA = AE + q^{-1/2} B*K
    assert!(reports.iter().all(|r| !r.pass), "{:?}", reports);
    // A commutes with B up to the q-factor only, but A with itself trivially
    let aa = check_commutant(&rep.basis, &[("A", a)], &[("A", a)], 1e-12);
    assert!(all_pass(&aa));
}

#[test]
fn restriction_decomposition_and_fault_injection() {
    let p = params(CParam::Finite(rat(1, 1))).with_l0(h(1));
    let rep = build_cross_ii(&p, h(9)).unwrap();
    let report = check_restriction_decomposition(&rep, h(1), 1e-10).unwrap();
    assert!(report.pass, "residual {:.3e}", report.max_residual);
    let mut bad = build_cross_ii(&p, h(9)).unwrap();
    // inject an off-block entry into K (couples two different l blocks)
    let r = bad.basis.position(Label::Spin { l2: 3, j2: 1 }).unwrap();
    let c = bad.basis.position(Label::Spin { l2: 1, j2: 1 }).unwrap();
    bad.ops
        .get_mut("K")
        .unwrap()
        .mat
        .add_to(r, c, num_complex::Complex64::new(1e-3, 0.0));
    let report = check_restriction_decomposition(&bad, h(1), 1e-10).unwrap();
    assert!(!report.pass);
}

#[test]
fn morphism_agreement() {
    let rep = build_spin(h(2), &rat(1, 2)).unwrap();
    let p = make_presentation(PresId::Uq, Regime::CFinite);
    let report = check_morphism(&rep, &p, 50, 4, 1e-10, 7).unwrap();
    assert!(report.pass, "max deviation {:.3e}", report.max_residual);

    let rep = build_cross_i(&params(CParam::Finite(rat(1, 1)))).unwrap();
    let p = make_presentation(PresId::Cross, Regime::CFinite);
    let report = check_morphism(&rep, &p, 200, 4, 1e-8, 7).unwrap();
    assert!(report.pass, "max deviation {:.3e}", report.max_residual);
    assert!(report.vectors_checked > 0);
}

#[test]
fn morphism_is_deterministic() {
    let rep = build_yc(&params(CParam::Finite(rat(1, 1)))).unwrap();
    let p = make_presentation(PresId::Yc, Regime::CFinite);
    let a = check_morphism(&rep, &p, 60, 4, 1e-8, 11).unwrap();
    let b = check_morphism(&rep, &p, 60, 4, 1e-8, 11).unwrap();
    assert_eq!(a.max_residual, b.max_residual);
    assert_eq!(a.vectors_checked, b.vectors_checked);
}

#[test]
fn enlarging_cutoff_preserves_interior_residuals() {
    let p8 = params(CParam::Finite(rat(1, 1)));
    let p16 = p8.clone().with_cutoff(16);
    let pres = make_presentation(PresId::Podles, Regime::CFinite);
    let r8 = check_relations(&build_podles(&p8, Sector::Plus).unwrap(), &pres, 1e-9).unwrap();
    let r16 = check_relations(&build_podles(&p16, Sector::Plus).unwrap(), &pres, 1e-9).unwrap();
    for (a, b) in r8.iter().zip(r16.iter()) {
        assert!(a.pass && b.pass);
        assert!((a.max_residual - b.max_residual).abs() <= 1e-12);
    }
}

#[test]
fn empty_interior_reports_failure() {
    let r = Report::new("degenerate", 1e-9, 0.0, 0, 5);
    assert!(!r.pass);
}

#[test]
fn exact_gate_runs() {
    for id in [PresId::Uq, PresId::Podles, PresId::Cross] {
        assert!(exact_gate(&make_presentation(id, Regime::CFinite)));
    }
}
