use aos_core::operator::*;
use aos_core::spaces::*;
use aos_core::Complex64;
use std::sync::Arc;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn two_by_two(a: Complex64) -> GramMatrix {
    GramMatrix::from_entries(2, vec![c(1.0), a, a.conj(), c(1.0)]).unwrap()
}

fn gauss_space() -> Space {
    Space::new(
        WeightedMeasure::new(MeasureKind::Gaussian { beta: 0.5, q: (-1.0f64).exp() }).unwrap(),
        SequenceFamily::new(FamilyKind::Fourier, FrequencySchedule::integer()),
    )
    .unwrap()
}

fn circle_space() -> Space {
    Space::new(
        WeightedMeasure::new(MeasureKind::CircleUniform).unwrap(),
        SequenceFamily::new(FamilyKind::Fourier, FrequencySchedule::integer()),
    )
    .unwrap()
}

#[test]
fn two_by_two_spectrum() {
    for a in [c(0.3), c(-0.6), Complex64::new(0.2, 0.4)] {
        let g = two_by_two(a);
        let r = a.norm();
        assert!((operator_norm(&g, 1e-14).unwrap() - (1.0 + r)).abs() < 1e-10);
        assert!((min_eigenvalue(&g).unwrap() - (1.0 - r)).abs() < 1e-12);
        let s = schur_constant(&g, None);
        assert!((s.finite_sup - (1.0 + r)).abs() < 1e-15);
        assert!(!s.certified);
        assert_eq!(s.tail_bound, 0.0);
        assert!((schur_geometric_mean(&g) - (1.0 + r)).abs() < 1e-15);
    }
}

#[test]
fn from_entries_rejects_non_hermitian() {
    assert!(GramMatrix::from_entries(2, vec![c(1.0), c(0.5), c(0.1), c(1.0)]).is_err());
    assert!(GramMatrix::from_entries(2, vec![c(1.0); 3]).is_err());
}

#[test]
fn certified_upper_sets_tail() {
    let g = two_by_two(c(0.5));
    let s = schur_constant(&g, Some(2.0));
    assert!(s.certified);
    assert!((s.tail_bound - 0.5).abs() < 1e-15);
    assert_eq!(s.upper(), 2.0);
    // the tail never goes negative
    assert_eq!(schur_constant(&g, Some(1.0)).tail_bound, 0.0);
}

#[test]
fn gaussian_gram_entries() {
    let g = build_gram(&gauss_space(), 8, GramMode::Both).unwrap();
    assert!((g.get(2, 5).re - (-4.5f64).exp()).abs() < 1e-16);
    assert_eq!(g.get(3, 3), c(1.0));
    assert!(g.max_discrepancy.unwrap() < 1e-12);
    let lead = g.leading(3);
    assert_eq!(lead.n, 3);
    assert_eq!(lead.get(3, 1), g.get(3, 1));
}

#[test]
fn identity_gram_is_trivial() {
    let g = build_gram(&circle_space(), 16, GramMode::Both).unwrap();
    let id = GramMatrix::identity(16);
    for (a, b) in g.entries.iter().zip(&id.entries) {
        assert!((a - b).norm() < 1e-12);
    }
    assert!((schur_constant(&g, Some(1.0)).upper() - 1.0).abs() < 1e-12);
    assert!((operator_norm(&g, 1e-14).unwrap() - 1.0).abs() < 1e-12);
    assert!((min_eigenvalue(&g).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn norm_chain_on_gauss() {
    let g = build_gram(&gauss_space(), 32, GramMode::Closed).unwrap();
    let op = operator_norm(&g, 1e-13).unwrap();
    let geo = schur_geometric_mean(&g);
    let s = schur_constant(&g, Some(2.5066282746310002));
    assert!(op <= geo * (1.0 + 1e-9));
    assert!(geo <= s.upper() * (1.0 + 1e-9));
    assert!(min_eigenvalue(&g).unwrap() >= -1e-9 * s.upper());
    assert!(min_eigenvalue(&g).unwrap() <= op);
}

#[test]
fn bessel_equality_for_span_of_orthonormal_system() {
    let s = circle_space();
    // f = 2 e^{ix} − 3i e^{3ix}: Σ|(f, φ_n)|² = ‖f‖² = 13
    let f = TestFunction::new(
        "span",
        Arc::new(|p: &Point| Complex64::from_polar(2.0, p.x) + Complex64::new(0.0, -3.0) * Complex64::from_polar(1.0, 3.0 * p.x)),
    )
    .with_bandwidth(3.0)
    .with_sup(5.0);
    let g = build_gram(&s, 8, GramMode::Closed).unwrap();
    let schur = schur_constant(&g, Some(1.0));
    let r = bessel_verify(&s, &f, 8, &schur, &CheckOptions::default()).unwrap();
    assert!((r.lhs_partial - 13.0).abs() < 1e-12);
    assert!((r.norm_sq - 13.0).abs() < 1e-12);
    assert!(r.margin.abs() <= r.budget + 1e-12);
    assert_eq!(r.status, Status::Pass);
    assert!((r.partial(1) - 4.0).abs() < 1e-12);
    assert!((r.partial(3) - 13.0).abs() < 1e-12);
}

#[test]
fn bessel_uncertified_is_advisory_and_violation_fails() {
    let s = gauss_space();
    let f = TestFunction::new("one", Arc::new(|_: &Point| c(1.0))).with_sup(1.0);
    let g = build_gram(&s, 16, GramMode::Closed).unwrap();
    let r = bessel_verify(&s, &f, 16, &schur_constant(&g, None), &CheckOptions::default()).unwrap();
    assert_eq!(r.status, Status::Advisory);
    // (1, φ_n) = e^{−n²/2}
    for (n, t) in r.terms.iter().enumerate() {
        let k = (n + 1) as f64;
        assert!((t - (-k * k).exp()).abs() < 1e-12);
    }
    // an artificially tiny constant must fail
    let tiny = SchurEstimate { finite_sup: 1e-3, tail_bound: 0.0, certified: true, achieved_at_row: 1 };
    assert_eq!(bessel_verify(&s, &f, 16, &tiny, &CheckOptions::default()).unwrap().status, Status::Fail);
}

#[test]
fn riesz_fischer_on_gauss_e1() {
    let g = build_gram(&gauss_space(), 64, GramMode::Closed).unwrap();
    let mut x = vec![c(0.0); 32];
    x[0] = c(1.0);
    let schur = schur_constant(&g, Some(2.5066282746310002));
    let r = riesz_fischer(&g, &x, 32, 32, &schur, &CheckOptions::default()).unwrap();
    let oracle: f64 = (1..60).map(|k| (-(k * k) as f64).exp()).sum();
    assert!((r.residual - oracle).abs() < 1e-12, "{}", r.residual);
    assert!((r.residual - 0.3863186).abs() < 1e-6);
    assert!(r.residual <= r.bound);
    assert_eq!(r.cauchy_defect, 0.0);
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn riesz_fischer_identity_residual_zero() {
    let g = GramMatrix::identity(16);
    let x: Vec<Complex64> = (0..16).map(|k| Complex64::new(1.0 / (k + 1) as f64, 0.5)).collect();
    let schur = schur_constant(&g, Some(1.0));
    let r = riesz_fischer(&g, &x, 8, 8, &schur, &CheckOptions::default()).unwrap();
    assert!(r.residual <= 1e-18);
    let tail: f64 = x[8..].iter().map(|z| z.norm_sqr()).sum();
    assert!((r.cauchy_defect - tail).abs() < 1e-14);
    assert!(riesz_fischer(&g, &x, 8, 9, &schur, &CheckOptions::default()).is_err());
}

#[test]
fn compactness_of_identity_fails_both_criteria() {
    let g = GramMatrix::identity(64);
    let d = compactness_from_gram(&g, &[4, 8, 16]);
    assert_eq!(d.hs_partial, vec![4.0, 8.0, 16.0]);
    assert!(d.row_tail_sup.iter().all(|&r| r == 1.0));
    assert!(d.col_tail_sup.iter().all(|&r| r == 1.0));
}

#[test]
fn compactness_of_gauss_grows_but_stays_bounded() {
    let d = compactness_diagnostics(&gauss_space(), &[4, 8, 16], GramMode::Closed).unwrap();
    for (k, &n) in d.n_list.iter().enumerate() {
        assert!(d.hs_partial[k] >= (n as f64 - 1.0) / std::f64::consts::E);
        assert!(d.row_tail_sup[k] > 2.0 && d.row_tail_sup[k] < 2.51);
    }
    assert!(compactness_diagnostics(&gauss_space(), &[8, 4], GramMode::Closed).is_err());
}

#[test]
fn status_combination() {
    assert_eq!(Status::Pass.and(Status::Advisory), Status::Advisory);
    assert_eq!(Status::Advisory.and(Status::Fail), Status::Fail);
    assert_eq!(Status::parse(Status::Pass.as_str()), Some(Status::Pass));
}
