use aos_core::specfun::gamma_complex;
use aos_core::spaces::*;
use aos_core::Complex64;
use std::sync::Arc;

fn space(kind: MeasureKind, family: FamilyKind, sched: FrequencySchedule) -> Space {
    Space::new(WeightedMeasure::new(kind).unwrap(), SequenceFamily::new(family, sched)).unwrap()
}

fn standard_normal() -> MeasureKind {
    MeasureKind::Gaussian { beta: 0.5, q: (-1.0f64).exp() }
}

fn catalog_spaces() -> Vec<(&'static str, Space)> {
    vec![
        ("gauss", space(standard_normal(), FamilyKind::Fourier, FrequencySchedule::integer())),
        ("gamma", space(MeasureKind::Gamma { sigma: 2.0 }, FamilyKind::Mellin, FrequencySchedule::integer())),
        ("beta", space(MeasureKind::Beta { p: 2.0, q: 3.0 }, FamilyKind::Mellin, FrequencySchedule::integer())),
        ("circle", space(MeasureKind::CircleUniform, FamilyKind::Fourier, FrequencySchedule::integer())),
        ("zetatail", space(MeasureKind::DiscreteZetaTail { sigma: 3.0 }, FamilyKind::Dirichlet, FrequencySchedule::shifted())),
        ("mangoldt", space(MeasureKind::DiscreteMangoldt { sigma: 3.0 }, FamilyKind::Dirichlet, FrequencySchedule::shifted())),
    ]
}

#[test]
fn measures_are_probability_measures() {
    for (name, s) in catalog_spaces() {
        let m = s.measure.total_mass().unwrap();
        let tol = if s.measure.kind.is_discrete() { 1e-9 } else { 1e-12 };
        assert!((m - 1.0).abs() < tol, "{name}: mass {m}");
    }
}

#[test]
fn gaussian_gram_is_theta_kernel() {
    let s = space(standard_normal(), FamilyKind::Fourier, FrequencySchedule::integer());
    let e = gram_entry(&s, 2, 5, GramMode::Both).unwrap();
    assert!((e.value.re - (-4.5f64).exp()).abs() < 1e-16);
    assert!(e.provenance.discrepancy().unwrap() < 1e-12);
    // general (β, q): q^{β(λ_m − λ_n)²}
    let s = space(MeasureKind::Gaussian { beta: 1.0, q: 0.3 }, FamilyKind::Fourier, FrequencySchedule::integer());
    let e = gram_entry(&s, 1, 3, GramMode::Both).unwrap();
    assert!((e.value.re - 0.3f64.powi(4)).abs() < 1e-16);
    assert!(e.provenance.discrepancy().unwrap() < 1e-12);
}

#[test]
fn gamma_gram_is_gamma_quotient() {
    let s = space(MeasureKind::Gamma { sigma: 2.0 }, FamilyKind::Mellin, FrequencySchedule::integer());
    for (m, n) in [(1usize, 2usize), (4, 1), (3, 7)] {
        let e = gram_entry(&s, m, n, GramMode::Both).unwrap();
        let d = (m as f64) - (n as f64);
        let want = gamma_complex(Complex64::new(2.0, d)).unwrap();
        assert!((e.value - want).norm() < 1e-13, "({m},{n}): {} vs {want}", e.value);
        assert!(e.provenance.discrepancy().unwrap() < 1e-10);
    }
}

#[test]
fn beta_gram_is_beta_quotient() {
    let (p, q) = (2.0, 3.0);
    let s = space(MeasureKind::Beta { p, q }, FamilyKind::Mellin, FrequencySchedule::integer());
    let e = gram_entry(&s, 3, 1, GramMode::Both).unwrap();
    // B(p + 2i, q)/B(p, q)
    let z = Complex64::new(p, 2.0);
    let want = gamma_complex(z).unwrap() * gamma_complex(Complex64::new(p + q, 0.0)).unwrap()
        / (gamma_complex(z + q).unwrap() * gamma_complex(Complex64::new(p, 0.0)).unwrap());
    assert!((e.value - want).norm() < 1e-13, "{} vs {want}", e.value);
    assert!(e.provenance.discrepancy().unwrap() < 1e-10);
}

#[test]
fn circle_gram_is_identity() {
    let s = space(MeasureKind::CircleUniform, FamilyKind::Fourier, FrequencySchedule::integer());
    for m in 1..=10 {
        for n in 1..=10 {
            let e = gram_entry(&s, m, n, GramMode::Both).unwrap();
            let want = if m == n { 1.0 } else { 0.0 };
            assert!((e.value.re - want).abs() < 1e-15 && e.value.im.abs() < 1e-15);
            assert!(e.provenance.discrepancy().unwrap() < 1e-12);
        }
    }
}

#[test]
fn zetatail_gram_matches_direct_sum() {
    let s = space(MeasureKind::DiscreteZetaTail { sigma: 3.0 }, FamilyKind::Dirichlet, FrequencySchedule::shifted());
    let direct = |s_: f64| (2..200_000u64).rev().map(|k| (k as f64).powf(-s_)).sum::<f64>();
    let norm = direct(3.0);
    assert!((s.measure.discrete_normalizer().unwrap() - norm).abs() < 1e-10);
    for (m, n) in [(1usize, 1usize), (2, 3), (5, 4)] {
        let e = gram_entry(&s, m, n, GramMode::Both).unwrap();
        let want = direct(3.0 + (m - 1) as f64 + (n - 1) as f64) / norm;
        assert!((e.value.re - want).abs() < 1e-10, "({m},{n})");
        assert!(e.provenance.discrepancy().unwrap() < 1e-9);
    }
}

#[test]
fn gram_is_hermitian() {
    for (name, s) in catalog_spaces() {
        for m in 1..=6 {
            for n in 1..=6 {
                let a = gram_entry(&s, m, n, GramMode::Closed).unwrap().value;
                let b = gram_entry(&s, n, m, GramMode::Closed).unwrap().value;
                assert!((a - b.conj()).norm() <= 1e-10, "{name} ({m},{n})");
                let a = gram_entry(&s, m, n, GramMode::Numeric).unwrap().value;
                let b = gram_entry(&s, n, m, GramMode::Numeric).unwrap().value;
                assert!((a - b.conj()).norm() <= 1e-10, "{name} numeric ({m},{n})");
            }
        }
    }
}

#[test]
fn continuous_grams_depend_on_difference() {
    for (name, s) in catalog_spaces().into_iter().filter(|(_, s)| !s.measure.kind.is_discrete()) {
        for m in 1..=5 {
            for n in 1..=5 {
                let a = gram_entry(&s, m, n, GramMode::Closed).unwrap().value.norm();
                let b = gram_entry(&s, m + 1, n + 1, GramMode::Closed).unwrap().value.norm();
                assert!((a - b).abs() <= 1e-14, "{name}");
            }
        }
    }
}

#[test]
fn incompatible_family_rejected() {
    let m = WeightedMeasure::new(MeasureKind::Gamma { sigma: 1.0 }).unwrap();
    assert!(Space::new(m, SequenceFamily::new(FamilyKind::Fourier, FrequencySchedule::integer())).is_err());
    assert!(WeightedMeasure::new(MeasureKind::Gaussian { beta: 0.5, q: 1.5 }).is_err());
    assert!(WeightedMeasure::new(MeasureKind::DiscreteZetaTail { sigma: 1.0 }).is_err());
}

#[test]
fn coefficient_of_basis_element_is_gram_row() {
    for (name, s) in catalog_spaces() {
        let fam = s.family.clone();
        let l1 = s.lambda(1);
        let f = TestFunction::new("phi1", Arc::new(move |p: &Point| fam.phi_at(l1, p))).with_sup(1.0).with_bandwidth(l1.abs());
        let cs = coefficients(&s, &f, 5).unwrap();
        for (i, c) in cs.iter().enumerate() {
            let a = gram_entry(&s, 1, i + 1, GramMode::Closed).unwrap().value;
            assert!((c.value() - a).norm() <= 1e-9 + c.tail_bound, "{name} n={}", i + 1);
        }
        let nrm = norm_sq(&s, &f).unwrap();
        let one = gram_entry(&s, 1, 1, GramMode::Closed).unwrap().value.re;
        assert!((nrm.value() - one).abs() <= 1e-9 + nrm.tail_bound, "{name}");
    }
}

#[test]
fn schedules_validate() {
    let integer = FrequencySchedule::integer();
    assert!(validate_schedule(&integer, &standard_normal(), 64).ok());
    let sl = FrequencySchedule::new(ScheduleKind::SqrtLog { alpha: 1.5, scale: 1.0 }).unwrap();
    assert!(validate_schedule(&sl, &standard_normal(), 64).ok());
    let bad = FrequencySchedule::new(ScheduleKind::SqrtLog { alpha: 1.0, scale: 1.0 });
    if let Ok(b) = bad {
        assert!(!validate_schedule(&b, &standard_normal(), 64).ok());
    }
    // discrete measures need λ_n ≥ n − 1
    let shifted = FrequencySchedule::shifted();
    assert!(validate_schedule(&shifted, &MeasureKind::DiscreteZetaTail { sigma: 3.0 }, 64).ok());
    assert_eq!(shifted.value(1), 0.0);
    assert_eq!(integer.value(3), 3.0);
}

#[test]
fn gram_modes_round_trip_names() {
    for m in [GramMode::Closed, GramMode::Numeric, GramMode::Both] {
        assert_eq!(GramMode::parse(m.as_str()), Some(m));
    }
    assert_eq!(GramMode::parse("exact"), None);
}
