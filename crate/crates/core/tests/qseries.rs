use aos_core::qseries::*;
use aos_core::spaces::FrequencySchedule;
use aos_core::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn qpochhammer_telescopes() {
    // (a; q)_{n+k} = (a; q)_n (a q^n; q)_k
    for q in [0.2f64, 0.5, 0.9] {
        let a = c(0.4, -0.3);
        for (n, k) in [(3u64, 4u64), (10, 7), (0, 5)] {
            let lhs = qpochhammer(a, q, n + k).unwrap();
            let rhs = qpochhammer(a, q, n).unwrap() * qpochhammer(a * q.powi(n as i32), q, k).unwrap();
            assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1.0));
        }
        // (a; q)_∞ = (1 − a)(aq; q)_∞
        let inf = qpochhammer_inf(a, q).unwrap();
        let shifted = (c(1.0, 0.0) - a) * qpochhammer_inf(a * q, q).unwrap();
        assert!((inf - shifted).norm() <= 1e-13);
    }
}

#[test]
fn qpochhammer_inf_matches_euler_pentagonal() {
    // (q; q)_∞ = Σ_k (−1)^k q^{k(3k−1)/2}, k ∈ ℤ
    for q in [0.1f64, 0.5, 0.8] {
        let mut s = 0.0;
        for k in -60i64..=60 {
            let e = (k * (3 * k - 1) / 2) as f64;
            s += if k % 2 == 0 { 1.0 } else { -1.0 } * q.powf(e);
        }
        let p = qpochhammer_inf_certified(c(q, 0.0), q).unwrap();
        assert!((p.value.re - s).abs() <= 1e-13, "q={q}");
        assert!(p.relative_tail <= 1e-15);
    }
}

#[test]
fn q_binomial_theorem() {
    // Σ (a; q)_n z^n/(q; q)_n = (az; q)_∞/(z; q)_∞
    let (q, a, z) = (0.6f64, c(0.3, 0.2), c(0.25, -0.4));
    let mut s = c(0.0, 0.0);
    for n in 0..200u64 {
        s += qpochhammer(a, q, n).unwrap() * z.powu(n as u32) / qpochhammer(c(q, 0.0), q, n).unwrap();
    }
    let want = qpochhammer_inf(a * z, q).unwrap() / qpochhammer_inf(z, q).unwrap();
    assert!((s - want).norm() < 1e-13);
}

#[test]
fn ramanujan_aq_matches_its_series() {
    // A_q(z) = Σ q^{n²} (−z)^n/(q; q)_n
    let (q, z) = (0.4f64, c(1.5, 0.7));
    let mut s = c(0.0, 0.0);
    for n in 0..60u64 {
        s += q.powi((n * n) as i32) * (-z).powu(n as u32) / qpochhammer(c(q, 0.0), q, n).unwrap();
    }
    let v = ramanujan_aq(q, z).unwrap();
    assert!((v - s).norm() <= 1e-13 * s.norm().max(1.0));
}

#[test]
fn q_outside_unit_interval_rejected() {
    assert!(qpochhammer(c(0.1, 0.0), 1.0, 3).is_err());
    assert!(qpochhammer_inf(c(0.1, 0.0), 0.0).is_err());
    assert!(qseries_sum(QSeriesForm::Binomial, 0.5, c(1.2, 0.0)).is_err());
}

fn binomial_grid(q: f64) -> Vec<Complex64> {
    let rho = q.sqrt();
    let mut out = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            out.push(Complex64::from_polar(rho * (0.1 + 0.18 * i as f64), 2.0 * std::f64::consts::PI * j as f64 / 5.0));
        }
    }
    out
}

#[test]
fn binomial_sides_agree_and_are_real() {
    for q in [0.3f64, 0.6] {
        for z in binomial_grid(q) {
            let v = qseries_sum(QSeriesForm::Binomial, q, z).unwrap().finite_part;
            let t = qseries_sum(QSeriesForm::BinomialTwin, q, z).unwrap().finite_part;
            assert!(v.im.abs() <= 1e-11, "q={q} z={z}: {v}");
            assert!((v - t.conj()).norm() <= 1e-10);
        }
    }
}

#[test]
fn binomial_sum_positive_near_origin() {
    for q in [0.3f64, 0.6] {
        for z in binomial_grid(q).into_iter().filter(|z| z.norm() <= 0.3 * q.sqrt()) {
            assert!(qseries_sum(QSeriesForm::Binomial, q, z).unwrap().finite_part.re > 0.0, "q={q} z={z}");
        }
    }
}

#[test]
fn binomial_sum_changes_sign_on_positive_axis() {
    // direct truncated evaluation: (z;q)_∞ Σ_{n<200} (−z)^n q^{n(n−1)/2} / ((q;q)_n (z;q)_n)
    let q = 0.6f64;
    let z = 0.64 * q.sqrt();
    let v = qseries_sum(QSeriesForm::Binomial, q, c(z, 0.0)).unwrap().finite_part;
    assert!((v.re + 0.049_578_920_107_997_6).abs() < 1e-13, "{v}");
    assert!(qseries_sum(QSeriesForm::Binomial, q, c(0.5 * q.sqrt(), 0.0)).unwrap().finite_part.re > 0.0);
}

#[test]
fn ramanujan_forms_real_and_positive() {
    for form in [(QSeriesForm::Ramanujan, QSeriesForm::RamanujanTwin), (QSeriesForm::RamanujanSquared, QSeriesForm::RamanujanSquaredTwin)] {
        for q in [0.1, 0.3, 0.6] {
            for z in [c(0.9, 0.0), c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.8)] {
                let v = qseries_sum(form.0, q, z).unwrap();
                let t = qseries_sum(form.1, q, z).unwrap();
                assert!(v.finite_part.im.abs() <= 1e-10);
                assert!(v.finite_part.re > 0.0);
                assert!((v.finite_part - t.finite_part.conj()).norm() <= 1e-11);
                assert!(v.tail_bound.is_finite());
            }
        }
    }
}

#[test]
fn gaussian_row_edge_below_center() {
    let sched = FrequencySchedule::integer();
    let edge = gaussian_gram_row(0.5, (-1.0f64).exp(), &sched, 1, 41).unwrap();
    let mid = gaussian_gram_row(0.5, (-1.0f64).exp(), &sched, 21, 41).unwrap();
    assert!(edge.certified && mid.certified);
    assert!(edge.certificate.upper() <= mid.certificate.upper());
    // center row of the q = e^{-1}, β = 1/2 kernel sums to Σ_ℤ e^{-k²/2}
    let theta: f64 = (-40i32..=40).map(|k| (-(k * k) as f64 / 2.0).exp()).sum();
    assert!(mid.certificate.brackets(theta, 1e-13));
}

#[test]
fn gaussian_row_rejects_bad_row() {
    let sched = FrequencySchedule::integer();
    assert!(gaussian_gram_row(0.5, 0.5, &sched, 0, 10).is_err());
    assert!(gaussian_gram_row(0.5, 0.5, &sched, 11, 10).is_err());
    assert!(gaussian_gram_row(-1.0, 0.5, &sched, 1, 10).is_err());
}
