//! Modified Bessel `K_ν` of complex order and Bessel `J_ν` of real order.

use super::gamma::lgamma_real;
use crate::error::{domain, Result};
use crate::sum::{Kahan, KahanComplex};
use num_complex::Complex64;
use num_traits::Float;

const K_STEP: f64 = 1.0 / 64.0;
const UNDERFLOW_EXPONENT: f64 = 745.0;
const J_SERIES_MAX_X: f64 = 8.0;

/// `K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt` by the trapezoid rule (the integrand is even in `t`).
pub fn bessel_k_complex_order(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(alloc::format!("bessel_K needs x > 0, got {x}")));
    }
    if !(nu.re.abs() <= 20.0 && nu.im.abs() <= 60.0) {
        return Err(domain(alloc::format!("bessel_K needs |Re ν| ≤ 20, |Im ν| ≤ 60, got {nu}")));
    }
    let re = nu.re.abs();
    let mut acc = KahanComplex::new();
    acc.add(Complex64::new(0.5 * (-x).exp(), 0.0));
    let mut k = 1usize;
    loop {
        let t = k as f64 * K_STEP;
        let c = t.cosh();
        // exponent bound on |integrand|; the minimum over t is passed once t > asinh(re/x)
        let log_bound = -x * c + re * t;
        if -log_bound > UNDERFLOW_EXPONENT && x * t.sinh() > re {
            break;
        }
        acc.add((nu * t).cosh() * (-x * c).exp());
        k += 1;
    }
    Ok(acc.value() * K_STEP)
}

fn check_j(nu: f64, x: f64) -> Result<()> {
    if !(0.0..=30.0).contains(&nu) || !(0.0..=60.0).contains(&x) {
        return Err(domain(alloc::format!("bessel_J needs 0 ≤ ν ≤ 30, 0 ≤ x ≤ 60, got ν={nu}, x={x}")));
    }
    Ok(())
}

/// Ascending series, accurate where `e^x` stays small relative to `J_ν(x)`.
pub(crate) fn bessel_j_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let mut term = (nu * half.ln() - lgamma_real(nu + 1.0)).exp();
    let mut acc = Kahan::new();
    let q = -half * half;
    let mut k = 0.0;
    loop {
        acc.add(term);
        term *= q / ((k + 1.0) * (nu + k + 1.0));
        k += 1.0;
        if term.abs() <= f64::EPSILON * 1e-3 * acc.value().abs() && k > half {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    acc.value()
}

/// Miller backward recurrence normalized by `Σ_k w_k J_{ν+2k}(x) = (x/2)^ν / Γ(ν+1)`.
pub(crate) fn bessel_j_miller(nu: f64, x: f64) -> f64 {
    let steps = (x + 60.0 + (40.0 * x).sqrt()).ceil() as usize;
    let steps = steps + steps % 2;
    // g_k = Γ(ν+k)/(k!Γ(ν+1)); weights w_0 = 1, w_k = (ν+2k) g_k
    let mut g = alloc::vec![0.0f64; steps / 2 + 1];
    if !g.is_empty() {
        g[0] = 1.0;
    }
    if g.len() > 1 {
        g[1] = 1.0;
    }
    for k in 1..g.len().saturating_sub(1) {
        g[k + 1] = g[k] * (nu + k as f64) / (k as f64 + 1.0);
    }
    let mut upper = 0.0f64; // J_{ν+j+1}
    let mut cur = 1e-280f64; // J_{ν+j}
    let mut norm = Kahan::new();
    let mut j = steps;
    loop {
        if j.is_multiple_of(2) {
            let k = j / 2;
            let w = if k == 0 { 1.0 } else { (nu + 2.0 * k as f64) * g[k] };
            norm.add(w * cur);
        }
        if j == 0 {
            break;
        }
        let mu = nu + j as f64;
        let lower = 2.0 * mu / x * cur - upper;
        upper = cur;
        cur = lower;
        j -= 1;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            upper *= 1e-250;
            let rescaled = norm.value() * 1e-250;
            norm = Kahan::new();
            norm.add(rescaled);
        }
    }
    let target = (nu * (0.5 * x).ln() - lgamma_real(nu + 1.0)).exp();
    cur * target / norm.value()
}

/// Bessel function of the first kind `J_ν(x)`, `0 ≤ ν ≤ 30`, `0 ≤ x ≤ 60`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_j(nu, x)?;
    if x <= J_SERIES_MAX_X {
        Ok(bessel_j_series(nu, x))
    } else {
        Ok(bessel_j_miller(nu, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    /// J_n(x) = (1/π)∫₀^π cos(nθ − x sin θ) dθ; the integrand extends to a smooth periodic one.
    fn bessel_j_integer_oracle(n: u32, x: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * PI / m as f64;
        let s: f64 = (0..m).map(|k| {
            let th = k as f64 * h;
            (n as f64 * th - x * th.sin()).cos()
        }).sum();
        s * h / (2.0 * PI)
    }

    #[test]
    fn k_half_integer_closed_form() {
        let v = bessel_k_complex_order(Complex64::new(0.5, 0.0), 1.0).unwrap();
        let exact = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((v.re - exact).abs() < 1e-10 && v.im.abs() < 1e-15);
        for &x in &[0.1, 0.7, 3.0, 25.0] {
            let v = bessel_k_complex_order(Complex64::new(1.5, 0.0), x).unwrap().re;
            let exact = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
            assert!((v - exact).abs() < 1e-10 * exact.max(1.0), "x={x}");
        }
    }

    #[test]
    fn k_even_in_order_and_reflection() {
        for &nu in &[Complex64::new(3.0, 2.0), Complex64::new(0.2, -40.0), Complex64::new(-7.5, 55.0)] {
            let a = bessel_k_complex_order(nu, 0.8).unwrap();
            let b = bessel_k_complex_order(-nu, 0.8).unwrap();
            let c = bessel_k_complex_order(nu.conj(), 0.8).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
            assert!((a - c.conj()).norm() <= 1e-12 * a.norm().max(1.0));
        }
        assert!(bessel_k_complex_order(Complex64::new(1.0, 0.0), 0.0).is_err());
        assert!(bessel_k_complex_order(Complex64::new(21.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn k_matches_log_axis_integral() {
        // ∫₀^∞ e^{−x−a²/(4x)} x^{σ−1} dx = 2(a/2)^σ K_σ(a)
        let (sigma, a) = (1.0, 2.0);
        let rule = crate::quadrature::log_axis_rule(1.0, 0.02, 60.0).unwrap();
        let lhs = rule.integrate(|x| (-a * a / (4.0 * x)).exp() * x.powf(sigma - 1.0));
        let k = bessel_k_complex_order(Complex64::new(sigma, 0.0), a).unwrap().re;
        assert!((lhs - 2.0 * (a / 2.0).powf(sigma) * k).abs() < 1e-9, "{lhs} vs {k}");
    }

    #[test]
    fn j_small_cases() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert!((bessel_j(1.0, 1e-6).unwrap() / 1e-6 - 0.5).abs() < 1e-9);
        // bisection for the first zero of J_0
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if bessel_j(0.0, mid).unwrap() > 0.0 { lo = mid } else { hi = mid }
        }
        assert!((lo - 2.404_825_557_7).abs() < 1e-8);
        assert!(bessel_j(31.0, 1.0).is_err());
        assert!(bessel_j(1.0, 61.0).is_err());
    }

    #[test]
    fn j_against_integer_integral() {
        for n in [0u32, 1, 2, 7, 20, 30] {
            for &x in &[0.5, 5.0, 8.5, 13.0, 29.7, 45.0, 60.0] {
                let v = bessel_j(n as f64, x).unwrap();
                let o = bessel_j_integer_oracle(n, x);
                assert!((v - o).abs() < 1e-12, "n={n} x={x}: {v} vs {o}");
            }
        }
    }

    #[test]
    fn j_series_and_miller_agree_for_fractional_order() {
        for &nu in &[0.0, 0.25, 1.5, 4.7, 12.3, 29.9] {
            for &x in &[2.0, 6.0, 8.0, 10.0] {
                let a = bessel_j_series(nu, x);
                let b = bessel_j_miller(nu, x);
                assert!((a - b).abs() < 1e-12, "ν={nu} x={x}: {a} vs {b}");
            }
        }
        // three-term recurrence at large argument
        for &nu in &[0.3, 5.5, 17.2] {
            let x = 47.0;
            let lhs = bessel_j(nu, x).unwrap() + bessel_j(nu + 2.0, x).unwrap();
            let rhs = 2.0 * (nu + 1.0) / x * bessel_j(nu + 1.0, x).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
