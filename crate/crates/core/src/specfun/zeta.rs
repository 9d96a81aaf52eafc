//! Riemann, Hurwitz and Dirichlet L functions for `Re s ≥ 1.05`, and their
//! logarithmic derivatives with a sieve-based cross-check.

use super::gamma::BERNOULLI_EVEN;
use crate::error::{domain, Error, Result};
use crate::numtheory::{build_sieve, DirichletCharacter, SieveTable};
use crate::sum::{ComplexTailCertificate, KahanComplex, TailMethod};
use alloc::string::String;
use num_complex::Complex64;
use num_traits::Float;

pub const MIN_RE_S: f64 = 1.05;
pub const MIN_RE_S_LOG_DERIVATIVE: f64 = 1.5;
const BORWEIN_TERMS: usize = 64;
const EULER_MACLAURIN_TERMS: usize = 12;
/// Above this real part ζ is assembled as `1 + (ζ − 1)`, keeping ζ − 1 relative-accurate.
const DIRECT_TAIL_RE_S: f64 = 10.0;
const LOG_DERIVATIVE_CROSS_CHECK: f64 = 1e-7;
const SIEVE_CAP: usize = 1_000_000;

fn check_half_plane(s: Complex64, min: f64, what: &str) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.re < min {
        return Err(domain(alloc::format!("{what} needs Re s ≥ {min}, got {s}")));
    }
    Ok(())
}

/// `(x)^{-s}` for real `x > 0`.
#[inline]
fn pow_neg(x: f64, s: Complex64) -> Complex64 {
    (-s * x.ln()).exp()
}

/// (2j)! for j = 1..=12, as binary64.
fn factorial_even(j: usize) -> f64 {
    (1..=2 * j).fold(1.0, |acc, k| acc * k as f64)
}

/// Euler–Maclaurin evaluation of `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` for any `a > 0`.
pub(crate) fn hurwitz_em(s: Complex64, a: f64) -> Complex64 {
    let n = 20usize.max(s.norm().ceil() as usize + 4);
    let mut acc = KahanComplex::new();
    for k in (0..n).rev() {
        acc.add(pow_neg(k as f64 + a, s));
    }
    let x = n as f64 + a;
    let x_s = pow_neg(x, s);
    acc.add(x_s * x / (s - 1.0));
    acc.add(x_s * 0.5);
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{-s-2j+1}
    let mut rising = s; // s(s+1)…(s+2j−2) for j = 1
    let mut xpow = x_s / x;
    let inv_x2 = 1.0 / (x * x);
    for j in 1..=EULER_MACLAURIN_TERMS {
        let term = rising * xpow * (BERNOULLI_EVEN[j - 1] / factorial_even(j));
        acc.add(term);
        let k = 2.0 * j as f64 - 1.0;
        rising = rising * (s + k) * (s + k + 1.0);
        xpow *= inv_x2;
    }
    acc.value()
}

/// Hurwitz zeta `ζ(s, a)` for `a > 0`, `Re s ≥ 1.05`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    check_half_plane(s, MIN_RE_S, "hurwitz_zeta")?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(alloc::format!("hurwitz_zeta needs a > 0, got {a}")));
    }
    Ok(hurwitz_em(s, a))
}

fn borwein_coefficients() -> [f64; BORWEIN_TERMS + 1] {
    let n = BORWEIN_TERMS;
    let mut d = [0.0; BORWEIN_TERMS + 1];
    let mut term = 1.0 / n as f64;
    let mut partial = 0.0;
    for (i, slot) in d.iter_mut().enumerate() {
        partial += term;
        *slot = n as f64 * partial;
        let fi = i as f64;
        term *= 4.0 * (n as f64 + fi) * (n as f64 - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    d
}

/// ζ(s) from the Chebyshev-accelerated alternating (η) series with 64 terms.
pub(crate) fn zeta_borwein(s: Complex64) -> Complex64 {
    let d = borwein_coefficients();
    let dn = d[BORWEIN_TERMS];
    let mut acc = KahanComplex::new();
    for k in (0..BORWEIN_TERMS).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(pow_neg(k as f64 + 1.0, s) * (sign * (d[k] - dn)));
    }
    let eta = -acc.value() / dn;
    let two_pow = (Complex64::new(1.0, 0.0) - s).expf(2.0);
    eta / (1.0 - two_pow)
}

/// `ζ(s) − 1`, relative-accurate even when ζ(s) is within rounding of one.
pub fn zeta_minus_one(s: Complex64) -> Result<Complex64> {
    check_half_plane(s, MIN_RE_S, "zeta_minus_one")?;
    Ok(hurwitz_em(s, 2.0))
}

/// Riemann zeta for `Re s ≥ 1.05`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    check_half_plane(s, MIN_RE_S, "riemann_zeta")?;
    if s.re >= DIRECT_TAIL_RE_S {
        return Ok(1.0 + hurwitz_em(s, 2.0));
    }
    Ok(zeta_borwein(s))
}

/// `L(s, χ) − 1` for `χ mod q`, split so the leading `1` never enters the sum.
pub fn dirichlet_l_minus_one(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    check_half_plane(s, MIN_RE_S, "dirichlet_L")?;
    let q = chi.modulus();
    if q == 1 {
        return Ok(hurwitz_em(s, 2.0));
    }
    let qf = q as f64;
    // q^{-s} ζ(s, 1/q) = 1 + q^{-s} ζ(s, 1 + 1/q)
    let mut acc = KahanComplex::new();
    acc.add(chi.eval(1) * hurwitz_em(s, 1.0 + 1.0 / qf));
    for a in 2..=q {
        let c = chi.eval(a as u64);
        if c.norm_sqr() != 0.0 {
            acc.add(c * hurwitz_em(s, a as f64 / qf));
        }
    }
    Ok(acc.value() * pow_neg(qf, s))
}

/// Dirichlet L-function `L(s, χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.modulus() == 1 {
        return riemann_zeta(s);
    }
    Ok(1.0 + dirichlet_l_minus_one(s, chi)?)
}

/// Fourth-order central difference along the real axis.
fn derivative<F: Fn(Complex64) -> Result<Complex64>>(f: F, s: Complex64) -> Result<Complex64> {
    let h = 1e-3;
    let f1 = f(s + h)? - f(s - h)?;
    let f2 = f(s + 2.0 * h)? - f(s - 2.0 * h)?;
    Ok((f1 * 8.0 - f2) / (12.0 * h))
}

/// The completely multiplicative weights `a(n)` whose Dirichlet series we differentiate.
#[derive(Clone, Copy, Debug)]
pub enum ArithmeticWeight<'a> {
    /// `a ≡ 1`: `A = ζ`.
    One,
    /// `a = χ`: `A = L(·, χ)`.
    Character(&'a DirichletCharacter),
    /// `a = λ` (Liouville): `A(s) = ζ(2s)/ζ(s)`.
    Liouville,
}

/// `A'(s)/A(s)` from central differences of the analytic `A − 1`.
pub fn log_derivative_analytic(s: Complex64, weight: ArithmeticWeight<'_>) -> Result<Complex64> {
    match weight {
        ArithmeticWeight::One => {
            let d = derivative(zeta_minus_one, s)?;
            Ok(d / riemann_zeta(s)?)
        }
        ArithmeticWeight::Character(chi) => {
            let d = derivative(|z| dirichlet_l_minus_one(z, chi), s)?;
            Ok(d / dirichlet_l(s, chi)?)
        }
        ArithmeticWeight::Liouville => {
            // (ζ(2s)/ζ(s))'/(ζ(2s)/ζ(s)) = 2ζ'(2s)/ζ(2s) − ζ'(s)/ζ(s)
            let one = ArithmeticWeight::One;
            Ok(log_derivative_analytic(s * 2.0, one)? * 2.0 - log_derivative_analytic(s, one)?)
        }
    }
}

/// Upper bound on `Σ_{n>N} ln n · n^{-σ}` by `∫_N^∞ ln x · x^{-σ} dx`.
pub fn mangoldt_tail_bound(n: usize, sigma: f64) -> f64 {
    let nf = n as f64;
    let a = sigma - 1.0;
    nf.powf(-a) * (nf.ln() / a + 1.0 / (a * a))
}

/// `−Σ_{n ≤ limit} a(n) Λ(n) n^{-s}` with a certified tail (valid since `|a(n)| ≤ 1`).
pub fn log_derivative_series(
    s: Complex64,
    weight: ArithmeticWeight<'_>,
    sieve: &SieveTable,
) -> Result<ComplexTailCertificate> {
    check_half_plane(s, MIN_RE_S_LOG_DERIVATIVE, "log_derivative_series")?;
    let limit = sieve.limit();
    let mut acc = KahanComplex::new();
    let lam = sieve.mangoldt_slice();
    for (n, &l) in lam.iter().enumerate().take(limit + 1).skip(2) {
        if l == 0.0 {
            continue;
        }
        let a = match weight {
            ArithmeticWeight::One => Complex64::new(1.0, 0.0),
            ArithmeticWeight::Character(chi) => chi.eval(n as u64),
            ArithmeticWeight::Liouville => Complex64::new(sieve.liouville(n) as f64, 0.0),
        };
        acc.add(a * pow_neg(n as f64, s) * l);
    }
    Ok(ComplexTailCertificate {
        finite_part: -acc.value(),
        tail_bound: mangoldt_tail_bound(limit, s.re),
        method: TailMethod::IntegralComparison,
        last_index: limit as u64,
    })
}

/// Both evaluation paths of a logarithmic derivative and their agreement.
#[derive(Clone, Copy, Debug)]
pub struct LogDerivative {
    pub analytic: Complex64,
    pub series: ComplexTailCertificate,
    pub discrepancy: f64,
}

/// `A'(s)/A(s)` by both paths; fails when they disagree beyond `tail + 1e-7`.
pub fn log_derivative_checked(
    s: Complex64,
    weight: ArithmeticWeight<'_>,
    sieve: &SieveTable,
) -> Result<LogDerivative> {
    check_half_plane(s, MIN_RE_S_LOG_DERIVATIVE, "log-derivative")?;
    let analytic = log_derivative_analytic(s, weight)?;
    let series = log_derivative_series(s, weight, sieve)?;
    let discrepancy = (analytic - series.finite_part).norm();
    if discrepancy > series.tail_bound + LOG_DERIVATIVE_CROSS_CHECK {
        return Err(Error::NumericalInconsistency {
            what: String::from("log-derivative analytic vs sieve series"),
            discrepancy,
        });
    }
    Ok(LogDerivative { analytic, series, discrepancy })
}

/// Smallest sieve length whose Λ-tail bound at `Re s = sigma` is ≤ `tol`, capped at 10⁶.
pub fn sieve_length_for(sigma: f64, tol: f64) -> usize {
    let mut n = 64usize;
    while n < SIEVE_CAP && mangoldt_tail_bound(n, sigma) > tol {
        n *= 2;
    }
    n.min(SIEVE_CAP)
}

/// `ζ'(s)/ζ(s)` for `Re s ≥ 1.5`, cross-checked against `−Σ Λ(n) n^{-s}`.
pub fn zeta_log_derivative(s: Complex64) -> Result<Complex64> {
    check_half_plane(s, MIN_RE_S_LOG_DERIVATIVE, "zeta_log_derivative")?;
    let sieve = build_sieve(sieve_length_for(s.re, 1e-9))?;
    Ok(log_derivative_checked(s, ArithmeticWeight::One, &sieve)?.analytic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::character;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Σ_{k≤K} k^{-σ} plus the midpoint tail estimate, real σ > 1.
    fn direct_zeta(sigma: f64, k_max: u32) -> f64 {
        let s: f64 = (1..=k_max).rev().map(|k| (k as f64).powf(-sigma)).sum();
        let k = k_max as f64 + 0.5;
        s + k.powf(1.0 - sigma) / (sigma - 1.0)
    }

    #[test]
    fn zeta_anchor_values() {
        assert!((riemann_zeta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-12);
        let z3 = direct_zeta(3.0, 100_000);
        assert!((riemann_zeta(c(3.0, 0.0)).unwrap().re - z3).abs() < 1e-10);
        assert!((z3 - 1.202_056_903_2).abs() < 1e-10);
        let zm1 = zeta_minus_one(c(20.0, 0.0)).unwrap().re;
        let direct: f64 = (2..=60u32).rev().map(|k| (k as f64).powi(-20)).sum();
        assert!((zm1 - direct).abs() / direct < 1e-12);
        assert!((zm1 - 9.5396e-7).abs() < 1e-10);
        assert!(riemann_zeta(c(1.0, 0.0)).is_err());
        assert!(riemann_zeta(c(1.04, 3.0)).is_err());
    }

    #[test]
    fn borwein_and_euler_maclaurin_agree() {
        for &s in &[c(1.05, 0.0), c(1.5, 14.1), c(2.0, -30.0), c(3.0, 45.0), c(6.5, 60.0), c(9.0, 2.0)] {
            let a = zeta_borwein(s);
            let b = 1.0 + hurwitz_em(s, 2.0);
            assert!((a - b).norm() / b.norm() < 1e-10, "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn hurwitz_properties() {
        let s = c(2.5, 1.0);
        assert!((hurwitz_zeta(s, 1.0).unwrap() - riemann_zeta(s).unwrap()).norm() < 1e-12);
        let half = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap().re;
        assert!((half - PI * PI / 2.0).abs() < 1e-11);
        let s = c(2.5, 0.0);
        let split: Complex64 = (1..=3).map(|a| hurwitz_zeta(s, a as f64 / 3.0).unwrap()).sum::<Complex64>()
            * pow_neg(3.0, s);
        assert!((split - riemann_zeta(s).unwrap()).norm() < 1e-11);
        for &(s, a) in &[(c(1.3, 4.0), 0.3), (c(4.0, -20.0), 0.9), (c(2.0, 0.0), 0.05)] {
            let d = hurwitz_em(s, a) - hurwitz_em(s, a + 1.0);
            assert!((d - pow_neg(a, s)).norm() / d.norm() < 1e-10);
        }
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), f64::INFINITY).is_err());
    }

    #[test]
    fn dirichlet_l_values() {
        let chi4 = character(4, 1).unwrap();
        let catalan = dirichlet_l(c(2.0, 0.0), &chi4).unwrap();
        assert!((catalan.re - 0.915_965_594_2).abs() < 1e-10 && catalan.im.abs() < 1e-15);
        // Catalan's constant from the alternating series with averaged partial sums
        let k_max = 200_000;
        let mut s = 0.0;
        let mut prev = 0.0;
        for k in 0..=k_max {
            prev = s;
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            s += if k % 2 == 0 { t } else { -t };
        }
        assert!((0.5 * (s + prev) - catalan.re).abs() < 1e-10);

        let chi3 = character(3, 1).unwrap();
        let l3 = dirichlet_l(c(2.0, 0.0), &chi3).unwrap().re;
        // blocks (3j+1)^{-2} − (3j+2)^{-2} are positive and decreasing
        let brute: f64 = (0..1_000_000u64)
            .rev()
            .map(|j| 1.0 / ((3 * j + 1) as f64).powi(2) - 1.0 / ((3 * j + 2) as f64).powi(2))
            .sum();
        assert!((brute - l3).abs() < 1e-10);

        let chi1 = character(1, 0).unwrap();
        let s = c(3.0, 2.0);
        assert_eq!(dirichlet_l(s, &chi1).unwrap(), riemann_zeta(s).unwrap());
    }

    #[test]
    fn zeta_log_derivative_paths() {
        let s = c(3.0, 0.0);
        let sieve = build_sieve(1_000_000).unwrap();
        let both = log_derivative_checked(s, ArithmeticWeight::One, &sieve).unwrap();
        assert!(both.discrepancy < 1e-8, "{both:?}");
        assert!(zeta_log_derivative(s).unwrap().im == 0.0);

        let s30 = c(30.0, 0.0);
        let v = zeta_log_derivative(s30).unwrap().re;
        let direct = -(2f64.ln() * 2f64.powi(-30) + 3f64.ln() * 3f64.powi(-30) + 2f64.ln() * 4f64.powi(-30)
            + 5f64.ln() * 5f64.powi(-30) + 7f64.ln() * 7f64.powi(-30) + 2f64.ln() * 8f64.powi(-30)
            + 3f64.ln() * 9f64.powi(-30));
        assert!((v - direct).abs() / direct.abs() < 1e-12);
        let leading = -2f64.ln() / 2f64.powi(30);
        assert!((v - leading).abs() / leading.abs() < 1e-5);

        let z = c(2.5, 7.0);
        let a = zeta_log_derivative(z).unwrap();
        let b = zeta_log_derivative(z.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
        assert!(zeta_log_derivative(c(1.4, 0.0)).is_err());
    }

    #[test]
    fn character_and_liouville_log_derivatives() {
        let sieve = build_sieve(200_000).unwrap();
        let chi = character(4, 1).unwrap();
        for &s in &[c(3.0, 0.0), c(4.0, 1.5)] {
            for w in [ArithmeticWeight::Character(&chi), ArithmeticWeight::Liouville] {
                let r = log_derivative_checked(s, w, &sieve).unwrap();
                assert!(r.discrepancy < 1e-8);
            }
        }
    }

    #[test]
    fn mangoldt_series_against_sum_with_tail() {
        // Σ Λ(k)/k³ as a certified sum over the sieve, against −ζ'(3)/ζ(3)
        let sieve = build_sieve(1_000_000).unwrap();
        let cert = crate::sum::sum_with_tail(
            2,
            |k| sieve.mangoldt(k as usize) / (k as f64).powi(3),
            |n| mangoldt_tail_bound(n as usize, 3.0),
            TailMethod::IntegralComparison,
            1e-10,
        )
        .unwrap();
        let analytic = -log_derivative_analytic(c(3.0, 0.0), ArithmeticWeight::One).unwrap().re;
        assert!((cert.finite_part - analytic).abs() < 1e-8);
    }
}
