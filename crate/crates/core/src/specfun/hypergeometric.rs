//! Generalized hypergeometric series `pFq`.

use crate::error::{domain, Error, Result};
use crate::sum::KahanComplex;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

const MAX_TERMS: usize = 2_000_000;
const UNIT_ARGUMENT_BASE: usize = 1000;
const UNIT_ARGUMENT_TOL: f64 = 1e-10;

/// `Some(m)` when `a = −m` for a nonnegative integer `m`.
fn nonpositive_integer(a: Complex64) -> Option<u64> {
    if a.im == 0.0 && a.re <= 0.0 && a.re == a.re.round() && a.re > -1e15 {
        Some((-a.re) as u64)
    } else {
        None
    }
}

fn term_ratio(upper: &[Complex64], lower: &[Complex64], z: Complex64, k: f64) -> Complex64 {
    let mut r = z / (k + 1.0);
    for a in upper {
        r *= *a + k;
    }
    for b in lower {
        r /= *b + k;
    }
    r
}

/// Result of a summation together with the number of series terms consumed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
}

/// `pFq(upper; lower; z)` with the term count; see [`hyp_pfq`].
pub fn hyp_pfq_counted(upper: &[Complex64], lower: &[Complex64], z: Complex64) -> Result<SeriesValue> {
    for v in upper.iter().chain(lower).chain(core::iter::once(&z)) {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(domain("hyp_pfq needs finite parameters"));
        }
    }
    let stop = upper.iter().filter_map(|a| nonpositive_integer(*a)).min();
    let first_pole = lower.iter().filter_map(|b| nonpositive_integer(*b)).min();
    if let Some(r) = first_pole {
        // term r+1 divides by (b + r) = 0 unless the series has already stopped
        if stop.is_none_or(|m| r < m) {
            return Err(Error::Pole(alloc::format!("hyp_pfq lower parameter −{r} reached before termination")));
        }
    }
    if let Some(m) = stop {
        let mut acc = KahanComplex::new();
        let mut t = Complex64::new(1.0, 0.0);
        for k in 0..=m {
            acc.add(t);
            if k < m {
                t *= term_ratio(upper, lower, z, k as f64);
            }
        }
        return Ok(SeriesValue { value: acc.value(), terms: m as usize + 1 });
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue { value: Complex64::new(1.0, 0.0), terms: 1 });
    }
    let (p, q) = (upper.len(), lower.len());
    if p == 1 && q == 1 && z.re < 0.0 {
        // Kummer: ₁F₁(a; b; z) = e^z ₁F₁(b−a; b; −z), all-positive terms when z is real
        let inner = hyp_pfq_counted(&[lower[0] - upper[0]], lower, -z)?;
        return Ok(SeriesValue { value: z.exp() * inner.value, terms: inner.terms });
    }
    if p > q + 1 {
        return Err(domain(alloc::format!("{p}F{q} diverges for z ≠ 0")));
    }
    if p == q + 1 {
        let r = z.norm();
        if r > 1.0 || (r == 1.0 && z != Complex64::new(1.0, 0.0)) {
            return Err(domain(alloc::format!("{p}F{q} needs |z| < 1 or z = 1, got {z}")));
        }
        if r == 1.0 {
            let excess: Complex64 = lower.iter().sum::<Complex64>() - upper.iter().sum::<Complex64>();
            if excess.re <= 0.0 {
                return Err(domain("pFq at z = 1 needs Re(Σ lower − Σ upper) > 0"));
            }
            return unit_argument(upper, lower, excess);
        }
    }
    let limit = if p == q + 1 { z.norm() } else { 0.0 };
    // the ratio settles once k dominates every parameter
    let settle = upper.iter().chain(lower).map(|v| v.norm()).fold(0.0f64, f64::max);
    let mut acc = KahanComplex::new();
    let mut t = Complex64::new(1.0, 0.0);
    let mut peak = 1.0f64;
    for k in 0..MAX_TERMS {
        acc.add(t);
        let ratio = term_ratio(upper, lower, z, k as f64);
        t *= ratio;
        peak = peak.max(t.norm());
        let rho = ratio.norm().max(limit);
        if (k as f64) > settle && rho < 1.0 {
            let tail = t.norm() / (1.0 - rho);
            let s = acc.value().norm();
            if tail <= 1e-17 * s || tail <= 1e-30 * peak || t == Complex64::new(0.0, 0.0) {
                acc.add(t);
                return Ok(SeriesValue { value: acc.value(), terms: k + 2 });
            }
        }
    }
    Err(Error::ToleranceNotMet { what: String::from("hyp_pfq term cap"), achieved: t.norm() })
}

/// Partial sums at `K, 2K, 4K, 8K` extrapolated with tail exponents `s, s+1, s+2`.
fn unit_argument(upper: &[Complex64], lower: &[Complex64], s: Complex64) -> Result<SeriesValue> {
    let one = Complex64::new(1.0, 0.0);
    let checkpoints = [UNIT_ARGUMENT_BASE, 2 * UNIT_ARGUMENT_BASE, 4 * UNIT_ARGUMENT_BASE, 8 * UNIT_ARGUMENT_BASE];
    let mut partial = [Complex64::new(0.0, 0.0); 4];
    let mut acc = KahanComplex::new();
    let mut t = one;
    let mut next = 0;
    for k in 0..checkpoints[3] {
        acc.add(t);
        if k + 1 == checkpoints[next] {
            partial[next] = acc.value();
            next += 1;
        }
        t *= term_ratio(upper, lower, one, k as f64);
    }
    let x: Vec<f64> = checkpoints.iter().map(|&c| c as f64 / UNIT_ARGUMENT_BASE as f64).collect();
    let fit = |n: usize| -> Complex64 {
        // S_j = S + Σ_{i<n−1} c_i x_j^{−s−i}
        let mut m = [[Complex64::new(0.0, 0.0); 5]; 4];
        for j in 0..n {
            let xj = x[4 - n + j];
            m[j][0] = one;
            for i in 0..n - 1 {
                m[j][i + 1] = (-(s + i as f64) * xj.ln()).exp();
            }
            m[j][n] = partial[4 - n + j];
        }
        solve_first(&mut m, n)
    };
    let best = fit(4);
    let coarse = fit(3);
    let discrepancy = (best - coarse).norm();
    if discrepancy > UNIT_ARGUMENT_TOL * best.norm().max(1e-300) {
        return Err(Error::ToleranceNotMet { what: String::from("pFq at z = 1 extrapolation"), achieved: discrepancy });
    }
    Ok(SeriesValue { value: best, terms: checkpoints[3] })
}

/// Gaussian elimination with partial pivoting on an `n × (n+1)` system; returns the first unknown.
fn solve_first(m: &mut [[Complex64; 5]; 4], n: usize) -> Complex64 {
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).unwrap_or(col);
        m.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..=n {
                let v = m[col][c];
                m[row][c] -= f * v;
            }
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..n).rev() {
        let mut v = m[row][n];
        for c in row + 1..n {
            v -= m[row][c] * x[c];
        }
        x[row] = v / m[row][row];
    }
    x[0]
}

/// Generalized hypergeometric series `Σ_k Π(a)_k / Π(b)_k · z^k / k!`.
pub fn hyp_pfq(upper: &[Complex64], lower: &[Complex64], z: Complex64) -> Result<Complex64> {
    hyp_pfq_counted(upper, lower, z).map(|v| v.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_complex, lgamma_real};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn binomial_and_exponential_identities() {
        let (a, b, z) = (1.3, 2.7, 0.4);
        let v = hyp_pfq(&[r(a), r(b)], &[r(b)], r(z)).unwrap();
        assert!((v.re - (1.0 - z).powf(-a)).abs() < 1e-12 && v.im.abs() < 1e-15);
        let z = Complex64::new(0.3, -0.6);
        let a = Complex64::new(1.3, 2.0);
        let v = hyp_pfq(&[a, r(2.7)], &[r(2.7)], z).unwrap();
        assert!((v - (1.0 - z).powc(-a)).norm() < 1e-12 * v.norm());
        for &z in &[r(2.5), r(-7.0), Complex64::new(3.0, 4.0)] {
            let v = hyp_pfq(&[r(0.7)], &[r(0.7)], z).unwrap();
            assert!((v - z.exp()).norm() < 1e-12 * v.norm());
        }
        assert_eq!(hyp_pfq(&[], &[], r(0.0)).unwrap(), r(1.0));
    }

    #[test]
    fn gauss_summation_at_unit_argument() {
        let (a, b, c) = (0.3, 0.4, 2.0);
        let exact = (lgamma_real(c) + lgamma_real(c - a - b) - lgamma_real(c - a) - lgamma_real(c - b)).exp();
        let v = hyp_pfq(&[r(a), r(b)], &[r(c)], r(1.0)).unwrap();
        assert!((v.re - exact).abs() < 1e-10, "{v} vs {exact}");
        let (a, b, c) = (Complex64::new(0.5, 1.0), r(0.25), r(3.1));
        let exact = gamma_complex(c).unwrap() * gamma_complex(c - a - b).unwrap()
            / (gamma_complex(c - a).unwrap() * gamma_complex(c - b).unwrap());
        let v = hyp_pfq(&[a, b], &[c], r(1.0)).unwrap();
        assert!((v - exact).norm() < 1e-10 * exact.norm());
    }

    #[test]
    fn termination_and_poles() {
        for l in [0u64, 1, 5, 40] {
            let out = hyp_pfq_counted(&[r(-(l as f64)), r(2.5)], &[r(1.5)], r(3.0)).unwrap();
            assert_eq!(out.terms, l as usize + 1);
        }
        // ₂F₁(−2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1))
        let (b, c, z) = (1.5, 0.5, 0.8);
        let v = hyp_pfq(&[r(-2.0), r(b)], &[r(c)], r(z)).unwrap().re;
        assert!((v - (1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0)))).abs() < 1e-14);
        assert!(matches!(hyp_pfq(&[r(1.0)], &[r(-2.0)], r(0.5)), Err(Error::Pole(_))));
        assert!(matches!(hyp_pfq(&[r(-5.0)], &[r(-2.0)], r(0.5)), Err(Error::Pole(_))));
        assert!(hyp_pfq(&[r(-2.0)], &[r(-2.0)], r(0.5)).is_ok());
    }

    #[test]
    fn divergent_sets_are_rejected() {
        assert!(matches!(hyp_pfq(&[r(1.0), r(1.0), r(1.0)], &[r(2.0)], r(0.1)), Err(Error::Domain(_))));
        assert!(matches!(hyp_pfq(&[r(1.0), r(1.0)], &[r(2.0)], r(1.5)), Err(Error::Domain(_))));
        assert!(matches!(hyp_pfq(&[r(1.0), r(1.0)], &[r(2.0)], Complex64::new(0.0, 1.0)), Err(Error::Domain(_))));
        assert!(matches!(hyp_pfq(&[r(1.0), r(1.5)], &[r(2.0)], r(1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn confluent_and_bessel_relations() {
        // ₀F₁(; ν+1; −x²/4) (x/2)^ν / Γ(ν+1) = J_ν(x)
        let (nu, x) = (1.5, 3.2);
        let v = hyp_pfq(&[], &[r(nu + 1.0)], r(-x * x / 4.0)).unwrap().re;
        let j = v * (0.5 * x).powf(nu) / lgamma_real(nu + 1.0).exp();
        assert!((j - crate::specfun::bessel_j(nu, x).unwrap()).abs() < 1e-13);
        // Kummer: ₁F₁(a; b; z) = e^z ₁F₁(b−a; b; −z)
        let (a, b, z) = (Complex64::new(0.4, 2.0), r(2.5), r(-3.0));
        let lhs = hyp_pfq(&[a], &[b], z).unwrap();
        let rhs = z.exp() * hyp_pfq(&[b - a], &[b], -z).unwrap();
        assert!((lhs - rhs).norm() < 1e-11 * lhs.norm());
    }
}
