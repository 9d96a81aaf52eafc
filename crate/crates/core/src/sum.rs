//! Compensated summation and tail-certified infinite sums.

use crate::error::{Error, Result};
use alloc::string::String;
use num_complex::Complex64;

/// Hard cap on the number of terms `sum_with_tail` will add.
pub const MAX_TERMS: u64 = 10_000_000;

/// Kahan–Babuška (Neumaier) accumulator; addition order is the call order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub const fn new() -> Self {
        Kahan { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub const fn new() -> Self {
        KahanComplex { re: Kahan::new(), im: Kahan::new() }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut acc = Kahan::new();
    for x in it {
        acc.add(x);
    }
    acc.value()
}

pub fn kahan_sum_complex<I: IntoIterator<Item = Complex64>>(it: I) -> Complex64 {
    let mut acc = KahanComplex::new();
    for z in it {
        acc.add(z);
    }
    acc.value()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    Geometric,
    IntegralComparison,
    SuppliedClosedForm,
}

impl TailMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TailMethod::Geometric => "geometric",
            TailMethod::IntegralComparison => "integral-comparison",
            TailMethod::SuppliedClosedForm => "supplied-closed-form",
        }
    }
}

/// A truncated sum together with a bound on everything that was discarded.
///
/// For sums of nonnegative terms the true value lies in
/// `[finite_part, finite_part + tail_bound]`; for signed terms it lies within
/// `tail_bound` of `finite_part`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailCertificate {
    pub finite_part: f64,
    pub tail_bound: f64,
    pub method: TailMethod,
    /// Index of the last term included.
    pub last_index: u64,
}

impl TailCertificate {
    pub fn upper(&self) -> f64 {
        self.finite_part + self.tail_bound
    }

    /// Bracket test for sums of nonnegative terms, with `slack` for rounding.
    pub fn brackets(&self, value: f64, slack: f64) -> bool {
        value >= self.finite_part - slack && value <= self.upper() + slack
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexTailCertificate {
    pub finite_part: Complex64,
    pub tail_bound: f64,
    pub method: TailMethod,
    pub last_index: u64,
}

fn tolerance_not_met(achieved: f64) -> Error {
    Error::ToleranceNotMet { what: String::from("sum_with_tail"), achieved }
}

/// Sums `term(k)` for `k = start, start+1, ...` until `tail_bound(k)` (a bound on
/// `|Σ_{j>k} term(j)|`, nonincreasing in `k`) drops to `tol`.
pub fn sum_with_tail<T, B>(
    start: u64,
    term: T,
    tail_bound: B,
    method: TailMethod,
    tol: f64,
) -> Result<TailCertificate>
where
    T: Fn(u64) -> f64,
    B: Fn(u64) -> f64,
{
    let mut acc = Kahan::new();
    let mut k = start;
    loop {
        acc.add(term(k));
        let tail = tail_bound(k);
        if tail <= tol {
            return Ok(TailCertificate {
                finite_part: acc.value(),
                tail_bound: tail.max(0.0),
                method,
                last_index: k,
            });
        }
        if k - start + 1 >= MAX_TERMS {
            return Err(tolerance_not_met(tail));
        }
        k += 1;
    }
}

/// Complex-valued variant of [`sum_with_tail`].
pub fn sum_with_tail_complex<T, B>(
    start: u64,
    term: T,
    tail_bound: B,
    method: TailMethod,
    tol: f64,
) -> Result<ComplexTailCertificate>
where
    T: Fn(u64) -> Complex64,
    B: Fn(u64) -> f64,
{
    let mut acc = KahanComplex::new();
    let mut k = start;
    loop {
        acc.add(term(k));
        let tail = tail_bound(k);
        if tail <= tol {
            return Ok(ComplexTailCertificate {
                finite_part: acc.value(),
                tail_bound: tail.max(0.0),
                method,
                last_index: k,
            });
        }
        if k - start + 1 >= MAX_TERMS {
            return Err(tolerance_not_met(tail));
        }
        k += 1;
    }
}

/// Tail of `Σ_{k>n} C r^k` for `0 ≤ r < 1`, given the last included term `t_n = C r^n`.
#[inline]
pub fn geometric_tail(last_term_abs: f64, ratio: f64) -> f64 {
    if ratio >= 1.0 {
        f64::INFINITY
    } else {
        last_term_abs * ratio / (1.0 - ratio)
    }
}

/// `Σ_{k>n} k^{-s} ≤ ∫_n^∞ x^{-s} dx = n^{1-s}/(s-1)` for `s > 1`.
#[inline]
pub fn power_tail(n: u64, s: f64) -> f64 {
    use num_traits::Float;
    if s <= 1.0 {
        return f64::INFINITY;
    }
    (n as f64).powf(1.0 - s) / (s - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn basel_with_integral_tail() {
        let cert = sum_with_tail(
            1,
            |k| 1.0 / (k as f64 * k as f64),
            |n| 1.0 / n as f64,
            TailMethod::IntegralComparison,
            1e-6,
        )
        .unwrap();
        let exact = PI * PI / 6.0;
        assert!(cert.brackets(exact, 1e-15), "{cert:?}");
        assert_eq!(cert.last_index, 1_000_000);
    }

    #[test]
    fn geometric_half() {
        let cert = sum_with_tail(
            0,
            |k| 0.5f64.powi(k as i32),
            |n| geometric_tail(0.5f64.powi(n as i32), 0.5),
            TailMethod::Geometric,
            1e-15,
        )
        .unwrap();
        assert!(cert.brackets(2.0, 0.0));
        assert!((cert.upper() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn unreachable_tolerance_reports_tail() {
        // harmonic tail never shrinks
        let err = sum_with_tail(1, |k| 1.0 / k as f64, |_| 1.0, TailMethod::SuppliedClosedForm, 1e-3)
            .unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { achieved, .. } if achieved == 1.0));
    }

    #[test]
    fn compensated_sum_of_many_small_terms() {
        let s = kahan_sum(core::iter::once(1.0).chain(core::iter::repeat_n(1e-16, 1_000_000)));
        assert!((s - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn certificate_brackets_higher_truncation() {
        let cert = sum_with_tail(
            1,
            |k| 1.0 / (k as f64).powi(3),
            |n| power_tail(n, 3.0),
            TailMethod::IntegralComparison,
            1e-8,
        )
        .unwrap();
        let n10 = cert.last_index * 10;
        let direct = kahan_sum((1..=n10).map(|k| 1.0 / (k as f64).powi(3)));
        assert!(cert.brackets(direct, 1e-15));
    }
}
