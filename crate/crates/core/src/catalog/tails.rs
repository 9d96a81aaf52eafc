//! Analytic upper bounds on the Schur constant of the infinite Gram operator.

use crate::error::Result;
use crate::spaces::{FrequencySchedule, MeasureKind, ScheduleKind, Space};
use crate::specfun::{gamma_ratio, lgamma_real, log_derivative_analytic, zeta_minus_one, ArithmeticWeight};
use crate::sum::Kahan;
use core::f64::consts::{LN_2, PI};
use num_complex::Complex64;
use num_traits::Float;

const TAIL_TARGET: f64 = 1e-16;
const MAX_D: u64 = 4096;
const DISCRETE_D: usize = 256;

/// `U ≥ sup_m Σ_n |(φ_m, φ_n)|` over the whole infinite sequence, or `None`
/// when the schedule carries no usable gap bound.
pub fn certified_schur_upper(space: &Space) -> Result<Option<f64>> {
    let sched = &space.family.schedule;
    if matches!(sched.kind, ScheduleKind::Explicit(_)) {
        return Ok(None);
    }
    match space.measure.kind {
        MeasureKind::CircleUniform => Ok(match sched.kind {
            ScheduleKind::Integer | ScheduleKind::Shifted => Some(1.0),
            _ => None,
        }),
        MeasureKind::Gaussian { beta, q } => {
            let c = beta * -q.ln();
            let delta = match sched.linear_gap() {
                Some(d) => d,
                None => return Ok(None),
            };
            let tail = |d: u64| {
                let a = c * delta * delta;
                let d1 = (d + 1) as f64;
                (-a * d1 * d1).exp() / (1.0 - (-a * (2.0 * d1 + 1.0)).exp())
            };
            difference_kernel(sched, |g| Ok((-c * g * g).exp()), tail)
        }
        MeasureKind::Gamma { sigma } => {
            let delta = match sched.linear_gap() {
                Some(d) => d,
                None => return Ok(None),
            };
            let lg = lgamma_real(sigma);
            let g = move |y: f64| {
                let r2 = sigma * sigma + y * y;
                ((2.0 * PI).sqrt().ln() + 0.5 * (sigma - 0.5) * r2.ln() - PI * y / 2.0 + 1.0 / (6.0 * r2.sqrt()) - lg).exp()
            };
            let tail = |d: u64| {
                let y1 = delta * (d + 1) as f64;
                let y2 = delta * (d + 2) as f64;
                let r = ((sigma * sigma + y2 * y2) / (sigma * sigma + y1 * y1)).powf((sigma - 0.5).max(0.0) / 2.0)
                    * (-PI * delta / 2.0).exp();
                if r < 1.0 {
                    g(y1) / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            };
            difference_kernel(sched, |y| Ok(gamma_ratio(sigma, y)?.norm()), tail)
        }
        MeasureKind::Beta { p, q } => {
            let (cc, b) = match sched.kind {
                ScheduleKind::Power { alpha, beta } if beta > 1.0 => (alpha * 2f64.powf(beta), beta),
                _ => match sched.linear_gap() {
                    Some(d) => (d, 1.0),
                    None => return Ok(None),
                },
            };
            if b * q <= 1.0 {
                return Ok(None);
            }
            let ratio = (lgamma_real(p + q) - lgamma_real(p)).exp();
            let small_p = if p >= 0.5 { 1.0 } else { ((p + q) / p).powf(0.5 - p) };
            let tail = |d: u64| {
                let df = d as f64;
                let y_min = cc * df.powf(b);
                let k = q.exp() * (1.0 / (3.0 * y_min)).exp() * ratio * small_p;
                k * cc.powf(-q) * df.powf(1.0 - b * q) / (b * q - 1.0)
            };
            difference_kernel(sched, |y| Ok(crate::specfun::beta_ratio(p, q, y)?.norm()), tail)
        }
        MeasureKind::DiscreteMangoldt { sigma } => {
            let norm = space.measure.discrete_normalizer().unwrap_or(1.0);
            let k = |s: f64| -> Result<f64> { Ok(-log_derivative_analytic(Complex64::new(s, 0.0), ArithmeticWeight::One)?.re) };
            let bound = |s: f64| {
                let e = s - 1.0;
                LN_2 * 2f64.powf(-s) + 2f64.powf(1.0 - s) * (LN_2 / e + 1.0 / (e * e))
            };
            discrete_kernel(sched, sigma, norm, k, bound).map(Some)
        }
        MeasureKind::DiscreteZetaTail { sigma } => {
            let norm = space.measure.discrete_normalizer().unwrap_or(1.0);
            let k = |s: f64| -> Result<f64> { Ok(zeta_minus_one(Complex64::new(s, 0.0))?.re) };
            let bound = |s: f64| 2f64.powf(-s) * (1.0 + 2.0 / (s - 1.0));
            discrete_kernel(sched, sigma, norm, k, bound).map(Some)
        }
    }
}

/// `1 + 2 Σ_{d ≤ D} k(gap(d)) + 2 tail(D)` for a kernel decreasing in the gap.
fn difference_kernel<K, T>(sched: &FrequencySchedule, k: K, tail: T) -> Result<Option<f64>>
where
    K: Fn(f64) -> Result<f64>,
    T: Fn(u64) -> f64,
{
    let mut acc = Kahan::new();
    acc.add(1.0);
    let mut d = 0u64;
    let mut check = 1u64;
    loop {
        d += 1;
        let g = match sched.gap_lower(d) {
            Some(g) => g,
            None => return Ok(None),
        };
        acc.add(2.0 * k(g)?);
        if d == check {
            let t = tail(d);
            if t < TAIL_TARGET || d >= MAX_D {
                return Ok(if t.is_finite() { Some(acc.value() + 2.0 * t) } else { None });
            }
            check *= 2;
        }
    }
}

/// Row 1 dominates for kernels `k(σ + λ_m + λ_n)` decreasing in the argument.
fn discrete_kernel<K, B>(sched: &FrequencySchedule, sigma: f64, norm: f64, k: K, bound: B) -> Result<f64>
where
    K: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> f64,
{
    let l1 = sched.value(1);
    let mut acc = Kahan::new();
    for n in 1..=DISCRETE_D {
        acc.add(k(sigma + l1 + sched.value(n))? / norm);
    }
    // λ_n ≥ n − 1 and each unit step at least halves the kernel
    let tail = 2.0 * bound(sigma + l1 + DISCRETE_D as f64) / norm;
    Ok(acc.value() + tail)
}
