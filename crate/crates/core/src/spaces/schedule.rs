//! Frequency schedules `λ_n` (1-based) and their gap conditions.

use crate::error::{invalid, Result};
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Float;

#[derive(Clone, Debug, PartialEq)]
pub enum ScheduleKind {
    /// `λ_n = n`
    Integer,
    /// `λ_n = n − 1`
    Shifted,
    /// `λ_n = (α/scale)·√(log 2)·n`, the least arithmetic schedule with
    /// `λ_m − λ_n ≥ (α/scale)·√log(1+m−n)`.
    SqrtLog { alpha: f64, scale: f64 },
    /// `μ_n = c₁·log 2·n`, satisfying `μ_m − μ_n ≥ c₁ log(1+m−n)`.
    LogLinear { c1: f64 },
    /// `λ_n = α·2^β·n^{max(β,1)}`, satisfying `λ_m − λ_n ≥ α(1+m−n)^β`.
    Power { alpha: f64, beta: f64 },
    /// Caller-supplied strictly increasing values.
    Explicit(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySchedule {
    pub kind: ScheduleKind,
}

impl FrequencySchedule {
    pub fn new(kind: ScheduleKind) -> Result<Self> {
        let ok = match &kind {
            ScheduleKind::Integer | ScheduleKind::Shifted => true,
            ScheduleKind::SqrtLog { alpha, scale } => *alpha > 0.0 && *scale > 0.0 && alpha.is_finite() && scale.is_finite(),
            ScheduleKind::LogLinear { c1 } => *c1 > 0.0 && c1.is_finite(),
            ScheduleKind::Power { alpha, beta } => *alpha > 0.0 && *beta > 0.0 && alpha.is_finite() && beta.is_finite(),
            ScheduleKind::Explicit(v) => {
                !v.is_empty() && v.iter().all(|x| x.is_finite()) && v.windows(2).all(|w| w[1] > w[0])
            }
        };
        if !ok {
            return Err(invalid(alloc::format!("invalid schedule parameters: {kind:?}")));
        }
        Ok(Self { kind })
    }

    pub fn integer() -> Self {
        Self { kind: ScheduleKind::Integer }
    }

    pub fn shifted() -> Self {
        Self { kind: ScheduleKind::Shifted }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ScheduleKind::Integer => "integer",
            ScheduleKind::Shifted => "shifted",
            ScheduleKind::SqrtLog { .. } => "sqrtlog",
            ScheduleKind::LogLinear { .. } => "loglinear",
            ScheduleKind::Power { .. } => "power",
            ScheduleKind::Explicit(_) => "explicit",
        }
    }

    /// Number of defined entries (`None` = unbounded).
    pub fn len_limit(&self) -> Option<usize> {
        match &self.kind {
            ScheduleKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `λ_n` for `n ≥ 1`.
    pub fn value(&self, n: usize) -> f64 {
        debug_assert!(n >= 1);
        let nf = n as f64;
        match &self.kind {
            ScheduleKind::Integer => nf,
            ScheduleKind::Shifted => nf - 1.0,
            ScheduleKind::SqrtLog { alpha, scale } => alpha / scale * core::f64::consts::LN_2.sqrt() * nf,
            ScheduleKind::LogLinear { c1 } => c1 * core::f64::consts::LN_2 * nf,
            ScheduleKind::Power { alpha, beta } => alpha * 2f64.powf(*beta) * nf.powf(beta.max(1.0)),
            ScheduleKind::Explicit(v) => v[n - 1],
        }
    }

    /// `λ_1..=λ_n`.
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        if let Some(l) = self.len_limit() {
            if n > l {
                return Err(invalid(alloc::format!("explicit schedule has {l} entries, {n} requested")));
            }
        }
        Ok((1..=n).map(|k| self.value(k)).collect())
    }

    /// `δ > 0` with `λ_m − λ_n ≥ δ(m − n)` for all `m > n`, when the kind guarantees one.
    pub fn linear_gap(&self) -> Option<f64> {
        match &self.kind {
            ScheduleKind::Integer | ScheduleKind::Shifted => Some(1.0),
            ScheduleKind::SqrtLog { alpha, scale } => Some(alpha / scale * core::f64::consts::LN_2.sqrt()),
            ScheduleKind::LogLinear { c1 } => Some(c1 * core::f64::consts::LN_2),
            // n^{β'} with β' ≥ 1 has increments ≥ 1 per step
            ScheduleKind::Power { alpha, beta } => Some(alpha * 2f64.powf(*beta)),
            ScheduleKind::Explicit(_) => None,
        }
    }

    /// Lower bound on `λ_m − λ_n` over all pairs with `m − n = d ≥ 1`.
    pub fn gap_lower(&self, d: u64) -> Option<f64> {
        let df = d as f64;
        match &self.kind {
            ScheduleKind::Power { alpha, beta } if *beta > 1.0 => Some(alpha * 2f64.powf(*beta) * df.powf(*beta)),
            ScheduleKind::Explicit(v) => {
                let d = d as usize;
                (d < v.len()).then(|| v.windows(d + 1).map(|w| w[d] - w[0]).fold(f64::INFINITY, f64::min))
            }
            _ => self.linear_gap().map(|g| g * df),
        }
    }

    /// Key/value parameters for reports, in a fixed order.
    pub fn parameters(&self) -> Vec<(String, f64)> {
        let p = |k: &str, v: f64| (String::from(k), v);
        match &self.kind {
            ScheduleKind::Integer | ScheduleKind::Shifted | ScheduleKind::Explicit(_) => Vec::new(),
            ScheduleKind::SqrtLog { alpha, scale } => alloc::vec![p("alpha", *alpha), p("scale", *scale)],
            ScheduleKind::LogLinear { c1 } => alloc::vec![p("c1", *c1)],
            ScheduleKind::Power { alpha, beta } => alloc::vec![p("alpha", *alpha), p("beta", *beta)],
        }
    }
}
