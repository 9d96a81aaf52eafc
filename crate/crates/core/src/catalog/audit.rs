//! Audits of the displayed inequalities against the framework bound.

use super::CaseInstance;
use crate::error::Result;
use crate::operator::{GramMatrix, SchurEstimate, Status};
use crate::sum::Kahan;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

/// Relative tolerance for a displayed constant to count as the framework's.
pub const DISPLAY_MATCH_TOL: f64 = 1e-6;
const HOLDS_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DisplayReading {
    pub label: String,
    /// Displayed constant multiplying `S`.
    pub constant: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `constant / framework_constant`.
    pub ratio: f64,
    pub matches_framework: bool,
}

/// `Σ_{n≤N} term(λ_n) ≤ K · S` as displayed, with `S = normalizer · C`.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplayAudit {
    pub n: usize,
    pub lhs: f64,
    pub s_upper: f64,
    /// `scale² ‖f‖² / normalizer`, the constant the framework supplies.
    pub framework_constant: f64,
    pub readings: Vec<DisplayReading>,
    pub note: String,
    /// Pass when some reading holds and matches; advisory otherwise.
    pub status: Status,
}

/// Audits a case's displayed inequality at truncation `n`; `None` when the case has none.
pub fn display_audit(case: &CaseInstance, n: usize, schur: &SchurEstimate, norm_sq: f64) -> Result<Option<DisplayAudit>> {
    let Some(d) = &case.display else { return Ok(None) };
    let mut acc = Kahan::new();
    for k in 1..=n {
        acc.add((d.term)(case.space.lambda(k))?);
    }
    let lhs = acc.value();
    let s_upper = case.normalizer * schur.upper();
    let framework_constant = d.scale * d.scale * norm_sq / case.normalizer;
    let readings: Vec<DisplayReading> = d
        .readings
        .iter()
        .map(|&(label, constant)| {
            let rhs = constant * s_upper;
            let ratio = constant / framework_constant;
            DisplayReading {
                label: String::from(label),
                constant,
                rhs,
                holds: lhs <= rhs * (1.0 + HOLDS_SLACK),
                ratio,
                matches_framework: (ratio - 1.0).abs() <= DISPLAY_MATCH_TOL,
            }
        })
        .collect();
    let good = readings.iter().any(|r| r.holds && r.matches_framework);
    Ok(Some(DisplayAudit {
        n,
        lhs,
        s_upper,
        framework_constant,
        readings,
        note: String::from(d.note),
        status: if good { Status::Pass } else { Status::Advisory },
    }))
}

/// Both sides of an arithmetic display evaluated twice: analytically
/// (ζ, L and their derivatives) and by sieve sums.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPath {
    pub n: usize,
    pub lhs_analytic: f64,
    pub lhs_sieve: f64,
    pub rhs_analytic: f64,
    pub rhs_sieve: f64,
    pub constant_analytic: f64,
    pub constant_sieve: f64,
    /// Largest disagreement between the paths on either side.
    pub agreement: f64,
    /// Sieve tail allowance folded into `agreement`'s tolerance.
    pub tail_allowance: f64,
    /// `min(rhs − lhs)` over both paths.
    pub margin: f64,
    pub status: Status,
}

/// Path agreement required between the analytic and sieve evaluations.
pub const DUAL_PATH_TOL: f64 = 1e-7;

/// Runs both evaluation paths; `closed`/`numeric` are the `n×n` Gram matrices
/// in the two modes and `tail` the certified Schur tail.
pub fn arithmetic_dual_path(
    case: &CaseInstance,
    n: usize,
    closed: &GramMatrix,
    numeric: &GramMatrix,
    tail: f64,
) -> Result<Option<DualPath>> {
    let Some(spec) = &case.arithmetic else { return Ok(None) };
    let sieve = case.space.measure.sieve().ok_or_else(|| crate::error::invalid("arithmetic case without sieve"))?;
    let mut la = Kahan::new();
    let mut ls = Kahan::new();
    let mut lhs_tail = 0.0;
    for k in 1..=n {
        let w = Complex64::new(spec.sigma + case.space.lambda(k), spec.t);
        let a = spec.analytic(w)?;
        let (s, t) = spec.series(w, &sieve);
        la.add(a.norm_sqr());
        ls.add(s.norm_sqr());
        lhs_tail += t * (2.0 * s.norm() + t);
    }
    let sup = |g: &GramMatrix| g.row_sums().into_iter().fold(0.0, f64::max);
    let constant_analytic = spec.display_constant()?;
    let (constant_sieve, k_tail) = spec.display_constant_series(&sieve);
    let norm = case.normalizer;
    let rhs_analytic = constant_analytic * norm * (sup(closed) + tail);
    let rhs_sieve = constant_sieve * norm * (sup(numeric) + tail);
    let (lhs_analytic, lhs_sieve) = (la.value(), ls.value());
    let agreement = (lhs_analytic - lhs_sieve).abs().max((rhs_analytic - rhs_sieve).abs());
    let tail_allowance = lhs_tail + k_tail * norm * (sup(closed) + tail);
    let margin = (rhs_analytic - lhs_analytic).min(rhs_sieve - lhs_sieve);
    let ok = agreement <= DUAL_PATH_TOL + tail_allowance && margin > 0.0;
    Ok(Some(DualPath {
        n,
        lhs_analytic,
        lhs_sieve,
        rhs_analytic,
        rhs_sieve,
        constant_analytic,
        constant_sieve,
        agreement,
        tail_allowance,
        margin,
        status: if ok { Status::Pass } else { Status::Fail },
    }))
}
