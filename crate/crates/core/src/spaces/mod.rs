//! Weighted L² probability spaces, sequence families and their inner products.

mod measure;
mod schedule;

pub use measure::{MeasureKind, NodeSet, Point, WeightedMeasure, DISCRETE_TOL};
pub use schedule::{FrequencySchedule, ScheduleKind};

use crate::error::{invalid, Error, Result};
use crate::specfun::{beta_ratio, gamma_ratio, log_derivative_analytic, zeta_minus_one, ArithmeticWeight};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI, SQRT_2};
use num_complex::Complex64;
use num_traits::Float;

/// Imaginary residue tolerated in a norm before it is treated as an error.
pub const NORM_IMAG_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `φ_n(x) = e^{iλ_n x}`
    Fourier,
    /// `φ_n(x) = x^{iμ_n}`
    Mellin,
    /// `φ_n(k) = k^{-λ_n}`
    Dirichlet,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Fourier => "fourier",
            FamilyKind::Mellin => "mellin",
            FamilyKind::Dirichlet => "dirichlet",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceFamily {
    pub kind: FamilyKind,
    pub schedule: FrequencySchedule,
}

impl SequenceFamily {
    pub fn new(kind: FamilyKind, schedule: FrequencySchedule) -> Self {
        Self { kind, schedule }
    }

    /// `φ` with frequency `lambda` at a support point.
    #[inline]
    pub fn phi_at(&self, lambda: f64, p: &Point) -> Complex64 {
        match self.kind {
            FamilyKind::Fourier => Complex64::from_polar(1.0, lambda * p.x),
            FamilyKind::Mellin => Complex64::from_polar(1.0, lambda * p.ln_x),
            FamilyKind::Dirichlet => Complex64::new((-lambda * p.ln_x).exp(), 0.0),
        }
    }
}

pub type PointFn = Arc<dyn Fn(&Point) -> Complex64 + Send + Sync>;
/// Closed-form coefficient oracle taking `(n, λ_n)`.
pub type CoefficientFn = Arc<dyn Fn(usize, f64) -> Result<Complex64> + Send + Sync>;

/// A test function `f` with optional closed-form coefficient and norm oracles.
#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub eval: PointFn,
    /// Extra oscillation of `f` itself, added to the frequency the rule must resolve.
    pub bandwidth: f64,
    /// Bound on `|f|` over the support (used for discrete truncation tails).
    pub sup_abs: f64,
    pub coefficient: Option<CoefficientFn>,
    pub norm_sq: Option<f64>,
}

impl core::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("bandwidth", &self.bandwidth)
            .field("sup_abs", &self.sup_abs)
            .field("has_coefficient", &self.coefficient.is_some())
            .field("norm_sq", &self.norm_sq)
            .finish()
    }
}

impl TestFunction {
    pub fn new(id: &str, eval: PointFn) -> Self {
        Self { id: String::from(id), eval, bandwidth: 0.0, sup_abs: f64::INFINITY, coefficient: None, norm_sq: None }
    }

    pub fn with_bandwidth(mut self, b: f64) -> Self {
        self.bandwidth = b;
        self
    }

    pub fn with_sup(mut self, s: f64) -> Self {
        self.sup_abs = s;
        self
    }

    pub fn with_coefficient(mut self, c: CoefficientFn) -> Self {
        self.coefficient = Some(c);
        self
    }

    pub fn with_norm(mut self, n: f64) -> Self {
        self.norm_sq = Some(n);
        self
    }
}

/// Measure plus sequence family.
#[derive(Clone, Debug)]
pub struct Space {
    pub measure: WeightedMeasure,
    pub family: SequenceFamily,
}

fn compatible(m: &MeasureKind, f: FamilyKind) -> bool {
    matches!(
        (m, f),
        (MeasureKind::Gaussian { .. } | MeasureKind::CircleUniform, FamilyKind::Fourier)
            | (MeasureKind::Gamma { .. } | MeasureKind::Beta { .. }, FamilyKind::Mellin)
            | (MeasureKind::DiscreteMangoldt { .. } | MeasureKind::DiscreteZetaTail { .. }, FamilyKind::Dirichlet)
    )
}

/// Builds a measure of the given kind; see [`WeightedMeasure::new`].
pub fn make_space(kind: MeasureKind) -> Result<WeightedMeasure> {
    WeightedMeasure::new(kind)
}

impl Space {
    pub fn new(measure: WeightedMeasure, family: SequenceFamily) -> Result<Self> {
        if !compatible(&measure.kind, family.kind) {
            return Err(invalid(alloc::format!(
                "{} family is not defined on the {} measure",
                family.kind.name(),
                measure.kind.name()
            )));
        }
        Ok(Self { measure, family })
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.family.schedule.value(n)
    }

    /// Closed-form Gram entry `(φ_m, φ_n)` from the frequencies.
    pub fn gram_closed(&self, lm: f64, ln: f64) -> Result<Complex64> {
        let d = lm - ln;
        let c = |re: f64| Complex64::new(re, 0.0);
        match self.measure.kind {
            MeasureKind::Gaussian { beta, q } => Ok(c((beta * q.ln() * d * d).exp())),
            MeasureKind::Gamma { sigma } => gamma_ratio(sigma, d),
            MeasureKind::Beta { p, q } => beta_ratio(p, q, d),
            MeasureKind::CircleUniform => {
                if d == 0.0 {
                    Ok(c(1.0))
                } else {
                    // (e^{2πiΔ} − 1)/(2πiΔ), exactly 0 for integer Δ
                    let r = d.round();
                    if (d - r).abs() == 0.0 {
                        Ok(c(0.0))
                    } else {
                        let w = 2.0 * PI * d;
                        Ok(Complex64::new(w.sin(), 1.0 - w.cos()) / w)
                    }
                }
            }
            MeasureKind::DiscreteMangoldt { sigma } => {
                let norm = self.measure.discrete_normalizer().unwrap_or(1.0);
                let v = log_derivative_analytic(c(sigma + lm + ln), ArithmeticWeight::One)?;
                Ok(-v / norm)
            }
            MeasureKind::DiscreteZetaTail { sigma } => {
                let norm = self.measure.discrete_normalizer().unwrap_or(1.0);
                Ok(zeta_minus_one(c(sigma + lm + ln))? / norm)
            }
        }
    }

    /// Frequency a rule must resolve for `φ_m φ̄_n` and `f φ̄_n` products.
    fn rule_frequency(&self, freq: f64) -> f64 {
        match self.family.kind {
            FamilyKind::Dirichlet => 0.0,
            _ => freq.abs(),
        }
    }

    /// Numeric Gram entry with the bound on its truncation tail.
    pub fn gram_numeric(&self, lm: f64, ln: f64) -> Result<(Complex64, f64)> {
        let (freq, decay) = match self.family.kind {
            FamilyKind::Dirichlet => (0.0, lm + ln),
            _ => (lm - ln, 0.0),
        };
        let nodes = self.measure.nodes(self.rule_frequency(freq), decay)?;
        let v = nodes.integrate(|p| self.family.phi_at(lm, p) * self.family.phi_at(ln, p).conj());
        Ok((v, nodes.mass_tail))
    }
}

/// Evaluation mode for Gram entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramMode {
    Closed,
    Numeric,
    Both,
}

impl GramMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GramMode::Closed => "closed",
            GramMode::Numeric => "numeric",
            GramMode::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "closed" => Some(GramMode::Closed),
            "numeric" => Some(GramMode::Numeric),
            "both" => Some(GramMode::Both),
            _ => None,
        }
    }
}

/// Where a Gram entry came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Provenance {
    Closed,
    Numeric,
    /// Closed form reported, numeric path recorded with `|closed − numeric|`.
    Both { discrepancy: f64 },
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Closed => "closed",
            Provenance::Numeric => "numeric",
            Provenance::Both { .. } => "both",
        }
    }

    pub fn discrepancy(&self) -> Option<f64> {
        match self {
            Provenance::Both { discrepancy } => Some(*discrepancy),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramEntry {
    pub value: Complex64,
    pub closed: Option<Complex64>,
    pub numeric: Option<Complex64>,
    pub provenance: Provenance,
}

/// `a_{m,n} = (φ_m, φ_n)` in the requested mode.
pub fn gram_entry(space: &Space, m: usize, n: usize, mode: GramMode) -> Result<GramEntry> {
    if m == 0 || n == 0 {
        return Err(invalid("Gram indices are 1-based"));
    }
    let (lm, ln) = (space.lambda(m), space.lambda(n));
    match mode {
        GramMode::Closed => {
            let v = space.gram_closed(lm, ln)?;
            Ok(GramEntry { value: v, closed: Some(v), numeric: None, provenance: Provenance::Closed })
        }
        GramMode::Numeric => {
            let (v, _) = space.gram_numeric(lm, ln)?;
            Ok(GramEntry { value: v, closed: None, numeric: Some(v), provenance: Provenance::Numeric })
        }
        GramMode::Both => {
            let c = space.gram_closed(lm, ln)?;
            let (v, _) = space.gram_numeric(lm, ln)?;
            Ok(GramEntry {
                value: c,
                closed: Some(c),
                numeric: Some(v),
                provenance: Provenance::Both { discrepancy: (c - v).norm() },
            })
        }
    }
}

/// An integral with the bound on its truncation tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// `(f, g) = ∫ f ḡ dψ`; `max_freq` is the oscillation the integrator must resolve.
///
/// `sup_fg` bounds `|f ḡ|` on the support (discrete tails); pass `f64::INFINITY` if unknown.
pub fn inner_product<F, G>(measure: &WeightedMeasure, f: F, g: G, max_freq: f64, sup_fg: f64) -> Result<Integral>
where
    F: Fn(&Point) -> Complex64,
    G: Fn(&Point) -> Complex64,
{
    let nodes = measure.nodes(max_freq, 0.0)?;
    let value = nodes.integrate(|p| f(p) * g(p).conj());
    let tail_bound = if nodes.mass_tail == 0.0 { 0.0 } else { nodes.mass_tail * sup_fg };
    Ok(Integral { value, tail_bound })
}

/// A coefficient `(f, φ_n)` by quadrature, with the closed form when registered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    pub n: usize,
    pub lambda: f64,
    pub numeric: Complex64,
    pub tail_bound: f64,
    pub closed: Option<Complex64>,
    pub discrepancy: Option<f64>,
}

impl Coefficient {
    /// Closed form when available, quadrature otherwise.
    pub fn value(&self) -> Complex64 {
        self.closed.unwrap_or(self.numeric)
    }
}

/// `(f, φ_n)` for a single `n`.
pub fn coefficient(space: &Space, f: &TestFunction, n: usize) -> Result<Coefficient> {
    let v = coefficients(space, f, n)?;
    Ok(v[n - 1])
}

/// `(f, φ_n)` for `n = 1..=n_max`, evaluating `f` once per node.
pub fn coefficients(space: &Space, f: &TestFunction, n_max: usize) -> Result<Vec<Coefficient>> {
    if n_max == 0 {
        return Err(invalid("coefficient index is 1-based"));
    }
    let lambdas = space.family.schedule.values(n_max)?;
    let fam = &space.family;
    let mut out = Vec::with_capacity(n_max);
    match fam.kind {
        FamilyKind::Dirichlet => {
            let nodes = space.measure.nodes(0.0, 0.0)?;
            let fv: Vec<Complex64> = nodes.points.iter().map(|p| (f.eval)(p)).collect();
            for (i, &lam) in lambdas.iter().enumerate() {
                let (end, tail) = space.measure.discrete_prefix(lam.max(0.0));
                let mut acc = crate::sum::KahanComplex::new();
                for j in 0..end {
                    acc.add(fv[j] * fam.phi_at(lam, &nodes.points[j]) * nodes.weights[j]);
                }
                out.push(finish(f, i + 1, lam, acc.value(), tail * f.sup_abs)?);
            }
        }
        _ => {
            let max_freq = lambdas.iter().fold(0.0f64, |a, l| a.max(l.abs())) + f.bandwidth;
            let nodes = space.measure.nodes(space.rule_frequency(max_freq), 0.0)?;
            let fv: Vec<Complex64> = nodes.points.iter().map(|p| (f.eval)(p)).collect();
            for (i, &lam) in lambdas.iter().enumerate() {
                let mut acc = crate::sum::KahanComplex::new();
                for (j, p) in nodes.points.iter().enumerate() {
                    acc.add(fv[j] * fam.phi_at(lam, p).conj() * nodes.weights[j]);
                }
                out.push(finish(f, i + 1, lam, acc.value(), 0.0)?);
            }
        }
    }
    Ok(out)
}

fn finish(f: &TestFunction, n: usize, lam: f64, numeric: Complex64, tail_bound: f64) -> Result<Coefficient> {
    // a closed form may decline part of the frequency range
    let closed = match &f.coefficient {
        Some(c) => match c(n, lam) {
            Ok(v) => Some(v),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(Coefficient { n, lambda: lam, numeric, tail_bound, closed, discrepancy: closed.map(|c| (c - numeric).norm()) })
}

/// `‖f‖²` by quadrature, with the closed form when registered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSq {
    pub numeric: f64,
    pub tail_bound: f64,
    pub closed: Option<f64>,
}

impl NormSq {
    pub fn value(&self) -> f64 {
        self.closed.unwrap_or(self.numeric)
    }
}

pub fn norm_sq(space: &Space, f: &TestFunction) -> Result<NormSq> {
    let ev = &f.eval;
    let r = inner_product(&space.measure, |p| ev(p), |p| ev(p), 2.0 * f.bandwidth, f.sup_abs * f.sup_abs)?;
    if r.value.im.abs() > NORM_IMAG_TOL * r.value.re.abs().max(1.0) {
        return Err(Error::NumericalInconsistency { what: String::from("norm with imaginary residue"), discrepancy: r.value.im.abs() });
    }
    Ok(NormSq { numeric: r.value.re.max(0.0), tail_bound: r.tail_bound, closed: f.norm_sq })
}

/// Outcome of [`validate_schedule`]: violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScheduleValidation {
    pub violations: Vec<String>,
}

impl ScheduleValidation {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a schedule's own gap inequality for `1 ≤ n < m ≤ n_check` and the
/// scalar side condition tied to the measure kind.
pub fn validate_schedule(schedule: &FrequencySchedule, measure: &MeasureKind, n_check: usize) -> ScheduleValidation {
    let mut v = ScheduleValidation::default();
    let n_check = match schedule.len_limit() {
        Some(l) => n_check.min(l),
        None => n_check,
    };
    let vals: Vec<f64> = (1..=n_check).map(|k| schedule.value(k)).collect();
    let slack = 1e-12;
    let gap = |d: f64| -> Option<f64> {
        match schedule.kind {
            ScheduleKind::Integer | ScheduleKind::Shifted => Some(d),
            ScheduleKind::SqrtLog { alpha, scale } => Some(alpha / scale * (1.0 + d).ln().sqrt()),
            ScheduleKind::LogLinear { c1 } => Some(c1 * (1.0 + d).ln()),
            ScheduleKind::Power { alpha, beta } => Some(alpha * (1.0 + d).powf(beta)),
            ScheduleKind::Explicit(_) => None,
        }
    };
    'outer: for m in 1..vals.len() {
        for n in 0..m {
            let diff = vals[m] - vals[n];
            let need = gap((m - n) as f64).unwrap_or(0.0);
            if !(diff > 0.0) || diff + slack * need.max(1.0) < need {
                v.violations.push(alloc::format!(
                    "gap λ_{} − λ_{} = {diff} below the required {need}",
                    m + 1,
                    n + 1
                ));
                break 'outer;
            }
        }
    }
    match (&schedule.kind, measure) {
        (ScheduleKind::SqrtLog { alpha, .. }, _) if *alpha <= SQRT_2 => {
            v.violations.push(alloc::format!("α = {alpha} must exceed √2"));
        }
        (ScheduleKind::LogLinear { c1 }, _) if c1 * PI / 2.0 <= 1.0 => {
            v.violations.push(alloc::format!("c₁π/2 = {} must exceed 1", c1 * PI / 2.0));
        }
        (ScheduleKind::Power { beta, .. }, MeasureKind::Beta { q, .. }) if beta * q <= 1.0 => {
            v.violations.push(alloc::format!("βq = {} must exceed 1", beta * q));
        }
        _ => {}
    }
    if measure.is_discrete() {
        if let Some((i, l)) = vals.iter().enumerate().find(|(i, l)| **l < *i as f64 - slack) {
            v.violations.push(alloc::format!("λ_{} = {l} below n − 1 = {i}", i + 1));
        }
    }
    v
}

/// Minimal arithmetic schedule of a kind whose gap condition involves `log(1+d)`:
/// the smallest `δ` with `δ d ≥ g(d)` for all `d ≥ 1` is attained at `d = 1`.
pub fn minimal_log_gap(alpha_over_scale: f64) -> f64 {
    alpha_over_scale * LN_2.sqrt()
}
