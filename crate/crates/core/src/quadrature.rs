//! Deterministic quadrature rules used by every inner product in the crate.
//!
//! Three rule families are provided: Gauss–Hermite (weight `e^{-x²}` on ℝ,
//! nodes from Golub–Welsch), tanh-sinh on `(0, 1)` for endpoint singularities,
//! and a trapezoid on the logarithmic axis for Gamma-type integrals
//! `∫₀^∞ e^{-x} x^{σ-1} g(x) dx`. A plain trapezoid on ℝ against `e^{-x²}`
//! backs oscillatory Gaussian integrals that Gauss–Hermite cannot resolve at
//! the permitted node count.

use crate::error::{invalid, Result};
use crate::operator::eigen::{symmetric_eigen, Vectors};
use crate::sum::{Kahan, KahanComplex};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use num_complex::Complex64;
use num_traits::Float;

pub const MAX_GAUSS_HERMITE: usize = 512;
pub const MAX_TANH_SINH_LEVEL: u32 = 12;
pub const DEFAULT_LOG_STEP: f64 = 0.05;
pub const DEFAULT_LOG_HALF_WIDTH: f64 = 40.0;

const SQRT_PI: f64 = 1.772_453_850_905_516;
// exp(-π sinh t) reaches ~1e-300 near t = 6.1
const TANH_SINH_T_MAX: f64 = 6.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    GaussHermite,
    /// Trapezoid on ℝ against `e^{-x²}`.
    HermiteTrapezoid,
    TanhSinh,
    LogAxisTrapezoid,
}

/// What a rule integrates against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// `∫_ℝ e^{-x²} g(x) dx`
    RealLineGaussian,
    /// `∫₀¹ g(x) dx`
    UnitInterval,
    /// `∫₀^∞ e^{-x} x^{σ-1} g(x) dx`
    HalfLineGamma { sigma: f64 },
}

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub domain: Domain,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `1 - x` at each node, exact to working precision (tanh-sinh only).
    pub complements: Vec<f64>,
    /// `ln x` at each node (log-axis only).
    pub log_nodes: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = Kahan::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*x));
        }
        acc.value()
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = KahanComplex::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(*x) * *w);
        }
        acc.value()
    }

    /// Integrates `f(x, 1 - x)`; needed near `x = 1` where `x` itself rounds to one.
    pub fn integrate_unit_complex<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        debug_assert_eq!(self.kind, RuleKind::TanhSinh);
        let mut acc = KahanComplex::new();
        for i in 0..self.nodes.len() {
            acc.add(f(self.nodes[i], self.complements[i]) * self.weights[i]);
        }
        acc.value()
    }

    /// Integrates `f(x, ln x)`; the log-axis rule keeps `ln x` exact.
    pub fn integrate_log_complex<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        debug_assert_eq!(self.kind, RuleKind::LogAxisTrapezoid);
        let mut acc = KahanComplex::new();
        for i in 0..self.nodes.len() {
            acc.add(f(self.nodes[i], self.log_nodes[i]) * self.weights[i]);
        }
        acc.value()
    }
}

/// `n`-point Gauss–Hermite rule (weight `e^{-x²}`), exact through degree `2n - 1`.
///
/// Nodes are the eigenvalues of the symmetric Jacobi matrix of the Hermite
/// recurrence, with off-diagonal `√(k/2)`; weights are `√π v₀²`.
pub fn gauss_hermite_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_HERMITE {
        return Err(invalid(alloc::format!("gauss-hermite order {n} outside 1..={MAX_GAUSS_HERMITE}")));
    }
    let mut jac = alloc::vec![0.0; n * n];
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k - 1) * n + k] = b;
        jac[k * n + (k - 1)] = b;
    }
    let eig = symmetric_eigen(jac, n, Vectors::FirstRow, 1e-15);
    let mut nodes = eig.values;
    let mut weights: Vec<f64> = eig.first_row.iter().map(|v| SQRT_PI * v * v).collect();
    for (x, w) in nodes.iter_mut().zip(weights.iter_mut()) {
        for _ in 0..2 {
            let (pn, pn1, _) = hermite_orthonormal(*x, n);
            let step = pn / ((2.0 * n as f64).sqrt() * pn1);
            if step.is_finite() {
                *x -= step;
            }
        }
        let (_, _, ln_inv_w) = hermite_orthonormal(*x, n);
        let cw = (-ln_inv_w).exp();
        if cw.is_finite() && cw > 0.0 {
            *w = cw;
        }
    }
    // Exact symmetry about the origin.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule {
        kind: RuleKind::GaussHermite,
        domain: Domain::RealLineGaussian,
        nodes,
        weights,
        complements: Vec::new(),
        log_nodes: Vec::new(),
    })
}

/// Orthonormal Hermite values `p_n(x)`, `p_{n−1}(x)` with a common scale, and
/// `ln Σ_{k<n} p_k(x)²`, the log of the reciprocal Christoffel weight.
fn hermite_orthonormal(x: f64, n: usize) -> (f64, f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0 / SQRT_PI.sqrt();
    let mut sum = 0.0;
    let mut ln_scale = 0.0;
    for k in 0..n {
        sum += cur * cur;
        let next = (x * cur - (k as f64 / 2.0).sqrt() * prev) / ((k as f64 + 1.0) / 2.0).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > 1e100 {
            prev *= 1e-100;
            cur *= 1e-100;
            sum *= 1e-200;
            ln_scale += 100.0 * core::f64::consts::LN_10;
        }
    }
    (cur, prev, sum.ln() + 2.0 * ln_scale)
}

/// Trapezoid against `e^{-x²}` on ℝ that resolves `e^{iωx}` for `|ω| ≤ max_freq`.
///
/// The aliasing error of the step `h` is about `2√π exp(-(2π/h - ω)²/4)`, held
/// below 1e-17 by `h = 2π/(ω + 13)`; nodes stop at `|x| = 6.6`.
pub fn hermite_trapezoid_rule(max_freq: f64) -> QuadratureRule {
    let h = 2.0 * PI / (max_freq.abs() + 13.0);
    let k_max = (6.6 / h).ceil() as i64;
    let mut nodes = Vec::with_capacity((2 * k_max + 1) as usize);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for k in -k_max..=k_max {
        let x = k as f64 * h;
        nodes.push(x);
        weights.push(h * (-x * x).exp());
    }
    QuadratureRule {
        kind: RuleKind::HermiteTrapezoid,
        domain: Domain::RealLineGaussian,
        nodes,
        weights,
        complements: Vec::new(),
        log_nodes: Vec::new(),
    }
}

/// Rule against `e^{-x²}` able to integrate `e^{iωx} g(x)` for `|ω| ≤ max_freq`
/// with `g` slowly varying.
///
/// Gauss–Hermite with `max(64, 8⌈ω⌉)` nodes is used while that count also meets
/// the resolution requirement `n ≥ 0.4 ω² + 32` within the 512-node cap;
/// beyond that the trapezoid takes over.
pub fn gaussian_rule_for_frequency(max_freq: f64) -> QuadratureRule {
    let w = max_freq.abs();
    let base = 64usize.max(8 * w.ceil() as usize);
    let needed = (0.4 * w * w + 32.0).ceil() as usize;
    let n = base.max(needed);
    if n <= MAX_GAUSS_HERMITE {
        gauss_hermite_rule(n).expect("order within range")
    } else {
        hermite_trapezoid_rule(w)
    }
}

/// Tanh-sinh rule on `(0, 1)` with step `h = 2^{-level}`.
///
/// With `u = (π/2) sinh t` the nodes are `x = 1/(1 + e^{-2u})`, and the
/// complements `1 - x = 1/(1 + e^{2u})` are stored separately so that
/// integrands singular at `x = 1` stay accurate. Nodes are nondecreasing and
/// strictly increasing on the lower half; in the upper tail `x` may round to
/// one while the complements keep decreasing strictly.
pub fn tanh_sinh_rule(level: u32) -> Result<QuadratureRule> {
    if level == 0 || level > MAX_TANH_SINH_LEVEL {
        return Err(invalid(alloc::format!("tanh-sinh level {level} outside 1..={MAX_TANH_SINH_LEVEL}")));
    }
    let h = (2.0f64).powi(-(level as i32));
    let k_max = (TANH_SINH_T_MAX / h).floor() as i64;
    let cap = (2 * k_max + 1) as usize;
    let mut nodes = Vec::with_capacity(cap);
    let mut weights = Vec::with_capacity(cap);
    let mut complements = Vec::with_capacity(cap);
    for k in -k_max..=k_max {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let x = 1.0 / (1.0 + (-2.0 * u).exp());
        let xc = 1.0 / (1.0 + (2.0 * u).exp());
        let e = (-2.0 * u.abs()).exp();
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = h * FRAC_PI_2 * t.cosh() * 0.5 * sech2;
        if x > 0.0 && xc > 0.0 && w > 0.0 {
            nodes.push(x);
            complements.push(xc);
            weights.push(w);
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::TanhSinh,
        domain: Domain::UnitInterval,
        nodes,
        weights,
        complements,
        log_nodes: Vec::new(),
    })
}

/// Tanh-sinh level that resolves `x^{iλ}` on `(0, 1)` for `|λ| ≤ max_freq`.
pub fn tanh_sinh_level_for_frequency(max_freq: f64) -> u32 {
    let w = max_freq.abs().max(1.0);
    let extra = (w / 4.0).log2().ceil().max(0.0) as u32;
    (5 + extra + 1).min(MAX_TANH_SINH_LEVEL)
}

/// Trapezoid in `u = ln x` on `[-U, U]` for `∫₀^∞ e^{-x} x^{σ-1} g(x) dx`.
///
/// Weights are `h e^{-x} x^σ`; nodes whose weight underflows are dropped.
/// The left end moves out to `−40/σ` when that is wider, since the
/// neglected mass there is `e^{−σU}/σ`.
pub fn log_axis_rule(sigma: f64, h: f64, half_width: f64) -> Result<QuadratureRule> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(invalid("log-axis rule needs σ > 0"));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid("log-axis rule needs h > 0"));
    }
    if !(half_width >= 10.0 && half_width.is_finite()) {
        return Err(invalid("log-axis rule needs U ≥ 10"));
    }
    let k_max = (half_width / h).floor() as i64;
    let k_min = (half_width.max(40.0 / sigma) / h).ceil() as i64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut log_nodes = Vec::new();
    for k in -k_min..=k_max {
        let u = k as f64 * h;
        let x = u.exp();
        let w = h * (sigma * u - x).exp();
        if w > 0.0 {
            nodes.push(x);
            weights.push(w);
            log_nodes.push(u);
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::LogAxisTrapezoid,
        domain: Domain::HalfLineGamma { sigma },
        nodes,
        weights,
        complements: Vec::new(),
        log_nodes,
    })
}

/// [`log_axis_rule`] with the default step 0.05 and half-width 40.
pub fn default_log_axis_rule(sigma: f64) -> Result<QuadratureRule> {
    log_axis_rule(sigma, DEFAULT_LOG_STEP, DEFAULT_LOG_HALF_WIDTH)
}
