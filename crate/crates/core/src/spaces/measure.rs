//! Probability measures defining the weighted L² spaces, with their integrators.

use crate::error::{invalid, Result};
use crate::numtheory::{build_sieve, SieveTable};
use crate::quadrature::{default_log_axis_rule, gaussian_rule_for_frequency, tanh_sinh_level_for_frequency, tanh_sinh_rule};
use crate::specfun::{lgamma_real, mangoldt_tail_bound, sieve_length_for, zeta_log_derivative, zeta_minus_one};
use crate::sum::{Kahan, KahanComplex};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
use num_complex::Complex64;
use num_traits::Float;

/// Truncation tolerance for discrete measures (mass and coefficient tails).
pub const DISCRETE_TOL: f64 = 1e-10;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasureKind {
    /// Normal law with characteristic function `q^{βλ²}`, i.e. variance `2β log(1/q)`.
    Gaussian { beta: f64, q: f64 },
    /// `e^{-x} x^{σ-1}/Γ(σ)` on `(0, ∞)`.
    Gamma { sigma: f64 },
    /// `x^{p-1}(1-x)^{q-1}/B(p,q)` on `(0, 1)`.
    Beta { p: f64, q: f64 },
    /// `ψ(k) = −(ζ(σ)/ζ'(σ)) Λ(k)/k^σ`.
    DiscreteMangoldt { sigma: f64 },
    /// `ψ(k) = (1 − δ_{k1})/(k^σ (ζ(σ) − 1))`.
    DiscreteZetaTail { sigma: f64 },
    /// `dx/2π` on `[0, 2π)`.
    CircleUniform,
}

impl MeasureKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::Gaussian { .. } => "gaussian",
            MeasureKind::Gamma { .. } => "gamma",
            MeasureKind::Beta { .. } => "beta",
            MeasureKind::DiscreteMangoldt { .. } => "discrete-mangoldt",
            MeasureKind::DiscreteZetaTail { .. } => "discrete-zeta-tail",
            MeasureKind::CircleUniform => "circle-uniform",
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, MeasureKind::DiscreteMangoldt { .. } | MeasureKind::DiscreteZetaTail { .. })
    }
}

/// A point of the support as seen by integrands.
///
/// `ln_x` is exact on the log-axis rule and `one_minus_x` on tanh-sinh nodes;
/// `k` is the integer for discrete measures (0 otherwise).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub ln_x: f64,
    pub one_minus_x: f64,
    pub k: u64,
}

impl Point {
    fn real(x: f64) -> Self {
        Point { x, ln_x: f64::NAN, one_minus_x: 1.0 - x, k: 0 }
    }
}

/// Nodes with (probability) weights and a bound on the discarded mass.
#[derive(Clone, Debug)]
pub struct NodeSet {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    /// Bound on `Σ` of weights not represented (discrete truncation); 0 for quadrature.
    pub mass_tail: f64,
}

impl NodeSet {
    pub fn integrate<F: Fn(&Point) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = KahanComplex::new();
        for (p, w) in self.points.iter().zip(&self.weights) {
            acc.add(f(p) * *w);
        }
        acc.value()
    }
}

#[derive(Clone, Debug)]
struct DiscreteTable {
    sigma: f64,
    /// `k` and `ψ(k)` for every `k ≤ limit` with `ψ(k) > 0`, ascending.
    ks: Vec<u64>,
    psi: Vec<f64>,
    ln_k: Vec<f64>,
    limit: usize,
    /// Normalizer: `−ζ'(σ)/ζ(σ)` or `ζ(σ) − 1`.
    norm: f64,
    sieve: Arc<SieveTable>,
}

/// A probability measure with a deterministic integrator.
#[derive(Clone, Debug)]
pub struct WeightedMeasure {
    pub kind: MeasureKind,
    discrete: Option<DiscreteTable>,
}

fn finite_pos(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

impl WeightedMeasure {
    pub fn new(kind: MeasureKind) -> Result<Self> {
        let discrete = match kind {
            MeasureKind::Gaussian { beta, q } => {
                if !(finite_pos(beta) && q > 0.0 && q < 1.0) {
                    return Err(invalid(alloc::format!("gaussian measure needs β > 0 and 0 < q < 1 (β = {beta}, q = {q})")));
                }
                None
            }
            MeasureKind::Gamma { sigma } => {
                if !(finite_pos(sigma) && sigma <= 50.0) {
                    return Err(invalid(alloc::format!("gamma measure needs 0 < σ ≤ 50, got {sigma}")));
                }
                None
            }
            MeasureKind::Beta { p, q } => {
                if !(finite_pos(p) && finite_pos(q) && p <= 50.0 && q <= 50.0) {
                    return Err(invalid(alloc::format!("beta measure needs 0 < p, q ≤ 50 (p = {p}, q = {q})")));
                }
                None
            }
            MeasureKind::DiscreteMangoldt { sigma } | MeasureKind::DiscreteZetaTail { sigma } => {
                // σ ≥ 1.5 keeps the log-derivative oracles in their certified half-plane
                if !(sigma.is_finite() && (1.5..=60.0).contains(&sigma)) {
                    return Err(invalid(alloc::format!("discrete measures need 1.5 ≤ σ ≤ 60, got {sigma}")));
                }
                Some(build_discrete(kind, sigma)?)
            }
            MeasureKind::CircleUniform => None,
        };
        Ok(Self { kind, discrete })
    }

    /// Standard deviation of the Gaussian kind.
    pub fn gaussian_std(&self) -> Option<f64> {
        match self.kind {
            MeasureKind::Gaussian { beta, q } => Some((2.0 * beta * -q.ln()).sqrt()),
            _ => None,
        }
    }

    /// Sieve backing a discrete measure.
    pub fn sieve(&self) -> Option<Arc<SieveTable>> {
        self.discrete.as_ref().map(|d| d.sieve.clone())
    }

    /// Normalizer of a discrete measure: `−ζ'(σ)/ζ(σ)` (Mangoldt) or `ζ(σ) − 1` (zeta tail).
    pub fn discrete_normalizer(&self) -> Option<f64> {
        self.discrete.as_ref().map(|d| d.norm)
    }

    /// Bound on `Σ_{k>K} ψ(k) k^{-e}` for a discrete measure truncated at `K`.
    pub fn discrete_tail(&self, limit: usize, extra_decay: f64) -> f64 {
        let Some(d) = &self.discrete else { return 0.0 };
        let s = d.sigma + extra_decay;
        match self.kind {
            MeasureKind::DiscreteMangoldt { .. } => mangoldt_tail_bound(limit, s) / d.norm,
            _ => (limit as f64).powf(1.0 - s) / ((s - 1.0) * d.norm),
        }
    }

    /// Number of leading discrete nodes needed when the integrand obeys
    /// `|g(k)| ≤ k^{-e}`, and the bound on what they leave out.
    ///
    /// Cuts are powers of two, so prefixes for different `e` nest.
    pub fn discrete_prefix(&self, extra_decay: f64) -> (usize, f64) {
        let Some(d) = &self.discrete else { return (0, 0.0) };
        let mut cut = 64usize;
        while cut < d.limit && self.discrete_tail(cut, extra_decay) > DISCRETE_TOL {
            cut *= 2;
        }
        if cut >= d.limit {
            return (d.ks.len(), self.discrete_tail(d.limit, extra_decay));
        }
        (d.ks.partition_point(|&k| k <= cut as u64), self.discrete_tail(cut, extra_decay))
    }

    /// Integration nodes able to resolve integrands `g(x)` whose oscillation
    /// frequency (in `x`, `ln x` or `k`-independent units) is at most `max_freq`.
    ///
    /// For discrete kinds `extra_decay = e` declares `|g(k)| ≤ k^{-e}`; the
    /// truncation then stops as soon as the tail is below [`DISCRETE_TOL`].
    pub fn nodes(&self, max_freq: f64, extra_decay: f64) -> Result<NodeSet> {
        match self.kind {
            MeasureKind::Gaussian { .. } => {
                let s = self.gaussian_std().unwrap_or(1.0);
                let scale = SQRT_2 * s;
                let rule = gaussian_rule_for_frequency(scale * max_freq);
                Ok(NodeSet {
                    points: rule.nodes.iter().map(|y| Point::real(scale * y)).collect(),
                    weights: rule.weights.iter().map(|w| w * FRAC_1_SQRT_PI).collect(),
                    mass_tail: 0.0,
                })
            }
            MeasureKind::Gamma { sigma } => {
                let rule = default_log_axis_rule(sigma)?;
                let lg = lgamma_real(sigma);
                let points = rule
                    .nodes
                    .iter()
                    .zip(&rule.log_nodes)
                    .map(|(&x, &u)| Point { x, ln_x: u, one_minus_x: 1.0 - x, k: 0 })
                    .collect();
                Ok(NodeSet { points, weights: rule.weights.iter().map(|w| w * (-lg).exp()).collect(), mass_tail: 0.0 })
            }
            MeasureKind::Beta { p, q } => {
                let rule = tanh_sinh_rule(tanh_sinh_level_for_frequency(max_freq))?;
                let lb = lgamma_real(p) + lgamma_real(q) - lgamma_real(p + q);
                let mut points = Vec::with_capacity(rule.len());
                let mut weights = Vec::with_capacity(rule.len());
                for i in 0..rule.len() {
                    let x = rule.nodes[i];
                    let xc = rule.complements[i];
                    // ln x from whichever of x, 1 − x is better conditioned
                    let ln_x = if x < 0.5 { x.ln() } else { (-xc).ln_1p() };
                    let ln_xc = if xc < 0.5 { xc.ln() } else { (-x).ln_1p() };
                    let w = rule.weights[i] * ((p - 1.0) * ln_x + (q - 1.0) * ln_xc - lb).exp();
                    if w > 0.0 && w.is_finite() {
                        points.push(Point { x, ln_x, one_minus_x: xc, k: 0 });
                        weights.push(w);
                    }
                }
                Ok(NodeSet { points, weights, mass_tail: 0.0 })
            }
            MeasureKind::DiscreteMangoldt { .. } | MeasureKind::DiscreteZetaTail { .. } => {
                let d = self.discrete.as_ref().expect("discrete table built in new");
                let (end, mass_tail) = self.discrete_prefix(extra_decay);
                let points = (0..end)
                    .map(|i| Point { x: d.ks[i] as f64, ln_x: d.ln_k[i], one_minus_x: 1.0 - d.ks[i] as f64, k: d.ks[i] })
                    .collect();
                Ok(NodeSet { points, weights: d.psi[..end].to_vec(), mass_tail })
            }
            MeasureKind::CircleUniform => {
                let m = (4.0 * max_freq.abs()).ceil() as usize + 64;
                let h = 2.0 * PI / m as f64;
                Ok(NodeSet {
                    points: (0..m).map(|j| Point::real(j as f64 * h)).collect(),
                    weights: alloc::vec![1.0 / m as f64; m],
                    mass_tail: 0.0,
                })
            }
        }
    }

    /// Total mass computed with the measure's own integrator.
    pub fn total_mass(&self) -> Result<f64> {
        let nodes = self.nodes(0.0, 0.0)?;
        let mut acc = Kahan::new();
        for w in &nodes.weights {
            acc.add(*w);
        }
        Ok(acc.value())
    }

    /// Parameters for reports, in a fixed order.
    pub fn parameters(&self) -> Vec<(String, f64)> {
        let p = |k: &str, v: f64| (String::from(k), v);
        match self.kind {
            MeasureKind::Gaussian { beta, q } => alloc::vec![p("beta", beta), p("q", q)],
            MeasureKind::Gamma { sigma } => alloc::vec![p("sigma", sigma)],
            MeasureKind::Beta { p: a, q: b } => alloc::vec![p("p", a), p("q", b)],
            MeasureKind::DiscreteMangoldt { sigma } | MeasureKind::DiscreteZetaTail { sigma } => {
                alloc::vec![p("sigma", sigma)]
            }
            MeasureKind::CircleUniform => Vec::new(),
        }
    }
}

fn build_discrete(kind: MeasureKind, sigma: f64) -> Result<DiscreteTable> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let (limit, norm) = match kind {
        MeasureKind::DiscreteMangoldt { .. } => {
            let norm = -zeta_log_derivative(c(sigma))?.re;
            let mut n = sieve_length_for(sigma, DISCRETE_TOL * norm);
            if n < 1024 {
                n = 1024;
            }
            (n, norm)
        }
        _ => {
            let norm = zeta_minus_one(c(sigma))?.re;
            let mut n = 1024usize;
            while (n as f64).powf(1.0 - sigma) / ((sigma - 1.0) * norm) > DISCRETE_TOL && n < 4_000_000 {
                n *= 2;
            }
            (n, norm)
        }
    };
    let sieve = build_sieve(limit)?;
    let mut ks = Vec::new();
    let mut psi = Vec::new();
    let mut ln_k = Vec::new();
    for k in 2..=limit {
        let lk = (k as f64).ln();
        let w = match kind {
            MeasureKind::DiscreteMangoldt { .. } => {
                let l = sieve.mangoldt(k);
                if l == 0.0 {
                    continue;
                }
                l * (-sigma * lk).exp() / norm
            }
            _ => (-sigma * lk).exp() / norm,
        };
        if w == 0.0 {
            break;
        }
        ks.push(k as u64);
        psi.push(w);
        ln_k.push(lk);
    }
    Ok(DiscreteTable { sigma, ks, psi, ln_k, limit, norm, sieve: Arc::new(sieve) })
}
