//! The worked examples as configured, runnable cases.
//!
//! Each case binds a measure, a sequence family with its default schedule, a
//! test function with its verified closed forms, an analytic Schur tail and,
//! where the example has one, the displayed inequality to audit.

mod audit;
mod cases;
mod identities;
mod run;
mod tails;

pub use audit::{arithmetic_dual_path, display_audit, DisplayAudit, DisplayReading, DualPath, DISPLAY_MATCH_TOL, DUAL_PATH_TOL};
pub use identities::{
    identity_checks, positivity_grid, qbessel_positivity, IdentityCheck, PositivitySum, POSITIVITY_REAL_TOL, SWAP_TOL,
};
pub use run::{
    run_case, seeded_complex_vectors, seeded_unit_vectors, CaseReport, ChainCheck, RunOptions, CHAIN_SLACK, EIGEN_SLACK,
    NORM_AGREEMENT, QUADRATIC_VECTORS,
};
pub use tails::certified_schur_upper;

use crate::error::{Error, Result};
use crate::spaces::{Space, TestFunction};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Parameter overrides keyed by name.
pub type Overrides = BTreeMap<String, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseInfo {
    pub id: &'static str,
    pub summary: &'static str,
}

const ROSTER: &[CaseInfo] = &[
    CaseInfo { id: "beta-2F1", summary: "Beta weight, f = (1 − zx)^(−a), Euler-integral 2F1 coefficients" },
    CaseInfo { id: "beta-besselJ", summary: "Beta weight, f = J_2ν(√x), 1F2 coefficients and 2F3 norm" },
    CaseInfo { id: "beta-jacobi", summary: "Beta weight, f = Jacobi polynomial P_ℓ^(p−1,q−1)(2x−1), 3F2 coefficients" },
    CaseInfo { id: "beta-log", summary: "Beta weight, f = log x, digamma coefficients" },
    CaseInfo { id: "control-orthonormal", summary: "Uniform measure on the circle, λ_n = n: orthonormal baseline" },
    CaseInfo { id: "gamma-2F1", summary: "Gamma weight, f = 1F1(a; σ; xt), 2F1 coefficients" },
    CaseInfo { id: "gamma-besselJ-1F1", summary: "Gamma weight, f = J_ν(a√x), 1F1 coefficients and 2F2 norm" },
    CaseInfo { id: "gamma-besselK", summary: "Gamma weight, f = e^(x/2) K_ν(x/2), gamma-quotient coefficients" },
    CaseInfo { id: "gamma-besselK-arg", summary: "Gamma weight, f = e^(−a²/4x), K of complex order coefficients" },
    CaseInfo { id: "gamma-eta-zeta", summary: "Gamma weight, f = e^x/(e^x + 1), eta-zeta coefficients" },
    CaseInfo { id: "gamma-laguerre", summary: "Gamma weight, f = Laguerre L_ℓ^(σ−1), gamma-quotient coefficients" },
    CaseInfo { id: "gamma-log", summary: "Gamma weight, f = log x, digamma coefficients" },
    CaseInfo { id: "gauss-integer", summary: "Standard normal, λ_n = n, f = 1: theta-sum Schur constant" },
    CaseInfo { id: "gauss-sqrtlog", summary: "Standard normal, square-root-log gap schedule, f = 1" },
    CaseInfo { id: "mangoldt-L", summary: "Mangoldt weights, a = χ: L'/L inequality" },
    CaseInfo { id: "mangoldt-liouville", summary: "Mangoldt weights, a = Liouville: log-derivative of ζ(2s)/ζ(s)" },
    CaseInfo { id: "mangoldt-zeta", summary: "Mangoldt weights, a = 1: ζ'/ζ inequality" },
    CaseInfo { id: "qgauss-aq", summary: "q-Gaussian β = 1/2, f = (zq^(1/2)e^(ix); q)_∞, Ramanujan A_q coefficients" },
    CaseInfo { id: "qgauss-aq2", summary: "q-Gaussian β = 1, f = 1/(−ze^(ix); q)_∞, Ramanujan A_q coefficients" },
    CaseInfo { id: "qgauss-binomial", summary: "q-Gaussian β = 1/2, f = 1/(ze^(ix); q)_∞, q-binomial coefficients" },
    CaseInfo { id: "qgauss-qbessel", summary: "q-Gaussian β = 1/2, q-Bessel generating function, quadrature coefficients" },
    CaseInfo { id: "zetatail-chi", summary: "Zeta-tail weights, a = χ: L(s) − 1 inequality" },
    CaseInfo { id: "zetatail-liouville", summary: "Zeta-tail weights, a = Liouville: ζ(2s)/ζ(s) − 1 inequality" },
    CaseInfo { id: "zetatail-mu", summary: "Zeta-tail weights, a = μ: 1/ζ(s) − 1 inequality" },
    CaseInfo { id: "zetatail-muchi", summary: "Zeta-tail weights, a = μχ: 1/L(s) − 1 inequality" },
    CaseInfo { id: "zetatail-one", summary: "Zeta-tail weights, a = 1: ζ(s) − 1 inequality" },
];

/// Every case id with its one-line summary, sorted by id.
pub fn list_cases() -> Vec<CaseInfo> {
    let mut v = ROSTER.to_vec();
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

fn lookup(id: &str) -> Result<&'static CaseInfo> {
    ROSTER.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(String::from(id)))
}

/// Arithmetic weight of a Dirichlet-series case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    One,
    Chi,
    Mu,
    MuChi,
    Liouville,
}

impl Arithmetic {
    pub fn name(self) -> &'static str {
        match self {
            Arithmetic::One => "one",
            Arithmetic::Chi => "chi",
            Arithmetic::Mu => "mu",
            Arithmetic::MuChi => "muchi",
            Arithmetic::Liouville => "liouville",
        }
    }
}

/// Literal summand of a displayed inequality, as a function of the frequency.
pub(crate) type TermFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// The displayed inequality of an example: `Σ term(λ_n) ≤ K · S`, with `S`
/// the unnormalized Schur sup.
#[derive(Clone)]
pub(crate) struct DisplaySpec {
    pub term: TermFn,
    /// Displayed constants multiplying `S`; more than one when the display is ambiguous.
    pub readings: Vec<(&'static str, f64)>,
    /// `term ≈ scale² |f_n|²` as the example intends.
    pub scale: f64,
    pub note: &'static str,
}

/// Dirichlet-series data of the arithmetic cases.
#[derive(Clone, Debug)]
pub(crate) struct ArithmeticSpec {
    pub weight: Arithmetic,
    /// `true` for the Mangoldt-weighted cases, `false` for zeta-tail.
    pub mangoldt: bool,
    pub sigma: f64,
    pub t: f64,
    pub chi: Option<Arc<crate::numtheory::DirichletCharacter>>,
}

/// Which positivity identities a case carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum IdentityKind {
    None,
    Binomial,
    Ramanujan,
    RamanujanSquared,
    QBessel,
}

/// A ready-to-run case: space, test function, oracles and audit data.
#[derive(Clone)]
pub struct CaseInstance {
    pub id: &'static str,
    pub summary: &'static str,
    /// Resolved parameters, sorted by name.
    pub params: Vec<(String, f64)>,
    pub space: Space,
    pub f: TestFunction,
    /// `S = normalizer · C`: the displayed inequalities use the unnormalized kernel.
    pub normalizer: f64,
    pub(crate) display: Option<DisplaySpec>,
    pub(crate) arithmetic: Option<ArithmeticSpec>,
    pub(crate) identities: IdentityKind,
    /// Complex parameter of the q-series cases.
    pub(crate) z: Complex64,
}

impl core::fmt::Debug for CaseInstance {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CaseInstance").field("id", &self.id).field("params", &self.params).finish()
    }
}

impl CaseInstance {
    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn has_display(&self) -> bool {
        self.display.is_some()
    }

    pub fn is_arithmetic(&self) -> bool {
        self.arithmetic.is_some()
    }
}

/// Builds a case with its defaults, overridden by `overrides`.
pub fn instantiate(id: &str, overrides: &Overrides) -> Result<CaseInstance> {
    let info = lookup(id)?;
    cases::build(info, overrides)
}

/// The example's coefficient `f_n` at the `n`-th scheduled frequency.
pub fn closed_coefficient(case: &CaseInstance, n: usize) -> Result<Complex64> {
    if n == 0 {
        return Err(crate::error::invalid("coefficient index is 1-based"));
    }
    let c = case
        .f
        .coefficient
        .as_ref()
        .ok_or_else(|| Error::Unsupported(alloc::format!("{} registers no closed-form coefficient", case.id)))?;
    c(n, case.space.lambda(n))
}
