//! Full verification bundle for one case at one truncation.

use super::audit::{arithmetic_dual_path, display_audit, DisplayAudit, DualPath};
use super::identities::{identity_checks, IdentityCheck};
use super::tails::certified_schur_upper;
use super::CaseInstance;
use crate::error::{invalid, Result};
use crate::operator::{
    bessel_verify, build_gram, compactness_from_gram, min_eigenvalue, operator_norm, riesz_fischer,
    schur_constant, schur_geometric_mean, BesselReport, CheckOptions, CompactnessDiagnostics, GramMatrix,
    RieszFischerReport, SchurEstimate, Status, COMPACTNESS_WINDOW, MAX_EIGEN_N, MAX_GRAM_N,
};
use crate::spaces::{norm_sq, GramMode};
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative slack on `‖A‖ ≤ √(row·col) ≤ C`.
pub const CHAIN_SLACK: f64 = 1e-9;
/// `λ_min ≥ −slack · C`.
pub const EIGEN_SLACK: f64 = 1e-9;
/// Closed and quadrature norms must agree to this relative precision.
pub const NORM_AGREEMENT: f64 = 1e-8;
pub const QUADRATIC_VECTORS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub n: usize,
    pub tol: f64,
    pub mode: GramMode,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { n: 32, tol: 1e-10, mode: GramMode::Closed, seed: 0 }
    }
}

/// `‖A‖ ≤ √(max row · max col) ≤ C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainCheck {
    pub operator_norm: f64,
    pub geometric_mean: f64,
    pub schur_upper: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub id: String,
    pub params: Vec<(String, f64)>,
    pub n: usize,
    pub mode: GramMode,
    pub seed: u64,
    pub schur: SchurEstimate,
    pub certified_upper: Option<f64>,
    pub chain: ChainCheck,
    pub min_eigenvalue: Option<f64>,
    /// Smallest `Re x*Ax / ‖x‖²` over the seeded vectors.
    pub min_quadratic_form: f64,
    pub positivity_ok: bool,
    pub gram_discrepancy: Option<f64>,
    pub norm_closed: Option<f64>,
    pub norm_numeric: f64,
    pub norm_defect: Option<f64>,
    pub bessel: BesselReport,
    pub riesz: RieszFischerReport,
    pub compactness: CompactnessDiagnostics,
    pub display: Option<DisplayAudit>,
    pub dual_path: Option<DualPath>,
    pub identities: Vec<IdentityCheck>,
    pub notes: Vec<String>,
    pub status: Status,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` vectors with components uniform in the unit square, reproducible from `seed`.
pub fn seeded_complex_vectors(seed: u64, count: usize, len: usize) -> Vec<Vec<Complex64>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (0..len).map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect())
        .collect()
}

/// As [`seeded_complex_vectors`], normalized to unit length.
pub fn seeded_unit_vectors(seed: u64, count: usize, len: usize) -> Vec<Vec<Complex64>> {
    let mut v = seeded_complex_vectors(seed, count, len);
    for x in v.iter_mut() {
        let nrm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            x.iter_mut().for_each(|z| *z /= nrm);
        }
    }
    v
}

fn compactness_list(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = [n / 4, n / 2, n].into_iter().filter(|&k| k > 0).collect();
    v.dedup();
    v
}

/// Runs every check on `case` at truncation `opts.n`.
pub fn run_case(case: &CaseInstance, opts: &RunOptions) -> Result<CaseReport> {
    let n = opts.n;
    if n == 0 || n > MAX_EIGEN_N {
        return Err(invalid(alloc::format!("N must lie in 1..={MAX_EIGEN_N}, got {n}")));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(invalid("tolerance must be positive"));
    }
    let check = CheckOptions { tol: opts.tol };
    let mut notes = Vec::new();

    let big_n = (n * COMPACTNESS_WINDOW).min(MAX_GRAM_N);
    if big_n < n * COMPACTNESS_WINDOW {
        notes.push(alloc::format!("compactness window clipped to {big_n} rows"));
    }
    let big = build_gram(&case.space, big_n, GramMode::Closed)?;
    let gram = if opts.mode == GramMode::Closed { big.leading(n) } else { build_gram(&case.space, n, opts.mode)? };
    let certified_upper = certified_schur_upper(&case.space)?;
    let schur = schur_constant(&gram, certified_upper);
    if !schur.certified {
        notes.push(String::from("no analytic Schur tail: C is the finite sup only"));
    }

    let op = operator_norm(&gram, 1e-12)?;
    let geo = schur_geometric_mean(&gram);
    let c_up = schur.upper();
    let chain = ChainCheck {
        operator_norm: op,
        geometric_mean: geo,
        schur_upper: c_up,
        holds: op <= geo * (1.0 + CHAIN_SLACK) && geo <= c_up * (1.0 + CHAIN_SLACK),
    };

    let min_eig = if n <= MAX_EIGEN_N { Some(min_eigenvalue(&gram)?) } else { None };
    let min_q = min_quadratic(&gram, opts.seed);
    let floor = -EIGEN_SLACK * c_up;
    let positivity_ok = min_eig.is_none_or(|e| e >= floor) && min_q >= floor;

    let nrm = norm_sq(&case.space, &case.f)?;
    let norm_defect = nrm.closed.map(|c| (c - nrm.numeric).abs() / c.abs().max(1.0));
    let bessel = bessel_verify(&case.space, &case.f, n, &schur, &check)?;

    let x = seeded_unit_vectors(opts.seed, 1, 2 * n).pop().unwrap_or_default();
    let riesz = riesz_fischer(&big.leading(2 * n), &x, n, n, &schur, &check)?;
    let compactness = compactness_from_gram(&big, &compactness_list(n));

    let display = match display_audit(case, n, &schur, bessel.norm_sq) {
        Ok(d) => d,
        Err(e) => {
            notes.push(alloc::format!("display audit skipped: {e}"));
            None
        }
    };
    let dual_path = if case.arithmetic.is_some() {
        let numeric = if opts.mode == GramMode::Closed { build_gram(&case.space, n, GramMode::Numeric)? } else { gram.clone() };
        let closed = big.leading(n);
        arithmetic_dual_path(case, n, &closed, &numeric, schur.tail_bound)?
    } else {
        None
    };
    let identities = identity_checks(case)?;

    let mut status = if schur.certified { Status::Pass } else { Status::Advisory };
    let fail_if = |ok: bool| if ok { Status::Pass } else { Status::Fail };
    status = status.and(fail_if(chain.holds)).and(fail_if(positivity_ok)).and(bessel.status).and(riesz.status);
    if let Some(d) = &dual_path {
        status = status.and(d.status);
    }
    for c in &identities {
        status = status.and(c.status);
    }
    if let Some(d) = &display {
        status = status.and(d.status);
    }
    if let Some(d) = norm_defect {
        if d > NORM_AGREEMENT {
            notes.push(alloc::format!("closed and quadrature norms differ by {d:e}"));
            status = status.and(Status::Advisory);
        }
    }

    Ok(CaseReport {
        id: String::from(case.id),
        params: case.params.clone(),
        n,
        mode: opts.mode,
        seed: opts.seed,
        schur,
        certified_upper,
        chain,
        min_eigenvalue: min_eig,
        min_quadratic_form: min_q,
        positivity_ok,
        gram_discrepancy: gram.max_discrepancy,
        norm_closed: nrm.closed,
        norm_numeric: nrm.numeric,
        norm_defect,
        bessel,
        riesz,
        compactness,
        display,
        dual_path,
        identities,
        notes,
        status,
    })
}

fn min_quadratic(gram: &GramMatrix, seed: u64) -> f64 {
    seeded_unit_vectors(seed ^ 0x5eed, QUADRATIC_VECTORS, gram.n)
        .iter()
        .map(|x| gram.quadratic_form(x).re)
        .fold(f64::INFINITY, f64::min)
}
