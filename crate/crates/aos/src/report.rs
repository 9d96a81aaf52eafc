//! The JSON report schema and its construction from a case run.

use aos_core::catalog::{
    CaseReport, DisplayAudit, DualPath, IdentityCheck, CHAIN_SLACK, DUAL_PATH_TOL, EIGEN_SLACK, POSITIVITY_REAL_TOL,
    SWAP_TOL,
};
use aos_core::operator::Status;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bumped whenever the JSON layout changes.
pub const ARTIFACT_VERSION: &str = "aos-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Advisory,
    Fail,
}

impl From<Status> for Outcome {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => Outcome::Pass,
            Status::Advisory => Outcome::Advisory,
            Status::Fail => Outcome::Fail,
        }
    }
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Advisory => "advisory",
            Outcome::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurFields {
    pub finite_sup: f64,
    pub tail_bound: f64,
    pub certified: bool,
    pub achieved_at_row: usize,
    /// `finite_sup + tail_bound`.
    pub upper: f64,
}

/// One inequality `lhs ≤ rhs`, with `margin = rhs − lhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityResult {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub budget: f64,
    /// Fail exactly when `margin < −budget`; advisory when the constant is uncertified.
    pub status: Outcome,
}

impl InequalityResult {
    fn new(name: &str, lhs: f64, rhs: f64, budget: f64, certified: bool) -> Self {
        let margin = rhs - lhs;
        let status = if margin < -budget {
            Outcome::Fail
        } else if certified {
            Outcome::Pass
        } else {
            Outcome::Advisory
        };
        Self { name: name.to_string(), lhs, rhs, margin, budget, status }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Compactness {
    pub n_list: Vec<usize>,
    pub hs_partial: Vec<f64>,
    pub row_tail_sup: Vec<f64>,
    pub col_tail_sup: Vec<f64>,
    /// Tails over `m > N` are proxied on `N < m ≤ window·N`.
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reading {
    pub label: String,
    pub constant: f64,
    pub rhs: f64,
    pub holds: bool,
    pub ratio: f64,
    pub matches_framework: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplayDoc {
    pub n: usize,
    pub lhs: f64,
    pub s_upper: f64,
    pub framework_constant: f64,
    pub readings: Vec<Reading>,
    pub note: String,
    pub status: Outcome,
}

impl From<&DisplayAudit> for DisplayDoc {
    fn from(d: &DisplayAudit) -> Self {
        Self {
            n: d.n,
            lhs: d.lhs,
            s_upper: d.s_upper,
            framework_constant: d.framework_constant,
            readings: d
                .readings
                .iter()
                .map(|r| Reading {
                    label: r.label.clone(),
                    constant: r.constant,
                    rhs: r.rhs,
                    holds: r.holds,
                    ratio: r.ratio,
                    matches_framework: r.matches_framework,
                })
                .collect(),
            note: d.note.clone(),
            status: d.status.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPathDoc {
    pub n: usize,
    pub lhs_analytic: f64,
    pub lhs_sieve: f64,
    pub rhs_analytic: f64,
    pub rhs_sieve: f64,
    pub constant_analytic: f64,
    pub constant_sieve: f64,
    pub agreement: f64,
    pub tail_allowance: f64,
    pub margin: f64,
    pub status: Outcome,
}

impl From<&DualPath> for DualPathDoc {
    fn from(d: &DualPath) -> Self {
        Self {
            n: d.n,
            lhs_analytic: d.lhs_analytic,
            lhs_sieve: d.lhs_sieve,
            rhs_analytic: d.rhs_analytic,
            rhs_sieve: d.rhs_sieve,
            constant_analytic: d.constant_analytic,
            constant_sieve: d.constant_sieve,
            agreement: d.agreement,
            tail_allowance: d.tail_allowance,
            margin: d.margin,
            status: d.status.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityDoc {
    pub name: String,
    pub q: f64,
    pub z: [f64; 2],
    pub value: [f64; 2],
    pub twin: [f64; 2],
    pub real_defect: f64,
    pub swap_defect: f64,
    pub positive: bool,
    pub status: Outcome,
}

impl From<&IdentityCheck> for IdentityDoc {
    fn from(c: &IdentityCheck) -> Self {
        Self {
            name: c.name.clone(),
            q: c.q,
            z: [c.z.re, c.z.im],
            value: [c.value.re, c.value.im],
            twin: [c.twin.re, c.twin.im],
            real_defect: c.real_defect,
            swap_defect: c.swap_defect,
            positive: c.positive,
            status: c.status.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub operator_norm: f64,
    pub geometric_mean: f64,
    pub min_eigenvalue: Option<f64>,
    pub min_quadratic_form: f64,
    pub gram_discrepancy: Option<f64>,
    pub coefficient_discrepancy: Option<f64>,
    pub norm_closed: Option<f64>,
    pub norm_numeric: f64,
    pub norm_defect: Option<f64>,
    /// `|(f, φ_n)|²` for `n = 1..=N`.
    pub bessel_terms: Vec<f64>,
    pub riesz_n: usize,
    pub riesz_m: usize,
    pub riesz_x_norm_sq: f64,
    pub compactness: Compactness,
    pub display: Option<DisplayDoc>,
    pub dual_path: Option<DualPathDoc>,
    pub identities: Vec<IdentityDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub artifact_version: String,
    pub case_id: String,
    pub params: BTreeMap<String, f64>,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: String,
    pub tol: f64,
    pub seed: u64,
    pub schur: Option<SchurFields>,
    pub inequalities: Vec<InequalityResult>,
    pub diagnostics: Option<Diagnostics>,
    pub notes: Vec<String>,
    /// Set when the run stopped on a numerical error.
    pub error: Option<String>,
    pub status: Outcome,
    /// Wall-clock milliseconds; left out of [`ReportDocument::body_json`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

/// Settings echoed into every document.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    pub n: usize,
    pub mode: String,
    pub tol: f64,
    pub seed: u64,
}

impl ReportDocument {
    pub fn from_report(r: &CaseReport, tol: f64, millis: Option<f64>) -> Self {
        let certified = r.schur.certified;
        let mut ineq = Vec::new();
        let b = &r.bessel;
        let mut bessel = InequalityResult::new("bessel", b.lhs_partial, b.rhs, b.budget, certified);
        bessel.margin = b.margin;
        ineq.push(bessel);
        let rf = &r.riesz;
        ineq.push(InequalityResult::new("riesz-fischer", rf.residual, rf.bound, rf.budget, certified));
        ineq.push(InequalityResult::new("riesz-cauchy", rf.cauchy_defect, rf.cauchy_bound, rf.budget, certified));
        let ch = &r.chain;
        ineq.push(InequalityResult::new(
            "norm-chain-lower",
            ch.operator_norm,
            ch.geometric_mean,
            CHAIN_SLACK * ch.geometric_mean,
            true,
        ));
        ineq.push(InequalityResult::new(
            "norm-chain-upper",
            ch.geometric_mean,
            ch.schur_upper,
            CHAIN_SLACK * ch.schur_upper,
            certified,
        ));
        let floor = EIGEN_SLACK * ch.schur_upper;
        if let Some(e) = r.min_eigenvalue {
            ineq.push(InequalityResult::new("min-eigenvalue", 0.0, e, floor, true));
        }
        ineq.push(InequalityResult::new("quadratic-form", 0.0, r.min_quadratic_form, floor, true));
        if let Some(d) = &r.dual_path {
            ineq.push(InequalityResult::new("dual-path", d.lhs_analytic.max(d.lhs_sieve), d.lhs_analytic.max(d.lhs_sieve) + d.margin, 0.0, certified));
            ineq.push(InequalityResult::new("dual-path-agreement", d.agreement, DUAL_PATH_TOL + d.tail_allowance, 0.0, true));
        }
        for c in &r.identities {
            let scale = c.value.norm().max(1.0);
            ineq.push(InequalityResult::new(&format!("{}-real", c.name), c.real_defect, POSITIVITY_REAL_TOL, 0.0, true));
            ineq.push(InequalityResult::new(&format!("{}-swap", c.name), c.swap_defect, SWAP_TOL, 0.0, true));
            // strict positivity, measured relative to the sum's own scale
            ineq.push(InequalityResult::new(&format!("{}-positive", c.name), 0.0, c.value.re / scale, 0.0, c.positive));
        }
        let diagnostics = Diagnostics {
            operator_norm: ch.operator_norm,
            geometric_mean: ch.geometric_mean,
            min_eigenvalue: r.min_eigenvalue,
            min_quadratic_form: r.min_quadratic_form,
            gram_discrepancy: r.gram_discrepancy,
            coefficient_discrepancy: b.max_coefficient_discrepancy,
            norm_closed: r.norm_closed,
            norm_numeric: r.norm_numeric,
            norm_defect: r.norm_defect,
            bessel_terms: b.terms.clone(),
            riesz_n: rf.n,
            riesz_m: rf.m,
            riesz_x_norm_sq: rf.x_norm_sq,
            compactness: Compactness {
                n_list: r.compactness.n_list.clone(),
                hs_partial: r.compactness.hs_partial.clone(),
                row_tail_sup: r.compactness.row_tail_sup.clone(),
                col_tail_sup: r.compactness.col_tail_sup.clone(),
                window: r.compactness.window,
            },
            display: r.display.as_ref().map(DisplayDoc::from),
            dual_path: r.dual_path.as_ref().map(DualPathDoc::from),
            identities: r.identities.iter().map(IdentityDoc::from).collect(),
        };
        Self {
            artifact_version: ARTIFACT_VERSION.to_string(),
            case_id: r.id.clone(),
            params: r.params.iter().cloned().collect(),
            n: r.n,
            mode: r.mode.as_str().to_string(),
            tol,
            seed: r.seed,
            schur: Some(SchurFields {
                finite_sup: r.schur.finite_sup,
                tail_bound: r.schur.tail_bound,
                certified,
                achieved_at_row: r.schur.achieved_at_row,
                upper: r.schur.upper(),
            }),
            inequalities: ineq,
            diagnostics: Some(diagnostics),
            notes: r.notes.clone(),
            error: None,
            status: r.status.into(),
            timings_ms: millis.map(|total| Timings { total }),
        }
    }

    /// A failed document for a run that stopped on a numerical error.
    pub fn from_error(case_id: &str, params: BTreeMap<String, f64>, s: &RunSettings, err: &str, millis: Option<f64>) -> Self {
        Self {
            artifact_version: ARTIFACT_VERSION.to_string(),
            case_id: case_id.to_string(),
            params,
            n: s.n,
            mode: s.mode.clone(),
            tol: s.tol,
            seed: s.seed,
            schur: None,
            inequalities: Vec::new(),
            diagnostics: None,
            notes: Vec::new(),
            error: Some(err.to_string()),
            status: Outcome::Fail,
            timings_ms: millis.map(|total| Timings { total }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// The serialized document without timings: identical across reruns.
    pub fn body_json(&self) -> String {
        let mut d = self.clone();
        d.timings_ms = None;
        d.to_json()
    }

    /// True when every float is finite: NaN breaks equality and ±∞ serializes as null,
    /// so a document round-trips exactly iff it is finite throughout.
    pub fn all_finite(&self) -> bool {
        Self::from_json(&self.to_json()).is_ok_and(|d| d == *self)
    }
}
