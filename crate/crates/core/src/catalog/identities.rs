//! Reality and positivity of the q-series sums behind the Gaussian examples.

use super::{CaseInstance, IdentityKind};
use crate::error::Result;
use crate::operator::Status;
use crate::qseries::{log_qpochhammer_inf, qpochhammer, qseries_sum, QSeriesForm};
use crate::spaces::{MeasureKind, WeightedMeasure};
use crate::sum::KahanComplex;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

/// `|Im S| ≤ tol · max(1, |S|)` counts as real.
pub const POSITIVITY_REAL_TOL: f64 = 1e-10;
/// `|S(z) − conj S(z̄)| ≤ tol · max(1, |S|)`.
pub const SWAP_TOL: f64 = 1e-11;

const GRID_Q: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const GRID_R: [f64; 3] = [0.3, 0.6, 0.9];
const GRID_THETA: [f64; 3] = [0.0, 1.0, 2.5];

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub q: f64,
    pub z: Complex64,
    pub value: Complex64,
    /// The same sum at `z̄`.
    pub twin: Complex64,
    pub real_defect: f64,
    pub swap_defect: f64,
    pub positive: bool,
    pub status: Status,
}

fn judge(name: &str, q: f64, z: Complex64, value: Complex64, twin: Complex64) -> IdentityCheck {
    let scale = value.norm().max(1.0);
    let real_defect = value.im.abs() / scale;
    let swap_defect = (value - twin.conj()).norm() / scale;
    let positive = value.re > 0.0;
    let ok = real_defect <= POSITIVITY_REAL_TOL && swap_defect <= SWAP_TOL && positive;
    IdentityCheck {
        name: String::from(name),
        q,
        z,
        value,
        twin,
        real_defect,
        swap_defect,
        positive,
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

fn series_check(name: &str, form: QSeriesForm, twin: QSeriesForm, q: f64, z: Complex64) -> Result<IdentityCheck> {
    let v = qseries_sum(form, q, z)?.finite_part;
    let t = qseries_sum(twin, q, z)?.finite_part;
    Ok(judge(name, q, z, v, t))
}

fn forms(kind: IdentityKind) -> Option<(&'static str, QSeriesForm, QSeriesForm)> {
    match kind {
        IdentityKind::Binomial => Some(("binomial-positivity", QSeriesForm::Binomial, QSeriesForm::BinomialTwin)),
        IdentityKind::Ramanujan => Some(("ramanujan-positivity", QSeriesForm::Ramanujan, QSeriesForm::RamanujanTwin)),
        IdentityKind::RamanujanSquared => {
            Some(("ramanujan-squared-positivity", QSeriesForm::RamanujanSquared, QSeriesForm::RamanujanSquaredTwin))
        }
        _ => None,
    }
}

/// The positivity identity attached to a case at its own parameters.
pub fn identity_checks(case: &CaseInstance) -> Result<Vec<IdentityCheck>> {
    let q = match case.space.measure.kind {
        MeasureKind::Gaussian { q, .. } => q,
        _ => return Ok(Vec::new()),
    };
    let z = case.z;
    match case.identities {
        IdentityKind::QBessel => {
            let nu = case.param("nu").unwrap_or(0.5);
            Ok(alloc::vec![qbessel_positivity(q, z, nu)?])
        }
        IdentityKind::Binomial if z.norm() >= q.sqrt() => Ok(Vec::new()),
        kind => match forms(kind) {
            Some((name, f, t)) => Ok(alloc::vec![series_check(name, f, t, q, z)?]),
            None => Ok(Vec::new()),
        },
    }
}

/// Which sum [`positivity_grid`] sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivitySum {
    Binomial,
    Ramanujan,
    RamanujanSquared,
}

/// The sum over `q ∈ {0.1, …, 0.9}` and `z = r·ρ·e^{iθ}`, with `ρ = √q` for the
/// binomial sum (its domain) and 1 otherwise.
pub fn positivity_grid(sum: PositivitySum) -> Result<Vec<IdentityCheck>> {
    let kind = match sum {
        PositivitySum::Binomial => IdentityKind::Binomial,
        PositivitySum::Ramanujan => IdentityKind::Ramanujan,
        PositivitySum::RamanujanSquared => IdentityKind::RamanujanSquared,
    };
    let (name, f, t) = forms(kind).expect("series form");
    let mut out = Vec::new();
    for &q in &GRID_Q {
        let rho = if sum == PositivitySum::Binomial { q.sqrt() } else { 1.0 };
        for &r in &GRID_R {
            for &th in &GRID_THETA {
                let z = Complex64::from_polar(r * rho, th);
                out.push(series_check(name, f, t, q, z)?);
            }
        }
    }
    Ok(out)
}

/// `Σ_n c_n f̂(n)` for the q-Bessel generating function, with
/// `c_n = (−z̄²/4; q)_n (−q^{ν+1/2})^n / ((q; q)_n (q; q)_∞)` and `f̂(n)` its
/// Fourier–Gauss moments by quadrature; the twin uses `z̄`.
pub fn qbessel_positivity(q: f64, z: Complex64, nu: f64) -> Result<IdentityCheck> {
    let v = qbessel_sum(q, z, nu)?;
    let t = qbessel_sum(q, z.conj(), nu)?;
    Ok(judge("qbessel-positivity", q, z, v, t))
}

fn qbessel_sum(q: f64, z: Complex64, nu: f64) -> Result<Complex64> {
    let measure = WeightedMeasure::new(MeasureKind::Gaussian { beta: 0.5, q })?;
    let b = q.powf(nu + 0.5);
    let num = z * z * b / 4.0;
    let lqq = log_qpochhammer_inf(Complex64::new(q, 0.0), q)?;
    // c_n decays like b^n
    let k_max = ((1e-18f64).ln() / b.ln()).ceil().clamp(8.0, 200.0) as usize;
    let nodes = measure.nodes(2.0 * k_max as f64, 0.0)?;
    let fv: Vec<Complex64> = nodes
        .points
        .iter()
        .map(|p| {
            let e = Complex64::from_polar(1.0, p.x);
            Ok((log_qpochhammer_inf(num * e, q)? - lqq - log_qpochhammer_inf(-b * e, q)?).exp())
        })
        .collect::<Result<_>>()?;
    let inv_qq = (-lqq).exp();
    let a = -(z.conj() * z.conj()) / 4.0;
    let mut acc = KahanComplex::new();
    for n in 0..=k_max {
        let mut m = KahanComplex::new();
        for (j, p) in nodes.points.iter().enumerate() {
            m.add(fv[j] * Complex64::from_polar(1.0, -(n as f64) * p.x) * nodes.weights[j]);
        }
        let cn = qpochhammer(a, q, n as u64)? / qpochhammer(Complex64::new(q, 0.0), q, n as u64)?
            * (-b).powi(n as i32)
            * inv_qq;
        acc.add(cn * m.value());
    }
    Ok(acc.value())
}
