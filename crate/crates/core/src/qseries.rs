//! q-Pochhammer symbols, Ramanujan's `A_q`, and the q-series of the Gaussian examples.

use crate::error::{domain, Error, Result};
use crate::spaces::FrequencySchedule;
use crate::sum::{ComplexTailCertificate, KahanComplex, TailCertificate, TailMethod, Kahan};
use alloc::string::String;
use num_complex::Complex64;
use num_traits::Float;

/// Infinite products stop once `|a| q^k` drops below this.
pub const PRODUCT_CUTOFF: f64 = 1e-17;
const MAX_TERMS: usize = 100_000;

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(alloc::format!("q must lie in (0, 1), got {q}")));
    }
    Ok(())
}

/// `(a; q)_n = Π_{k<n} (1 − a q^k)`.
pub fn qpochhammer(a: Complex64, q: f64, n: u64) -> Result<Complex64> {
    check_q(q)?;
    let mut p = Complex64::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..n {
        p *= 1.0 - a * qk;
        qk *= q;
    }
    Ok(p)
}

/// `(a; q)_∞` with a relative truncation bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QProduct {
    pub value: Complex64,
    /// `|true/value − 1|` is at most this.
    pub relative_tail: f64,
    pub factors: usize,
}

pub fn qpochhammer_inf_certified(a: Complex64, q: f64) -> Result<QProduct> {
    check_q(q)?;
    let r = a.norm();
    let mut p = Complex64::new(1.0, 0.0);
    let mut qk = 1.0;
    let mut k = 0usize;
    while r * qk >= PRODUCT_CUTOFF {
        p *= 1.0 - a * qk;
        qk *= q;
        k += 1;
    }
    // exp(Σ_{j≥K} |a| q^j) − 1 ≤ 2|a| q^K/(1 − q) once the exponent is below 1
    Ok(QProduct { value: p, relative_tail: 2.0 * r * qk / (1.0 - q), factors: k })
}

/// `(a; q)_∞`.
pub fn qpochhammer_inf(a: Complex64, q: f64) -> Result<Complex64> {
    qpochhammer_inf_certified(a, q).map(|p| p.value)
}

/// `Σ_k ln(1 − a q^k)` on the principal branch; `exp` of it is `(a; q)_∞` without overflow.
pub fn log_qpochhammer_inf(a: Complex64, q: f64) -> Result<Complex64> {
    check_q(q)?;
    let r = a.norm();
    let mut acc = KahanComplex::new();
    let mut qk = 1.0;
    while r * qk >= PRODUCT_CUTOFF {
        acc.add((1.0 - a * qk).ln());
        qk *= q;
    }
    Ok(acc.value())
}

fn ln_qq(q: f64, n: usize) -> f64 {
    let mut s = Kahan::new();
    let mut qk = q;
    for _ in 0..n {
        s.add((1.0 - qk).ln());
        qk *= q;
    }
    s.value()
}

/// `q^{c} A_q(q^{−μ} z)` with every term scaled relative to the largest one.
pub fn scaled_ramanujan_aq(q: f64, z: Complex64, mu: f64, c: f64) -> Result<Complex64> {
    check_q(q)?;
    let lnq = q.ln();
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new((c * lnq).exp(), 0.0));
    }
    let w = -z;
    let (ln_w, u) = (w.norm().ln(), w / w.norm());
    // ln |t_{k+1}/t_k| with t_{k+1}/t_k = −z q^{2k+1−μ}/(1 − q^{k+1}); kept in logs so q^{−μ} cannot overflow
    let ln_ratio = |k: usize| -> f64 { ln_w + (2.0 * k as f64 + 1.0 - mu) * lnq - (1.0 - q.powi(k as i32 + 1)).ln() };
    let ratio = |k: usize| -> Complex64 { u.scale(ln_ratio(k).exp()) };
    let mut peak = 0usize;
    while ln_ratio(peak) >= 0.0 {
        peak += 1;
        if peak > MAX_TERMS {
            return Err(Error::ToleranceNotMet { what: String::from("A_q peak search"), achieved: f64::NAN });
        }
    }
    let kf = peak as f64;
    let log_peak = (c + kf * kf - kf * mu) * lnq + kf * ln_w - ln_qq(q, peak);
    let unit = u.powu(peak as u32);
    let mut acc = KahanComplex::new();
    acc.add(Complex64::new(1.0, 0.0));
    let mut t = Complex64::new(1.0, 0.0);
    for k in (0..peak).rev() {
        t *= u.conj().scale((-ln_ratio(k)).exp());
        acc.add(t);
    }
    let mut t = Complex64::new(1.0, 0.0);
    let mut k = peak;
    loop {
        let r = ratio(k);
        t *= r;
        acc.add(t);
        k += 1;
        // ratios shrink by at least q² per step, so the tail is below |t|·|r|/(1−|r|)
        if r.norm() < 0.5 && t.norm() <= 1e-18 * acc.value().norm().max(1e-300) {
            break;
        }
        if t == Complex64::new(0.0, 0.0) || k > peak + MAX_TERMS {
            break;
        }
    }
    Ok(acc.value() * unit * log_peak.exp())
}

/// Ramanujan's function `A_q(z) = Σ q^{n²} (−z)^n / (q; q)_n`.
pub fn ramanujan_aq(q: f64, z: Complex64) -> Result<Complex64> {
    scaled_ramanujan_aq(q, z, 0.0, 0.0)
}

/// The displayed q-series sums of the Gaussian examples; `Twin` forms swap `z ↔ z̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QSeriesForm {
    /// `(z̄; q)_∞ Σ (−z)^n q^{n(n−1)/2} / (q, z̄; q)_n`
    Binomial,
    BinomialTwin,
    /// `(−z q^{1/2}; q)_∞ Σ z̄^n q^{n²/2} / (q, −z q^{1/2}; q)_n`, the displayed norm sum
    BinomialNormDisplay,
    /// `Σ (−z)^n q^{n²} A_q(q^{−n} z̄) / (q; q)_n`
    Ramanujan,
    RamanujanTwin,
    /// `Σ (−z)^n q^{n²} A_q(q^{−2n} z̄) / (q; q)_n`
    RamanujanSquared,
    RamanujanSquaredTwin,
}

impl QSeriesForm {
    pub const ALL: [QSeriesForm; 7] = [
        QSeriesForm::Binomial,
        QSeriesForm::BinomialTwin,
        QSeriesForm::BinomialNormDisplay,
        QSeriesForm::Ramanujan,
        QSeriesForm::RamanujanTwin,
        QSeriesForm::RamanujanSquared,
        QSeriesForm::RamanujanSquaredTwin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QSeriesForm::Binomial => "binomial",
            QSeriesForm::BinomialTwin => "binomial-twin",
            QSeriesForm::BinomialNormDisplay => "binomial-norm-display",
            QSeriesForm::Ramanujan => "ramanujan",
            QSeriesForm::RamanujanTwin => "ramanujan-twin",
            QSeriesForm::RamanujanSquared => "ramanujan-squared",
            QSeriesForm::RamanujanSquaredTwin => "ramanujan-squared-twin",
        }
    }

    fn needs_unit_disc(self) -> bool {
        !matches!(self, QSeriesForm::Ramanujan | QSeriesForm::RamanujanTwin)
    }
}

/// Evaluates a [`QSeriesForm`] with a rigorous tail bound.
pub fn qseries_sum(form: QSeriesForm, q: f64, z: Complex64) -> Result<ComplexTailCertificate> {
    check_q(q)?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("q-series argument must be finite"));
    }
    if form.needs_unit_disc() && z.norm() >= 1.0 {
        return Err(domain(alloc::format!("{} needs |z| < 1, got |z| = {}", form.as_str(), z.norm())));
    }
    match form {
        QSeriesForm::Binomial => binomial(q, z),
        QSeriesForm::BinomialTwin => binomial(q, z.conj()),
        QSeriesForm::BinomialNormDisplay => binomial_norm_display(q, z),
        QSeriesForm::Ramanujan => ramanujan_series(q, z, 1.0),
        QSeriesForm::RamanujanTwin => ramanujan_series(q, z.conj(), 1.0),
        QSeriesForm::RamanujanSquared => ramanujan_series(q, z, 2.0),
        QSeriesForm::RamanujanSquaredTwin => ramanujan_series(q, z.conj(), 2.0),
    }
}

/// Sums `t_0 Π ratio(k)` until the supplied tail bound `bound(n, |t_n|)` is negligible.
fn ratio_series<R, B>(t0: Complex64, ratio: R, bound: B) -> Result<ComplexTailCertificate>
where
    R: Fn(usize) -> Complex64,
    B: Fn(usize, f64) -> f64,
{
    let mut acc = KahanComplex::new();
    let mut t = t0;
    for n in 0..MAX_TERMS {
        acc.add(t);
        t *= ratio(n);
        let tail = bound(n + 1, t.norm());
        if tail <= 1e-17 * acc.value().norm() || tail < 1e-300 {
            return Ok(ComplexTailCertificate {
                finite_part: acc.value(),
                tail_bound: tail,
                method: TailMethod::Geometric,
                last_index: n as u64,
            });
        }
    }
    Err(Error::ToleranceNotMet { what: String::from("q-series term cap"), achieved: t.norm() })
}

/// Geometric tail `|t_n| / (1 − r)` when `r < 1`, else infinite.
fn geometric(t: f64, r: f64) -> f64 {
    if r < 1.0 { t / (1.0 - r) } else { f64::INFINITY }
}

fn binomial(q: f64, z: Complex64) -> Result<ComplexTailCertificate> {
    let zb = z.conj();
    let r = z.norm();
    let t0 = qpochhammer_inf(zb, q)?;
    ratio_series(
        t0,
        |n| {
            let qn = q.powi(n as i32);
            -z * qn / ((1.0 - q * qn) * (1.0 - zb * qn))
        },
        |n, t| {
            let qn = q.powi(n as i32);
            geometric(t, r * qn / ((1.0 - q) * (1.0 - r * qn)))
        },
    )
}

fn binomial_norm_display(q: f64, z: Complex64) -> Result<ComplexTailCertificate> {
    let sq = q.sqrt();
    let r = z.norm();
    let t0 = qpochhammer_inf(-z * sq, q)?;
    ratio_series(
        t0,
        |n| {
            let qn = q.powi(n as i32) * sq;
            z.conj() * qn / ((1.0 - q.powi(n as i32 + 1)) * (1.0 + z * qn))
        },
        |n, t| {
            let qn = q.powi(n as i32) * sq;
            geometric(t, r * qn / ((1.0 - q) * (1.0 - r * qn)))
        },
    )
}

/// `Σ (−z)^n q^{n²} A_q(q^{−k n} z̄)/(q;q)_n` for `k ∈ {1, 2}`.
fn ramanujan_series(q: f64, z: Complex64, k: f64) -> Result<ComplexTailCertificate> {
    let r = z.norm();
    let qq_inf = qpochhammer_inf(Complex64::new(q, 0.0), q)?.re;
    // Σ_j r^j q^{j²} over j ∈ ℤ (k = 2) or Σ_j r^j q^{j²/2} over j ≥ 0 (k = 1)
    let weight_sum: f64 = if k == 2.0 {
        (-200i32..=200).map(|j| (j as f64 * r.ln() + (j * j) as f64 * q.ln()).exp()).filter(|v| v.is_finite()).sum()
    } else {
        (0..400).map(|j| (j as f64 * r.max(1e-300).ln() + 0.5 * (j * j) as f64 * q.ln()).exp()).sum()
    };
    let scale = weight_sum / (qq_inf * qq_inf);
    let mut acc = KahanComplex::new();
    let mut zn = Complex64::new(1.0, 0.0);
    let mut ln_qq_n = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // q^{n²} A_q(q^{−kn} z̄), evaluated as one scaled object
        let inner = scaled_ramanujan_aq(q, z.conj(), k * nf, nf * nf)?;
        acc.add(zn.scale((-ln_qq_n).exp()) * inner * if n % 2 == 0 { 1.0 } else { -1.0 });
        zn *= z;
        ln_qq_n += (1.0 - q.powi(n as i32 + 1)).ln();
        let m = nf + 1.0;
        let tail = if k == 2.0 {
            scale * geometric(r.powf(2.0 * m), r * r)
        } else {
            scale * geometric(r.powf(m) * q.powf(m * m / 2.0), r * q.powf(m + 0.5))
        };
        if tail <= 1e-17 * acc.value().norm() || tail < 1e-300 {
            return Ok(ComplexTailCertificate {
                finite_part: acc.value(),
                tail_bound: tail,
                method: TailMethod::SuppliedClosedForm,
                last_index: n as u64,
            });
        }
    }
    Err(Error::ToleranceNotMet { what: String::from("Ramanujan series term cap"), achieved: f64::NAN })
}

/// Row sum `Σ_n q^{β(μ_m − μ_n)²}` with its certificate status.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianRow {
    pub certificate: TailCertificate,
    pub certified: bool,
}

/// `Σ_{n ≤ N} q^{β(μ_m−μ_n)²}` plus the tail `n > N` bounded through the schedule's linear gap.
pub fn gaussian_gram_row(beta: f64, q: f64, schedule: &FrequencySchedule, m: usize, n_max: usize) -> Result<GaussianRow> {
    check_q(q)?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(domain(alloc::format!("β must be positive, got {beta}")));
    }
    if m == 0 || m > n_max {
        return Err(domain(alloc::format!("row {m} outside 1..={n_max}")));
    }
    let mu = schedule.values(n_max)?;
    let c = beta * -q.ln();
    let mut acc = Kahan::new();
    for v in &mu {
        let d = mu[m - 1] - v;
        acc.add((-c * d * d).exp());
    }
    let (tail, certified) = match schedule.linear_gap() {
        Some(delta) => {
            let d0 = (n_max + 1 - m) as f64;
            let e = c * delta * delta;
            ((-e * d0 * d0).exp() / (1.0 - (-e * (2.0 * d0 + 1.0)).exp()), true)
        }
        None => (0.0, false),
    };
    Ok(GaussianRow {
        certificate: TailCertificate {
            finite_part: acc.value(),
            tail_bound: tail,
            method: TailMethod::Geometric,
            last_index: n_max as u64,
        },
        certified,
    })
}
