use super::{
    Arithmetic, ArithmeticSpec, CaseInfo, CaseInstance, DisplaySpec, IdentityKind, Overrides, TermFn,
};
use crate::error::{invalid, Error, Result};
use crate::numtheory::{character, DirichletCharacter, SieveTable};
use crate::qseries::{log_qpochhammer_inf, qseries_sum, scaled_ramanujan_aq, QSeriesForm};
use crate::spaces::{
    validate_schedule, FamilyKind, FrequencySchedule, MeasureKind, Point, ScheduleKind, SequenceFamily, Space,
    TestFunction, WeightedMeasure,
};
use crate::specfun::{
    bessel_j, bessel_k_complex_order, beta_complex, beta_ratio, digamma_complex, digamma_real, dirichlet_l,
    dirichlet_l_minus_one, gamma_complex, gamma_ratio, gamma_real, hyp_pfq, jacobi, laguerre, lgamma_real,
    log_derivative_analytic, riemann_zeta, trigamma_real, zeta_minus_one, ArithmeticWeight,
};
use crate::sum::KahanComplex;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// Largest `|Im ν|` the complex-order Bessel K accepts.
const BESSEL_K_MAX_IMAG: f64 = 60.0;
/// Fourier bandwidth cap of the q-series test functions.
const Q_BANDWIDTH_CAP: f64 = 60.0;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn or_nan(r: Result<Complex64>) -> Complex64 {
    r.unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

fn or_nan_re(r: Result<f64>) -> Complex64 {
    c(r.unwrap_or(f64::NAN))
}

struct Params<'a> {
    id: &'static str,
    ov: &'a Overrides,
    used: Vec<(String, f64)>,
}

impl<'a> Params<'a> {
    fn get(&mut self, key: &str, default: f64, ok: impl Fn(f64) -> bool, range: &str) -> Result<f64> {
        let v = self.ov.get(key).copied().unwrap_or(default);
        if !v.is_finite() || !ok(v) {
            return Err(invalid(alloc::format!("{}: {key} = {v} outside {range}", self.id)));
        }
        self.used.push((String::from(key), v));
        Ok(v)
    }

    fn get_int(&mut self, key: &str, default: u32, lo: u32, hi: u32) -> Result<u32> {
        let range = alloc::format!("integers {lo}..={hi}");
        let v = self.get(key, default as f64, |v| v.fract() == 0.0 && v >= lo as f64 && v <= hi as f64, &range)?;
        Ok(v as u32)
    }

    fn finish(mut self) -> Result<Vec<(String, f64)>> {
        for k in self.ov.keys() {
            if !self.used.iter().any(|(u, _)| u == k) {
                return Err(invalid(alloc::format!("{}: unknown parameter `{k}`", self.id)));
            }
        }
        self.used.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(self.used)
    }
}

struct Parts {
    space: Space,
    f: TestFunction,
    normalizer: f64,
    display: Option<DisplaySpec>,
    arithmetic: Option<ArithmeticSpec>,
    identities: IdentityKind,
    z: Complex64,
}

impl Parts {
    fn new(space: Space, f: TestFunction, normalizer: f64) -> Self {
        Parts { space, f, normalizer, display: None, arithmetic: None, identities: IdentityKind::None, z: c(0.0) }
    }

    fn display(mut self, term: TermFn, readings: Vec<(&'static str, f64)>, scale: f64, note: &'static str) -> Self {
        self.display = Some(DisplaySpec { term, readings, scale, note });
        self
    }
}

pub(super) fn build(info: &'static CaseInfo, ov: &Overrides) -> Result<CaseInstance> {
    let mut p = Params { id: info.id, ov, used: Vec::new() };
    let id = info.id;
    let parts = if id.starts_with("gauss-") {
        gauss(&mut p, id)?
    } else if id.starts_with("qgauss-") {
        qgauss(&mut p, id)?
    } else if id.starts_with("gamma-") {
        gamma(&mut p, id)?
    } else if id.starts_with("beta-") {
        beta(&mut p, id)?
    } else if id.starts_with("mangoldt-") || id.starts_with("zetatail-") {
        arithmetic(&mut p, id)?
    } else {
        control()?
    };
    let params = p.finish()?;
    Ok(CaseInstance {
        id,
        summary: info.summary,
        params,
        space: parts.space,
        f: parts.f,
        normalizer: parts.normalizer,
        display: parts.display,
        arithmetic: parts.arithmetic,
        identities: parts.identities,
        z: parts.z,
    })
}

fn space(kind: MeasureKind, family: FamilyKind, schedule: ScheduleKind) -> Result<Space> {
    let schedule = FrequencySchedule::new(schedule)?;
    let v = validate_schedule(&schedule, &kind, 64);
    if !v.ok() {
        return Err(invalid(alloc::format!("schedule rejected: {}", v.violations.join("; "))));
    }
    Space::new(WeightedMeasure::new(kind)?, SequenceFamily::new(family, schedule))
}

fn arc_term<F: Fn(f64) -> Result<f64> + Send + Sync + 'static>(f: F) -> TermFn {
    Arc::new(f)
}

// Gaussian

fn gauss(p: &mut Params, id: &str) -> Result<Parts> {
    let kind = MeasureKind::Gaussian { beta: 0.5, q: (-1.0f64).exp() };
    let schedule = if id == "gauss-sqrtlog" {
        let alpha = p.get("alpha", 1.5, |v| v > 0.0, "α > 0")?;
        ScheduleKind::SqrtLog { alpha, scale: 1.0 }
    } else {
        ScheduleKind::Integer
    };
    let space = space(kind, FamilyKind::Fourier, schedule)?;
    let f = TestFunction::new("one", Arc::new(|_: &Point| c(1.0)))
        .with_sup(1.0)
        .with_coefficient(Arc::new(|_, lam| Ok(c((-0.5 * lam * lam).exp()))))
        .with_norm(1.0);
    Ok(Parts::new(space, f, 1.0))
}

fn q_params(p: &mut Params, z_default: Complex64) -> Result<(f64, Complex64, f64)> {
    let q = p.get("q", 0.5, |v| v > 0.0 && v < 1.0, "(0, 1)")?;
    let re = p.get("z_re", z_default.re, |v| v.abs() < 1.0, "(−1, 1)")?;
    let im = p.get("z_im", z_default.im, |v| v.abs() < 1.0, "(−1, 1)")?;
    let alpha = p.get("alpha", 1.5, |v| v > 0.0, "α > 0")?;
    let z = Complex64::new(re, im);
    Ok((q, z, alpha))
}

fn q_space(q: f64, beta: f64, alpha: f64) -> Result<Space> {
    let scale = (2.0 * beta * -q.ln()).sqrt();
    space(MeasureKind::Gaussian { beta, q }, FamilyKind::Fourier, ScheduleKind::SqrtLog { alpha, scale })
}

/// Harmonics needed before `r^k` drops below 1e-17.
fn geometric_bandwidth(r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    (1e-17f64.ln() / r.ln()).ceil().min(Q_BANDWIDTH_CAP)
}

/// `Σ_{j,k} b_j b̄_k q^{(j−k)² e}` for `b_k = w^k / (q; q)_k` scaled by `q^{k² g}`.
fn q_double_sum(q: f64, w: Complex64, e: f64, g: f64) -> f64 {
    let mut b = Vec::new();
    let mut t = c(1.0);
    let mut k = 0usize;
    loop {
        let tk = t * q.powf(g * (k * k) as f64);
        b.push(tk);
        if tk.norm() < 1e-19 && k > 2 || k > 2000 {
            break;
        }
        k += 1;
        t = t * w / (1.0 - q.powi(k as i32));
    }
    let mut acc = KahanComplex::new();
    for (j, bj) in b.iter().enumerate() {
        for (k, bk) in b.iter().enumerate() {
            let d = j as f64 - k as f64;
            acc.add(bj * bk.conj() * q.powf(d * d * e));
        }
    }
    acc.value().re
}

fn qgauss(p: &mut Params, id: &str) -> Result<Parts> {
    match id {
        "qgauss-binomial" => {
            let (q, z, alpha) = q_params(p, Complex64::new(0.3, 0.2))?;
            let space = q_space(q, 0.5, alpha)?;
            let f = TestFunction::new(
                "inverse-q-product",
                Arc::new(move |pt: &Point| or_nan(log_qpochhammer_inf(z * Complex64::from_polar(1.0, pt.x), q).map(|v| (-v).exp()))),
            );
            let coef = move |mu: f64| -> Result<Complex64> {
                let l = log_qpochhammer_inf(-z * q.powf(0.5 - mu), q)?;
                Ok((l + 0.5 * mu * mu * q.ln()).exp())
            };
            let norm = q_double_sum(q, z, 0.5, 0.0);
            let k_disp = qseries_sum(QSeriesForm::BinomialNormDisplay, q, z)?.finite_part.re;
            let f = f
                .with_bandwidth(geometric_bandwidth(z.norm()))
                .with_coefficient(Arc::new(move |_, mu| coef(mu)))
                .with_norm(norm);
            let mut parts = Parts::new(space, f, 1.0).display(
                arc_term(move |mu| Ok(coef(mu)?.norm_sqr())),
                alloc::vec![("binomial-norm-display", k_disp)],
                1.0,
                "",
            );
            parts.identities = IdentityKind::Binomial;
            parts.z = z;
            Ok(parts)
        }
        "qgauss-aq" => {
            let (q, z, alpha) = q_params(p, Complex64::new(0.3, 0.2))?;
            let space = q_space(q, 0.5, alpha)?;
            let a = z * q.sqrt();
            let f = TestFunction::new(
                "q-product",
                Arc::new(move |pt: &Point| or_nan(log_qpochhammer_inf(a * Complex64::from_polar(1.0, pt.x), q).map(|v| v.exp()))),
            );
            let norm = qseries_sum(QSeriesForm::Ramanujan, q, z)?.finite_part.re;
            let bw = aq_bandwidth(q, z.norm());
            let f = f
                .with_bandwidth(bw)
                .with_coefficient(Arc::new(move |_, mu| scaled_ramanujan_aq(q, z, mu, 0.5 * mu * mu)))
                .with_norm(norm);
            let mut parts = Parts::new(space, f, 1.0).display(
                arc_term(move |mu| Ok(scaled_ramanujan_aq(q, z, mu, mu * mu)?.norm_sqr())),
                alloc::vec![("ramanujan", norm)],
                1.0,
                "displayed summand carries q^(n²) where |f_n|² carries q^(n²/2)",
            );
            parts.identities = IdentityKind::Ramanujan;
            parts.z = z;
            Ok(parts)
        }
        "qgauss-aq2" => {
            let (q, z, alpha) = q_params(p, Complex64::new(0.3, 0.2))?;
            let space = q_space(q, 1.0, alpha)?;
            let f = TestFunction::new(
                "inverse-q-product",
                Arc::new(move |pt: &Point| or_nan(log_qpochhammer_inf(-z * Complex64::from_polar(1.0, pt.x), q).map(|v| (-v).exp()))),
            );
            let norm = qseries_sum(QSeriesForm::RamanujanSquared, q, z)?.finite_part.re;
            let coef = move |mu: f64| scaled_ramanujan_aq(q, z, 2.0 * mu, mu * mu);
            let f = f
                .with_bandwidth(geometric_bandwidth(z.norm()))
                .with_coefficient(Arc::new(move |_, mu| coef(mu)))
                .with_norm(norm);
            let mut parts = Parts::new(space, f, 1.0).display(
                arc_term(move |mu| Ok(coef(mu)?.norm_sqr())),
                alloc::vec![("ramanujan-squared", norm)],
                1.0,
                "",
            );
            parts.identities = IdentityKind::RamanujanSquared;
            parts.z = z;
            Ok(parts)
        }
        _ => {
            let (q, z, alpha) = q_params(p, Complex64::new(0.8, 0.3))?;
            let nu = p.get("nu", 0.5, |v| v > -0.5 && v <= 20.0, "(−1/2, 20]")?;
            let space = q_space(q, 0.5, alpha)?;
            let b = q.powf(nu + 0.5);
            let num = z * z * b / 4.0;
            let lqq = log_qpochhammer_inf(c(q), q)?;
            let f = TestFunction::new(
                "q-bessel-generating",
                Arc::new(move |pt: &Point| {
                    let e = Complex64::from_polar(1.0, pt.x);
                    let r = (|| -> Result<Complex64> {
                        Ok((log_qpochhammer_inf(num * e, q)? - lqq - log_qpochhammer_inf(-b * e, q)?).exp())
                    })();
                    or_nan(r)
                }),
            )
            .with_bandwidth(geometric_bandwidth(b.max(num.norm())));
            let mut parts = Parts::new(space, f, 1.0);
            parts.identities = IdentityKind::QBessel;
            parts.z = z;
            Ok(parts)
        }
    }
}

/// Harmonics of `(w e^{ix}; q)_∞`: `|w|^k q^{k(k−1)/2}` falls below 1e-17.
fn aq_bandwidth(q: f64, r: f64) -> f64 {
    let mut k = 0.0f64;
    while k < Q_BANDWIDTH_CAP {
        let lt = k * (r * q.sqrt()).ln() + 0.5 * k * (k - 1.0) * q.ln();
        if lt < 1e-17f64.ln() && k > 0.0 {
            break;
        }
        k += 1.0;
    }
    k
}

// Gamma

fn gamma(p: &mut Params, id: &str) -> Result<Parts> {
    let sigma = p.get("sigma", 3.0, |v| v > 0.0 && v <= 50.0, "(0, 50]")?;
    let c1 = p.get("c1", 0.7, |v| v > 0.0, "c₁ > 0")?;
    let space = space(MeasureKind::Gamma { sigma }, FamilyKind::Mellin, ScheduleKind::LogLinear { c1 })?;
    let g_sigma = gamma_real(sigma)?;
    let s_of = move |mu: f64| Complex64::new(sigma, -mu);
    let parts = match id {
        "gamma-log" => {
            let f = TestFunction::new("log", Arc::new(|pt: &Point| c(pt.ln_x)))
                .with_coefficient(Arc::new(move |_, mu| Ok(gamma_ratio(sigma, -mu)? * digamma_complex(s_of(mu))?)))
                .with_norm(digamma_real(sigma)?.powi(2) + trigamma_real(sigma)?);
            let k = g_sigma * (digamma_real(sigma)?.powi(2) + trigamma_real(sigma)?);
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| {
                    let w = Complex64::new(sigma, mu);
                    Ok((gamma_complex(w)? * digamma_complex(w)?).norm_sqr())
                }),
                alloc::vec![("displayed", k)],
                g_sigma,
                "",
            )
        }
        "gamma-laguerre" => {
            let ell = p.get_int("ell", 2, 0, 20)?;
            let fact = gamma_real(ell as f64 + 1.0)?;
            let poch = move |mu: f64| -> Complex64 {
                (0..ell).fold(c(1.0), |acc, j| acc * Complex64::new(j as f64, mu))
            };
            let f = TestFunction::new("laguerre", Arc::new(move |pt: &Point| or_nan_re(laguerre(ell, sigma - 1.0, pt.x))))
                .with_coefficient(Arc::new(move |_, mu| Ok(gamma_ratio(sigma, -mu)? * poch(mu) / fact)))
                .with_norm((lgamma_real(ell as f64 + sigma) - lgamma_real(sigma)).exp() / fact);
            let k = gamma_real(ell as f64 + sigma)? / fact;
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| Ok((gamma_complex(Complex64::new(sigma, mu))? * poch(mu)).norm_sqr())),
                alloc::vec![("displayed", k)],
                fact * g_sigma,
                "",
            )
        }
        "gamma-eta-zeta" => {
            let eta = move |w: Complex64| -> Result<Complex64> {
                Ok((c(1.0) - c(2.0).powc(c(1.0) - w)) * riemann_zeta(w)?)
            };
            let mut f = TestFunction::new("logistic", Arc::new(|pt: &Point| c(1.0 / (1.0 + (-pt.x).exp()))))
                .with_sup(1.0)
                .with_coefficient(Arc::new(move |_, mu| Ok(gamma_ratio(sigma, -mu)? * eta(s_of(mu))?)));
            if sigma >= 2.05 {
                f = f.with_norm((1.0 - 2f64.powf(2.0 - sigma)) * riemann_zeta(c(sigma - 1.0))?.re);
            }
            let k = 2f64.powf(sigma - 1.0) * gamma_real(sigma + 1.0)? * (1.0 - 2f64.powf(1.0 - sigma)) * riemann_zeta(c(sigma))?.re;
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| {
                    let w = Complex64::new(sigma, mu);
                    Ok((gamma_complex(w)? * eta(w)?).norm_sqr())
                }),
                alloc::vec![("displayed", k)],
                g_sigma,
                "",
            )
        }
        "gamma-besselK" => {
            let nu = p.get("nu", 0.5, |v| v >= 0.0 && v < sigma / 2.0, "[0, σ/2)")?;
            let sp = PI.sqrt();
            let f = TestFunction::new(
                "scaled-bessel-k",
                Arc::new(move |pt: &Point| {
                    let k = bessel_k_complex_order(c(nu), 0.5 * pt.x).map(|v| v.re * (0.5 * pt.x).exp());
                    or_nan_re(k)
                }),
            )
            .with_coefficient(Arc::new(move |_, mu| {
                let s = s_of(mu);
                Ok(gamma_complex(s - nu)? * gamma_complex(s + nu)? / gamma_complex(s + 0.5)? * (sp / g_sigma))
            }))
            .with_norm(
                sp * gamma_real(sigma / 2.0 + nu)? * gamma_real(sigma / 2.0 - nu)? * gamma_real(sigma / 2.0)?
                    / (2f64.powf(2.0 - sigma) * gamma_real((sigma + 1.0) / 2.0)? * g_sigma),
            );
            let k = gamma_real(sigma / 2.0 + nu)? * gamma_real(sigma / 2.0 - nu)? * gamma_real(sigma / 2.0)?
                / (2f64.powf(2.0 - sigma) * sp * gamma_real((sigma + 1.0) / 2.0)?);
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| {
                    let w = Complex64::new(sigma, mu);
                    Ok((gamma_complex(w - nu)? * gamma_complex(w + nu)? / gamma_complex(w + 0.5)?).norm_sqr())
                }),
                alloc::vec![("displayed", k)],
                g_sigma / sp,
                "",
            )
        }
        "gamma-besselK-arg" => {
            let a = p.get("a", 1.0, |v| v > 0.0 && v <= 20.0, "(0, 20]")?;
            let k_of = move |mu: f64| -> Result<Complex64> {
                if mu.abs() > BESSEL_K_MAX_IMAG {
                    return Err(Error::Unsupported(alloc::format!("K of order with |Im| = {} > {BESSEL_K_MAX_IMAG}", mu.abs())));
                }
                bessel_k_complex_order(Complex64::new(sigma, mu), a)
            };
            let f = TestFunction::new("exp-inverse", Arc::new(move |pt: &Point| c((-a * a / (4.0 * pt.x)).exp())))
                .with_sup(1.0)
                .with_coefficient(Arc::new(move |_, mu| {
                    let s = s_of(mu);
                    Ok(c(a / 2.0).powc(s) * k_of(-mu)? * (2.0 / g_sigma))
                }))
                .with_norm(
                    2f64.powf(1.0 - sigma / 2.0) * a.powf(sigma) * bessel_k_complex_order(c(sigma), 2f64.sqrt() * a)?.re
                        / g_sigma,
                );
            let k = a.powf(3.0 * sigma) * 2f64.powf(2.5 * sigma - 1.0) * bessel_k_complex_order(c(sigma), 2f64.sqrt() * a)?.re;
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| Ok(k_of(mu)?.norm_sqr())),
                alloc::vec![("displayed", k)],
                g_sigma * 2f64.powf(sigma - 1.0) * a.powf(-sigma),
                "",
            )
        }
        "gamma-besselJ-1F1" => {
            let a = p.get("a", 1.0, |v| v > 0.0 && v <= 2.0, "(0, 2]")?;
            let nu = p.get("nu", 1.0, |v| (0.0..=10.0).contains(&v), "[0, 10]")?;
            let g_nu1 = gamma_real(nu + 1.0)?;
            let pref = (a / 2.0).powf(nu) / (g_nu1 * g_sigma);
            let f = TestFunction::new("bessel-j-sqrt", Arc::new(move |pt: &Point| or_nan_re(bessel_j(nu, a * pt.x.sqrt()))))
                .with_sup(1.0)
                .with_coefficient(Arc::new(move |_, mu| {
                    let w = s_of(mu) + nu / 2.0;
                    Ok(gamma_complex(w)? * hyp_pfq(&[w], &[c(nu + 1.0)], c(-a * a / 4.0))? * pref)
                }));
            let f22 = hyp_pfq(&[c(nu + 0.5), c(sigma + nu)], &[c(nu + 1.0), c(2.0 * nu + 1.0)], c(-a * a))?.re;
            let f = f.with_norm(
                a.powf(2.0 * nu) * gamma_real(sigma + nu)? * f22 / (2f64.powf(2.0 * nu) * g_sigma * g_nu1 * g_nu1),
            );
            let k = f22 * gamma_real(sigma + nu)?;
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| {
                    let w = Complex64::new(sigma, -mu) + nu / 2.0;
                    Ok((gamma_complex(w)? * hyp_pfq(&[w], &[c(nu + 1.0)], c(-a * a))?).norm_sqr())
                }),
                alloc::vec![("displayed", k)],
                g_nu1 * g_sigma * (2.0 / a).powf(nu),
                "displayed 1F1 argument is −a² where the coefficient has −a²/4",
            )
        }
        _ => {
            let a = p.get("a", 0.5, |v| v.abs() <= 10.0, "[−10, 10]")?;
            let x = p.get("x", 0.25, |v| v > -1.0 && v < 0.5, "(−1, 1/2)")?;
            let f = TestFunction::new(
                "confluent",
                Arc::new(move |pt: &Point| {
                    let z = x * pt.x;
                    // Kummer's transformation keeps the series positive for z < 0
                    if z < 0.0 {
                        or_nan(hyp_pfq(&[c(sigma - a)], &[c(sigma)], c(-z)).map(|v| v * z.exp()))
                    } else {
                        or_nan(hyp_pfq(&[c(a)], &[c(sigma)], c(z)))
                    }
                }),
            )
            .with_coefficient(Arc::new(move |_, mu| {
                Ok(gamma_ratio(sigma, -mu)? * hyp_pfq(&[c(a), s_of(mu)], &[c(sigma)], c(x))?)
            }));
            let r = x * x / ((1.0 - x) * (1.0 - x));
            let norm = hyp_pfq(&[c(a), c(a)], &[c(sigma)], c(r))?.re / (1.0 - x).powf(2.0 * a);
            let f = f.with_norm(norm);
            let k = x.powf(2.0 * sigma) * norm / g_sigma;
            Parts::new(space, f, g_sigma).display(
                arc_term(move |mu| Ok(hyp_pfq(&[c(a), s_of(mu)], &[c(sigma)], c(x))?.norm_sqr())),
                alloc::vec![("displayed", k)],
                1.0,
                "displayed constant carries a factor x^(2σ) absent from the norm",
            )
        }
    };
    Ok(parts)
}

// Beta

fn beta(p: &mut Params, id: &str) -> Result<Parts> {
    let pp = p.get("p", 1.5, |v| v > 0.0 && v <= 50.0, "(0, 50]")?;
    let qq = p.get("q", 2.5, |v| v > 0.0 && v <= 50.0, "(0, 50]")?;
    let alpha = p.get("alpha", 1.0, |v| v > 0.0, "α > 0")?;
    let beta_s = p.get("beta", 1.0, |v| v > 0.0, "β > 0")?;
    let space = space(MeasureKind::Beta { p: pp, q: qq }, FamilyKind::Mellin, ScheduleKind::Power { alpha, beta: beta_s })?;
    let b = (lgamma_real(pp) + lgamma_real(qq) - lgamma_real(pp + qq)).exp();
    let s_of = move |lam: f64| Complex64::new(pp, -lam);
    let parts = match id {
        "beta-log" => {
            let dd = move |w: Complex64| -> Result<Complex64> { Ok(digamma_complex(w)? - digamma_complex(w + qq)?) };
            let norm = (digamma_real(pp)? - digamma_real(pp + qq)?).powi(2) + trigamma_real(pp)? - trigamma_real(pp + qq)?;
            let f = TestFunction::new("log", Arc::new(|pt: &Point| c(pt.ln_x)))
                .with_coefficient(Arc::new(move |_, lam| Ok(beta_ratio(pp, qq, -lam)? * dd(s_of(lam))?)))
                .with_norm(norm);
            Parts::new(space, f, b).display(
                arc_term(move |lam| {
                    let w = Complex64::new(pp, lam);
                    Ok((beta_complex(w, qq)? * dd(w)?).norm_sqr())
                }),
                alloc::vec![("norm-times-beta", norm * b), ("norm", norm)],
                b,
                "display constant admits two readings",
            )
        }
        "beta-2F1" => {
            let a = p.get("a", 0.5, |v| v.abs() <= 10.0, "[−10, 10]")?;
            let z = p.get("z", 0.5, |v| v.abs() < 1.0, "(−1, 1)")?;
            let f = TestFunction::new("binomial-power", Arc::new(move |pt: &Point| c((-a * (-z * pt.x).ln_1p()).exp())))
                .with_coefficient(Arc::new(move |_, lam| {
                    let s = s_of(lam);
                    Ok(beta_ratio(pp, qq, -lam)? * hyp_pfq(&[c(a), s], &[s + qq], c(z))?)
                }));
            let f21 = hyp_pfq(&[c(2.0 * a), c(pp)], &[c(pp + qq)], c(z))?.re;
            let f = f.with_norm(f21);
            Parts::new(space, f, b).display(
                arc_term(move |lam| {
                    let s = s_of(lam);
                    Ok((beta_complex(s, qq)? * hyp_pfq(&[c(a), s], &[s + qq], c(z))?).norm_sqr())
                }),
                alloc::vec![("displayed", b * f21)],
                b,
                "",
            )
        }
        "beta-jacobi" => {
            let ell = p.get_int("ell", 2, 0, 20)?;
            let l = ell as f64;
            let fact = gamma_real(l + 1.0)?;
            let lead = gamma_real(l + qq)? / (fact * gamma_real(qq)?) * if ell % 2 == 0 { 1.0 } else { -1.0 };
            let f32 = move |lam: f64| -> Result<Complex64> {
                let s = s_of(lam);
                hyp_pfq(&[c(-l), c(l + pp + qq - 1.0), s], &[c(qq), s + qq], c(1.0))
            };
            let f = TestFunction::new(
                "jacobi",
                Arc::new(move |pt: &Point| or_nan_re(jacobi(ell, pp - 1.0, qq - 1.0, pt.x - pt.one_minus_x))),
            )
            .with_coefficient(Arc::new(move |_, lam| Ok(beta_ratio(pp, qq, -lam)? * f32(lam)? * lead)));
            let k = fact * gamma_real(l + pp)? * gamma_real(qq)?.powi(2)
                / ((2.0 * l + pp + qq - 1.0) * gamma_real(l + pp + qq - 1.0)? * gamma_real(l + qq)?);
            Parts::new(space, f, b).display(
                arc_term(move |lam| Ok((beta_complex(s_of(lam), qq)? * f32(lam)?).norm_sqr())),
                alloc::vec![("displayed", k)],
                fact * gamma_real(qq)? * b / gamma_real(l + qq)?,
                "",
            )
        }
        _ => {
            let nu = p.get("nu", 0.5, |v| (0.0..=10.0).contains(&v), "[0, 10]")?;
            let g21 = gamma_real(2.0 * nu + 1.0)?;
            let f12 = move |w: Complex64| hyp_pfq(&[w], &[c(2.0 * nu + 1.0), w + qq], c(-0.25));
            let f = TestFunction::new("bessel-j-sqrt", Arc::new(move |pt: &Point| or_nan_re(bessel_j(2.0 * nu, pt.x.sqrt()))))
                .with_sup(1.0)
                .with_coefficient(Arc::new(move |_, lam| {
                    let w = s_of(lam) + nu;
                    Ok(beta_complex(w, qq)? * f12(w)? / (4f64.powf(nu) * g21 * b))
                }));
            let b2 = (lgamma_real(pp + 2.0 * nu) + lgamma_real(qq) - lgamma_real(pp + qq + 2.0 * nu)).exp();
            let f23 = hyp_pfq(
                &[c(pp + 2.0 * nu), c(2.0 * nu + 0.5)],
                &[c(pp + qq + 2.0 * nu), c(2.0 * nu + 1.0), c(4.0 * nu + 1.0)],
                c(-1.0),
            )?
            .re;
            let f = f.with_norm(16f64.powf(-nu) * b2 * f23 / (g21 * g21 * b));
            Parts::new(space, f, b).display(
                arc_term(move |lam| {
                    let w = Complex64::new(pp, lam) + nu;
                    Ok((beta_complex(w, qq)? * f12(w)?).norm_sqr())
                }),
                alloc::vec![("displayed", b2 * f23)],
                4f64.powf(nu) * g21 * b,
                "",
            )
        }
    };
    Ok(parts)
}

// Dirichlet series

impl ArithmeticSpec {
    fn log_weight(&self) -> ArithmeticWeight<'_> {
        match self.weight {
            Arithmetic::Chi => ArithmeticWeight::Character(self.chi.as_deref().expect("character")),
            Arithmetic::Liouville => ArithmeticWeight::Liouville,
            _ => ArithmeticWeight::One,
        }
    }

    /// `a(k)` for `k ≤ sieve.limit()`.
    pub(crate) fn a(&self, k: usize, sieve: &SieveTable) -> Complex64 {
        let chi = |k: usize| self.chi.as_ref().map(|x| x.eval(k as u64)).unwrap_or(c(1.0));
        match self.weight {
            Arithmetic::One => c(1.0),
            Arithmetic::Chi => chi(k),
            Arithmetic::Mu => c(sieve.mobius(k) as f64),
            Arithmetic::MuChi => chi(k) * sieve.mobius(k) as f64,
            Arithmetic::Liouville => c(sieve.liouville(k) as f64),
        }
    }

    /// `A'/A(w)` (Mangoldt) or `A(w) − 1` (zeta tail), analytically.
    pub(crate) fn analytic(&self, w: Complex64) -> Result<Complex64> {
        if self.mangoldt {
            return log_derivative_analytic(w, self.log_weight());
        }
        let chi = || self.chi.as_deref().expect("character");
        match self.weight {
            Arithmetic::One => zeta_minus_one(w),
            Arithmetic::Chi => dirichlet_l_minus_one(w, chi()),
            Arithmetic::Mu => Ok(-zeta_minus_one(w)? / riemann_zeta(w)?),
            Arithmetic::MuChi => Ok(-dirichlet_l_minus_one(w, chi())? / dirichlet_l(w, chi())?),
            Arithmetic::Liouville => Ok((zeta_minus_one(w * 2.0)? - zeta_minus_one(w)?) / riemann_zeta(w)?),
        }
    }

    /// The same quantity as a sieve sum over `2 ≤ k ≤ limit`, with a tail bound.
    pub(crate) fn series(&self, w: Complex64, sieve: &SieveTable) -> (Complex64, f64) {
        let limit = sieve.limit();
        let mut acc = KahanComplex::new();
        for k in 2..=limit {
            let lam = if self.mangoldt { sieve.mangoldt(k) } else { 1.0 };
            if lam == 0.0 {
                continue;
            }
            let a = self.a(k, sieve);
            if a == c(0.0) {
                continue;
            }
            let lk = (k as f64).ln();
            acc.add(a * lam * (-w * lk).exp());
        }
        let lf = limit as f64;
        let e = w.re - 1.0;
        if self.mangoldt {
            (-acc.value(), lf.powf(-e) * (lf.ln() / e + 1.0 / (e * e)))
        } else {
            (acc.value(), lf.powf(-e) / e)
        }
    }

    fn divisor_primes(&self) -> Vec<f64> {
        let m = self.chi.as_ref().map(|x| x.modulus()).unwrap_or(1);
        (2..=m).filter(|&p| m.is_multiple_of(p) && (2..p).all(|d| p % d != 0)).map(|p| p as f64).collect()
    }

    /// Displayed constant `Σ w(k) k^{−σ}` over `k ≥ 2`, `w = μ²` for the square-free weights.
    pub(crate) fn display_constant(&self) -> Result<f64> {
        let s = self.sigma;
        if self.mangoldt {
            return Ok(-log_derivative_analytic(c(s), ArithmeticWeight::One)?.re);
        }
        Ok(match self.weight {
            Arithmetic::Mu | Arithmetic::MuChi => riemann_zeta(c(s))?.re / riemann_zeta(c(2.0 * s))?.re - 1.0,
            _ => zeta_minus_one(c(s))?.re,
        })
    }

    /// `Σ w(k) k^{−σ}` by the sieve, with its tail bound.
    pub(crate) fn display_constant_series(&self, sieve: &SieveTable) -> (f64, f64) {
        let s = self.sigma;
        let limit = sieve.limit();
        let mut acc = crate::sum::Kahan::new();
        for k in 2..=limit {
            let w = if self.mangoldt {
                sieve.mangoldt(k)
            } else if matches!(self.weight, Arithmetic::Mu | Arithmetic::MuChi) {
                (sieve.mobius(k) as f64).abs()
            } else {
                1.0
            };
            if w != 0.0 {
                acc.add(w * (-s * (k as f64).ln()).exp());
            }
        }
        let lf = limit as f64;
        let e = s - 1.0;
        let tail = if self.mangoldt { lf.powf(-e) * (lf.ln() / e + 1.0 / (e * e)) } else { lf.powf(-e) / e };
        (acc.value(), tail)
    }

    /// `‖f‖² = Σ ψ(k) |a(k)|²` for the normalized measure.
    fn norm_sq(&self, norm: f64) -> Result<f64> {
        let s = self.sigma;
        let primes = self.divisor_primes();
        if self.mangoldt {
            return Ok(match self.weight {
                Arithmetic::Chi => 1.0 - primes.iter().map(|p| p.ln() / (p.powf(s) - 1.0)).sum::<f64>() / norm,
                _ => 1.0,
            });
        }
        let zeta = riemann_zeta(c(s))?.re;
        let zeta2 = riemann_zeta(c(2.0 * s))?.re;
        Ok(match self.weight {
            Arithmetic::One | Arithmetic::Liouville => 1.0,
            Arithmetic::Chi => (zeta * primes.iter().map(|p| 1.0 - p.powf(-s)).product::<f64>() - 1.0) / norm,
            Arithmetic::Mu => (zeta / zeta2 - 1.0) / norm,
            Arithmetic::MuChi => (zeta / zeta2 * primes.iter().map(|p| 1.0 / (1.0 + p.powf(-s))).product::<f64>() - 1.0) / norm,
        })
    }
}

fn arithmetic(p: &mut Params, id: &str) -> Result<Parts> {
    let mangoldt = id.starts_with("mangoldt-");
    let weight = match id {
        "mangoldt-zeta" | "zetatail-one" => Arithmetic::One,
        "mangoldt-L" | "zetatail-chi" => Arithmetic::Chi,
        "mangoldt-liouville" | "zetatail-liouville" => Arithmetic::Liouville,
        "zetatail-mu" => Arithmetic::Mu,
        _ => Arithmetic::MuChi,
    };
    let sigma = p.get("sigma", 3.0, |v| (1.5..=60.0).contains(&v), "[1.5, 60]")?;
    let t = p.get("t", 0.5, |v| v.abs() <= 1e3, "[−1000, 1000]")?;
    let chi: Option<Arc<DirichletCharacter>> = if matches!(weight, Arithmetic::Chi | Arithmetic::MuChi) {
        let m = p.get_int("chi_mod", 4, 1, 12)?;
        let i = p.get_int("chi_index", 1, 0, 11)?;
        Some(Arc::new(character(m, i)?))
    } else {
        None
    };
    let kind = if mangoldt { MeasureKind::DiscreteMangoldt { sigma } } else { MeasureKind::DiscreteZetaTail { sigma } };
    let space = space(kind, FamilyKind::Dirichlet, ScheduleKind::Shifted)?;
    let norm = space.measure.discrete_normalizer().ok_or_else(|| invalid("discrete measure without normalizer"))?;
    let sieve = space.measure.sieve().ok_or_else(|| invalid("discrete measure without sieve"))?;
    let spec = ArithmeticSpec { weight, mangoldt, sigma, t, chi };
    let spec_f = spec.clone();
    let eval = Arc::new(move |pt: &Point| {
        let k = pt.k as usize;
        spec_f.a(k, &sieve) * Complex64::from_polar(1.0, -t * pt.ln_x)
    });
    let spec_c = spec.clone();
    let sign = if mangoldt { -1.0 } else { 1.0 };
    let coef = move |lam: f64| -> Result<Complex64> { Ok(spec_c.analytic(Complex64::new(sigma + lam, t))? * (sign / norm)) };
    let coef_f = coef.clone();
    let f = TestFunction::new(weight.name(), eval)
        .with_sup(1.0)
        .with_coefficient(Arc::new(move |_, lam| coef_f(lam)))
        .with_norm(spec.norm_sq(norm)?);
    let k = spec.display_constant()?;
    let mut parts = Parts::new(space, f, norm).display(
        arc_term(move |lam| Ok((coef(lam)? * norm).norm_sqr())),
        alloc::vec![("displayed", k)],
        norm,
        "",
    );
    parts.arithmetic = Some(spec);
    Ok(parts)
}

// Control

fn control() -> Result<Parts> {
    let space = space(MeasureKind::CircleUniform, FamilyKind::Fourier, ScheduleKind::Integer)?;
    let sp = space.clone();
    let f = TestFunction::new("first-exponential", Arc::new(|pt: &Point| Complex64::from_polar(1.0, pt.x)))
        .with_sup(1.0)
        .with_bandwidth(1.0)
        .with_coefficient(Arc::new(move |_, lam| sp.gram_closed(1.0, lam)))
        .with_norm(1.0);
    Ok(Parts::new(space, f, 1.0))
}
