//! Gamma-family functions: complex log-gamma (Lanczos), digamma, trigamma, Beta.

use crate::error::{domain, Result};
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// B_{2k} for k = 1..=12.
pub(crate) const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn lgamma_lanczos(z: Complex64) -> Complex64 {
    // Γ(z) = √(2π) t^{z-1/2} e^{-t} A(z-1),  t = z - 1 + g + 1/2
    let zm1 = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI + a.ln()
}

/// Principal-branch `ln Γ(z)`.
///
/// Lanczos (g = 7, nine coefficients) for `Re z ≥ 1/2`, reflection otherwise.
pub fn lgamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("lgamma of a non-finite argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(domain(alloc::format!("Γ has a pole at {}", z.re)));
    }
    if z.im == 0.0 && z.re > 0.0 {
        return Ok(Complex64::new(lgamma_real(z.re), 0.0));
    }
    Ok(lgamma_unchecked(z))
}

fn lgamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z)
        let s = (z * PI).sin();
        Complex64::new(PI.ln(), 0.0) - s.ln() - lgamma_lanczos(1.0 - z)
    } else if z.im < 0.0 {
        lgamma_lanczos(z.conj()).conj()
    } else {
        lgamma_lanczos(z)
    }
}

/// `ln Γ(x)` for real `x > 0`.
pub fn lgamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // reflection on the positive side: Γ(x) Γ(1-x) = π / sin(πx)
        return PI.ln() - (PI * x).sin().ln() - lgamma_real(1.0 - x);
    }
    let zm1 = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI + a.ln()
}

pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    Ok(lgamma_complex(z)?.exp())
}

/// Γ(x) for real `x`, not a pole.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x > 0.0 {
        // small integers exactly
        if x == x.round() && x <= 20.0 {
            let mut f = 1.0;
            for k in 2..(x as u32) {
                f *= k as f64;
            }
            return Ok(f);
        }
        return Ok(lgamma_real(x).exp());
    }
    if x == x.round() {
        return Err(domain(alloc::format!("Γ has a pole at {x}")));
    }
    Ok(PI / ((PI * x).sin() * gamma_real(1.0 - x)?))
}

/// Γ(σ + iy) / Γ(σ) through log-gamma differences; exactly 1 at `y = 0` and
/// conjugate-symmetric in `y`.
pub fn gamma_ratio(sigma: f64, y: f64) -> Result<Complex64> {
    if !(sigma > 0.0) {
        return Err(domain("gamma_ratio needs σ > 0"));
    }
    if y == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let r = (lgamma_complex(Complex64::new(sigma, y.abs()))? - lgamma_real(sigma)).exp();
    Ok(if y < 0.0 { r.conj() } else { r })
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma_complex(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(domain(alloc::format!("ψ has a pole at {}", z.re)));
    }
    if z.im < 0.0 {
        return Ok(digamma_complex(z.conj())?.conj());
    }
    if z.re < 0.5 {
        // ψ(1 − z) − ψ(z) = π cot(πz)
        let cot = (z * PI).cos() / (z * PI).sin();
        return Ok(digamma_complex(1.0 - z)? - cot * PI);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += 1.0 / w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        series += p * (*b / (2.0 * (k as f64 + 1.0)));
        p *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - shift)
}

pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma_complex(Complex64::new(x, 0.0))?.re)
}

/// Trigamma ψ'(x) for real `x > 0`.
pub fn trigamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("trigamma_real needs x > 0"));
    }
    let mut w = x;
    let mut shift = 0.0;
    while w < 15.0 {
        shift += 1.0 / (w * w);
        w += 1.0;
    }
    // ψ'(w) ~ 1/w + 1/(2w²) + Σ B_{2k} / w^{2k+1}
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2 * inv;
    for b in BERNOULLI_EVEN.iter().take(8) {
        series += b * p;
        p *= inv2;
    }
    Ok(shift + inv + 0.5 * inv2 + series)
}

/// Euler Beta `B(p, q) = Γ(p)Γ(q)/Γ(p+q)` for complex `p` with `Re p > 0`, real `q > 0`.
pub fn beta_complex(p: Complex64, q: f64) -> Result<Complex64> {
    if !(p.re > 0.0) || !(q > 0.0) {
        return Err(domain("beta_complex needs Re p > 0 and q > 0"));
    }
    let qq = Complex64::new(q, 0.0);
    Ok((lgamma_complex(p)? + lgamma_real(q) - lgamma_complex(p + qq)?).exp())
}

/// `B(p + iy, q) / B(p, q)`; exactly 1 at `y = 0`, conjugate-symmetric in `y`.
pub fn beta_ratio(p: f64, q: f64, y: f64) -> Result<Complex64> {
    if !(p > 0.0 && q > 0.0) {
        return Err(domain("beta_ratio needs p, q > 0"));
    }
    if y == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let z = Complex64::new(p, y.abs());
    let log = lgamma_complex(z)? - lgamma_real(p) + lgamma_real(p + q)
        - lgamma_complex(z + q)?;
    let r = log.exp();
    Ok(if y < 0.0 { r.conj() } else { r })
}
