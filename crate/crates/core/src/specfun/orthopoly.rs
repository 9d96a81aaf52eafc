//! Classical orthogonal polynomials by forward three-term recurrence.

use crate::error::{invalid, Result};

pub const MAX_DEGREE: u32 = 200;

fn check(ell: u32, params: &[f64]) -> Result<()> {
    if ell > MAX_DEGREE {
        return Err(invalid(alloc::format!("degree {ell} exceeds {MAX_DEGREE}")));
    }
    if params.iter().any(|p| !(*p > -1.0 && p.is_finite())) {
        return Err(invalid("orthogonal polynomial parameters must exceed −1"));
    }
    Ok(())
}

/// Generalized Laguerre `L_ℓ^{(α)}(x)`.
pub fn laguerre(ell: u32, alpha: f64, x: f64) -> Result<f64> {
    check(ell, &[alpha])?;
    let mut prev = 1.0;
    if ell == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..ell {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi `P_ℓ^{(α,β)}(x)`.
pub fn jacobi(ell: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check(ell, &[alpha, beta])?;
    let mut prev = 1.0;
    if ell == 0 {
        return Ok(prev);
    }
    let mut cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    let ab = alpha + beta;
    for n in 2..=ell {
        let n = n as f64;
        let c = 2.0 * n + ab;
        let a1 = 2.0 * n * (n + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * c;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{log_axis_rule, tanh_sinh_rule};
    use crate::specfun::{beta_complex, lgamma_real};
    use num_complex::Complex64;

    #[test]
    fn low_degree_closed_forms() {
        assert_eq!(laguerre(0, 0.3, 2.0).unwrap(), 1.0);
        assert_eq!(laguerre(1, 0.3, 2.0).unwrap(), 1.0 + 0.3 - 2.0);
        let (a, x) = (1.7, 0.9);
        let l2 = (a + 1.0) * (a + 2.0) / 2.0 - (a + 2.0) * x + x * x / 2.0;
        assert!((laguerre(2, a, x).unwrap() - l2).abs() < 1e-14);
        assert_eq!(jacobi(0, 0.5, 1.5, 0.2).unwrap(), 1.0);
        assert_eq!(jacobi(1, 0.5, 1.5, 0.2).unwrap(), 1.5 + 4.0 * (0.2 - 1.0) / 2.0);
        // α = β = 0 gives Legendre: P_3 = (5x³ − 3x)/2
        let x = 0.37;
        assert!((jacobi(3, 0.0, 0.0, x).unwrap() - (5.0 * x * x * x - 3.0 * x) / 2.0).abs() < 1e-15);
        // P_ℓ(1) = (α+1)_ℓ / ℓ!
        let v = jacobi(200, 0.5, 1.5, 1.0).unwrap();
        let exact = (lgamma_real(201.5) - lgamma_real(1.5) - lgamma_real(201.0)).exp();
        assert!((v - exact).abs() < 1e-11 * exact);
        assert!(laguerre(201, 0.0, 1.0).is_err());
        assert!(jacobi(2, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn laguerre_orthogonality() {
        let rule = log_axis_rule(3.0, 0.02, 40.0).unwrap();
        let ip = rule.integrate(|x| laguerre(2, 2.0, x).unwrap() * laguerre(3, 2.0, x).unwrap());
        assert!(ip.abs() < 1e-10);
        // ‖L_ℓ^{(α)}‖² = Γ(ℓ+α+1)/ℓ!
        let nn = rule.integrate(|x| laguerre(3, 2.0, x).unwrap().powi(2));
        assert!((nn - lgamma_real(6.0).exp() / 6.0).abs() < 1e-9);
    }

    fn jacobi_sq_beta_integral(ell: u32, alpha: f64, beta: f64, p: f64, q: f64, reflect: bool) -> f64 {
        let rule = tanh_sinh_rule(7).unwrap();
        rule.integrate_unit_complex(|x, xc| {
            let y = if reflect { xc - x } else { x - xc };
            let v = jacobi(ell, alpha, beta, y).unwrap();
            Complex64::new(v * v * x.powf(p - 1.0) * xc.powf(q - 1.0), 0.0)
        })
        .re
    }

    fn beta_weight_norm_constant(ell: u32, p: f64, q: f64) -> f64 {
        let b = beta_complex(Complex64::new(p, 0.0), q).unwrap().re;
        let l = ell as f64;
        (lgamma_real(l + p) + lgamma_real(l + q) - lgamma_real(l + 1.0) - lgamma_real(l + p + q - 1.0)).exp()
            / ((2.0 * l + p + q - 1.0) * b)
    }

    #[test]
    fn jacobi_norm_against_beta_weight() {
        let (ell, p, q) = (2u32, 1.5, 2.5);
        let b = beta_complex(Complex64::new(p, 0.0), q).unwrap().re;
        let constant = beta_weight_norm_constant(ell, p, q);
        // P^{(p−1,q−1)}(1−2x) is orthogonal for x^{p−1}(1−x)^{q−1}
        let matched = jacobi_sq_beta_integral(ell, p - 1.0, q - 1.0, p, q, true) / b;
        assert!((matched - constant).abs() < 1e-9, "{matched} vs {constant}");
        // with argument 2x−1 the weight pairs α with 1−x, so the constant needs p ↔ q
        let literal = jacobi_sq_beta_integral(ell, p - 1.0, q - 1.0, p, q, false) / b;
        assert!((literal - constant).abs() > 1e-3);
        let swapped = jacobi_sq_beta_integral(ell, q - 1.0, p - 1.0, p, q, false) / b;
        assert!((swapped - constant).abs() < 1e-9);
    }
}
