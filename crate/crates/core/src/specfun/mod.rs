//! Special functions over binary64 complex arguments.

mod gamma;

pub use gamma::{
    beta_complex, beta_ratio, digamma_complex, digamma_real, gamma_complex, gamma_ratio,
    gamma_real, lgamma_complex, lgamma_real, trigamma_real,
};

mod zeta;

pub use zeta::{
    dirichlet_l, dirichlet_l_minus_one, hurwitz_zeta, log_derivative_analytic,
    log_derivative_checked, log_derivative_series, mangoldt_tail_bound, riemann_zeta,
    sieve_length_for, zeta_log_derivative, zeta_minus_one, ArithmeticWeight, LogDerivative,
};

mod bessel;

pub use bessel::{bessel_j, bessel_k_complex_order};

mod hypergeometric;

pub use hypergeometric::{hyp_pfq, hyp_pfq_counted, SeriesValue};

mod orthopoly;

pub use orthopoly::{jacobi, laguerre};
