//! Arithmetic functions from a linear sieve, and table-backed Dirichlet characters.

use crate::error::{invalid, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

pub const MAX_SIEVE: usize = 10_000_000;

/// Λ, μ, Liouville λ and smallest prime factor for `1 ..= limit`.
///
/// Index 0 is unused and holds zeros.
#[derive(Clone, Debug)]
pub struct SieveTable {
    limit: usize,
    spf: Vec<u32>,
    mangoldt: Vec<f64>,
    mobius: Vec<i8>,
    liouville: Vec<i8>,
    primes: Vec<u32>,
}

/// Linear sieve up to `limit` (`2 ≤ limit ≤ 10⁷`).
pub fn build_sieve(limit: usize) -> Result<SieveTable> {
    if !(2..=MAX_SIEVE).contains(&limit) {
        return Err(invalid(alloc::format!("sieve limit {limit} outside 2..={MAX_SIEVE}")));
    }
    let mut spf = vec![0u32; limit + 1];
    let mut mangoldt = vec![0.0f64; limit + 1];
    let mut mobius = vec![0i8; limit + 1];
    let mut liouville = vec![0i8; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    mobius[1] = 1;
    liouville[1] = 1;
    spf[1] = 1;
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            mangoldt[i] = (i as f64).ln();
            mobius[i] = -1;
            liouville[i] = -1;
        }
        let spf_i = spf[i];
        for &p in &primes {
            let k = i * p as usize;
            if p > spf_i || k > limit {
                break;
            }
            spf[k] = p;
            liouville[k] = -liouville[i];
            if p == spf_i {
                mobius[k] = 0;
                // i is a power of p exactly when Λ(i) ≠ 0 (its only prime is spf_i)
                if mangoldt[i] != 0.0 {
                    mangoldt[k] = mangoldt[p as usize];
                }
            } else {
                mobius[k] = -mobius[i];
            }
        }
    }
    Ok(SieveTable { limit, spf, mangoldt, mobius, liouville, primes })
}

impl SieveTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// von Mangoldt Λ(k): `ln p` when `k = p^j`, else 0.
    pub fn mangoldt(&self, k: usize) -> f64 {
        self.mangoldt[k]
    }

    pub fn mobius(&self, k: usize) -> i8 {
        self.mobius[k]
    }

    /// Liouville λ(k) = (−1)^Ω(k).
    pub fn liouville(&self, k: usize) -> i8 {
        self.liouville[k]
    }

    pub fn smallest_prime_factor(&self, k: usize) -> u32 {
        self.spf[k]
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn mangoldt_slice(&self) -> &[f64] {
        &self.mangoldt
    }
}

pub const SUPPORTED_MODULI: [u32; 6] = [1, 3, 4, 5, 8, 12];

/// Generators `(g, order)` of `(ℤ/qℤ)^×` for the supported moduli.
fn generators(q: u32) -> Option<&'static [(u32, u32)]> {
    Some(match q {
        1 => &[],
        3 => &[(2, 2)],
        4 => &[(3, 2)],
        5 => &[(2, 4)],
        8 => &[(3, 2), (5, 2)],
        12 => &[(5, 2), (7, 2)],
        _ => return None,
    })
}

/// `exp(2πi k / n)`, exact for `n ∈ {1, 2, 4}`.
fn root_of_unity(k: u32, n: u32) -> Complex64 {
    let k = k % n;
    match (n, k) {
        (_, 0) => Complex64::new(1.0, 0.0),
        (2, 1) | (4, 2) => Complex64::new(-1.0, 0.0),
        (4, 1) => Complex64::new(0.0, 1.0),
        (4, 3) => Complex64::new(0.0, -1.0),
        _ => {
            let t = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            Complex64::new(t.cos(), t.sin())
        }
    }
}

/// A Dirichlet character stored as its value table on residues mod `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: u32,
    index: u32,
    table: Vec<Complex64>,
}

/// The `index`-th character modulo `modulus`; index 0 is principal.
pub fn character(modulus: u32, index: u32) -> Result<DirichletCharacter> {
    let gens = generators(modulus)
        .ok_or_else(|| invalid(alloc::format!("unsupported character modulus {modulus}")))?;
    let group_order: u32 = gens.iter().map(|g| g.1).product();
    if index >= group_order {
        return Err(invalid(alloc::format!(
            "character index {index} out of range for modulus {modulus} (group order {group_order})"
        )));
    }
    let q = modulus as usize;
    let mut table = vec![Complex64::new(0.0, 0.0); q];
    if modulus == 1 {
        table[0] = Complex64::new(1.0, 0.0);
    } else {
        // mixed-radix digits of the index are the exponents of χ on each generator
        let mut digits = Vec::with_capacity(gens.len());
        let mut rest = index;
        for &(_, ord) in gens {
            digits.push(rest % ord);
            rest /= ord;
        }
        let mut exps = vec![0u32; gens.len()];
        loop {
            let mut residue = 1u64;
            let mut value = Complex64::new(1.0, 0.0);
            for (j, &(g, ord)) in gens.iter().enumerate() {
                for _ in 0..exps[j] {
                    residue = residue * g as u64 % modulus as u64;
                }
                value *= root_of_unity(digits[j] * exps[j], ord);
            }
            table[residue as usize] = value;
            // next exponent tuple
            let mut j = 0;
            loop {
                if j == gens.len() {
                    return Ok(DirichletCharacter { modulus, index, table });
                }
                exps[j] += 1;
                if exps[j] < gens[j].1 {
                    break;
                }
                exps[j] = 0;
                j += 1;
            }
        }
    }
    Ok(DirichletCharacter { modulus, index, table })
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        self.table[(n % self.modulus as u64) as usize]
    }

    pub fn table(&self) -> &[Complex64] {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn sieve_values() {
        let s = build_sieve(100).unwrap();
        assert_eq!(s.mangoldt(8), 2f64.ln());
        assert_eq!(s.mangoldt(12), 0.0);
        assert_eq!(s.mangoldt(49), 7f64.ln());
        assert_eq!(s.mangoldt(1), 0.0);
        assert_eq!(s.mobius(30), -1);
        assert_eq!(s.mobius(12), 0);
        assert_eq!(s.mobius(1), 1);
        assert_eq!(s.liouville(12), -1);
        assert_eq!(s.liouville(36), 1);
        assert_eq!(s.smallest_prime_factor(91), 7);
        assert_eq!(s.primes().len(), 25);
    }

    #[test]
    fn chebyshev_identity() {
        let s = build_sieve(60).unwrap();
        let total: f64 = (1..=60).filter(|d| 60 % d == 0).map(|d| s.mangoldt(d)).sum();
        assert!((total - 60f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn sieve_limits() {
        assert!(build_sieve(1).is_err());
        assert!(build_sieve(MAX_SIEVE + 1).is_err());
    }

    #[test]
    fn sieve_is_prefix_stable() {
        let small = build_sieve(5_000).unwrap();
        let big = build_sieve(20_000).unwrap();
        for k in 1..=5_000 {
            assert_eq!(small.mangoldt(k).to_bits(), big.mangoldt(k).to_bits());
            assert_eq!(small.mobius(k), big.mobius(k));
            assert_eq!(small.liouville(k), big.liouville(k));
            assert_eq!(small.smallest_prime_factor(k), big.smallest_prime_factor(k));
        }
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = build_sieve(2_000).unwrap();
        for k in 2..=2_000usize {
            let mut n = k;
            let mut factors = Vec::new();
            let mut p = 2;
            while p * p <= n {
                while n % p == 0 {
                    factors.push(p);
                    n /= p;
                }
                p += 1;
            }
            if n > 1 {
                factors.push(n);
            }
            let omega = factors.len();
            let distinct = {
                let mut f = factors.clone();
                f.dedup();
                f
            };
            let squarefree = distinct.len() == omega;
            assert_eq!(s.liouville(k), if omega % 2 == 0 { 1 } else { -1 });
            let mu = if squarefree { if omega % 2 == 0 { 1 } else { -1 } } else { 0 };
            assert_eq!(s.mobius(k), mu, "k = {k}");
            let lam = if distinct.len() == 1 { (distinct[0] as f64).ln() } else { 0.0 };
            assert_eq!(s.mangoldt(k), lam, "k = {k}");
        }
    }

    #[test]
    fn characters_mod_4_and_errors() {
        let chi = character(4, 1).unwrap();
        assert_eq!(chi.eval(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.eval(1), Complex64::new(1.0, 0.0));
        assert_eq!(chi.eval(2), Complex64::new(0.0, 0.0));
        assert!(character(7, 0).is_err());
        assert!(character(4, 2).is_err());
    }

    #[test]
    fn character_group_properties() {
        for &q in &SUPPORTED_MODULI {
            let order: u32 = generators(q).unwrap().iter().map(|g| g.1).product();
            for idx in 0..order {
                let chi = character(q, idx).unwrap();
                for a in 0..q as u64 {
                    let zero = chi.eval(a).norm() == 0.0;
                    assert_eq!(zero, gcd(a, q as u64) > 1 && q > 1, "q={q} a={a}");
                }
                for m in 0..40u64 {
                    for n in 0..40u64 {
                        let lhs = chi.eval(m * n);
                        let rhs = chi.eval(m) * chi.eval(n);
                        assert!((lhs - rhs).norm() < 1e-15);
                    }
                }
                let s: Complex64 = chi.table().iter().sum();
                if chi.is_principal() {
                    assert!(s.re > 0.0);
                } else {
                    assert!(s.norm() < 1e-15, "q={q} idx={idx}");
                }
            }
        }
    }

    #[test]
    fn principal_mod_3_strips_euler_factor() {
        let chi = character(3, 0).unwrap();
        let k_max = 300_000u64;
        let s: f64 = (1..=k_max).rev().map(|k| chi.eval(k).re / (k as f64 * k as f64)).sum();
        let expected = (1.0 - 1.0 / 9.0) * core::f64::consts::PI.powi(2) / 6.0;
        // density 2/3 of coprime k; midpoint tail estimate, K divisible by 3
        let tail = (2.0 / 3.0) / (k_max as f64 + 0.5);
        assert!((s + tail - expected).abs() < 1e-8);
    }
}
