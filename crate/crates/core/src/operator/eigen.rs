//! Cyclic Jacobi rotations for real symmetric and complex Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

const MAX_SWEEPS: usize = 100;

/// Which eigenvector information to accumulate alongside the rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vectors {
    None,
    /// Only the first component of every eigenvector (Golub–Welsch weights).
    FirstRow,
    Full,
}

#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// First components of the eigenvectors, aligned with `values`.
    pub first_row: Vec<f64>,
    /// Row-major `n × n`; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<f64>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm on exit.
    pub off_norm: f64,
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Diagonalizes the symmetric row-major matrix `a` (`n × n`) until the
/// off-diagonal Frobenius norm falls below `tol · max(1, ‖a‖_F)`.
pub fn symmetric_eigen(mut a: Vec<f64>, n: usize, want: Vectors, tol: f64) -> SymmetricEigen {
    assert_eq!(a.len(), n * n, "matrix storage does not match n");
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frob.max(1.0);

    let mut v = if want == Vectors::Full {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    } else {
        Vec::new()
    };
    let mut first: Vec<f64> = if want == Vectors::FirstRow {
        let mut f = vec![0.0; n];
        if n > 0 {
            f[0] = 1.0;
        }
        f
    } else {
        Vec::new()
    };

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a, n);
    while off > threshold && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let gp = g - s * (h + g * tau);
                    let hq = h + s * (g - h * tau);
                    a[r * n + p] = gp;
                    a[p * n + r] = gp;
                    a[r * n + q] = hq;
                    a[q * n + r] = hq;
                }
                match want {
                    Vectors::Full => {
                        for r in 0..n {
                            let g = v[r * n + p];
                            let h = v[r * n + q];
                            v[r * n + p] = g - s * (h + g * tau);
                            v[r * n + q] = h + s * (g - h * tau);
                        }
                    }
                    Vectors::FirstRow => {
                        let g = first[p];
                        let h = first[q];
                        first[p] = g - s * (h + g * tau);
                        first[q] = h + s * (g - h * tau);
                    }
                    Vectors::None => {}
                }
            }
        }
        off = off_diagonal_norm(&a, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let first_row = match want {
        Vectors::FirstRow => order.iter().map(|&i| first[i]).collect(),
        Vectors::Full => order.iter().map(|&i| v[i]).collect(),
        Vectors::None => Vec::new(),
    };
    let vectors = if want == Vectors::Full {
        let mut sorted = vec![0.0; n * n];
        for (jnew, &jold) in order.iter().enumerate() {
            for r in 0..n {
                sorted[r * n + jnew] = v[r * n + jold];
            }
        }
        sorted
    } else {
        Vec::new()
    };
    SymmetricEigen { values, first_row, vectors, sweeps, off_norm: off }
}

/// Eigenvalues (ascending) of a Hermitian matrix via the real symmetric
/// embedding `[[Re A, −Im A], [Im A, Re A]]`, whose spectrum is that of `A`
/// with every eigenvalue doubled.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize, tol: f64) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let is_real = a.iter().all(|z| z.im == 0.0);
    if is_real {
        let re: Vec<f64> = a.iter().map(|z| z.re).collect();
        return symmetric_eigen(re, n, Vectors::None, tol).values;
    }
    let m = 2 * n;
    let mut emb = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            emb[i * m + j] = z.re;
            emb[(i + n) * m + (j + n)] = z.re;
            emb[i * m + (j + n)] = -z.im;
            emb[(i + n) * m + j] = z.im;
        }
    }
    let all = symmetric_eigen(emb, m, Vectors::None, tol).values;
    all.into_iter().step_by(2).collect()
}
