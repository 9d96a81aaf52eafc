//! Truncated Gram operators on ℓ²: Schur constants, norms, positivity,
//! compactness proxies and the Bessel / Riesz–Fischer checks.

pub mod eigen;

use crate::error::{invalid, Error, Result};
use crate::spaces::{coefficients, norm_sq, FamilyKind, GramMode, Provenance, Space, TestFunction};
use crate::sum::{Kahan, KahanComplex};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

pub use eigen::{hermitian_eigenvalues, symmetric_eigen, SymmetricEigen, Vectors};

pub const MAX_GRAM_N: usize = 256;
pub const MAX_EIGEN_N: usize = 128;
pub const HERMITIAN_TOL: f64 = 1e-8;
pub const POWER_MAX_ITER: usize = 10_000;

/// Outcome of an inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Advisory,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Advisory => "advisory",
            Status::Fail => "fail",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Status::Pass),
            "advisory" => Some(Status::Advisory),
            "fail" => Some(Status::Fail),
            _ => None,
        }
    }

    /// Combined status: any failure fails.
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }
}

/// `A^{(N)}`, row-major, 0-based storage of the 1-based entries `a_{m,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    pub n: usize,
    pub entries: Vec<Complex64>,
    pub provenance: Vec<Provenance>,
    /// Largest `|closed − numeric|` when built in mode `both`.
    pub max_discrepancy: Option<f64>,
    /// Largest `|a_{m,n} − conj a_{n,m}|` before symmetrization.
    pub hermitian_defect: f64,
}

impl GramMatrix {
    /// Wraps explicit entries; they must be Hermitian within [`HERMITIAN_TOL`].
    pub fn from_entries(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n || n == 0 {
            return Err(invalid(alloc::format!("{} entries do not form a nonempty {n}×{n} matrix", entries.len())));
        }
        let provenance = vec![Provenance::Closed; n * n];
        let mut g = Self { n, entries, provenance, max_discrepancy: None, hermitian_defect: 0.0 };
        g.symmetrize()?;
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            e[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries: e, provenance: vec![Provenance::Closed; n * n], max_discrepancy: None, hermitian_defect: 0.0 }
    }

    /// `a_{m,n}` with 1-based indices.
    #[inline]
    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[(m - 1) * self.n + (n - 1)]
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> GramMatrix {
        let k = k.min(self.n);
        let mut entries = Vec::with_capacity(k * k);
        let mut provenance = Vec::with_capacity(k * k);
        for i in 0..k {
            entries.extend_from_slice(&self.entries[i * self.n..i * self.n + k]);
            provenance.extend_from_slice(&self.provenance[i * self.n..i * self.n + k]);
        }
        GramMatrix { n: k, entries, provenance, max_discrepancy: self.max_discrepancy, hermitian_defect: self.hermitian_defect }
    }

    /// `ℓ¹` norms of the rows.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| abs_sum(self.entries[i * self.n..(i + 1) * self.n].iter().copied())).collect()
    }

    /// `ℓ¹` norms of the columns.
    pub fn col_sums(&self) -> Vec<f64> {
        (0..self.n).map(|j| abs_sum((0..self.n).map(|i| self.entries[i * self.n + j]))).collect()
    }

    /// `A x`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                let mut acc = KahanComplex::new();
                for j in 0..self.n {
                    acc.add(self.entries[i * self.n + j] * x[j]);
                }
                acc.value()
            })
            .collect()
    }

    /// `⟨x, A x⟩ = Σ x̄_m a_{m,n} x_n`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        let ax = self.apply(x);
        let mut acc = KahanComplex::new();
        for (xi, yi) in x.iter().zip(&ax) {
            acc.add(xi.conj() * yi);
        }
        acc.value()
    }

    fn symmetrize(&mut self) -> Result<()> {
        let n = self.n;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let a = self.entries[i * n + j];
                let b = self.entries[j * n + i];
                defect = defect.max((a - b.conj()).norm());
                let avg = if i == j { Complex64::new(a.re, 0.0) } else { (a + b.conj()) * 0.5 };
                self.entries[i * n + j] = avg;
                self.entries[j * n + i] = avg.conj();
            }
        }
        self.hermitian_defect = defect;
        if defect > HERMITIAN_TOL {
            return Err(Error::NumericalInconsistency { what: String::from("Gram matrix is not Hermitian"), discrepancy: defect });
        }
        Ok(())
    }
}

fn abs_sum<I: Iterator<Item = Complex64>>(it: I) -> f64 {
    let mut k = Kahan::new();
    for z in it {
        k.add(z.norm());
    }
    k.value()
}

/// Builds `A^{(N)}`; numeric entries share one node set sized for the widest frequency gap.
pub fn build_gram(space: &Space, n: usize, mode: GramMode) -> Result<GramMatrix> {
    if n == 0 || n > MAX_GRAM_N {
        return Err(invalid(alloc::format!("Gram size must be in 1..={MAX_GRAM_N}, got {n}")));
    }
    let lam = space.family.schedule.values(n)?;
    let closed = if mode != GramMode::Numeric {
        // closed kernels depend on λ_m − λ_n (λ_m + λ_n for Dirichlet families) only
        let additive = space.family.kind == FamilyKind::Dirichlet;
        let mut cache: BTreeMap<u64, Complex64> = BTreeMap::new();
        let mut c = Vec::with_capacity(n * n);
        for &lm in &lam {
            for &ln in &lam {
                let key = if additive { lm + ln } else { lm - ln }.to_bits();
                let v = match cache.get(&key) {
                    Some(v) => *v,
                    None => {
                        let v = space.gram_closed(lm, ln)?;
                        cache.insert(key, v);
                        v
                    }
                };
                c.push(v);
            }
        }
        Some(c)
    } else {
        None
    };
    let numeric = if mode != GramMode::Closed { Some(numeric_gram(space, &lam)?) } else { None };
    let (entries, provenance, max_discrepancy) = match (closed, numeric) {
        (Some(c), None) => (c, vec![Provenance::Closed; n * n], None),
        (None, Some(v)) => (v, vec![Provenance::Numeric; n * n], None),
        (Some(c), Some(v)) => {
            let prov: Vec<Provenance> =
                c.iter().zip(&v).map(|(a, b)| Provenance::Both { discrepancy: (a - b).norm() }).collect();
            let worst = prov.iter().filter_map(|p| p.discrepancy()).fold(0.0, f64::max);
            (c, prov, Some(worst))
        }
        (None, None) => unreachable!(),
    };
    let mut g = GramMatrix { n, entries, provenance, max_discrepancy, hermitian_defect: 0.0 };
    g.symmetrize()?;
    Ok(g)
}

fn numeric_gram(space: &Space, lam: &[f64]) -> Result<Vec<Complex64>> {
    let n = lam.len();
    let fam = &space.family;
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    if fam.kind == FamilyKind::Dirichlet {
        // |φ_m φ̄_n| = k^{−(λ_m+λ_n)}, so each entry needs only its own prefix
        let lmin = lam.iter().fold(f64::INFINITY, |a, &l| a.min(l)).max(0.0);
        let nodes = space.measure.nodes(0.0, 2.0 * lmin)?;
        let ends: Vec<usize> = lam.iter().map(|&l| space.measure.discrete_prefix(l.max(0.0) + lmin).0.min(nodes.points.len())).collect();
        let phis: Vec<Vec<f64>> =
            lam.iter().zip(&ends).map(|(&l, &e)| nodes.points[..e].iter().map(|p| fam.phi_at(l, p).re).collect()).collect();
        for i in 0..n {
            for j in i..n {
                let end = space.measure.discrete_prefix((lam[i] + lam[j]).max(0.0)).0.min(ends[i]).min(ends[j]);
                let mut acc = Kahan::new();
                for k in 0..end {
                    acc.add(phis[i][k] * phis[j][k] * nodes.weights[k]);
                }
                out[i * n + j] = Complex64::new(acc.value(), 0.0);
                out[j * n + i] = out[i * n + j];
            }
        }
        return Ok(out);
    }
    let span = lam.iter().fold(f64::NEG_INFINITY, |a, &l| a.max(l)) - lam.iter().fold(f64::INFINITY, |a, &l| a.min(l));
    let nodes = space.measure.nodes(span.max(0.0), 0.0)?;
    // φ_n at every node, then a_{m,n} = Σ w φ_m φ̄_n
    let phis: Vec<Vec<Complex64>> = lam.iter().map(|&l| nodes.points.iter().map(|p| fam.phi_at(l, p)).collect()).collect();
    for i in 0..n {
        for j in i..n {
            let mut acc = KahanComplex::new();
            for (k, w) in nodes.weights.iter().enumerate() {
                acc.add(phis[i][k] * phis[j][k].conj() * *w);
            }
            let v = acc.value();
            out[i * n + j] = v;
            out[j * n + i] = v.conj();
        }
    }
    Ok(out)
}

/// Schur bound `C = sup_m Σ_n |a_{m,n}|` for a truncation, optionally certified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchurEstimate {
    pub finite_sup: f64,
    pub tail_bound: f64,
    pub certified: bool,
    /// 1-based row attaining `finite_sup`.
    pub achieved_at_row: usize,
}

impl SchurEstimate {
    /// `finite_sup + tail_bound`, the constant used on inequality right-hand sides.
    pub fn upper(&self) -> f64 {
        self.finite_sup + self.tail_bound
    }
}

/// `certified_upper` is an analytic bound on the row sums of the infinite matrix;
/// the tail is whatever it adds on top of the finite sup.
pub fn schur_constant(gram: &GramMatrix, certified_upper: Option<f64>) -> SchurEstimate {
    let rows = gram.row_sums();
    let (mut best, mut at) = (f64::NEG_INFINITY, 1);
    for (i, &r) in rows.iter().enumerate() {
        if r > best {
            best = r;
            at = i + 1;
        }
    }
    match certified_upper {
        Some(u) if u.is_finite() => {
            SchurEstimate { finite_sup: best, tail_bound: (u - best).max(0.0), certified: true, achieved_at_row: at }
        }
        _ => SchurEstimate { finite_sup: best, tail_bound: 0.0, certified: false, achieved_at_row: at },
    }
}

/// `√(max row ℓ¹ · max column ℓ¹)`, between the operator norm and the Schur constant.
pub fn schur_geometric_mean(gram: &GramMatrix) -> f64 {
    let r = gram.row_sums().into_iter().fold(0.0, f64::max);
    let c = gram.col_sums().into_iter().fold(0.0, f64::max);
    (r * c).sqrt()
}

fn normalize(x: &mut [Complex64]) -> f64 {
    let nrm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nrm > 0.0 {
        for z in x.iter_mut() {
            *z /= nrm;
        }
    }
    nrm
}

fn power_from(gram: &GramMatrix, mut x: Vec<Complex64>, tol: f64) -> (f64, bool) {
    normalize(&mut x);
    let mut est = 0.0f64;
    for _ in 0..POWER_MAX_ITER {
        let mut y = gram.apply(&x);
        let next = normalize(&mut y);
        if next == 0.0 {
            return (0.0, true);
        }
        let done = (next - est).abs() <= tol * next;
        est = next;
        x = y;
        if done {
            return (est, true);
        }
    }
    (est, false)
}

/// Largest `|eigenvalue|` by power iteration from fixed start vectors.
pub fn operator_norm(gram: &GramMatrix, tol: f64) -> Result<f64> {
    let n = gram.n;
    let ones = vec![Complex64::new(1.0, 0.0); n];
    // second start vector breaks the symmetry of the all-ones start
    let alt: Vec<Complex64> = (0..n).map(|k| Complex64::new(1.0 / (k as f64 + 1.0), if k % 2 == 0 { 0.5 } else { -0.5 })).collect();
    let (a, ok_a) = power_from(gram, ones, tol);
    let (b, ok_b) = power_from(gram, alt, tol);
    if !(ok_a || ok_b) {
        return Err(Error::ToleranceNotMet { what: String::from("power iteration"), achieved: a.max(b) });
    }
    Ok(a.max(b))
}

/// Smallest eigenvalue via cyclic Jacobi rotations.
pub fn min_eigenvalue(gram: &GramMatrix) -> Result<f64> {
    if gram.n > MAX_EIGEN_N {
        return Err(invalid(alloc::format!("min_eigenvalue supports N ≤ {MAX_EIGEN_N}, got {}", gram.n)));
    }
    let v = hermitian_eigenvalues(&gram.entries, gram.n, 1e-12);
    Ok(v.first().copied().unwrap_or(f64::NAN))
}

/// Inputs to the numerical budget of an inequality check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    /// Per-evaluation quadrature tolerance entering `10·tol·terms`.
    pub tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BesselReport {
    pub n: usize,
    pub lhs_partial: f64,
    pub rhs: f64,
    pub margin: f64,
    pub c_used: f64,
    pub norm_sq: f64,
    pub budget: f64,
    /// `|(f, φ_n)|²` for `n = 1..=N`.
    pub terms: Vec<f64>,
    /// Largest closed-vs-quadrature coefficient discrepancy, when a closed form exists.
    pub max_coefficient_discrepancy: Option<f64>,
    pub status: Status,
}

impl BesselReport {
    /// `Σ_{n ≤ k} |(f, φ_n)|²` for `k ≤ N`.
    pub fn partial(&self, k: usize) -> f64 {
        let mut acc = Kahan::new();
        for t in &self.terms[..k.min(self.terms.len())] {
            acc.add(*t);
        }
        acc.value()
    }
}

/// Coefficients are computed on a node set sized for at least this many
/// frequencies, so reports at different `N ≤` this value share every term.
pub const COEFFICIENT_RULE_MIN_N: usize = 64;

/// `Σ_{n≤N} |(f, φ_n)|² ≤ C ‖f‖²` with budget `10·tol·N + tails`.
pub fn bessel_verify(space: &Space, f: &TestFunction, n: usize, schur: &SchurEstimate, opts: &CheckOptions) -> Result<BesselReport> {
    if n == 0 {
        return Err(invalid("N must be positive"));
    }
    let rule_n = n.max(COEFFICIENT_RULE_MIN_N).min(space.family.schedule.len_limit().unwrap_or(usize::MAX));
    let coeffs = coefficients(space, f, rule_n.max(n))?;
    let nrm = norm_sq(space, f)?;
    let mut terms = Vec::with_capacity(n);
    let mut coef_tail = 0.0;
    let mut worst: Option<f64> = None;
    for c in &coeffs[..n] {
        let v = c.value();
        terms.push(v.norm_sqr());
        if c.closed.is_none() {
            coef_tail += c.tail_bound * (2.0 * v.norm() + c.tail_bound);
        }
        if let Some(d) = c.discrepancy {
            worst = Some(worst.map_or(d, |w: f64| w.max(d)));
        }
    }
    let lhs = {
        let mut k = Kahan::new();
        terms.iter().for_each(|t| k.add(*t));
        k.value()
    };
    let c_used = schur.upper();
    let norm_tail = if f.norm_sq.is_some() { 0.0 } else { nrm.tail_bound };
    let rhs = c_used * nrm.value();
    let budget = 10.0 * opts.tol * n as f64 + coef_tail + c_used * norm_tail;
    let margin = rhs - lhs;
    let status = match (margin >= -budget, schur.certified) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Advisory,
    };
    Ok(BesselReport {
        n,
        lhs_partial: lhs,
        rhs,
        margin,
        c_used,
        norm_sq: nrm.value(),
        budget,
        terms,
        max_coefficient_discrepancy: worst,
        status,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszFischerReport {
    /// Construction truncation of `s_N = Σ_{k≤N} x_k φ_k`.
    pub n: usize,
    /// Test truncation.
    pub m: usize,
    pub residual: f64,
    pub bound: f64,
    pub x_norm_sq: f64,
    /// `‖s_{2N} − s_N‖²`.
    pub cauchy_defect: f64,
    /// `C·Σ_{N<j≤2N} |x_j|²`.
    pub cauchy_bound: f64,
    pub budget: f64,
    pub status: Status,
}

/// Riesz–Fischer at truncation: `(s_N, φ_n) = Σ_k x_k a_{k,n}` through the Gram matrix.
///
/// `gram` must cover `min(2N, len x)` indices for the Cauchy defect.
pub fn riesz_fischer(gram: &GramMatrix, x: &[Complex64], n: usize, m: usize, schur: &SchurEstimate, opts: &CheckOptions) -> Result<RieszFischerReport> {
    if m == 0 || m > n || n > x.len() {
        return Err(invalid(alloc::format!("need 1 ≤ M ≤ N ≤ len x, got M={m}, N={n}, len={}", x.len())));
    }
    let top = (2 * n).min(x.len());
    if gram.n < top {
        return Err(invalid(alloc::format!("Gram of size {} too small for index {top}", gram.n)));
    }
    let x_norm_sq: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    if !(x_norm_sq > 0.0) {
        return Err(invalid("x must be nonzero"));
    }
    let mut res = Kahan::new();
    for j in 1..=m {
        let mut s = KahanComplex::new();
        for k in 1..=n {
            s.add(x[k - 1] * gram.get(k, j));
        }
        res.add((x[j - 1] - s.value()).norm_sqr());
    }
    // ‖Σ_{N<k≤2N} x_k φ_k‖² = Σ x_j x̄_k a_{j,k}
    let mut defect = KahanComplex::new();
    let mut window = 0.0;
    for j in (n + 1)..=top {
        window += x[j - 1].norm_sqr();
        for k in (n + 1)..=top {
            defect.add(x[j - 1] * x[k - 1].conj() * gram.get(j, k));
        }
    }
    let c = schur.upper();
    let residual = res.value();
    let bound = c * c * x_norm_sq;
    let cauchy_defect = defect.value().re.max(0.0);
    let cauchy_bound = c * window;
    let budget = 10.0 * opts.tol * (n * m) as f64;
    let ok = residual <= bound + budget && cauchy_defect <= cauchy_bound + budget;
    let status = match (ok, schur.certified) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Advisory,
    };
    Ok(RieszFischerReport { n, m, residual, bound, x_norm_sq, cauchy_defect, cauchy_bound, budget, status })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompactnessDiagnostics {
    pub n_list: Vec<usize>,
    /// `Σ_{m,n≤N} |a_{m,n}|²`.
    pub hs_partial: Vec<f64>,
    /// `sup_{N<m≤4N} Σ_{n≤4N} |a_{m,n}|`.
    pub row_tail_sup: Vec<f64>,
    /// `sup_{n≤4N} Σ_{N<m≤4N} |a_{n,m}|`.
    pub col_tail_sup: Vec<f64>,
    /// Window multiple used for the `m > N` proxy.
    pub window: usize,
}

pub const COMPACTNESS_WINDOW: usize = 4;

/// The three compactness criteria evaluated on a `4·max(N)` truncation.
pub fn compactness_diagnostics(space: &Space, n_list: &[usize], mode: GramMode) -> Result<CompactnessDiagnostics> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) || n_list[0] == 0 {
        return Err(invalid("N list must be nonempty, positive and strictly ascending"));
    }
    let big = n_list[n_list.len() - 1] * COMPACTNESS_WINDOW;
    let gram = build_gram(space, big, mode)?;
    Ok(compactness_from_gram(&gram, n_list))
}

/// As [`compactness_diagnostics`] on a prebuilt matrix of size ≥ `4·max(N)`.
pub fn compactness_from_gram(gram: &GramMatrix, n_list: &[usize]) -> CompactnessDiagnostics {
    let mut hs = Vec::new();
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    for &nn in n_list {
        let w = (nn * COMPACTNESS_WINDOW).min(gram.n);
        let mut h = Kahan::new();
        for i in 1..=nn.min(gram.n) {
            for j in 1..=nn.min(gram.n) {
                h.add(gram.get(i, j).norm_sqr());
            }
        }
        hs.push(h.value());
        let r = ((nn + 1)..=w).map(|i| abs_sum((1..=w).map(|j| gram.get(i, j)))).fold(0.0, f64::max);
        let c = (1..=w).map(|i| abs_sum(((nn + 1)..=w).map(|j| gram.get(i, j)))).fold(0.0, f64::max);
        rows.push(r);
        cols.push(c);
    }
    CompactnessDiagnostics { n_list: n_list.to_vec(), hs_partial: hs, row_tail_sup: rows, col_tail_sup: cols, window: COMPACTNESS_WINDOW }
}
