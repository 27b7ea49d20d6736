//! Eigendecomposition, threshold sums, Hadamard subspaces and spectral verifiers.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphs::Graph;
use crate::report::{InequalityReport, Record};

/// Full eigendecomposition, eigenvalues descending, eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub source: String,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdSummary {
    #[serde(rename = "T")]
    pub t: f64,
    pub s_t: f64,
    pub n_t: usize,
}

#[derive(Debug, Clone)]
pub struct Subspace {
    /// n × dim, orthonormal columns
    pub basis: DMatrix<f64>,
    pub rank_tol: f64,
}

/// Measured deviations from the adjacency-spectrum identities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumCheck {
    /// max_i ‖A vᵢ − λᵢ vᵢ‖ / (1 + |λᵢ|)
    pub residual: f64,
    /// max |VᵀV − I|
    pub orthogonality: f64,
    pub trace: f64,
    /// |Σλ² − 2m|
    pub second_moment_error: f64,
}

impl SpectrumCheck {
    pub fn within(&self, tol: f64, m: usize) -> bool {
        let scale = 1.0 + 2.0 * m as f64;
        self.residual <= tol
            && self.orthogonality <= tol
            && self.trace.abs() <= tol * scale
            && self.second_moment_error <= tol * scale
    }
}

pub fn default_tol(n: usize) -> f64 {
    if n <= 500 {
        1e-9
    } else {
        1e-7
    }
}

fn included(lambda: f64, t: f64, tol: f64) -> bool {
    lambda >= t - tol * (1.0 + t.abs())
}

pub const INCLUSION_RULE: &str = "lambda >= T - tol*(1+|T|)";

/// Eigendecomposition of a symmetric matrix, sorted descending with each
/// eigenvector's first non-negligible coordinate positive.
pub fn symmetric_eigen(m: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 1000 * n.max(10)).ok_or(Error::Numerical {
        message: "symmetric eigensolver did not converge".into(),
        residual: f64::NAN,
    })?;
    let mut cols: Vec<(f64, DVector<f64>)> = (0..n)
        .map(|i| {
            let mut v = eig.eigenvectors.column(i).into_owned();
            if let Some(first) = v.iter().find(|x| x.abs() > 1e-10) {
                if *first < 0.0 {
                    v.neg_mut();
                }
            }
            (eig.eigenvalues[i], v)
        })
        .collect();
    cols.sort_by(|a, b| b.0.total_cmp(&a.0));
    let values: Vec<f64> = cols.iter().map(|c| c.0).collect();
    // inside clusters of numerically equal eigenvalues order vectors lexicographically
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (cols[end - 1].0 - cols[end].0).abs() <= 1e-9 * (1.0 + cols[start].0.abs()) {
            end += 1;
        }
        cols[start..end].sort_by(|a, b| lex_desc(&a.1, &b.1));
        start = end;
    }
    // values stay sorted; within a cluster they differ by less than the cluster width
    let vectors = DMatrix::from_columns(&cols.iter().map(|c| c.1.clone()).collect::<Vec<_>>());
    Ok((values, vectors))
}

fn lex_desc(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if (x - y).abs() > 1e-12 {
            return y.total_cmp(x);
        }
    }
    Ordering::Equal
}

/// Eigenvalues of a symmetric matrix, descending.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut vals: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    symmetric_eigenvalues(m.clone()).last().copied().unwrap_or(0.0)
}

pub fn spectrum(g: &Graph, tol: Option<f64>) -> Result<Spectrum> {
    if g.n() == 0 {
        return Err(invalid("spectrum needs n >= 1"));
    }
    let tol = tol.unwrap_or_else(|| default_tol(g.n()));
    let (values, vectors) = symmetric_eigen(g.adjacency())?;
    let s = Spectrum { values, vectors, source: g.fingerprint(), tol };
    let residual = s.residual(g);
    if residual > tol {
        return Err(Error::Numerical {
            message: format!("eigenpair residual exceeds tol {tol:e}"),
            residual,
        });
    }
    Ok(s)
}

/// Eigenvalues only, descending.
pub fn eigenvalues(g: &Graph) -> Vec<f64> {
    symmetric_eigenvalues(g.adjacency())
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn lambda_min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn lambda_max(&self) -> f64 {
        self.values[0]
    }

    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.vectors.column(i).into_owned()
    }

    fn residual(&self, g: &Graph) -> f64 {
        let a = g.adjacency();
        let av = &a * &self.vectors;
        (0..self.n())
            .map(|i| {
                let r = av.column(i) - self.vectors.column(i) * self.values[i];
                r.norm() / (1.0 + self.values[i].abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn check(&self, g: &Graph) -> SpectrumCheck {
        let gram = self.vectors.transpose() * &self.vectors;
        let n = self.n();
        let orthogonality = (gram - DMatrix::identity(n, n)).amax();
        SpectrumCheck {
            residual: self.residual(g),
            orthogonality,
            trace: self.values.iter().sum(),
            second_moment_error: (self.values.iter().map(|l| l * l).sum::<f64>() - 2.0 * g.m() as f64)
                .abs(),
        }
    }

    /// Indices of eigenvalues counted at threshold `t`.
    pub fn indices_at_least(&self, t: f64) -> Vec<usize> {
        (0..self.n()).filter(|&i| included(self.values[i], t, self.tol)).collect()
    }

    /// Σ_{λᵢ ≥ T} λᵢ² vᵢ(k)² style weights: Σ_{i∈I} λᵢ vᵢ(k)² per coordinate.
    fn weighted_squares(&self, idx: &[usize], weight: impl Fn(f64) -> f64) -> DVector<f64> {
        let mut out = DVector::zeros(self.n());
        for &i in idx {
            let w = weight(self.values[i]);
            for k in 0..self.n() {
                let x = self.vectors[(k, i)];
                out[k] += w * x * x;
            }
        }
        out
    }
}

pub fn threshold_summary(s: &Spectrum, t: f64) -> ThresholdSummary {
    let idx = s.indices_at_least(t);
    ThresholdSummary {
        t,
        s_t: idx.iter().map(|&i| s.values[i]).sum(),
        n_t: idx.len(),
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { basis: DMatrix::zeros(n, 0), rank_tol: 0.0 }
    }

    pub fn full(n: usize) -> Self {
        Subspace { basis: DMatrix::identity(n, n), rank_tol: 0.0 }
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Orthonormal basis of the span of the given columns, dropping singular
    /// values at or below `rank_tol`.
    pub fn span(generators: &DMatrix<f64>, rank_tol: f64) -> Self {
        let n = generators.nrows();
        if generators.ncols() == 0 || n == 0 {
            return Subspace { rank_tol, ..Subspace::zero(n) };
        }
        let svd = generators.clone().svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > rank_tol)
            .collect();
        let cols: Vec<DVector<f64>> = keep.iter().map(|&i| u.column(i).into_owned()).collect();
        let basis = if cols.is_empty() { DMatrix::zeros(n, 0) } else { DMatrix::from_columns(&cols) };
        Subspace { basis, rank_tol }
    }
}

/// W = span{vᵢ∘vⱼ : λᵢ, λⱼ ≥ T}.
pub fn subspace_from_hadamard(s: &Spectrum, t: f64, rank_tol: Option<f64>) -> Subspace {
    let n = s.n();
    let idx = s.indices_at_least(t);
    let mut gens = Vec::with_capacity(idx.len() * (idx.len() + 1) / 2);
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a..] {
            gens.push(s.vectors.column(i).component_mul(&s.vectors.column(j)));
        }
    }
    if gens.is_empty() {
        return Subspace::zero(n);
    }
    let max_norm = gens.iter().map(|g| g.norm()).fold(0.0, f64::max);
    let rank_tol = rank_tol.unwrap_or(s.tol * (n as f64).sqrt() * max_norm);
    Subspace::span(&DMatrix::from_columns(&gens), rank_tol)
}

/// trace(Π_W M Π_W) as Σ wᵢᵀ M wᵢ.
pub fn w_trace(m: &DMatrix<f64>, w: &Subspace) -> Result<f64> {
    if m.nrows() != m.ncols() || m.nrows() != w.ambient() {
        return Err(invalid(format!(
            "matrix is {}x{} but subspace lives in dimension {}",
            m.nrows(),
            m.ncols(),
            w.ambient()
        )));
    }
    let mw = m * &w.basis;
    Ok((0..w.dim()).map(|i| w.basis.column(i).dot(&mw.column(i))).sum())
}

/// Σ_{λᵢ,λⱼ ≥ T} λᵢλⱼ ‖vᵢ∘vⱼ‖², via Σ_k (Σᵢ λᵢ vᵢ(k)²)².
pub fn hadamard_sum(s: &Spectrum, t: f64) -> f64 {
    let idx = s.indices_at_least(t);
    s.weighted_squares(&idx, |l| l).iter().map(|x| x * x).sum()
}

fn main_record(g: &Graph, s: &Spectrum, a: &DMatrix<f64>, t: f64) -> Record {
    let n = g.n() as f64;
    let k = t * t / (2.0 * n);
    let st = threshold_summary(s, t);
    let sk = threshold_summary(s, k);
    let mut rec = Record::compare(4.0 * n * sk.s_t, st.s_t * st.s_t, s.tol)
        .at_t(t)
        .diag("K", k)
        .diag("S_T", st.s_t)
        .diag("N_T", st.n_t as f64)
        .diag("S_K", sk.s_t);
    if t > 0.0 && st.n_t > 0 {
        let w = subspace_from_hadamard(s, t, None);
        let tw = w_trace(a, &w).expect("dimensions agree");
        rec = rec.diag("dim_W", w.dim() as f64);
        rec.checks.push(
            Record::compare(sk.s_t + k * w.dim() as f64, tw, s.tol)
                .labelled("trace_compression")
                .diag("trace_W_A", tw),
        );
        rec.checks.push(
            Record::compare(hadamard_sum(s, t), st.s_t * st.s_t / n, s.tol).labelled("hadamard_sum"),
        );
    }
    rec
}

/// 4n·S_{T²/2n} ≥ S_T² at every T ≥ 2|λₙ|√n; smaller T are skipped.
pub fn verify_main_inequality(g: &Graph, s: &Spectrum, thresholds: &[f64]) -> InequalityReport {
    let n = g.n() as f64;
    let floor = 2.0 * s.lambda_min().abs() * n.sqrt();
    let a = g.adjacency();
    let records = thresholds
        .iter()
        .map(|&t| {
            if t < 0.0 || !included(t, floor, s.tol) {
                Record::skipped(format!("T below admissible floor {floor}")).at_t(t)
            } else {
                main_record(g, s, &a, t)
            }
        })
        .collect();
    let mut rep = InequalityReport::new("main_inequality", s.tol, records);
    rep.inclusion_rule = Some(INCLUSION_RULE.into());
    rep
}

/// The small-surplus variant: thresholds T ≥ C·n^{1−1/24+γ/4}, with
/// Q = surp* upper bound (default |λₙ|·n).
pub fn verify_maxcut_main_inequality(
    g: &Graph,
    s: &Spectrum,
    gamma: f64,
    c: f64,
    q: Option<f64>,
    thresholds: &[f64],
) -> InequalityReport {
    let n = g.n() as f64;
    let q = q.unwrap_or(s.lambda_min().abs() * n);
    let floor = c * n.powf(1.0 - 1.0 / 24.0 + gamma / 4.0);
    let hypothesis = q <= n.powf(1.0 + gamma);
    let neg: Vec<usize> = (0..s.n()).filter(|&i| s.values[i] < 0.0).collect();
    let e_diag = s.weighted_squares(&neg, f64::abs);
    let a = g.adjacency();
    let records = thresholds
        .iter()
        .map(|&t| {
            if t <= 0.0 || !included(t, floor, s.tol) {
                return Record::skipped(format!("T below admissible floor {floor}")).at_t(t);
            }
            let beta = q.powf(0.25) * n.powf(7.0 / 8.0) / t;
            let j = e_diag.iter().filter(|&&x| x > beta).count();
            let mut rec = main_record(g, s, &a, t)
                .diag("Q", q)
                .diag("beta", beta)
                .diag("J", j as f64)
                .diag("hypothesis_surp_star_bound", if hypothesis { 1.0 } else { 0.0 });
            let j_cap = if beta > 0.0 { q / beta } else { 0.0 };
            rec.checks.push(Record::compare(j_cap, j as f64, s.tol).labelled("J_bound"));
            if !hypothesis {
                rec = rec.with_note("surp* bound Q exceeds n^(1+gamma); lemma hypothesis not met");
            }
            rec
        })
        .collect();
    let mut rep = InequalityReport::new("maxcut_main_inequality", s.tol, records);
    rep.inclusion_rule = Some(INCLUSION_RULE.into());
    rep
}

/// Σ_{0≤λᵢ≤κn} λᵢ² ≤ 50κ^{1−γ/q}n², judged only where the hypotheses
/// Σ_{λ>0} λ ≤ n^{1+γ} and the recursion at every T ≥ 2n^{1−q} hold.
pub fn tail_second_moment_check(s: &Spectrum, gamma: f64, q: f64, kappas: &[f64]) -> Result<InequalityReport> {
    if !(0.0 < gamma && gamma < q && q < 1.0) {
        return Err(invalid(format!("need 0 < gamma < q < 1, got gamma={gamma}, q={q}")));
    }
    let n = s.n() as f64;
    let positive: f64 = s.values.iter().filter(|&&l| l > 0.0).sum();
    let sum_ok = positive <= n.powf(1.0 + gamma) * (1.0 + s.tol);
    // S_T is constant between eigenvalues while S_{T²/2n} decreases in T,
    // so the recursion only needs checking at eigenvalues above the floor.
    let t0 = 2.0 * n.powf(1.0 - q);
    let mut worst = f64::INFINITY;
    let mut recursion_ok = true;
    for t in std::iter::once(t0).chain(s.values.iter().copied().filter(|&l| l >= t0)) {
        let st = threshold_summary(s, t).s_t;
        let sk = threshold_summary(s, t * t / (2.0 * n)).s_t;
        let lhs = 4.0 * n * sk;
        let rhs = st * st;
        worst = worst.min(lhs - rhs);
        recursion_ok &= crate::report::holds(lhs, rhs, s.tol);
    }
    let records = kappas
        .iter()
        .map(|&kappa| {
            let tail: f64 = s
                .values
                .iter()
                .filter(|&&l| l >= 0.0 && l <= kappa * n + s.tol * (1.0 + kappa * n))
                .map(|l| l * l)
                .sum();
            let bound = 50.0 * kappa.powf(1.0 - gamma / q) * n * n;
            let mut rec = Record::compare(bound, tail, s.tol)
                .at_kappa(kappa)
                .diag("positive_sum", positive)
                .diag("positive_sum_cap", n.powf(1.0 + gamma))
                .diag("recursion_min_slack", worst);
            if !(sum_ok && recursion_ok) {
                rec.verdict = crate::report::Verdict::NotApplicable;
                rec.note = Some(
                    match (sum_ok, recursion_ok) {
                        (false, false) => "positive-sum and recursion hypotheses fail",
                        (false, true) => "positive-sum hypothesis fails",
                        _ => "recursion hypothesis fails",
                    }
                    .into(),
                );
            }
            rec
        })
        .collect();
    Ok(InequalityReport::new("tail_second_moment", s.tol, records))
}

/// Eigenvector sup-norm bound, Perron-entry lower bound, Hoffman bound
/// (regular graphs, exact α for n ≤ 30) and the complement Weyl chain.
pub fn eigen_bound_report(g: &Graph, s: &Spectrum) -> Result<InequalityReport> {
    let n = g.n();
    let nf = n as f64;
    let tol = s.tol;
    let mut records = Vec::new();

    let mut smooth: Option<Record> = None;
    for i in 0..n {
        let l = s.values[i].abs();
        if l <= tol {
            continue;
        }
        let sup = s.vectors.column(i).amax();
        let rec = Record::compare(nf.sqrt() / l, sup, tol).diag("index", i as f64);
        if smooth.as_ref().is_none_or(|r| rec.slack < r.slack) {
            smooth = Some(rec);
        }
    }
    records.push(
        smooth
            .unwrap_or_else(|| Record::compare(0.0, 0.0, tol).with_note("no nonzero eigenvalues"))
            .labelled("smooth_eigenvectors"),
    );

    let comp = g.complement();
    let comp_density = comp.density();
    if comp_density <= 0.1 && n > 10 {
        let dbar = comp.max_degree() as f64;
        let v1min = s.vectors.column(0).min();
        records.push(
            Record::compare(v1min, (1.0 - 3.0 * dbar / nf) / nf.sqrt(), tol)
                .labelled("max_entry")
                .diag("complement_max_degree", dbar),
        );
    } else {
        records.push(Record {
            verdict: crate::report::Verdict::NotApplicable,
            ..Record::compare(0.0, 0.0, tol)
                .labelled("max_entry")
                .with_note("needs complement density <= 1/10 and n > 10")
        });
    }

    let degs = g.degrees();
    let regular = degs.windows(2).all(|w| w[0] == w[1]);
    match (regular && n > 0, g.independence_number_small().filter(|_| n <= 30)) {
        (true, Some(alpha)) => {
            let d = degs[0] as f64;
            let ln = s.lambda_min().abs();
            let bound = if ln + d > 0.0 { nf * ln / (ln + d) } else { nf };
            records.push(Record::compare(bound, alpha as f64, tol).labelled("hoffman"));
        }
        _ => records.push(Record {
            verdict: crate::report::Verdict::NotApplicable,
            ..Record::compare(0.0, 0.0, tol)
                .labelled("hoffman")
                .with_note("needs a regular graph with n <= 30")
        }),
    }

    if n >= 2 {
        let mu = eigenvalues(&comp);
        let mut weyl: Option<Record> = None;
        for i in 1..n {
            // 1 + μ_{i+1} ≤ −λ_{n+1−i}, 1-indexed
            let rec = Record::compare(-s.values[n - i], 1.0 + mu[i], tol).diag("i", i as f64);
            if weyl.as_ref().is_none_or(|r| rec.slack < r.slack) {
                weyl = Some(rec);
            }
        }
        records.push(weyl.unwrap().labelled("weyl_complement"));
    }

    Ok(InequalityReport::new("eigen_bounds", tol, records))
}
