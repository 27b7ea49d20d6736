//! MaxCut, surplus certificates, unbalanced cuts, bisection width and discrepancy.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphs::{pairs, Graph};
use crate::report::{holds, Record};
use crate::spectral::{min_eigenvalue, Spectrum};

pub const EXACT_CUTOFF: usize = 24;
pub const DISCREPANCY_CUTOFF: usize = 20;
pub const DEFAULT_C: f64 = 1.0 / 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutMethod {
    Exact,
    LocalSearch,
    Unbalanced,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    pub method: CutMethod,
    /// number of edges crossing the cut
    #[serde(rename = "value")]
    pub cut_size: usize,
    pub surplus: f64,
    pub partition: Vec<u8>,
    pub certificates: Vec<Record>,
    #[serde(skip)]
    m: usize,
}

impl CutReport {
    fn new(g: &Graph, method: CutMethod, partition: Vec<u8>) -> Self {
        let cut_size = cut_value(g, &partition);
        CutReport {
            method,
            cut_size,
            surplus: surplus_of(cut_size, g.m()),
            partition,
            certificates: Vec::new(),
            m: g.m(),
        }
    }

    /// 2·surplus = 2·cut − m, exact.
    pub fn surplus_halves(&self) -> i64 {
        2 * self.cut_size as i64 - self.m as i64
    }
}

fn surplus_of(cut: usize, m: usize) -> f64 {
    (2 * cut as i64 - m as i64) as f64 / 2.0
}

/// Number of edges whose endpoints lie on different sides.
pub fn cut_value(g: &Graph, partition: &[u8]) -> usize {
    g.edges().iter().filter(|&&(u, v)| partition[u] != partition[v]).count()
}

/// m/2 + (√(8m+1) − 1)/8
pub fn edwards_floor(m: usize) -> f64 {
    m as f64 / 2.0 + ((8.0 * m as f64 + 1.0).sqrt() - 1.0) / 8.0
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|u| g.neighbors(u).fold(0u32, |acc, v| acc | (1 << v)))
        .collect()
}

fn bits_to_partition(mask: u32, n: usize) -> Vec<u8> {
    (0..n).map(|v| ((mask >> v) & 1) as u8).collect()
}

pub fn maxcut_exact(g: &Graph) -> Result<CutReport> {
    maxcut_exact_with_cutoff(g, EXACT_CUTOFF)
}

/// Gray-code enumeration of the 2^{n−1} cuts with vertex 0 on side 0.
/// Among optimal cuts the lexicographically smallest side vector wins.
pub fn maxcut_exact_with_cutoff(g: &Graph, cutoff: usize) -> Result<CutReport> {
    let n = g.n();
    if n > cutoff.min(32) {
        return Err(Error::TooLarge { n, cutoff });
    }
    let adj = masks(g);
    let mut side = 0u32;
    let mut cut = 0i64;
    let mut best = (0i64, 0u32);
    let free = n.saturating_sub(1);
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize + 1;
        let same = (adj[v] & if side >> v & 1 == 1 { side } else { !side }).count_ones() as i64;
        let other = g.degree(v) as i64 - same;
        cut += same - other;
        side ^= 1 << v;
        if cut > best.0 || (cut == best.0 && side.reverse_bits() < best.1.reverse_bits()) {
            best = (cut, side);
        }
    }
    let mut rep = CutReport::new(g, CutMethod::Exact, bits_to_partition(best.1, n));
    debug_assert_eq!(rep.cut_size as i64, best.0);
    rep.certificates.push(
        Record::compare(rep.cut_size as f64, edwards_floor(g.m()), 1e-12).labelled("edwards_floor"),
    );
    Ok(rep)
}

/// 1-flip local search from a seeded random start.
pub fn maxcut_local_search(g: &Graph, seed: u64) -> CutReport {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part: Vec<u8> = (0..n).map(|_| rng.random_range(0..2u8)).collect();
    let mut improved = true;
    while improved {
        improved = false;
        for v in 0..n {
            let same = g.neighbors(v).filter(|&u| part[u] == part[v]).count();
            if 2 * same > g.degree(v) {
                part[v] ^= 1;
                improved = true;
            }
        }
    }
    let mut rep = CutReport::new(g, CutMethod::LocalSearch, part);
    rep.certificates
        .push(Record::compare(rep.cut_size as f64, g.m() as f64 / 2.0, 0.0).labelled("half_edges"));
    rep
}

#[derive(Debug, Clone, Serialize)]
pub struct SurplusBounds {
    /// Σ_{λ<0} |λ|
    pub lb_linear: f64,
    /// c/√(Δ*+1) · Σ_{λ<0} λ²
    pub lb_quadratic: f64,
    /// Σ_{λ<0} |λ|³ / (120(Δ*+1))
    pub lb_cubic: f64,
    /// |λₙ|·n, cap on surp*
    pub ub_lambda: f64,
    /// |λₙ|·n/4, cap on surp
    pub ub_surp_quarter: f64,
    pub c: f64,
    pub beta: f64,
    pub delta_star: usize,
    pub certificate_diag_ok: bool,
    pub certificate: CertificateCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateCheck {
    /// smallest eigenvalue of X = Σ_{λ<0} vvᵀ
    pub linear_min_eigenvalue: f64,
    pub linear_max_diagonal: f64,
    /// |−⟨A,X⟩ − lb_linear|
    pub linear_identity_residual: f64,
    pub cubic_min_eigenvalue: f64,
    pub cubic_max_diagonal: f64,
    pub cubic_identity_residual: f64,
}

pub struct SurplusCaps {
    pub surp: f64,
    pub surp_star: f64,
}

pub fn spectral_surplus_caps(s: &Spectrum) -> SurplusCaps {
    let n = s.n() as f64;
    let l = s.lambda_min().abs();
    SurplusCaps { surp: l * n / 4.0, surp_star: l * n }
}

/// Closed-form lower bounds on surp*(G) with explicit certificate matrices.
pub fn surplus_lb_spectral(g: &Graph, s: &Spectrum, c: f64) -> SurplusBounds {
    let n = g.n();
    let tol = s.tol;
    let delta_star = g.stats().delta_star;
    let beta = 1.0 / (120.0 * (delta_star as f64 + 1.0));
    let neg: Vec<usize> = (0..n).filter(|&i| s.values[i] < 0.0).collect();

    let mut x_lin = DMatrix::zeros(n, n);
    let mut x_cub = DMatrix::zeros(n, n);
    for &i in &neg {
        let v = s.vectors.column(i);
        let vv = v * v.transpose();
        x_cub += &vv * (beta * s.values[i] * s.values[i]);
        x_lin += vv;
    }
    let a = g.adjacency();
    let lb_linear: f64 = neg.iter().map(|&i| -s.values[i]).sum();
    let sq: f64 = neg.iter().map(|&i| s.values[i].powi(2)).sum();
    let cube: f64 = neg.iter().map(|&i| (-s.values[i]).powi(3)).sum();
    let lb_cubic = beta * cube;
    let certificate = CertificateCheck {
        linear_min_eigenvalue: min_eigenvalue(&x_lin),
        linear_max_diagonal: x_lin.diagonal().max(),
        linear_identity_residual: (-a.dot(&x_lin) - lb_linear).abs(),
        cubic_min_eigenvalue: min_eigenvalue(&x_cub),
        cubic_max_diagonal: x_cub.diagonal().max(),
        cubic_identity_residual: (-a.dot(&x_cub) - lb_cubic).abs(),
    };
    let scale = 1.0 + lb_linear;
    let ok = certificate.linear_min_eigenvalue >= -tol * scale
        && certificate.linear_max_diagonal <= 1.0 + tol
        && certificate.linear_identity_residual <= tol * scale
        && certificate.cubic_min_eigenvalue >= -tol * scale
        && certificate.cubic_max_diagonal <= 1.0 + tol
        && certificate.cubic_identity_residual <= tol * (1.0 + lb_cubic);
    let caps = spectral_surplus_caps(s);
    SurplusBounds {
        lb_linear,
        lb_quadratic: c / (delta_star as f64 + 1.0).sqrt() * sq,
        lb_cubic,
        ub_lambda: caps.surp_star,
        ub_surp_quarter: caps.surp,
        c,
        beta,
        delta_star,
        certificate_diag_ok: ok,
        certificate,
    }
}

/// Cut guaranteeing surplus ≥ b²/(8a) − c/2 (or (b−a−c)/2 when a ≤ b/2),
/// where a, b, c count edges in X, across, and in Y.
pub fn unbalanced_cut(g: &Graph, x: &[usize]) -> Result<CutReport> {
    let n = g.n();
    let mut in_x = vec![false; n];
    for &v in x {
        if v >= n {
            return Err(invalid(format!("vertex {v} outside 0..{n}")));
        }
        in_x[v] = true;
    }
    let xs: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let ys: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    if xs.is_empty() || ys.is_empty() {
        return Err(invalid("both X and its complement must be nonempty"));
    }
    let a = g.edges_within(&xs) as f64;
    let b = g.edges_between(&xs, &ys) as f64;
    let c = g.edges_within(&ys) as f64;
    let nf = n as f64;

    let (part, guarantee, p) = if 2.0 * a <= b {
        let part: Vec<u8> = in_x.iter().map(|&i| i as u8).collect();
        (part, (b - a - c) / 2.0, None)
    } else {
        let p = b / (4.0 * a);
        // probability of joining side 1; Y stays on side 0
        let mut prob: Vec<f64> = in_x.iter().map(|&i| if i { 0.5 + p } else { 0.0 }).collect();
        for &v in &xs {
            let mut gain_one = 0.0;
            let mut gain_zero = 0.0;
            for u in g.neighbors(v) {
                gain_one += 1.0 - prob[u];
                gain_zero += prob[u];
            }
            prob[v] = if gain_one >= gain_zero { 1.0 } else { 0.0 };
        }
        let part = prob.iter().map(|&q| q as u8).collect();
        (part, b * b / (8.0 * a) - c / 2.0, Some(p))
    };
    let mut rep = CutReport::new(g, CutMethod::Unbalanced, part);
    let mut rec = Record::compare(rep.surplus, guarantee, 1e-12)
        .labelled("unbalanced_guarantee")
        .diag("a", a)
        .diag("b", b)
        .diag("c", c);
    if let Some(p) = p {
        rec = rec.diag("p", p);
    }
    rep.certificates.push(rec);
    rep.certificates.push(
        Record::compare(rep.surplus, b * b / (4.0 * nf * nf) - c, 1e-12).labelled("unbalanced_lemma_bound"),
    );
    Ok(rep)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DiscrepancyReport {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bw: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dfc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bisection_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plus_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minus_witness: Option<Vec<usize>>,
}

/// e(G)(1/2 + 1/(2n−2)) − bw
pub fn deficit(m: usize, n: usize, bw: usize) -> f64 {
    m as f64 * (0.5 + 1.0 / (2.0 * n as f64 - 2.0)) - bw as f64
}

fn mask_vertices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn bisection_exact(g: &Graph) -> Result<DiscrepancyReport> {
    bisection_exact_with_cutoff(g, EXACT_CUTOFF)
}

/// Minimum cut over all splits into parts of sizes ⌊n/2⌋ and ⌈n/2⌉.
pub fn bisection_exact_with_cutoff(g: &Graph, cutoff: usize) -> Result<DiscrepancyReport> {
    let n = g.n();
    if n > cutoff.min(31) {
        return Err(Error::TooLarge { n, cutoff });
    }
    if n < 2 {
        return Err(invalid("bisection needs at least two vertices"));
    }
    let adj = masks(g);
    let k = n / 2;
    let limit = 1u32 << n;
    let mut set: u32 = (1u32 << k) - 1;
    let mut best = (usize::MAX, 0u32);
    while set < limit {
        let cut: usize = mask_vertices(set, n)
            .iter()
            .map(|&v| (adj[v] & !set).count_ones() as usize)
            .sum();
        if cut < best.0 {
            best = (cut, set);
        }
        if set == 0 {
            break;
        }
        // Gosper's hack: next subset with the same popcount
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    Ok(DiscrepancyReport {
        method: "exact".into(),
        bw: Some(best.0),
        dfc: Some(deficit(g.m(), n, best.0)),
        bisection_witness: Some(mask_vertices(best.1, n)),
        ..Default::default()
    })
}

/// disc⁺ = max_U e(U) − p·C(|U|,2) and disc⁻ = max_U p·C(|U|,2) − e(U);
/// exhaustive up to the cutoff, multi-start local search above it.
pub fn discrepancy(g: &Graph, seed: u64) -> DiscrepancyReport {
    if g.n() <= DISCREPANCY_CUTOFF {
        discrepancy_exact(g)
    } else {
        discrepancy_local(g, seed)
    }
}

fn discrepancy_exact(g: &Graph) -> DiscrepancyReport {
    let n = g.n();
    let p = g.density();
    let adj = masks(g);
    let mut set = 0u32;
    let mut edges = 0usize;
    let mut size = 0usize;
    let mut plus = (0.0, 0u32);
    let mut minus = (0.0, 0u32);
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let inside = (adj[v] & set).count_ones() as usize;
        if set >> v & 1 == 1 {
            edges -= inside;
            size -= 1;
        } else {
            edges += inside;
            size += 1;
        }
        set ^= 1 << v;
        let val = edges as f64 - p * pairs(size) as f64;
        if val > plus.0 + 1e-12 {
            plus = (val, set);
        }
        if -val > minus.0 + 1e-12 {
            minus = (-val, set);
        }
    }
    DiscrepancyReport {
        method: "exact".into(),
        disc_plus: Some(plus.0),
        disc_minus: Some(minus.0),
        plus_witness: Some(mask_vertices(plus.1, n)),
        minus_witness: Some(mask_vertices(minus.1, n)),
        ..Default::default()
    }
}

fn discrepancy_local(g: &Graph, seed: u64) -> DiscrepancyReport {
    let n = g.n();
    let p = g.density();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = [(0.0, Vec::new()), (0.0, Vec::new())];
    for (which, sign) in [(0usize, 1.0), (1, -1.0)] {
        for _ in 0..16 {
            let mut inside: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let mut deg_in: Vec<i64> = (0..n)
                .map(|v| g.neighbors(v).filter(|&u| inside[u]).count() as i64)
                .collect();
            let mut size = inside.iter().filter(|&&b| b).count() as f64;
            loop {
                let mut moved = false;
                for v in 0..n {
                    // objective change from toggling v
                    let delta = if inside[v] {
                        -(deg_in[v] as f64) + p * (size - 1.0)
                    } else {
                        deg_in[v] as f64 - p * size
                    };
                    if sign * delta > 1e-12 {
                        let d = if inside[v] { -1 } else { 1 };
                        inside[v] = !inside[v];
                        size += d as f64;
                        for u in g.neighbors(v) {
                            deg_in[u] += d;
                        }
                        moved = true;
                    }
                }
                if !moved {
                    break;
                }
            }
            let u: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            let val = sign * (g.edges_within(&u) as f64 - p * pairs(u.len()) as f64);
            if val > best[which].0 {
                best[which] = (val, u);
            }
        }
    }
    let [plus, minus] = best;
    DiscrepancyReport {
        method: "local-search".into(),
        disc_plus: Some(plus.0),
        disc_minus: Some(minus.0),
        plus_witness: Some(plus.1),
        minus_witness: Some(minus.1),
        ..Default::default()
    }
}

/// `surplus <= cap + tol` for use in checks.
pub fn within_cap(surplus: f64, cap: f64, tol: f64) -> bool {
    holds(cap, surplus, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use crate::spectral::spectrum;
    use approx::assert_abs_diff_eq;

    fn gen(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    /// Plain enumeration over all 2^n side vectors.
    fn brute_maxcut(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .map(|mask| cut_value(g, &bits_to_partition(mask, n)))
            .max()
            .unwrap()
    }

    #[test]
    fn exact_examples() {
        let c5 = maxcut_exact(&gen(Family::Cycle(5))).unwrap();
        assert_eq!(c5.cut_size, 4);
        assert_eq!(c5.surplus, 1.5);
        let k5 = maxcut_exact(&gen(Family::Complete(5))).unwrap();
        assert_eq!(k5.cut_size, 6);
        assert_abs_diff_eq!(k5.cut_size as f64, edwards_floor(10), epsilon = 1e-12);
        let t = gen(Family::Turan { r: 2, n: 8, strict: true });
        let r = maxcut_exact(&t).unwrap();
        assert_eq!(r.cut_size, t.m());
        assert_eq!(r.surplus, t.m() as f64 / 2.0);
        assert_eq!(r.partition[0], 0);
    }

    #[test]
    fn exact_matches_brute_force() {
        for seed in 0..20 {
            let g = gen(Family::Gnp { n: 9, p: 0.45, seed });
            let r = maxcut_exact(&g).unwrap();
            assert_eq!(r.cut_size, brute_maxcut(&g));
            assert_eq!(cut_value(&g, &r.partition), r.cut_size);
        }
    }

    #[test]
    fn exact_tie_break_is_lexicographic() {
        // C4: optimal cuts alternate; smallest with vertex 0 on side 0 is 0101
        let r = maxcut_exact(&gen(Family::Cycle(4))).unwrap();
        assert_eq!(r.partition, vec![0, 1, 0, 1]);
        // K3: optimum 2; lexicographically smallest is 001
        let r = maxcut_exact(&gen(Family::Complete(3))).unwrap();
        assert_eq!(r.partition, vec![0, 0, 1]);
    }

    #[test]
    fn exact_rejects_large() {
        assert!(matches!(maxcut_exact(&Graph::empty(25)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn local_search_examples() {
        assert_eq!(maxcut_local_search(&Graph::empty(5), 1).cut_size, 0);
        for seed in 0..10 {
            assert_eq!(maxcut_local_search(&gen(Family::Complete(5)), seed).cut_size, 6);
        }
        let g = gen(Family::Gnp { n: 200, p: 0.5, seed: 4 });
        let r = maxcut_local_search(&g, 4);
        assert!(2 * r.cut_size >= g.m());
    }

    #[test]
    fn k5_one_flip_stable_cuts_are_optimal() {
        let g = gen(Family::Complete(5));
        for mask in 0u32..32 {
            let part = bits_to_partition(mask, 5);
            let stable = (0..5).all(|v| {
                let same = g.neighbors(v).filter(|&u| part[u] == part[v]).count();
                2 * same <= g.degree(v)
            });
            if stable {
                assert_eq!(cut_value(&g, &part), 6);
            }
        }
    }

    #[test]
    fn surplus_bound_examples() {
        let g = gen(Family::Complete(3));
        let s = spectrum(&g, None).unwrap();
        let b = surplus_lb_spectral(&g, &s, DEFAULT_C);
        assert_abs_diff_eq!(b.lb_linear, 2.0, epsilon = 1e-9);
        assert!(b.certificate_diag_ok);
        let e = Graph::empty(4);
        let s = spectrum(&e, None).unwrap();
        let b = surplus_lb_spectral(&e, &s, DEFAULT_C);
        assert_eq!((b.lb_linear, b.lb_quadratic, b.lb_cubic), (0.0, 0.0, 0.0));
        let p = gen(Family::Petersen);
        let s = spectrum(&p, None).unwrap();
        let b = surplus_lb_spectral(&p, &s, DEFAULT_C);
        assert_abs_diff_eq!(b.lb_linear, 8.0, epsilon = 1e-9);
        assert!(b.certificate_diag_ok);
    }

    #[test]
    fn caps_examples() {
        let k5 = gen(Family::Complete(5));
        let caps = spectral_surplus_caps(&spectrum(&k5, None).unwrap());
        assert_abs_diff_eq!(caps.surp, 1.25, epsilon = 1e-9);
        assert!(within_cap(maxcut_exact(&k5).unwrap().surplus, caps.surp, 1e-9));
        let c5 = gen(Family::Cycle(5));
        let caps = spectral_surplus_caps(&spectrum(&c5, None).unwrap());
        let l = 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert_abs_diff_eq!(caps.surp, -l * 5.0 / 4.0, epsilon = 1e-9);
        assert!(caps.surp >= 1.5);
        let caps = spectral_surplus_caps(&spectrum(&Graph::empty(3), None).unwrap());
        assert_eq!(caps.surp, 0.0);
    }

    #[test]
    fn unbalanced_examples() {
        let star = gen(Family::Star(5));
        let r = unbalanced_cut(&star, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(r.surplus, 2.5);
        let k4 = gen(Family::Complete(4));
        let r = unbalanced_cut(&k4, &[0, 1]).unwrap();
        assert_eq!(r.surplus, 1.0);
        assert_eq!(r.surplus, maxcut_exact(&k4).unwrap().surplus);
        let two = gen(Family::CliqueUnion(vec![3, 3]));
        let r = unbalanced_cut(&two, &[0, 1, 2]).unwrap();
        assert!(r.certificates.iter().all(|c| c.verdict == crate::report::Verdict::Holds));
        assert!(unbalanced_cut(&k4, &[]).is_err());
        assert!(unbalanced_cut(&k4, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn unbalanced_second_branch_meets_guarantee() {
        // dense X, sparse crossing
        let g = gen(Family::Gnp { n: 30, p: 0.3, seed: 6 });
        let mut h = g.clone();
        for u in 0..15 {
            for v in u + 1..15 {
                if !h.has_edge(u, v) {
                    h.toggle_edge(u, v);
                }
            }
        }
        let x: Vec<usize> = (0..15).collect();
        let r = unbalanced_cut(&h, &x).unwrap();
        let rec = &r.certificates[0];
        assert!(rec.diagnostics.contains_key("p"));
        assert_eq!(rec.verdict, crate::report::Verdict::Holds);
        assert_eq!(cut_value(&h, &r.partition), r.cut_size);
    }

    #[test]
    fn bisection_examples() {
        let r = bisection_exact(&gen(Family::Cycle(4))).unwrap();
        assert_eq!(r.bw, Some(2));
        assert_abs_diff_eq!(r.dfc.unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        let r = bisection_exact(&gen(Family::Complete(4))).unwrap();
        assert_eq!(r.bw, Some(4));
        assert_abs_diff_eq!(r.dfc.unwrap(), 0.0, epsilon = 1e-12);
        let r = bisection_exact(&Graph::empty(6)).unwrap();
        assert_eq!((r.bw, r.dfc), (Some(0), Some(0.0)));
        let r = bisection_exact(&gen(Family::Path(5))).unwrap();
        assert_eq!(r.bw, Some(1));
        assert_eq!(r.bisection_witness.unwrap().len(), 2);
    }

    #[test]
    fn discrepancy_examples() {
        let r = discrepancy(&gen(Family::Cycle(4)), 0);
        assert_abs_diff_eq!(r.disc_plus.unwrap(), 1.0 / 3.0, epsilon = 1e-12);
        let w = r.plus_witness.unwrap();
        assert_eq!(w.len(), 2);
        assert!(gen(Family::Cycle(4)).has_edge(w[0], w[1]));
        let r = discrepancy(&gen(Family::Complete(6)), 0);
        assert_eq!(r.disc_plus, Some(0.0));
        let r = discrepancy(&Graph::empty(5), 0);
        assert_eq!((r.disc_plus, r.disc_minus), (Some(0.0), Some(0.0)));
    }

    #[test]
    fn discrepancy_local_search_is_reproducible() {
        let g = gen(Family::CliqueUnion(vec![12, 12]));
        let a = discrepancy(&g, 3);
        let b = discrepancy(&g, 3);
        assert_eq!(a.method, "local-search");
        assert_eq!(a.disc_plus, b.disc_plus);
        // one full clique: 66 − p·66 with p = 132/276
        assert!(a.disc_plus.unwrap() >= 66.0 * (1.0 - 132.0 / 276.0) - 1e-9);
    }
}
