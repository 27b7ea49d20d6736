//! Low-rank approximation, regular partitions, cherries, clique-union
//! decomposition, clique-pair classification and Boolean rank-1 rounding.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::densify;
use crate::error::{invalid, Error, Result};
use crate::graphs::{pairs, Graph};
use crate::spectral::Spectrum;

/// Calibrated constant in residual ≤ c·δ^{1/3}·n² for [`rank1_boolean_round`].
pub const RANK1_C_CAL: f64 = 1.5 * RANK1_MAX_OBSERVED_RATIO;
/// Largest residual/(δ^{1/3}n²) seen by the calibration run (seeds 0..1000,
/// see `tests/calibration.rs`), rounded up.
pub const RANK1_MAX_OBSERVED_RATIO: f64 = 1.945;

#[derive(Debug, Clone)]
pub struct LowRank {
    /// Σ_{λᵢ≥κn} λᵢ vᵢvᵢᵀ
    pub b: DMatrix<f64>,
    /// ‖A − B‖_F² = Σ_{λᵢ<κn} λᵢ²
    pub residual: f64,
    pub rank: usize,
    pub values: Vec<f64>,
    /// n × rank
    pub vectors: DMatrix<f64>,
    /// ‖A‖_F² ≥ rank·(κn)²
    pub rank_bound_ok: bool,
}

pub fn low_rank_approx(s: &Spectrum, kappa: f64) -> Result<LowRank> {
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(invalid(format!("kappa must lie in (0,1], got {kappa}")));
    }
    let n = s.n();
    let cut = kappa * n as f64;
    let keep: Vec<usize> = (0..n).filter(|&i| s.values[i] >= cut).collect();
    let residual = (0..n).filter(|i| !keep.contains(i)).map(|i| s.values[i].powi(2)).sum();
    let values: Vec<f64> = keep.iter().map(|&i| s.values[i]).collect();
    let cols: Vec<DVector<f64>> = keep.iter().map(|&i| s.vector(i)).collect();
    let vectors = if cols.is_empty() { DMatrix::zeros(n, 0) } else { DMatrix::from_columns(&cols) };
    let mut b = DMatrix::zeros(n, n);
    for (k, &l) in values.iter().enumerate() {
        let v = vectors.column(k);
        b += v * v.transpose() * l;
    }
    let frob: f64 = s.values.iter().map(|l| l * l).sum();
    Ok(LowRank {
        b,
        residual,
        rank: keep.len(),
        rank_bound_ok: frob + s.tol * (1.0 + frob) >= keep.len() as f64 * cut * cut,
        values,
        vectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum PartitionProfile {
    /// β = 10⁻³δ^{1/2}r^{−3/2}, h = 10⁴r²/δ, K = (2h+1)^r/(8δ)
    Paper,
    /// explicit constants; K is capped at n/4
    Scaled { beta: f64, h: i64, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Full,
    Empty,
    Irregular,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartPair {
    pub i: usize,
    pub j: usize,
    pub density: f64,
    pub class: PairClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularPartition {
    #[serde(rename = "K")]
    pub k: usize,
    pub delta: f64,
    pub profile: PartitionProfile,
    pub beta: f64,
    pub h: i64,
    pub rank: usize,
    pub part_size: usize,
    pub parts: Vec<Vec<usize>>,
    /// vertices left after chunking into equal parts
    pub remainder: Vec<usize>,
    /// vertices outside the bucket window
    pub exceptional: usize,
    pub pairs: Vec<PartPair>,
    pub irregular: usize,
    /// δ·K² with K the number of parts
    pub irregular_bound: f64,
    pub homogeneous_fraction: f64,
}

/// Bucket eigenvector coordinates at width β/√n, intersect over the r
/// vectors and chunk the resulting classes into equal parts.
pub fn regular_partition(
    g: &Graph,
    approx: &LowRank,
    delta: f64,
    profile: PartitionProfile,
) -> Result<RegularPartition> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0,1), got {delta}")));
    }
    let n = g.n();
    if n == 0 {
        return Err(invalid("regular partition of the empty vertex set"));
    }
    let r = approx.rank;
    let rf = r.max(1) as f64;
    let (beta, h, k) = match profile {
        PartitionProfile::Paper => {
            let beta = 1e-3 * delta.sqrt() * rf.powf(-1.5);
            let h = (1e4 * rf * rf / delta).floor();
            let k = (2.0 * h + 1.0).powi(r as i32) / (8.0 * delta);
            if k > n as f64 {
                return Err(Error::InvalidInput(format!(
                    "paper constants give K = {k:.3e} parts for n = {n}; use the scaled profile"
                )));
            }
            (beta, h as i64, (k.floor() as usize).max(1))
        }
        PartitionProfile::Scaled { beta, h, k } => {
            if beta <= 0.0 || h < 0 || k == 0 {
                return Err(invalid("scaled profile needs beta > 0, h >= 0, K >= 1"));
            }
            (beta, h, k.min((n / 4).max(1)))
        }
    };
    let size = (n / k).max(1);
    let scale = (n as f64).sqrt() / beta;
    let tuple = |j: usize| -> Vec<i64> {
        (0..r).map(|i| (approx.vectors[(j, i)] * scale).floor() as i64).collect()
    };
    let mut inside: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let mut outside: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        let t = tuple(j);
        if t.iter().all(|l| l.abs() <= h) {
            inside.entry(t).or_default().push(j);
        } else {
            outside.entry(t).or_default().push(j);
        }
    }
    let exceptional = outside.values().map(Vec::len).sum();
    let mut parts = Vec::new();
    let mut pool = Vec::new();
    for group in inside.values().chain(outside.values()) {
        let mut chunks = group.chunks_exact(size);
        parts.extend(chunks.by_ref().map(<[usize]>::to_vec));
        pool.extend_from_slice(chunks.remainder());
    }
    pool.sort_unstable();
    let mut chunks = pool.chunks_exact(size);
    parts.extend(chunks.by_ref().map(<[usize]>::to_vec));
    let remainder = chunks.remainder().to_vec();

    let mut pair_list = Vec::new();
    let mut irregular = 0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let e = g.edges_between(&parts[i], &parts[j]);
            let density = e as f64 / (parts[i].len() * parts[j].len()) as f64;
            let class = if density >= 1.0 - delta {
                PairClass::Full
            } else if density <= delta {
                PairClass::Empty
            } else {
                irregular += 1;
                PairClass::Irregular
            };
            pair_list.push(PartPair { i, j, density, class });
        }
    }
    let total = pair_list.len();
    Ok(RegularPartition {
        k,
        delta,
        profile,
        beta,
        h,
        rank: r,
        part_size: size,
        irregular_bound: delta * (parts.len() * parts.len()) as f64,
        homogeneous_fraction: if total == 0 { 1.0 } else { 1.0 - irregular as f64 / total as f64 },
        parts,
        remainder,
        exceptional,
        pairs: pair_list,
        irregular,
    })
}

/// Induced 2-paths: Σ C(deg,2) − 3·triangles with triangles = tr(A³)/6.
pub fn cherry_count(g: &Graph) -> Result<u64> {
    let a = g.adjacency();
    let a2 = &a * &a;
    let trace3: f64 = (0..g.n()).map(|i| a2.row(i).dot(&a.column(i).transpose())).sum();
    let tri = trace3 / 6.0;
    let rounded = tri.round();
    if (tri - rounded).abs() > 1e-6 {
        return Err(Error::Numerical {
            message: "triangle count from tr(A^3)/6 is not an integer".into(),
            residual: (tri - rounded).abs(),
        });
    }
    let wedges: u64 = g.degrees().iter().map(|&d| pairs(d) as u64).sum();
    Ok(wedges - 3 * rounded as u64)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecomposeParams {
    /// smallest clique extracted; default √n
    pub size_floor: Option<f64>,
    /// cliques merge when crossing density ≥ 1 − threshold; default n^{−1/6}
    pub merge_threshold: Option<f64>,
    /// local vertex moves and block merges after the Γ merge
    pub refine: bool,
    /// closeness at or below which the result is called clique-union-like
    pub like_threshold: f64,
}

impl Default for DecomposeParams {
    fn default() -> Self {
        DecomposeParams { size_floor: None, merge_threshold: None, refine: true, like_threshold: 0.05 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueUnionDecomposition {
    pub blocks: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
    pub edit_distance: usize,
    pub closeness: f64,
    pub clique_union_like: bool,
    pub extracted: usize,
    pub size_floor: f64,
    pub merge_threshold: f64,
}

/// Edge flips turning `g` into the disjoint union of cliques on `blocks`
/// (vertices outside every block are isolated in the model).
pub fn edit_distance_to_model(g: &Graph, blocks: &[Vec<usize>]) -> usize {
    let mut inside = 0;
    let mut missing = 0;
    for b in blocks {
        let e = g.edges_within(b);
        inside += e;
        missing += pairs(b.len()) - e;
    }
    missing + g.m() - inside
}

pub fn clique_union_decompose(g: &Graph, params: &DecomposeParams) -> CliqueUnionDecomposition {
    let n = g.n();
    let nf = n as f64;
    let floor = params.size_floor.unwrap_or(nf.sqrt());
    let threshold = params.merge_threshold.unwrap_or(if n > 0 { nf.powf(-1.0 / 6.0) } else { 0.0 });

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    while !remaining.is_empty() {
        let sub = g.induced_subgraph(&remaining).expect("vertices in range");
        let local = densify::extract_clique(&sub);
        if (local.len() as f64) < floor || local.is_empty() {
            break;
        }
        let clique: Vec<usize> = local.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|v| !clique.contains(v));
        cliques.push(clique);
    }
    let extracted = cliques.len();

    // Γ: join extracted cliques whose crossing density is at least 1 − threshold
    let mut parent: Vec<usize> = (0..cliques.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let d = g.edges_between(&cliques[i], &cliques[j]) as f64
                / (cliques[i].len() * cliques[j].len()) as f64;
            if d >= 1.0 - threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut merged: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in cliques.iter().enumerate() {
        let root = find(&mut parent, i);
        merged.entry(root).or_default().extend_from_slice(c);
    }
    let mut blocks: Vec<Vec<usize>> = merged.into_values().collect();

    if params.refine {
        blocks = refine_blocks(g, blocks);
    }
    let mut leftover: Vec<usize> = Vec::new();
    blocks.retain(|b| {
        if b.len() == 1 {
            leftover.push(b[0]);
            false
        } else {
            true
        }
    });
    let covered: Vec<bool> = {
        let mut c = vec![false; n];
        for b in &blocks {
            for &v in b {
                c[v] = true;
            }
        }
        c
    };
    leftover.extend((0..n).filter(|&v| !covered[v]));
    leftover.sort_unstable();
    leftover.dedup();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let edit_distance = edit_distance_to_model(g, &blocks);
    let closeness = if n == 0 { 0.0 } else { edit_distance as f64 / (nf * nf) };
    CliqueUnionDecomposition {
        blocks,
        leftover,
        edit_distance,
        closeness,
        clique_union_like: closeness <= params.like_threshold,
        extracted,
        size_floor: floor,
        merge_threshold: threshold,
    }
}

/// Steepest-descent on the edit distance: single-vertex moves (including to
/// a fresh singleton) and merges of block pairs with crossing density > 1/2.
fn refine_blocks(g: &Graph, blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for b in &blocks {
        for &v in b {
            label[v] = next;
        }
        next += 1;
    }
    for l in label.iter_mut().filter(|l| **l == usize::MAX) {
        *l = next;
        next += 1;
    }
    let mut sizes = vec![0usize; next + n];
    for &l in &label {
        sizes[l] += 1;
    }
    loop {
        let mut changed = false;
        for v in 0..n {
            // cost of v in block B up to a constant: |B∖v| − 2·deg_B(v)
            let mut deg_in: BTreeMap<usize, i64> = BTreeMap::new();
            for u in g.neighbors(v) {
                *deg_in.entry(label[u]).or_default() += 1;
            }
            let own = label[v];
            let cost = |l: usize, d: i64| -> i64 {
                let size = sizes[l] as i64 - if l == own { 1 } else { 0 };
                size - 2 * d
            };
            let current = cost(own, *deg_in.get(&own).unwrap_or(&0));
            let mut best = (current, own);
            if current > 0 {
                // a fresh singleton costs 0
                best = (0, usize::MAX);
            }
            for (&l, &d) in &deg_in {
                let c = cost(l, d);
                if l != own && c < best.0 {
                    best = (c, l);
                }
            }
            if best.1 != own {
                let target = if best.1 == usize::MAX {
                    (0..sizes.len()).find(|&l| sizes[l] == 0).expect("free label")
                } else {
                    best.1
                };
                sizes[own] -= 1;
                sizes[target] += 1;
                label[v] = target;
                changed = true;
            }
        }
        // merges
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            members.entry(label[v]).or_default().push(v);
        }
        let groups: Vec<(usize, Vec<usize>)> = members.into_iter().collect();
        let mut merged_any = false;
        'outer: for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let e = g.edges_between(&groups[a].1, &groups[b].1);
                if 2 * e > groups[a].1.len() * groups[b].1.len() {
                    for &v in &groups[b].1 {
                        label[v] = groups[a].0;
                    }
                    sizes[groups[a].0] += groups[b].1.len();
                    sizes[groups[b].0] = 0;
                    merged_any = true;
                    break 'outer;
                }
            }
        }
        if !changed && !merged_any {
            break;
        }
    }
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        out.entry(label[v]).or_default().push(v);
    }
    out.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Sparse,
    Dense,
    Mixed,
}

/// A vertex with k' neighbours and k' non-neighbours in the other clique,
/// spanning a copy of H_{k'}.
#[derive(Debug, Clone, Serialize)]
pub struct HkWitness {
    pub apex: usize,
    pub neighbors: Vec<usize>,
    pub non_neighbors: Vec<usize>,
    pub k_prime: usize,
    /// k' ≥ ⌈2λₙ²⌉, the size that forces λ_min < λₙ
    pub reaches_k: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairClassification {
    pub kind: PairKind,
    pub crossing: usize,
    pub k: f64,
    pub slack: f64,
    pub sparse_threshold: f64,
    pub dense_threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HkWitness>,
}

/// Classify the edges between two disjoint equal-size cliques against
/// slack·k·|X| and |X|² − slack·k·|X| with k = 2λₙ².
pub fn pair_classify(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    lambda_n: f64,
    slack: f64,
) -> Result<PairClassification> {
    if x.len() != y.len() {
        return Err(invalid("cliques must have equal size"));
    }
    if x.iter().any(|v| y.contains(v)) {
        return Err(invalid("cliques must be disjoint"));
    }
    if x.iter().chain(y).any(|&v| v >= g.n()) {
        return Err(invalid("vertex out of range"));
    }
    if !g.is_clique(x) || !g.is_clique(y) {
        return Err(invalid("X and Y must both be cliques"));
    }
    let s = x.len() as f64;
    let k = 2.0 * lambda_n * lambda_n;
    let crossing = g.edges_between(x, y);
    let sparse_threshold = slack * k * s;
    let dense_threshold = s * s - slack * k * s;
    let kind = if crossing as f64 <= sparse_threshold {
        PairKind::Sparse
    } else if crossing as f64 >= dense_threshold {
        PairKind::Dense
    } else {
        PairKind::Mixed
    };
    let witness = if kind == PairKind::Mixed {
        let mut best: Option<(usize, usize, &[usize])> = None;
        for (apex_side, other) in [(x, y), (y, x)] {
            for &v in apex_side {
                let t = other.iter().filter(|&&u| g.has_edge(u, v)).count();
                let kp = t.min(other.len() - t);
                if kp > 0 && best.is_none_or(|b| kp > b.1) {
                    best = Some((v, kp, other));
                }
            }
        }
        best.map(|(apex, kp, other)| {
            let nb: Vec<usize> = other.iter().copied().filter(|&u| g.has_edge(u, apex)).take(kp).collect();
            let non: Vec<usize> = other.iter().copied().filter(|&u| !g.has_edge(u, apex)).take(kp).collect();
            HkWitness {
                apex,
                neighbors: nb,
                non_neighbors: non,
                k_prime: kp,
                reaches_k: kp as f64 >= k.ceil(),
            }
        })
    } else {
        None
    };
    Ok(PairClassification { kind, crossing, k, slack, sparse_threshold, dense_threshold, witness })
}

#[derive(Debug, Clone, Serialize)]
pub struct BooleanRank1 {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub eta: f64,
    pub delta: f64,
    /// δ was raised to the measured ‖A − uvᵀ‖²/n² because the input violated it
    pub delta_raised: bool,
    /// ‖A − xyᵀ‖_F²
    pub residual: f64,
}

/// Round a rank-1 approximation uvᵀ of a 0/1 matrix to a Boolean xyᵀ by
/// thresholding the rescaled absolute values at η = δ^{1/6}.
pub fn rank1_boolean_round(u: &[f64], v: &[f64], a: &DMatrix<f64>, delta: f64) -> Result<BooleanRank1> {
    if u.len() != a.nrows() || v.len() != a.ncols() {
        return Err(invalid("vector lengths must match the matrix shape"));
    }
    if a.iter().any(|&x| x != 0.0 && x != 1.0) {
        return Err(invalid("matrix must be Boolean"));
    }
    if delta < 0.0 {
        return Err(invalid("delta must be nonnegative"));
    }
    let mut u = DVector::from_iterator(u.len(), u.iter().map(|x| x.abs()));
    let mut v = DVector::from_iterator(v.len(), v.iter().map(|x| x.abs()));
    let (nu, nv) = (u.norm(), v.norm());
    if nu > 0.0 && nv > 0.0 {
        u *= (nv / nu).sqrt();
        v *= (nu / nv).sqrt();
    } else {
        u.fill(0.0);
        v.fill(0.0);
    }
    let n2 = (a.nrows() * a.ncols()) as f64;
    let measured = (a - &u * v.transpose()).norm_squared();
    let (delta, raised) = if n2 > 0.0 && measured > delta * n2 {
        (measured / n2, true)
    } else {
        (delta, false)
    };
    let eta = delta.powf(1.0 / 6.0);
    let x: Vec<u8> = u.iter().map(|&t| (t >= eta && t > 0.0) as u8).collect();
    let y: Vec<u8> = v.iter().map(|&t| (t >= eta && t > 0.0) as u8).collect();
    let mut residual = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let d = a[(i, j)] - (x[i] * y[j]) as f64;
            residual += d * d;
        }
    }
    Ok(BooleanRank1 { x, y, eta, delta, delta_raised: raised, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use crate::spectral::spectrum;
    use approx::assert_abs_diff_eq;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gen(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    fn triangles_brute(g: &Graph) -> u64 {
        let n = g.n();
        let mut t = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        t += 1;
                    }
                }
            }
        }
        t
    }

    fn cherries_brute(g: &Graph) -> u64 {
        let n = g.n();
        let mut c = 0;
        for mid in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    if a != mid && b != mid && g.has_edge(a, mid) && g.has_edge(b, mid) && !g.has_edge(a, b) {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn low_rank_examples() {
        let s = spectrum(&gen(Family::Complete(10)), None).unwrap();
        let lr = low_rank_approx(&s, 0.5).unwrap();
        assert_eq!(lr.rank, 1);
        assert_abs_diff_eq!(lr.residual, 9.0, epsilon = 1e-9);
        assert_abs_diff_eq!(lr.b[(0, 1)], 0.9, epsilon = 1e-9);
        let s = spectrum(&Graph::empty(5), None).unwrap();
        let lr = low_rank_approx(&s, 0.5).unwrap();
        assert_eq!((lr.rank, lr.residual), (0, 0.0));
        let s = spectrum(&gen(Family::CliqueUnion(vec![20, 20])), None).unwrap();
        let lr = low_rank_approx(&s, 0.4).unwrap();
        assert_eq!(lr.rank, 2);
        assert_abs_diff_eq!(lr.residual, 38.0, epsilon = 1e-8);
        assert!(lr.rank_bound_ok);
        assert!(low_rank_approx(&s, 0.0).is_err());
    }

    #[test]
    fn low_rank_residual_is_frobenius_distance() {
        let g = gen(Family::Gnp { n: 30, p: 0.5, seed: 2 });
        let s = spectrum(&g, None).unwrap();
        let lr = low_rank_approx(&s, 0.1).unwrap();
        let direct = (g.adjacency() - &lr.b).norm_squared();
        assert_abs_diff_eq!(direct, lr.residual, epsilon = 1e-8);
    }

    fn scaled() -> PartitionProfile {
        PartitionProfile::Scaled { beta: 0.1, h: 4, k: 8 }
    }

    #[test]
    fn regular_partition_examples() {
        let g = gen(Family::CliqueUnion(vec![50, 50]));
        let s = spectrum(&g, None).unwrap();
        let lr = low_rank_approx(&s, 0.25).unwrap();
        let rp = regular_partition(&g, &lr, 0.1, scaled()).unwrap();
        assert!(rp.homogeneous_fraction >= 0.9);
        assert_eq!(rp.parts.len(), 8);
        for p in &rp.pairs {
            let direct = g.edges_between(&rp.parts[p.i], &rp.parts[p.j]) as f64
                / (rp.parts[p.i].len() * rp.parts[p.j].len()) as f64;
            assert_eq!(direct, p.density);
        }
        let g = gen(Family::Complete(40));
        let s = spectrum(&g, None).unwrap();
        let rp = regular_partition(&g, &low_rank_approx(&s, 0.5).unwrap(), 0.1, scaled()).unwrap();
        assert!(rp.pairs.iter().all(|p| p.class == PairClass::Full));
        let g = Graph::empty(40);
        let s = spectrum(&g, None).unwrap();
        let rp = regular_partition(&g, &low_rank_approx(&s, 0.5).unwrap(), 0.1, scaled()).unwrap();
        assert!(rp.pairs.iter().all(|p| p.class == PairClass::Empty));
    }

    #[test]
    fn regular_partition_paper_profile_is_too_large() {
        let g = gen(Family::CliqueUnion(vec![20, 20]));
        let s = spectrum(&g, None).unwrap();
        let lr = low_rank_approx(&s, 0.25).unwrap();
        assert!(matches!(
            regular_partition(&g, &lr, 0.1, PartitionProfile::Paper),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn regular_partition_parts_are_disjoint() {
        let g = gen(Family::Gnp { n: 90, p: 0.3, seed: 1 });
        let s = spectrum(&g, None).unwrap();
        let lr = low_rank_approx(&s, 0.1).unwrap();
        let rp = regular_partition(&g, &lr, 0.2, PartitionProfile::Scaled { beta: 0.5, h: 3, k: 10 }).unwrap();
        let mut seen = [false; 90];
        for p in rp.parts.iter().chain(std::iter::once(&rp.remainder)) {
            for &v in p {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
        assert!(rp.parts.iter().all(|p| p.len() == rp.part_size));
    }

    #[test]
    fn cherry_examples() {
        assert_eq!(cherry_count(&gen(Family::Path(3))).unwrap(), 1);
        assert_eq!(cherry_count(&gen(Family::CliqueUnion(vec![5, 4, 1]))).unwrap(), 0);
        assert_eq!(cherry_count(&gen(Family::Cycle(4))).unwrap(), 4);
        for seed in 0..5 {
            let g = gen(Family::Gnp { n: 14, p: 0.5, seed });
            assert_eq!(cherry_count(&g).unwrap(), cherries_brute(&g));
            let wedges: u64 = g.degrees().iter().map(|&d| pairs(d) as u64).sum();
            assert_eq!(wedges - cherry_count(&g).unwrap(), 3 * triangles_brute(&g));
        }
    }

    #[test]
    fn decompose_examples() {
        let d = clique_union_decompose(&gen(Family::CliqueUnion(vec![30, 20, 10])), &DecomposeParams::default());
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.edit_distance, 0);
        let mut g = gen(Family::CliqueUnion(vec![30, 30]));
        g.toggle_edge(0, 45);
        let d = clique_union_decompose(&g, &DecomposeParams::default());
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.edit_distance, 1);
        let t = gen(Family::Turan { r: 3, n: 30, strict: true });
        let d = clique_union_decompose(&t, &DecomposeParams::default());
        assert_eq!(d.edit_distance, edit_distance_to_model(&t, &d.blocks));
        assert!(!d.clique_union_like);
    }

    #[test]
    fn decompose_small_components() {
        let d = clique_union_decompose(&gen(Family::CliqueUnion(vec![2, 2, 1, 3])), &DecomposeParams::default());
        assert_eq!(d.edit_distance, 0);
        assert_eq!(d.leftover, vec![4]);
        let d = clique_union_decompose(&Graph::empty(4), &DecomposeParams::default());
        assert_eq!(d.edit_distance, 0);
        assert_eq!(d.leftover.len(), 4);
    }

    #[test]
    fn pair_classify_examples() {
        let g = gen(Family::CliqueUnion(vec![20, 20]));
        let x: Vec<usize> = (0..20).collect();
        let y: Vec<usize> = (20..40).collect();
        let c = pair_classify(&g, &x, &y, -1.0, 3.0).unwrap();
        assert_eq!((c.kind, c.crossing), (PairKind::Sparse, 0));
        let k = gen(Family::Complete(40));
        let c = pair_classify(&k, &x, &y, -1.0, 3.0).unwrap();
        assert_eq!((c.kind, c.crossing), (PairKind::Dense, 400));
        let mut h = g.clone();
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    h.toggle_edge(a, b);
                }
            }
        }
        let c = pair_classify(&h, &x, &y, -1.0, 3.0).unwrap();
        assert_eq!(c.kind, PairKind::Mixed);
        let w = c.witness.unwrap();
        assert_eq!(w.k_prime, 10);
        assert!(w.reaches_k);
        let mut verts = vec![w.apex];
        verts.extend(&w.neighbors);
        verts.extend(&w.non_neighbors);
        let sub = h.induced_subgraph(&verts).unwrap();
        assert_eq!(sub.m(), gen(Family::Hk(10)).m());
        assert!(pair_classify(&h, &x[..3], &y[..4], -1.0, 3.0).is_err());
        let bad: Vec<usize> = vec![0, 20];
        assert!(pair_classify(&g, &bad, &[1, 21], -1.0, 3.0).is_err());
    }

    #[test]
    fn rank1_examples() {
        let x = [1.0, 0.0, 1.0, 1.0];
        let y = [0.0, 1.0, 1.0];
        let a = DMatrix::from_fn(4, 3, |i, j| x[i] * y[j]);
        let r = rank1_boolean_round(&x, &y, &a, 0.0).unwrap();
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.x, vec![1, 0, 1, 1]);
        let mut a = DMatrix::from_element(50, 50, 1.0);
        for t in 0..10 {
            a[(t, 3 * t + 1)] = 0.0;
        }
        let ones = vec![1.0; 50];
        let r = rank1_boolean_round(&ones, &ones, &a, 10.0 / 2500.0).unwrap();
        assert!(r.residual <= 10.0);
        assert!(!r.delta_raised);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = DMatrix::from_fn(20, 20, |_, _| rng.random_range(0..2u8) as f64);
        let z = vec![0.0; 20];
        let r = rank1_boolean_round(&z, &z, &a, 0.01).unwrap();
        assert!(r.x.iter().chain(&r.y).all(|&b| b == 0));
        assert_eq!(r.residual, a.norm_squared());
        assert!(r.delta_raised);
    }

    #[test]
    fn rank1_rejects_non_boolean() {
        let a = DMatrix::from_element(2, 2, 0.5);
        assert!(rank1_boolean_round(&[1.0, 1.0], &[1.0, 1.0], &a, 0.1).is_err());
    }
}
