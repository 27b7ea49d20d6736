#![allow(dead_code)]

use eigenclique::graphs::{generate, Family, Graph};
use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gen(f: Family) -> Graph {
    generate(&f).unwrap()
}

/// 200 graphs: Gnp, clique unions, Turán, cycles, Petersen, H_k.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let ps = [0.1, 0.3, 0.5, 0.7, 0.9];
    for i in 0..120u64 {
        let n = 20 + (i as usize * 180) / 119;
        let p = ps[i as usize % ps.len()];
        out.push((format!("gnp:{n},{p},{i}"), Family::Gnp { n, p, seed: i }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..30 {
        let parts = rng.random_range(1..=6);
        let sizes: Vec<usize> = (0..parts).map(|_| rng.random_range(1..=20)).collect();
        out.push((format!("clique-union:{sizes:?}"), Family::CliqueUnion(sizes)));
    }
    for i in 0..20 {
        let r = 2 + i % 5;
        let n = 10 + 3 * i;
        out.push((format!("turan:{r},{n}"), Family::Turan { r, n, strict: false }));
    }
    for n in 3..18 {
        out.push((format!("cycle:{n}"), Family::Cycle(n)));
    }
    out.push(("petersen".into(), Family::Petersen));
    for k in 1..=14 {
        out.push((format!("hk:{k}"), Family::Hk(k)));
    }
    out.into_iter().map(|(name, f)| (name, gen(f))).collect()
}

/// CliqueUnion([s; 5]) plus cross-block edges with probability `p`.
pub fn planted(s: usize, p: f64, seed: u64) -> Graph {
    let n = 5 * s;
    let noise = gen(Family::Gnp { n, p, seed });
    Graph::from_fn(n, |i, j| i / s == j / s || noise.has_edge(i, j))
}

pub struct Rank1Trial {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub a: DMatrix<f64>,
    pub delta: f64,
}

/// Noisy Boolean rank-1 matrix with a perturbed factorization; δ is the
/// measured ‖A − uvᵀ‖²/n² of the rescaled absolute factors.
pub fn rank1_trial(seed: u64) -> Rank1Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rng.random_range(5..=60);
    let cols = rng.random_range(5..=60);
    let px = rng.random_range(0.1..0.95);
    let py = rng.random_range(0.1..0.95);
    let x: Vec<f64> = (0..rows).map(|_| rng.random_bool(px) as u8 as f64).collect();
    let y: Vec<f64> = (0..cols).map(|_| rng.random_bool(py) as u8 as f64).collect();
    let flip = [0.0, 0.001, 0.01, 0.05, 0.1, 0.2][rng.random_range(0..6)];
    let a = DMatrix::from_fn(rows, cols, |i, j| {
        let b = x[i] * y[j];
        if rng.random_bool(flip) { 1.0 - b } else { b }
    });
    let sigma = [0.0, 0.01, 0.1, 0.3, 0.6][rng.random_range(0..5)];
    let scale = rng.random_range(0.2..5.0);
    let u: Vec<f64> = x.iter().map(|&t| scale * (t + sigma * (rng.random::<f64>() - 0.5) * 2.0)).collect();
    let v: Vec<f64> = y.iter().map(|&t| (t + sigma * (rng.random::<f64>() - 0.5) * 2.0) / scale).collect();
    let ua = nalgebra::DVector::from_iterator(rows, u.iter().map(|t| t.abs()));
    let va = nalgebra::DVector::from_iterator(cols, v.iter().map(|t| t.abs()));
    let delta = (&a - &ua * va.transpose()).norm_squared() / (rows * cols) as f64;
    Rank1Trial { u, v, a, delta }
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// built by vertex extension and canonical relabelling (n ≤ 7).
pub fn graph_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 7);
    fn bit(i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        b * (b - 1) / 2 + a
    }
    fn canon(code: u32, k: usize, perms: &[Vec<usize>]) -> u32 {
        let edges: Vec<(usize, usize)> =
            (1..k).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|&(i, j)| code >> bit(i, j) & 1 == 1).collect();
        perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |c, &(i, j)| c | 1 << bit(p[i], p[j])))
            .min()
            .unwrap_or(0)
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut codes: Vec<u32> = vec![0];
    for k in 1..n {
        let perms = permutations(k + 1);
        let mut next = std::collections::BTreeSet::new();
        for &c in &codes {
            for nb in 0u32..(1 << k) {
                let code = (0..k).filter(|i| nb >> i & 1 == 1).fold(c, |acc, i| acc | 1 << bit(i, k));
                next.insert(code);
            }
        }
        let classes: std::collections::BTreeSet<u32> = next.into_iter().map(|c| canon(c, k + 1, &perms)).collect();
        codes = classes.into_iter().collect();
    }
    codes.into_iter().map(|code| Graph::from_fn(n, |i, j| code >> bit(i, j) & 1 == 1)).collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}
