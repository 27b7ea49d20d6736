//! Finite groups, Cayley graphs, cosine sums and approximate subgroups.

use std::f64::consts::TAU;

use fixedbitset::FixedBitSet;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graphs::{generate, Family, Graph};
use crate::spectral::symmetric_eigenvalues;

/// Largest group accepted as an explicit table.
pub const MAX_TABLE_ORDER: usize = 256;
/// Tables up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_ORDER: usize = 64;
/// ε bound assumed by the stability argument.
pub const STABILITY_EPS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Cyclic(usize),
    Table { table: Vec<Vec<usize>>, identity: usize, inverse: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    repr: Repr,
}

#[derive(Debug, Deserialize, Serialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// ℤ/nℤ with element i ↔ residue i.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cyclic group of order 0"));
        }
        Ok(FiniteGroup { repr: Repr::Cyclic(n) })
    }

    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(invalid(format!("table order {n} outside 1..={MAX_TABLE_ORDER}")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("row {i} has {} entries, expected {n}", row.len())));
            }
        }
        // Latin square
        for i in 0..n {
            let mut row_seen = FixedBitSet::with_capacity(n);
            let mut col_seen = FixedBitSet::with_capacity(n);
            for j in 0..n {
                let (r, c) = (table[i][j], table[j][i]);
                if r >= n || c >= n {
                    return Err(invalid(format!("entry out of range near ({i}, {j})")));
                }
                if row_seen.put(r) || col_seen.put(c) {
                    return Err(invalid(format!("not a Latin square (row/column {i})")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| invalid("no identity element"))?;
        let inverse: Vec<usize> = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity).expect("Latin square row contains identity"))
            .collect();
        for x in 0..n {
            if table[inverse[x]][x] != identity {
                return Err(invalid(format!("left and right inverse of {x} differ")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(invalid(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(a, b, c) {
                    return Err(invalid(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(FiniteGroup { repr: Repr::Table { table, identity, inverse } })
    }

    /// Parse `{"order": n, "table": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(text).map_err(|e| invalid(format!("group table: {e}")))?;
        if t.order != t.table.len() {
            return Err(invalid(format!("order {} but {} rows", t.order, t.table.len())));
        }
        Self::from_table(t.table)
    }

    pub fn to_json(&self) -> String {
        let n = self.order();
        let table = (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect();
        serde_json::to_string(&TableJson { order: n, table }).expect("plain data")
    }

    /// Dihedral group of order 2k: element r^i is i, s·r^i is k + i.
    pub fn dihedral(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("dihedral group needs k >= 1"));
        }
        let n = 2 * k;
        let decode = |x: usize| (x / k, x % k);
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let ((fa, ra), (fb, rb)) = (decode(a), decode(b));
                        // s^fa r^ra s^fb r^rb = s^(fa+fb) r^(±ra + rb)
                        let r = if fb == 0 { (ra + rb) % k } else { (k - ra + rb) % k };
                        ((fa + fb) % 2) * k + r
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Symmetric group S_k (k ≤ 5), permutations in lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 5 {
            return Err(invalid("symmetric group needs 1 <= k <= 5"));
        }
        Self::from_permutations(permutations(k))
    }

    /// Alternating group A_k (k ≤ 5).
    pub fn alternating(k: usize) -> Result<Self> {
        if k == 0 || k > 5 {
            return Err(invalid("alternating group needs 1 <= k <= 5"));
        }
        Self::from_permutations(permutations(k).into_iter().filter(|p| is_even(p)).collect())
    }

    fn from_permutations(perms: Vec<Vec<usize>>) -> Result<Self> {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed set");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        match &self.repr {
            Repr::Cyclic(n) => *n,
            Repr::Table { table, .. } => table.len(),
        }
    }

    pub fn identity(&self) -> usize {
        match &self.repr {
            Repr::Cyclic(_) => 0,
            Repr::Table { identity, .. } => *identity,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Cyclic(n) => (a + b) % n,
            Repr::Table { table, .. } => table[a][b],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Cyclic(n) => (n - a) % n,
            Repr::Table { inverse, .. } => inverse[a],
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `set` is closed under products and inverses (and nonempty).
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mask = self.mask(set);
        set.iter().all(|&a| mask.contains(self.inv(a)) && set.iter().all(|&b| mask.contains(self.mul(a, b))))
    }

    fn mask(&self, set: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.order());
        for &a in set {
            m.insert(a);
        }
        m
    }

    /// {ab : a ∈ x, b ∈ y}, sorted.
    pub fn product_set(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        let mut m = FixedBitSet::with_capacity(self.order());
        for &a in x {
            for &b in y {
                m.insert(self.mul(a, b));
            }
        }
        m.ones().collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// A = A⁻¹ inside a group, identity membership recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricSet {
    pub elements: Vec<usize>,
    pub contains_identity: bool,
}

impl SymmetricSet {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let n = group.order();
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if let Some(&bad) = els.iter().find(|&&a| a >= n) {
            return Err(invalid(format!("element {bad} outside group of order {n}")));
        }
        let mask = group.mask(&els);
        if let Some(&a) = els.iter().find(|&&a| !mask.contains(group.inv(a))) {
            return Err(invalid(format!("set is not symmetric: inverse of {a} missing")));
        }
        Ok(SymmetricSet { contains_identity: mask.contains(group.identity()), elements: els })
    }

    /// A ∪ A⁻¹.
    pub fn symmetrize(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let n = group.order();
        if let Some(&bad) = elements.iter().find(|&&a| a >= n) {
            return Err(invalid(format!("element {bad} outside group of order {n}")));
        }
        let mut all: Vec<usize> = elements.iter().flat_map(|&a| [a, group.inv(a)]).collect();
        all.sort_unstable();
        Self::new(group, &all)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// the identity was in A and has been removed
    pub identity_stripped: bool,
}

/// x ~ y iff xy⁻¹ ∈ A \ {1}.
pub fn cayley_graph(group: &FiniteGroup, a: &SymmetricSet) -> Result<CayleyGraph> {
    let a = SymmetricSet::new(group, &a.elements)?;
    let e = group.identity();
    let gens: Vec<usize> = a.elements.iter().copied().filter(|&x| x != e).collect();
    let n = group.order();
    let mut edges = Vec::with_capacity(n * gens.len() / 2);
    for y in 0..n {
        for &s in &gens {
            let x = group.mul(s, y);
            if y < x {
                edges.push((y, x));
            }
        }
    }
    Ok(CayleyGraph { graph: Graph::from_edge_list(n, &edges)?, identity_stripped: a.contains_identity })
}

/// f(x) = Σ_{a∈A} cos(ax).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosinePolynomial {
    pub a: Vec<u64>,
}

impl CosinePolynomial {
    pub fn new(a: &[u64]) -> Result<Self> {
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.is_empty() {
            return Err(invalid("A must be nonempty"));
        }
        if a[0] == 0 {
            return Err(invalid("A must contain positive integers"));
        }
        Ok(CosinePolynomial { a })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.rem_euclid(TAU);
        // reduce each ax mod 2π exactly in the integer-multiple sense
        self.a.iter().map(|&k| (((k as f64) * x) % TAU).cos()).sum()
    }

    pub fn max_a(&self) -> u64 {
        *self.a.last().expect("nonempty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CosineMin {
    pub x: f64,
    pub f: f64,
}

/// Grid search with `resolution` points per period (default 64·max A),
/// then ternary refinement around the best grid point.
pub fn cosine_min(a: &[u64], resolution: Option<usize>) -> Result<CosineMin> {
    let f = CosinePolynomial::new(a)?;
    let m = f.max_a() as usize;
    let res = resolution.unwrap_or(64 * m);
    if res < 4 * m {
        return Err(invalid(format!("resolution {res} below 4 max(A) = {}", 4 * m)));
    }
    let step = TAU / res as f64;
    let mut best = CosineMin { x: 0.0, f: f.eval(0.0) };
    for k in 1..res {
        let x = k as f64 * step;
        let v = f.eval(x);
        if v < best.f {
            best = CosineMin { x, f: v };
        }
    }
    let (mut lo, mut hi) = (best.x - step, best.x + step);
    while hi - lo > 1e-12 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f.eval(m1) <= f.eval(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let x = ((lo + hi) / 2.0).rem_euclid(TAU);
    let v = f.eval(x);
    if v < best.f {
        best = CosineMin { x, f: v };
    }
    Ok(best)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Least prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    (n + 1..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

#[derive(Debug, Clone, Serialize)]
pub struct ChowlaReport {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    pub n: u64,
    pub lambda_min: f64,
    pub grid_min: CosineMin,
    /// max |sorted eigenvalues − sorted Fourier values|
    pub residual: f64,
    /// |λₙ/2 − min_ξ f(2πξ/n)|
    pub identity_residual: f64,
    /// min_ξ λ_ξ / 2 from the closed form
    pub fourier_min: f64,
    pub bound_target: f64,
    /// λ_min/2 ≥ grid minimum − 1e-9
    pub grid_consistent: bool,
    /// λ_min/2 ≤ −|A|^{1/10}
    pub meets_bound_target: bool,
}

/// Cayley graph of ℤ/nℤ on A ∪ −A for the least prime n > 4 max A.
pub fn chowla_certificate(a: &[u64]) -> Result<ChowlaReport> {
    let f = CosinePolynomial::new(a)?;
    let n = next_prime(4 * f.max_a());
    let group = FiniteGroup::cyclic(n as usize)?;
    let gens: Vec<usize> = f.a.iter().map(|&x| (x % n) as usize).collect();
    let set = SymmetricSet::symmetrize(&group, &gens)?;
    let g = cayley_graph(&group, &set)?.graph;
    let eig = symmetric_eigenvalues(g.adjacency());

    let mut fourier: Vec<f64> = (0..n).map(|xi| 2.0 * f.eval(TAU * xi as f64 / n as f64)).collect();
    let fourier_min = fourier.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
    fourier.sort_by(|x, y| y.total_cmp(x));
    let residual = eig.iter().zip(&fourier).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let lambda_min = *eig.last().expect("n >= 5");
    let grid_min = cosine_min(&f.a, None)?;
    let bound_target = -(f.a.len() as f64).powf(0.1);
    Ok(ChowlaReport {
        a: f.a.clone(),
        n,
        lambda_min,
        grid_min,
        residual,
        identity_residual: (lambda_min / 2.0 - fourier_min).abs(),
        fourier_min,
        bound_target,
        grid_consistent: lambda_min / 2.0 >= grid_min.f - 1e-9,
        meets_bound_target: lambda_min / 2.0 <= bound_target,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TranslateOverlap {
    pub t: usize,
    pub overlap: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Best nonzero shift t of a clique S in a Cayley graph on ℤ/nℤ.
pub fn translate_overlap(s: &[usize], g: &Graph) -> Result<TranslateOverlap> {
    let n = g.n();
    if n < 2 {
        return Err(invalid("need a group of order >= 2"));
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&v| v >= n) {
        return Err(invalid(format!("element {bad} outside 0..{n}")));
    }
    if !g.is_clique(&s) {
        return Err(invalid("S is not a clique"));
    }
    let d = g.max_degree();
    let mask = g.mask(&s);
    let (t, overlap) = (1..n)
        .map(|t| (t, s.iter().filter(|&&x| mask.contains((x + t) % n)).count()))
        .fold((1, 0), |best, c| if c.1 > best.1 { c } else { best });
    let k = s.len() as f64;
    let bound = if d > 0 { k * (k - 1.0) / d as f64 } else { 0.0 };
    Ok(TranslateOverlap { t, overlap, bound, holds: overlap as f64 >= bound - 1e-12 })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MGamma {
    /// M for A as given: loops when A contains the identity
    pub value: f64,
    pub loopless: f64,
    pub with_identity: f64,
    pub contains_identity: bool,
}

/// max(0, −λ) over the Cayley spectrum, in both identity conventions.
pub fn m_gamma(group: &FiniteGroup, a: &SymmetricSet) -> Result<MGamma> {
    let cg = cayley_graph(group, a)?;
    let lmin = symmetric_eigenvalues(cg.graph.adjacency()).last().copied().unwrap_or(0.0);
    let loopless = (-lmin).max(0.0);
    let with_identity = (-(lmin + 1.0)).max(0.0);
    let value = if a.contains_identity { with_identity } else { loopless };
    Ok(MGamma { value, loopless, with_identity, contains_identity: a.contains_identity })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupRecovery {
    /// A with the identity adjoined
    pub a: Vec<usize>,
    pub eps: f64,
    pub delta: f64,
    /// ε < 1/1000
    pub hypothesis_met: bool,
    pub b: Vec<usize>,
    pub bb_size: usize,
    pub gate_ok: bool,
    pub closure_ok: bool,
    pub h: Option<Vec<usize>>,
    pub sym_diff: Option<usize>,
    /// 6δ|A|
    pub bound: f64,
    pub within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub fn subgroup_recover(group: &FiniteGroup, a: &[usize]) -> Result<SubgroupRecovery> {
    let n = group.order();
    if a.is_empty() {
        return Err(invalid("A must be nonempty"));
    }
    if let Some(&bad) = a.iter().find(|&&x| x >= n) {
        return Err(invalid(format!("element {bad} outside group of order {n}")));
    }
    let mut a = a.to_vec();
    a.push(group.identity());
    a.sort_unstable();
    a.dedup();
    let mask = group.mask(&a);
    let size = a.len() as f64;

    let bad_pairs: usize = a.iter().map(|&x| a.iter().filter(|&&y| !mask.contains(group.mul(x, y))).count()).sum();
    let eps = bad_pairs as f64 / (size * size);
    let delta = (2.0 * eps).sqrt();

    // N(x) = |xA △ A|
    let b: Vec<usize> = a
        .iter()
        .copied()
        .filter(|&x| {
            let inside = a.iter().filter(|&&y| mask.contains(group.mul(x, y))).count();
            let sym = 2 * (a.len() - inside);
            sym as f64 <= delta * size
        })
        .collect();
    let bb = group.product_set(&b, &b);
    let gate_ok = !b.is_empty() && (bb.len() as f64) < 1.5 * b.len() as f64;
    let closure_ok = gate_ok && group.is_subgroup(&bb);
    let bound = 6.0 * delta * size;
    let mut out = SubgroupRecovery {
        a: a.clone(),
        eps,
        delta,
        hypothesis_met: eps < STABILITY_EPS,
        bb_size: bb.len(),
        b,
        gate_ok,
        closure_ok,
        h: None,
        sym_diff: None,
        bound,
        within_bound: None,
        failure: None,
    };
    if !gate_ok {
        out.failure = Some(format!("|BB| = {} is not below 1.5|B| = {}", bb.len(), 1.5 * out.b.len() as f64));
    } else if !closure_ok {
        out.failure = Some("BB is not closed under the group operation".into());
    } else {
        let hm = group.mask(&bb);
        let sd = a.iter().filter(|&&x| !hm.contains(x)).count() + bb.iter().filter(|&&x| !mask.contains(x)).count();
        out.sym_diff = Some(sd);
        out.within_bound = Some(sd as f64 <= bound + 1e-9);
        out.h = Some(bb);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HkCheck {
    pub k: usize,
    pub lambda_min: f64,
    /// −√(k/2)
    pub bound: f64,
    /// bound − λ_min, positive when the obstruction holds
    pub margin: f64,
}

pub fn hk_obstruction(k: usize) -> Result<HkCheck> {
    let g = generate(&Family::Hk(k))?;
    let lambda_min = *symmetric_eigenvalues(g.adjacency()).last().expect("n >= 3");
    let bound = -(k as f64 / 2.0).sqrt();
    Ok(HkCheck { k, lambda_min, bound, margin: bound - lambda_min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sym(g: &FiniteGroup, els: &[usize]) -> SymmetricSet {
        SymmetricSet::new(g, els).unwrap()
    }

    #[test]
    fn group_tables_validate() {
        for g in [
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::alternating(4).unwrap(),
            FiniteGroup::symmetric(5).unwrap(),
        ] {
            let back = FiniteGroup::from_json(&g.to_json()).unwrap();
            assert_eq!(back.order(), g.order());
            assert!(!g.is_abelian());
        }
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_json(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
        // a Latin square that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
    }

    #[test]
    fn symmetric_sets() {
        let z = FiniteGroup::cyclic(12).unwrap();
        assert!(SymmetricSet::new(&z, &[1]).is_err());
        let s = sym(&z, &[0, 3, 6, 9]);
        assert!(s.contains_identity);
        assert_eq!(SymmetricSet::symmetrize(&z, &[1, 2]).unwrap().elements, vec![1, 2, 10, 11]);
    }

    #[test]
    fn cayley_examples() {
        let z7 = FiniteGroup::cyclic(7).unwrap();
        let c = cayley_graph(&z7, &sym(&z7, &[1, 6])).unwrap();
        assert_eq!(c.graph.edges(), generate(&Family::Cycle(7)).unwrap().edges());

        let z9 = FiniteGroup::cyclic(9).unwrap();
        let c = cayley_graph(&z9, &sym(&z9, &(0..9).collect::<Vec<_>>())).unwrap();
        assert!(c.identity_stripped);
        assert_eq!(c.graph.m(), 36);

        let z11 = FiniteGroup::cyclic(11).unwrap();
        let g = cayley_graph(&z11, &sym(&z11, &[1, 10])).unwrap().graph;
        let lmin = *symmetric_eigenvalues(g.adjacency()).last().unwrap();
        assert_abs_diff_eq!(lmin, 2.0 * (10.0 * std::f64::consts::PI / 11.0).cos(), epsilon = 1e-10);
        assert_abs_diff_eq!(lmin, -1.9190, epsilon = 1e-4);

        let d6 = FiniteGroup::dihedral(6).unwrap();
        let refl = sym(&d6, &[6, 7]);
        let g = cayley_graph(&d6, &refl).unwrap().graph;
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn cosine_min_examples() {
        let m = cosine_min(&[1], None).unwrap();
        assert_abs_diff_eq!(m.f, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.x, std::f64::consts::PI, epsilon = 1e-6);

        let m = cosine_min(&[1, 2], None).unwrap();
        assert_abs_diff_eq!(m.f, -1.125, epsilon = 1e-9);
        assert_abs_diff_eq!(m.x.cos(), -0.25, epsilon = 1e-6);
        let f = CosinePolynomial::new(&[1, 2]).unwrap();
        assert_eq!(f.eval(m.x), m.f);

        for k in 1..=20u64 {
            let a: Vec<u64> = (1..=k).collect();
            let m = cosine_min(&a, None).unwrap();
            let dense = (0..100_000).map(|i| CosinePolynomial::new(&a).unwrap().eval(TAU * i as f64 / 1e5)).fold(f64::INFINITY, f64::min);
            assert!(m.f <= dense + 1e-12);
            assert!(m.f >= -1.0 - 1e-9 - 0.5 * (k as f64));
        }
        assert!(cosine_min(&[], None).is_err());
        assert!(cosine_min(&[5], Some(10)).is_err());
    }

    #[test]
    fn cosine_polynomial_basics() {
        let f = CosinePolynomial::new(&[3, 1, 7]).unwrap();
        assert_eq!(f.eval(0.0), 3.0);
        assert_abs_diff_eq!(f.eval(1.3), f.eval(1.3 + TAU), epsilon = 1e-12);
        assert!(CosinePolynomial::new(&[0, 1]).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(8), 11);
        assert_eq!(next_prime(800), 809);
        assert!(!is_prime(1) && is_prime(2) && !is_prime(91));
    }

    #[test]
    fn certificate_examples() {
        let r = chowla_certificate(&[1]).unwrap();
        assert_eq!(r.n, 5);
        assert_abs_diff_eq!(r.lambda_min, 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos(), epsilon = 1e-10);
        assert!(r.residual <= 1e-9);

        let r = chowla_certificate(&[1, 2]).unwrap();
        assert!(r.lambda_min / 2.0 >= -1.125 - 1e-9);
        assert!(r.grid_consistent);

        let r = chowla_certificate(&[3, 6, 9, 12]).unwrap();
        assert!(r.grid_consistent && r.residual <= 1e-9);
        assert!(r.identity_residual <= 1e-9);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["A", "n", "lambda_min", "grid_min", "residual", "bound_target"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn translate_overlap_examples() {
        let z = FiniteGroup::cyclic(23).unwrap();
        let g = cayley_graph(&z, &SymmetricSet::symmetrize(&z, &[1, 2, 3, 4]).unwrap()).unwrap().graph;
        let r = translate_overlap(&[0, 1, 2, 3, 4], &g).unwrap();
        assert_eq!((r.t, r.overlap), (1, 4));
        assert_abs_diff_eq!(r.bound, 2.5);
        assert!(r.holds);

        let r = translate_overlap(&[7], &g).unwrap();
        assert_eq!((r.overlap, r.bound), (0, 0.0));

        assert!(translate_overlap(&[0, 5], &g).is_err());

        // cosets of {0,3,6,9} together with ±1 steps
        let z12 = FiniteGroup::cyclic(12).unwrap();
        let g = cayley_graph(&z12, &SymmetricSet::symmetrize(&z12, &[3, 6]).unwrap()).unwrap().graph;
        let r = translate_overlap(&[0, 3, 6, 9], &g).unwrap();
        assert_eq!((r.t, r.overlap), (3, 4));
    }

    #[test]
    fn m_gamma_examples() {
        let z = FiniteGroup::cyclic(12).unwrap();
        let m = m_gamma(&z, &sym(&z, &[0, 3, 6, 9])).unwrap();
        assert_abs_diff_eq!(m.value, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(m.loopless, 1.0, epsilon = 1e-9);

        let z8 = FiniteGroup::cyclic(8).unwrap();
        let m = m_gamma(&z8, &sym(&z8, &(1..8).collect::<Vec<_>>())).unwrap();
        assert_abs_diff_eq!(m.value, 1.0, epsilon = 1e-9);

        let z6 = FiniteGroup::cyclic(6).unwrap();
        let m = m_gamma(&z6, &sym(&z6, &[1, 5])).unwrap();
        assert_abs_diff_eq!(m.value, 2.0, epsilon = 1e-9);

        // rotations of D_6 form a subgroup
        let d6 = FiniteGroup::dihedral(6).unwrap();
        let m = m_gamma(&d6, &sym(&d6, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_abs_diff_eq!(m.value, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn subgroup_recover_examples() {
        let z = FiniteGroup::cyclic(12).unwrap();
        let r = subgroup_recover(&z, &[0, 4, 8]).unwrap();
        assert_eq!(r.eps, 0.0);
        assert_eq!(r.h.as_deref(), Some(&[0, 4, 8][..]));
        assert_eq!(r.sym_diff, Some(0));

        let r = subgroup_recover(&z, &[0, 4, 8, 1]).unwrap();
        assert_abs_diff_eq!(r.eps, 5.0 / 16.0);
        assert_eq!(r.h.as_deref(), Some(&[0, 4, 8][..]));
        assert_eq!(r.sym_diff, Some(1));

        let z60 = FiniteGroup::cyclic(60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let dense: Vec<usize> = (0..60).filter(|_| rng.random_bool(0.5)).collect();
        let r = subgroup_recover(&z60, &dense).unwrap();
        assert!(r.eps > STABILITY_EPS);
        assert!(r.h.is_none() && r.failure.is_some());
    }

    #[test]
    fn hk_margins() {
        for k in 1..=8 {
            assert!(hk_obstruction(k).unwrap().margin > 0.0);
        }
    }
}
