//! Dense simple graphs, deterministic generators and edge-list I/O.

use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};

/// Undirected simple graph on vertices `0..n`, stored as adjacency bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub max_degree_complement: usize,
    /// min(Δ(G), Δ(complement))
    pub delta_star: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
            m: 0,
            labels: None,
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph from a dense 0/1 predicate over unordered pairs.
    pub fn from_fn(n: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if adj(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        if !self.rows[u].contains(v) {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
            self.m += 1;
        }
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        if self.rows[u].contains(v) {
            self.rows[u].set(v, false);
            self.rows[v].set(u, false);
            self.m -= 1;
        }
    }

    /// Flip the pair `{u,v}`; returns whether it is an edge afterwards.
    pub fn toggle_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n);
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
            false
        } else {
            self.add_edge(u, v);
            true
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(invalid(format!("{} labels for {} vertices", labels.len(), self.n)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.rows[u].ones().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Edge density m / C(n,2); zero for n < 2.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m as f64 / pairs(self.n) as f64
        }
    }

    pub fn avg_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n as f64
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = self.max_degree();
        let min_degree = (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0);
        let max_degree_complement = if self.n == 0 { 0 } else { self.n - 1 - min_degree };
        GraphStats {
            n: self.n,
            m: self.m,
            density: self.density(),
            avg_degree: self.avg_degree(),
            max_degree,
            max_degree_complement,
            delta_star: max_degree.min(max_degree_complement),
        }
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for u in 0..self.n {
            for v in self.rows[u].ones() {
                a[(u, v)] = 1.0;
            }
        }
        a
    }

    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.n);
        for u in 0..self.n {
            let mut r = self.rows[u].clone();
            r.toggle_range(..);
            r.set(u, false);
            rows.push(r);
        }
        Graph {
            n: self.n,
            rows,
            m: pairs(self.n) - self.m,
            labels: self.labels.clone(),
        }
    }

    /// G[U] with vertices renumbered in ascending original order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(invalid(format!("vertex {bad} outside 0..{}", self.n)));
        }
        let k = sorted.len();
        let mut g = Graph::empty(k);
        for (a, &u) in sorted.iter().enumerate() {
            for (b, &v) in sorted.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|l| sorted.iter().map(|&v| l[v].clone()).collect());
        Ok(g)
    }

    /// Number of edges inside `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mask = self.mask(set);
        let mut twice = 0;
        for &v in set {
            twice += self.rows[v].intersection_count(&mask);
        }
        twice / 2
    }

    /// Number of edges with one end in `x` and one in `y` (assumed disjoint).
    pub fn edges_between(&self, x: &[usize], y: &[usize]) -> usize {
        let mask = self.mask(y);
        x.iter().map(|&v| self.rows[v].intersection_count(&mask)).sum()
    }

    pub fn set_density(&self, set: &[usize]) -> f64 {
        if set.len() < 2 {
            0.0
        } else {
            self.edges_within(set) as f64 / pairs(set.len()) as f64
        }
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn mask(&self, set: &[usize]) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.n);
        for &v in set {
            mask.insert(v);
        }
        mask
    }

    /// SHA-256 over `n` and the sorted edge list, hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for (u, v) in self.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
        }
        h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

impl Graph {
    /// Exact clique number by branch and bound; `None` above 64 vertices.
    pub fn clique_number_small(&self) -> Option<usize> {
        if self.n > 64 {
            return None;
        }
        let adj: Vec<u64> = (0..self.n)
            .map(|u| self.rows[u].ones().fold(0u64, |acc, v| acc | (1 << v)))
            .collect();
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut best = 0;
        grow_clique(&adj, all, 0, &mut best);
        Some(best)
    }

    pub fn independence_number_small(&self) -> Option<usize> {
        self.complement().clique_number_small()
    }
}

fn grow_clique(adj: &[u64], mut cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        grow_clique(adj, cand & adj[v], size + 1, best);
    }
}

pub fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Named graph families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    CliqueUnion(Vec<usize>),
    /// Complete r-partite graph on n vertices; `strict` rejects r ∤ n.
    Turan { r: usize, n: usize, strict: bool },
    Gnp { n: usize, p: f64, seed: u64 },
    /// 2k-clique plus an apex joined to k of its vertices.
    Hk(usize),
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Empty(usize),
    Star(usize),
    Petersen,
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::CliqueUnion(ref sizes) => {
            if sizes.contains(&0) {
                return Err(invalid("clique sizes must be positive"));
            }
            let n: usize = sizes.iter().sum();
            let mut g = Graph::empty(n);
            let mut start = 0;
            for &s in sizes {
                for u in start..start + s {
                    for v in u + 1..start + s {
                        g.add_edge(u, v);
                    }
                }
                start += s;
            }
            Ok(g)
        }
        Family::Turan { r, n, strict } => {
            if r == 0 {
                return Err(invalid("Turan graph needs r >= 1"));
            }
            if strict && n % r != 0 {
                return Err(invalid(format!("r = {r} does not divide n = {n}")));
            }
            // vertex v lies in part v mod r, so part sizes differ by at most one
            Ok(Graph::from_fn(n, |i, j| i % r != j % r))
        }
        Family::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("edge probability {p} outside [0,1]")));
            }
            Ok(gnp(n, p, seed))
        }
        Family::Hk(k) => {
            if k == 0 {
                return Err(invalid("H_k needs k >= 1"));
            }
            let mut g = Graph::empty(2 * k + 1);
            for u in 0..2 * k {
                for v in u + 1..2 * k {
                    g.add_edge(u, v);
                }
            }
            for u in 0..k {
                g.add_edge(u, 2 * k);
            }
            Ok(g)
        }
        Family::Complete(n) => Ok(Graph::from_fn(n, |_, _| true)),
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Ok(Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1)))
        }
        Family::Path(n) => Ok(Graph::from_fn(n, |i, j| j == i + 1)),
        Family::Empty(n) => Ok(Graph::empty(n)),
        Family::Star(leaves) => Ok(Graph::from_fn(leaves + 1, |i, _| i == 0)),
        Family::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            Graph::from_edge_list(10, &edges)
        }
    }
}

/// G(n,p) where pair `{i,j}` (i < j) is decided by the 64-bit word at
/// index j(j-1)/2 + i of the ChaCha8 stream keyed by `seed`.
fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for j in 1..n {
        let base = (j * (j - 1) / 2) as u128;
        rng.set_word_pos(2 * base);
        for i in 0..j {
            let x = rng.next_u64();
            let u = (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                g.add_edge(i, j);
            }
        }
    }
    g
}

impl FromStr for Family {
    type Err = Error;

    /// `name[:args]`, e.g. `clique-union:30,20`, `gnp:100,0.5,7`, `turan:3,30`,
    /// `hk:4`, `complete:5`, `cycle:5`, `path:4`, `empty:3`, `star:5`, `petersen`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let int = |i: usize| -> Result<usize> {
            nums.get(i)
                .ok_or_else(|| invalid(format!("family '{name}' is missing argument {}", i + 1)))?
                .parse::<usize>()
                .map_err(|e| invalid(format!("family '{name}': {e}")))
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("family '{name}' takes {k} arguments, got {}", nums.len())))
            }
        };
        let fam = match name.trim().to_ascii_lowercase().as_str() {
            "clique-union" | "cliques" => {
                let sizes = (0..nums.len()).map(int).collect::<Result<Vec<_>>>()?;
                if sizes.is_empty() {
                    return Err(invalid("clique-union needs at least one size"));
                }
                Family::CliqueUnion(sizes)
            }
            "turan" => {
                arity(2)?;
                Family::Turan { r: int(0)?, n: int(1)?, strict: false }
            }
            "gnp" => {
                arity(3)?;
                let p = nums[1].parse::<f64>().map_err(|e| invalid(format!("gnp p: {e}")))?;
                let seed = nums[2].parse::<u64>().map_err(|e| invalid(format!("gnp seed: {e}")))?;
                Family::Gnp { n: int(0)?, p, seed }
            }
            "hk" => {
                arity(1)?;
                Family::Hk(int(0)?)
            }
            "complete" => {
                arity(1)?;
                Family::Complete(int(0)?)
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(int(0)?)
            }
            "path" => {
                arity(1)?;
                Family::Path(int(0)?)
            }
            "empty" => {
                arity(1)?;
                Family::Empty(int(0)?)
            }
            "star" => {
                arity(1)?;
                Family::Star(int(0)?)
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            other => return Err(invalid(format!("unknown graph family '{other}'"))),
        };
        Ok(fam)
    }
}

/// Parse the `n m` / `u v` edge-list format. Lines starting with `#` and
/// blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing 'n m' header".into(),
    })?;
    let (n, m) = two_ints(hline, header)?;
    let mut g = Graph::empty(n);
    let mut count = 0;
    let mut last_line = hline;
    for (line, l) in lines {
        let (u, v) = two_ints(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse { line, message: format!("vertex out of range 0..{n}") });
        }
        if u == v {
            return Err(Error::Parse { line, message: format!("self-loop at vertex {u}") });
        }
        g.add_edge(u, v);
        count += 1;
        last_line = line;
    }
    if count != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {m} edges but {count} were listed"),
        });
    }
    Ok(g)
}

fn two_ints(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse { line, message: format!("missing {what}") })?;
        tok.parse::<usize>()
            .map_err(|e| Error::Parse { line, message: format!("bad {what} '{tok}': {e}") })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse { line, message: "expected exactly two fields".into() });
    }
    Ok((a, b))
}

/// Serialize in the same format, edges sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}
