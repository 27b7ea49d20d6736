//! Densification pipeline: sparse neighbourhood step, potential-driven
//! densification, dense core, balanced complement core and greedy Turán clique.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cuts::maxcut_local_search;
use crate::error::{invalid, Error, Result};
use crate::graphs::Graph;
use crate::spectral::{min_eigenvalue, symmetric_eigen, symmetric_eigenvalues};
use crate::structure::{clique_union_decompose, DecomposeParams};

/// Degree multiplier of the high-degree split.
pub const SPLIT_C: f64 = 5.0;
/// Relative potential gain a phase-1 move must beat.
pub const TOL_POTENTIAL: f64 = 1e-6;
/// Largest density accepted by [`balanced_subgraph`].
pub const BALANCED_MAX_DENSITY: f64 = 0.2;

#[derive(Debug, Clone, Serialize)]
pub struct Guarantee {
    pub claimed: f64,
    pub measured: f64,
    /// `None` when the hypothesis of the bound is not met
    pub met: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Guarantee {
    /// measured ≥ claimed
    fn at_least(claimed: f64, measured: f64) -> Self {
        Guarantee { claimed, measured, met: Some(measured >= claimed - 1e-9 * claimed.abs().max(1.0)), note: None }
    }

    fn at_most(claimed: f64, measured: f64) -> Self {
        Guarantee { claimed, measured, met: Some(measured <= claimed + 1e-9 * claimed.abs().max(1.0)), note: None }
    }

    fn informational(claimed: f64, measured: f64, note: &str) -> Self {
        Guarantee { claimed, measured, met: None, note: Some(note.to_string()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseTrace {
    pub phase: u8,
    pub name: String,
    pub vertices_in: Vec<usize>,
    pub vertices_out: Vec<usize>,
    pub density_in: f64,
    pub density_out: f64,
    pub params: BTreeMap<String, f64>,
    pub guarantee: Guarantee,
    /// phase 1 only: potential after each accepted move
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub potentials: Vec<f64>,
}

impl PhaseTrace {
    fn new(phase: u8, name: &str, g: &Graph, vin: Vec<usize>, vout: Vec<usize>, guarantee: Guarantee) -> Self {
        PhaseTrace {
            phase,
            name: name.to_string(),
            density_in: g.set_density(&vin),
            density_out: g.set_density(&vout),
            vertices_in: vin,
            vertices_out: vout,
            params: BTreeMap::new(),
            guarantee,
            potentials: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Rewrite vertex sets through `map` (local index → outer label).
    fn relabel(mut self, map: &[usize]) -> Self {
        for v in self.vertices_in.iter_mut().chain(self.vertices_out.iter_mut()) {
            *v = map[*v];
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueCertificate {
    pub clique: Vec<usize>,
    pub size: usize,
    pub phases: Vec<PhaseTrace>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    /// vertices added by the final maximal extension
    pub extension: usize,
}

impl CliqueCertificate {
    fn finish(g: &Graph, mut clique: Vec<usize>, phases: Vec<PhaseTrace>, target: Option<f64>, extension: usize) -> Self {
        clique.sort_unstable();
        let verified = g.is_clique(&clique);
        CliqueCertificate { size: clique.len(), clique, phases, verified, target, extension }
    }
}

fn log_potential(g: &Graph, set: &[usize], exponent: f64) -> f64 {
    let p = g.set_density(set);
    if p <= 0.0 {
        f64::NEG_INFINITY
    } else {
        exponent * (set.len() as f64).ln() + p.ln()
    }
}

/// Edges induced by each vertex's open neighbourhood.
fn neighborhood_edges(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .map(|v| {
            let row = g.row(v);
            g.neighbors(v).map(|u| g.row(u).intersection_count(row)).sum::<usize>() / 2
        })
        .collect()
}

fn argmax_lowest(values: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

pub fn phase0_neighborhood(g: &Graph) -> Result<PhaseTrace> {
    if g.m() == 0 {
        return Err(Error::Degenerate("phase 0 needs at least one edge".into()));
    }
    let n = g.n();
    let d = (g.avg_degree().floor() as usize).max(1);
    let x = argmax_lowest(g.degrees().into_iter()).expect("n >= 2");
    let nx: Vec<usize> = g.neighbors(x).collect();
    let mask = g.mask(&nx);
    let mut ranked: Vec<(usize, usize)> = nx.iter().map(|&u| (g.row(u).intersection_count(&mask), u)).collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut s: Vec<usize> = ranked.into_iter().take(d).map(|(_, u)| u).collect();
    s.sort_unstable();

    let lambda_n = symmetric_eigenvalues(g.adjacency()).last().copied().unwrap_or(0.0);
    let es = g.edges_within(&s) as f64;
    let df = d as f64;
    let claimed = df * df / (4.0 * lambda_n.abs());
    let guarantee = if lambda_n * lambda_n <= df / 2.0 {
        Guarantee::at_least(claimed, es)
    } else {
        Guarantee::informational(claimed, es, "lambda_n^2 > d/2")
    };
    Ok(PhaseTrace::new(0, "neighborhood", g, (0..n).collect(), s, guarantee)
        .param("d", df)
        .param("apex", x as f64)
        .param("lambda_n", lambda_n)
        .param("edges_out", es))
}

/// ρ < 1/2, ε + 6γ < 1 and ρ/ε + 2γ/(1−ε−4γ) < 1, all parameters positive.
pub fn check_params(gamma: f64, eps: f64, rho: f64) -> Result<()> {
    if !(gamma > 0.0 && eps > 0.0 && rho > 0.0) {
        return Err(invalid(format!("gamma, eps, rho must be positive (got {gamma}, {eps}, {rho})")));
    }
    if rho >= 0.5 {
        return Err(invalid(format!("rho = {rho} must be below 1/2")));
    }
    if eps + 6.0 * gamma >= 1.0 {
        return Err(invalid(format!("eps + 6 gamma = {} must be below 1", eps + 6.0 * gamma)));
    }
    let mix = rho / eps + 2.0 * gamma / (1.0 - eps - 4.0 * gamma);
    if mix >= 1.0 {
        return Err(invalid(format!("rho/eps + 2 gamma/(1 - eps - 4 gamma) = {mix} must be below 1")));
    }
    Ok(())
}

/// Candidate sets (in `h`'s labels) for one phase-1 round.
fn phase1_moves(h: &Graph, exponent: f64) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut moves = Vec::new();
    let deg = h.degrees();
    let d = h.avg_degree();

    // high-degree split
    let high: Vec<usize> = (0..n).filter(|&v| deg[v] as f64 > SPLIT_C * d).collect();
    if !high.is_empty() {
        moves.push((0..n).filter(|v| !high.contains(v)).collect());
        let want = ((n as f64 / SPLIT_C).ceil() as usize).max(high.len());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        let mut x0 = high.clone();
        for v in order {
            if x0.len() >= want {
                break;
            }
            if !x0.contains(&v) {
                x0.push(v);
            }
        }
        moves.push(x0);
    }

    // densest neighbourhood, closed, padded to max(pn, |N[v]|)
    let inner = neighborhood_edges(h);
    let pn = (h.density() * n as f64).ceil() as usize;
    if let Some(v) = argmax_lowest(inner.iter().copied()) {
        let mut x: Vec<usize> = h.neighbors(v).collect();
        x.push(v);
        let want = pn.max(x.len()).min(n);
        let mut inside = h.mask(&x);
        while x.len() < want {
            let next = (0..n)
                .filter(|&u| !inside.contains(u))
                .max_by(|&a, &b| {
                    let (ca, cb) = (h.row(a).intersection_count(&inside), h.row(b).intersection_count(&inside));
                    ca.cmp(&cb).then(b.cmp(&a))
                })
                .expect("padding candidates remain");
            inside.insert(next);
            x.push(next);
        }
        moves.push(x);
    }
    // best closed neighbourhood already of size >= pn
    let score = |v: usize| {
        let size = (deg[v] + 1) as f64;
        let p = (inner[v] + deg[v]) as f64 / (size * (size - 1.0) / 2.0);
        if p > 0.0 { exponent * size.ln() + p.ln() } else { f64::NEG_INFINITY }
    };
    let best = (0..n)
        .filter(|&v| deg[v] + 1 >= pn && deg[v] > 0)
        .map(|v| (score(v), v))
        .fold(None::<(f64, usize)>, |acc, c| match acc {
            Some(a) if a.0 >= c.0 => Some(a),
            _ => Some(c),
        });
    if let Some((_, v)) = best {
        let mut x: Vec<usize> = h.neighbors(v).collect();
        x.push(v);
        moves.push(x);
    }
    moves
}

pub fn phase1_densify(g: &Graph, gamma: f64, eps: f64, rho: f64) -> Result<PhaseTrace> {
    check_params(gamma, eps, rho)?;
    let exponent = rho / eps;
    let all: Vec<usize> = (0..g.n()).collect();
    let mut cur = all.clone();
    let mut score = log_potential(g, &cur, exponent);
    let mut potentials = vec![score.exp()];
    let mut rounds = 0usize;
    if score.is_finite() {
        let gain = (1.0 + TOL_POTENTIAL).ln();
        loop {
            let h = g.induced_subgraph(&cur)?;
            let best = phase1_moves(&h, exponent)
                .into_iter()
                .map(|m| {
                    let mut set: Vec<usize> = m.into_iter().map(|i| cur[i]).collect();
                    set.sort_unstable();
                    let s = log_potential(g, &set, exponent);
                    (s, set)
                })
                .fold(None::<(f64, Vec<usize>)>, |acc, c| match acc {
                    Some(a) if a.0 >= c.0 => Some(a),
                    _ => Some(c),
                });
            match best {
                Some((s, set)) if s > score + gain => {
                    score = s;
                    cur = set;
                    potentials.push(s.exp());
                    rounds += 1;
                }
                _ => break,
            }
        }
    }
    let nf = g.n() as f64;
    let claimed = nf.powf(1.0 - eps);
    let measured = cur.len() as f64;
    let mut t = PhaseTrace::new(1, "densify", g, all, cur, Guarantee::informational(claimed, measured, "size floor n^(1-eps); constant not explicit"))
        .param("gamma", gamma)
        .param("eps", eps)
        .param("rho", rho)
        .param("C", SPLIT_C)
        .param("rounds", rounds as f64);
    t.guarantee.met = Some(measured >= claimed);
    t.potentials = potentials;
    Ok(t)
}

pub fn phase2_dense_core(g: &Graph, delta: f64) -> Result<PhaseTrace> {
    if !(0.0..1.0).contains(&delta) {
        return Err(invalid(format!("delta = {delta} must lie in [0, 1)")));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let p = g.density();
    let floor = p * g.n() as f64 / 2.0;
    if g.m() == 0 {
        let t = PhaseTrace::new(2, "dense_core", g, all.clone(), all, Guarantee::informational(1.0 - delta, 0.0, "edgeless input"));
        return Ok(t.param("delta", delta));
    }
    let dec = clique_union_decompose(g, &DecomposeParams::default());
    let pick = |blocks: &mut dyn Iterator<Item = &Vec<usize>>| {
        blocks
            .map(|b| (g.set_density(b), b.len(), b))
            .max_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
            .map(|(_, _, b)| b.clone())
    };
    // largest block meeting both size and density, else densest large block, else densest
    let good = dec
        .blocks
        .iter()
        .filter(|b| b.len() as f64 >= floor && g.set_density(b) >= 1.0 - delta)
        .max_by(|a, b| a.len().cmp(&b.len()).then(g.set_density(a).total_cmp(&g.set_density(b))))
        .cloned();
    let large = good.or_else(|| pick(&mut dec.blocks.iter().filter(|b| b.len() as f64 >= floor)));
    let (out, big_enough) = match large {
        Some(b) => (b, true),
        None => (pick(&mut dec.blocks.iter()).unwrap_or_else(|| all.clone()), false),
    };
    let density = g.set_density(&out);
    let mut guarantee = Guarantee::at_least(1.0 - delta, density);
    if !big_enough {
        guarantee.note = Some("no block of size >= pn/2".into());
    }
    Ok(PhaseTrace::new(2, "dense_core", g, all, out, guarantee)
        .param("delta", delta)
        .param("size_floor", floor)
        .param("blocks", dec.blocks.len() as f64))
}

fn balance_ratio(g: &Graph) -> f64 {
    let d = g.avg_degree();
    if d > 0.0 {
        g.max_degree() as f64 / d
    } else {
        0.0
    }
}

/// Δ/d of the induced subgraph on `set` (0 when edgeless).
pub fn balance_constant(g: &Graph, set: &[usize]) -> f64 {
    balance_ratio(&g.induced_subgraph(set).expect("vertices in range"))
}

pub fn balanced_subgraph(g: &Graph) -> Result<PhaseTrace> {
    let p0 = g.density();
    if p0 > BALANCED_MAX_DENSITY {
        return Err(invalid(format!("density {p0} exceeds 1/5")));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let mut cur = all.clone();
    let mut rounds = 0usize;
    // strip set of the current graph, with its density
    let strip = |h: &Graph, p: f64| -> Vec<usize> {
        let cut = (h.n() as f64 - 1.0) * p * (1.0 / p).log2();
        (0..h.n()).filter(|&v| (h.degree(v) as f64) < cut).collect()
    };
    let out = loop {
        let h = g.induced_subgraph(&cur)?;
        let p = h.density();
        if p <= 0.0 {
            break cur;
        }
        let ni = h.n();
        let r = ((ni as f64 / (1.0 / p).log2()).ceil() as usize).min(ni);
        let deg = h.degrees();
        let mut order: Vec<usize> = (0..ni).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        let mut top: Vec<usize> = order[r..].to_vec();
        top.sort_unstable();
        let kept = strip(&h, p);
        let halves = |set: &[usize]| h.set_density(set) < p / 2.0;
        let next = if halves(&top) {
            Some(top)
        } else if kept.len() < ni && halves(&kept) {
            Some(kept.clone())
        } else {
            None
        };
        match next {
            Some(set) => {
                cur = set.into_iter().map(|i| cur[i]).collect();
                rounds += 1;
            }
            None => break kept.into_iter().map(|i| cur[i]).collect(),
        }
    };
    let h = g.induced_subgraph(&out)?;
    let p_out = h.density();
    let c = balance_ratio(&h);
    let claimed = if p_out > 0.0 { 4.0 * (1.0 / p_out).log2() } else { f64::INFINITY };
    let nf = g.n() as f64;
    let size_scale = if g.n() > 1 { nf / nf.log2() } else { 1.0 };
    Ok(PhaseTrace::new(3, "balanced", g, all, out.clone(), Guarantee::at_most(claimed, c))
        .param("C", c)
        .param("p_out", p_out)
        .param("rounds", rounds as f64)
        .param("size_over_n_per_log_n", out.len() as f64 / size_scale))
}

/// Greedy independent set of `comp` inside `core`: repeatedly take the
/// vertex of least degree among the survivors.
fn greedy_turan(comp: &Graph, core: &[usize]) -> Vec<usize> {
    let mut alive = comp.mask(core);
    let mut picked = Vec::new();
    while alive.count_ones(..) > 0 {
        let v = alive
            .ones()
            .min_by_key(|&v| (comp.row(v).intersection_count(&alive), v))
            .expect("alive is nonempty");
        picked.push(v);
        alive.set(v, false);
        for u in comp.neighbors(v) {
            alive.set(u, false);
        }
    }
    picked
}

pub fn phase3_clique(g: &Graph) -> Result<CliqueCertificate> {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    if n == 0 {
        return Ok(CliqueCertificate::finish(g, Vec::new(), Vec::new(), None, 0));
    }
    let comp = g.complement();
    let (core, balanced) = if comp.density() <= BALANCED_MAX_DENSITY {
        let t = balanced_subgraph(&comp)?;
        (t.vertices_out.clone(), Some(t))
    } else {
        (all.clone(), None)
    };
    let clique = greedy_turan(&comp, &core);
    let n3 = core.len() as f64;
    let d3 = if core.len() > 1 {
        2.0 * comp.edges_within(&core) as f64 / n3
    } else {
        0.0
    };
    let claimed = (n3 / (d3 + 1.0)).ceil();
    let mut guarantee = Guarantee::at_least(claimed, clique.len() as f64);
    if g.density() < 1.0 - 1e-6 {
        guarantee.note = Some("input density below 1 - 1e-6".into());
    }
    let mut trace = PhaseTrace::new(3, "turan", g, all, core, guarantee)
        .param("n3", n3)
        .param("complement_avg_degree", d3);
    if let Some(b) = &balanced {
        trace = trace
            .param("C", b.params["C"])
            .param("C_claimed", b.guarantee.claimed)
            .param("balanced_met", if b.guarantee.met == Some(true) { 1.0 } else { 0.0 });
    }
    Ok(CliqueCertificate::finish(g, clique, vec![trace], None, 0))
}

/// Grow `clique` to a maximal clique, always adding the candidate with the
/// most neighbours among the remaining candidates.
pub fn extend_to_maximal(g: &Graph, clique: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut out = clique.to_vec();
    if n == 0 {
        return out;
    }
    if out.is_empty() {
        out.push(argmax_lowest(g.degrees().into_iter()).expect("n >= 1"));
    }
    let mut cand = fixedbitset::FixedBitSet::with_capacity(n);
    cand.insert_range(..);
    for &v in &out {
        cand.intersect_with(g.row(v));
    }
    while let Some(v) = cand
        .ones()
        .max_by(|&a, &b| g.row(a).intersection_count(&cand).cmp(&g.row(b).intersection_count(&cand)).then(b.cmp(&a)))
    {
        out.push(v);
        cand.intersect_with(g.row(v));
    }
    out.sort_unstable();
    out
}

/// Phase 1 with fixed parameters, then phase 3 and maximal extension.
/// Returned indices are `g`'s own.
pub fn extract_clique(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let (gamma, eps, rho) = EXTRACT_PARAMS;
    let p1 = phase1_densify(g, gamma, eps, rho).expect("fixed parameters are admissible");
    let h = g.induced_subgraph(&p1.vertices_out).expect("subset");
    let local = match phase3_clique(&h) {
        Ok(c) => c.clique.into_iter().map(|i| p1.vertices_out[i]).collect(),
        Err(_) => Vec::new(),
    };
    extend_to_maximal(g, &local)
}

/// (γ, ε, ρ) used by [`extract_clique`].
pub const EXTRACT_PARAMS: (f64, f64, f64) = (0.05, 0.1, 0.06);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineMode {
    Eigen,
    Surplus,
}

impl std::str::FromStr for PipelineMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eigen" => Ok(PipelineMode::Eigen),
            "surplus" => Ok(PipelineMode::Surplus),
            _ => Err(invalid(format!("unknown mode {s:?} (eigen|surplus)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PipelineParams {
    pub mode: PipelineMode,
    pub gamma: Option<f64>,
    pub eps: Option<f64>,
    pub rho: Option<f64>,
    pub delta: f64,
    /// local-search seed for the surplus estimate
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams { mode: PipelineMode::Eigen, gamma: None, eps: None, rho: None, delta: 0.05, seed: 0 }
    }
}

pub const GAMMA_RANGE: (f64, f64) = (0.02, 0.09);
pub const SURPLUS_GAMMA_RANGE: (f64, f64) = (0.005, 0.016);

/// Prefix an error with the phase that raised it.
fn in_phase(phase: u8) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("phase {phase}: {m}")),
        Error::Degenerate(m) => Error::Degenerate(format!("phase {phase}: {m}")),
        other => other,
    }
}

pub fn clique_pipeline(g: &Graph, params: &PipelineParams) -> Result<CliqueCertificate> {
    let n = g.n();
    if n == 0 {
        return Err(invalid("empty graph"));
    }
    if g.m() == 0 {
        return Ok(CliqueCertificate::finish(g, vec![0], Vec::new(), Some(1.0), 0));
    }
    let nf = n as f64;
    let d = g.avg_degree();
    let lambda_n = symmetric_eigenvalues(g.adjacency()).last().copied().unwrap_or(0.0);
    let (gamma_measured, surplus) = match params.mode {
        PipelineMode::Eigen => {
            let gm = if d > 1.0 && lambda_n.abs() > 0.0 { lambda_n.abs().ln() / d.ln() } else { 0.0 };
            (gm, None)
        }
        PipelineMode::Surplus => {
            let s = maxcut_local_search(g, params.seed).surplus;
            let gm = if n > 1 && s > 0.0 { (s / nf).ln() / nf.ln() } else { 0.0 };
            (gm, Some(s))
        }
    };
    let (lo, hi) = match params.mode {
        PipelineMode::Eigen => GAMMA_RANGE,
        PipelineMode::Surplus => SURPLUS_GAMMA_RANGE,
    };
    let gamma = params.gamma.unwrap_or(gamma_measured.clamp(lo, hi));
    let eps = params.eps.unwrap_or(2.0 * gamma);
    let rho = params.rho.unwrap_or(match params.mode {
        PipelineMode::Eigen => gamma + 0.01,
        PipelineMode::Surplus => gamma,
    });
    check_params(gamma, eps, rho).map_err(in_phase(1))?;

    let mut phases = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    let sparse = g.density() < nf.powf(-rho);
    if sparse {
        let t = phase0_neighborhood(g).map_err(in_phase(0))?;
        cur = t.vertices_out.clone();
        phases.push(t);
    }
    let target = match params.mode {
        PipelineMode::Eigen if sparse => d.powf(1.0 - 4.0 * gamma),
        PipelineMode::Eigen => nf.powf(1.0 - eps - 2.0 * gamma),
        PipelineMode::Surplus => nf.powf(1.0 - 2.0 * gamma - params.delta),
    };

    let h = g.induced_subgraph(&cur)?;
    let t1 = phase1_densify(&h, gamma, eps, rho).map_err(in_phase(1))?.relabel(&cur);
    cur = t1.vertices_out.clone();
    phases.push(t1);

    let h = g.induced_subgraph(&cur)?;
    let t2 = phase2_dense_core(&h, params.delta).map_err(in_phase(2))?.relabel(&cur);
    cur = t2.vertices_out.clone();
    phases.push(t2);

    let h = g.induced_subgraph(&cur)?;
    let c3 = phase3_clique(&h).map_err(in_phase(3))?;
    let local: Vec<usize> = c3.clique.iter().map(|&i| cur[i]).collect();
    phases.extend(c3.phases.into_iter().map(|t| t.relabel(&cur)));

    let clique = extend_to_maximal(g, &local);
    let extension = clique.len() - local.len();
    let mut cert = CliqueCertificate::finish(g, clique, phases, Some(target), extension);
    if let Some(first) = cert.phases.first_mut() {
        first.params.insert("lambda_n".into(), lambda_n);
        first.params.insert("gamma_measured".into(), gamma_measured);
        if let Some(s) = surplus {
            first.params.insert("surplus".into(), s);
        }
    }
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleHadamard {
    pub n: usize,
    pub lambda_n: f64,
    /// 𝟙ᵀ(B + |λₙ|I)^{∘3}𝟙
    pub total: f64,
    /// 𝟙ᵀB^{∘3}𝟙, 3|λₙ|𝟙ᵀ(B∘B∘I)𝟙, 3λₙ²𝟙ᵀ(B∘I)𝟙, |λₙ|³n
    pub terms: [f64; 4],
    pub expansion: f64,
    pub min_eigenvalue: f64,
}

impl TripleHadamard {
    pub fn nonnegative(&self, tol: f64) -> bool {
        self.total >= -tol * (self.n as f64).powi(3)
    }

    pub fn expansion_matches(&self, tol: f64) -> bool {
        (self.total - self.expansion).abs() <= tol * self.total.abs().max(1.0)
    }
}

/// B = A − λ₁v₁v₁ᵀ and D = (B + |λₙ|I)^{∘3}.
pub fn triple_hadamard_check(g: &Graph) -> Result<TripleHadamard> {
    let n = g.n();
    if n == 0 {
        return Err(invalid("empty graph"));
    }
    let a = g.adjacency();
    let (values, vectors) = symmetric_eigen(a.clone())?;
    let l1 = values[0];
    let ln = values[n - 1].abs();
    let v1 = vectors.column(0);
    let b = &a - l1 * (v1 * v1.transpose());
    let mut shifted = b.clone();
    for i in 0..n {
        shifted[(i, i)] += ln;
    }
    let d = shifted.map(|x| x * x * x);
    let total = d.sum();
    let diag: f64 = (0..n).map(|i| b[(i, i)]).sum();
    let diag_sq: f64 = (0..n).map(|i| b[(i, i)].powi(2)).sum();
    let terms = [b.map(|x| x * x * x).sum(), 3.0 * ln * diag_sq, 3.0 * ln * ln * diag, ln.powi(3) * n as f64];
    Ok(TripleHadamard {
        n,
        lambda_n: -ln,
        total,
        terms,
        expansion: terms.iter().sum(),
        min_eigenvalue: min_eigenvalue(&d),
    })
}

/// Minimum density left after deleting any `k` vertices (exhaustive).
pub fn min_density_after_deletions(g: &Graph, k: usize) -> f64 {
    let n = g.n();
    assert!(n <= 24, "exhaustive deletion check is for small graphs");
    if k >= n.saturating_sub(1) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let full: u32 = (1u32 << n) - 1;
    let mut del: u32 = (1u32 << k) - 1;
    loop {
        let keep: Vec<usize> = (0..n).filter(|&v| (full & !del) >> v & 1 == 1).collect();
        best = best.min(g.set_density(&keep));
        if k == 0 {
            break;
        }
        // next subset of the same size
        let c = del & del.wrapping_neg();
        let r = del + c;
        del = (((r ^ del) >> 2) / c) | r;
        if del > full {
            break;
        }
    }
    best
}
