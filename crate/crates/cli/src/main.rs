use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use eigenclique::chowla::chowla_certificate;
use eigenclique::cuts::{
    bisection_exact_with_cutoff, discrepancy, maxcut_exact_with_cutoff, maxcut_local_search, surplus_lb_spectral,
    within_cap, DEFAULT_C, DISCREPANCY_CUTOFF, EXACT_CUTOFF,
};
use eigenclique::densify::{clique_pipeline, PipelineMode, PipelineParams};
use eigenclique::graphs::{parse_edge_list, write_edge_list, Family, Graph};
use eigenclique::spectral::{default_tol, eigen_bound_report, spectrum, verify_main_inequality};
use eigenclique::structure::{clique_union_decompose, DecomposeParams};
use eigenclique::{generate, Error};

const TOOLKIT: &str = "eigenclique";

#[derive(Parser, Debug)]
#[command(name = "eigenclique", version, about = "Spectral graph-structure analyses with JSON reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// edge-list file
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// report path (default: stdout)
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// numerical tolerance override
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// comma-separated key=value overrides
    #[arg(long, global = true, value_delimiter = ',')]
    params: Vec<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum summary, eigenvalue bounds and the threshold inequality
    Spectrum,
    /// Densification pipeline clique certificate
    Clique,
    /// Cayley-graph certificate for a cosine sum
    Chowla {
        /// positive integers, e.g. 1,2,5
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Maximum cut, surplus bounds and caps
    Maxcut,
    /// Clique-union decomposition
    Decompose,
    /// Bisection width, deficit and discrepancy
    Bisect,
    /// Write a generated graph as an edge list
    Gen {
        /// e.g. gnp:100,0.5,9 or clique-union:64,64,64
        #[arg(long)]
        family: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Clique => "clique",
            Command::Chowla { .. } => "chowla",
            Command::Maxcut => "maxcut",
            Command::Decompose => "decompose",
            Command::Bisect => "bisect",
            Command::Gen { .. } => "gen",
        }
    }

    fn allowed_params(&self) -> &'static [&'static str] {
        match self {
            Command::Spectrum => &["kappa_grid"],
            Command::Clique => &["mode", "gamma", "eps", "rho", "delta"],
            Command::Chowla { .. } => &[],
            Command::Maxcut => &["c", "cutoff"],
            Command::Decompose => &["size_floor", "merge_threshold", "refine", "like_threshold"],
            Command::Bisect => &["cutoff", "disc_cutoff"],
            Command::Gen { .. } => &[],
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Params {
    raw: BTreeMap<String, String>,
}

impl Params {
    fn parse(items: &[String], allowed: &[&str], command: &str) -> CliResult<Self> {
        let mut raw = BTreeMap::new();
        for item in items.iter().filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("parameter {item:?} is not key=value")))?;
            let k = k.trim();
            if !allowed.contains(&k) {
                return Err(CliError::Input(format!(
                    "unknown parameter {k:?} for {command} (allowed: {})",
                    if allowed.is_empty() { "none".to_string() } else { allowed.join(", ") }
                )));
            }
            raw.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Params { raw })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.raw.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Input(format!("parameter {key}={v} has the wrong type"))),
        }
    }
}

struct Outcome {
    report: Value,
    resolved: BTreeMap<String, Value>,
    /// a verified inequality failed
    failed: bool,
}

fn read_graph(cli: &Cli) -> CliResult<Graph> {
    let path = cli.input.as_ref().ok_or_else(|| CliError::Input("--input is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_edge_list(&text)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_spectrum(cli: &Cli, params: &Params) -> CliResult<Outcome> {
    let g = read_graph(cli)?;
    let s = spectrum(&g, cli.tol)?;
    let lambda_n = s.lambda_min();
    let steps: usize = params.get("kappa_grid")?.unwrap_or(9);
    let base = 2.0 * lambda_n.abs() * (g.n() as f64).sqrt();
    let thresholds: Vec<f64> = if lambda_n == 0.0 {
        vec![0.0]
    } else {
        (0..steps).map(|i| base * 2f64.powi(i as i32)).collect()
    };
    let bounds = eigen_bound_report(&g, &s)?;
    let main = verify_main_inequality(&g, &s, &thresholds);
    let check = s.check(&g);
    let failed = bounds.failed() || main.failed();
    let report = json!({
        "n": g.n(),
        "m": g.m(),
        "fingerprint": g.fingerprint(),
        "lambda_max": s.lambda_max(),
        "lambda_min": lambda_n,
        "eigenvalues": s.values,
        "check": check,
        "eigen_bounds": bounds,
        "main_inequality": main,
    });
    let mut resolved = BTreeMap::new();
    resolved.insert("tol".into(), json!(s.tol));
    resolved.insert("kappa_grid".into(), json!(steps));
    resolved.insert("thresholds".into(), json!(thresholds));
    Ok(Outcome { report, resolved, failed })
}

fn cmd_clique(cli: &Cli, params: &Params) -> CliResult<Outcome> {
    let g = read_graph(cli)?;
    let defaults = PipelineParams::default();
    let mode: PipelineMode = match params.raw.get("mode") {
        Some(m) => m.parse()?,
        None => defaults.mode,
    };
    let p = PipelineParams {
        mode,
        gamma: params.get("gamma")?,
        eps: params.get("eps")?,
        rho: params.get("rho")?,
        delta: params.get("delta")?.unwrap_or(defaults.delta),
        seed: cli.seed,
    };
    let cert = clique_pipeline(&g, &p)?;
    let mut resolved = BTreeMap::new();
    resolved.insert("pipeline".into(), to_value(&p));
    Ok(Outcome { failed: !cert.verified, report: to_value(&cert), resolved })
}

fn cmd_chowla(cli: &Cli, set: &str) -> CliResult<Outcome> {
    let mut a = Vec::new();
    for item in set.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v: i64 = item.parse().map_err(|_| CliError::Input(format!("{item:?} is not an integer")))?;
        if v <= 0 {
            return Err(CliError::Input(format!("entries must be positive, got {v}")));
        }
        a.push(v as u64);
    }
    let r = chowla_certificate(&a)?;
    let tol = cli.tol.unwrap_or_else(|| default_tol(r.n as usize));
    let mut resolved = BTreeMap::new();
    resolved.insert("set".into(), json!(r.a));
    resolved.insert("tol".into(), json!(tol));
    Ok(Outcome { failed: r.residual > tol || r.identity_residual > tol, report: to_value(&r), resolved })
}

fn cmd_maxcut(cli: &Cli, params: &Params) -> CliResult<Outcome> {
    let g = read_graph(cli)?;
    let c: f64 = params.get("c")?.unwrap_or(DEFAULT_C);
    let cutoff: usize = params.get("cutoff")?.unwrap_or(EXACT_CUTOFF);
    let cut = if g.n() <= cutoff {
        maxcut_exact_with_cutoff(&g, cutoff)?
    } else {
        maxcut_local_search(&g, cli.seed)
    };
    let (bounds, cap_ok) = if g.n() > 0 {
        let s = spectrum(&g, cli.tol)?;
        let b = surplus_lb_spectral(&g, &s, c);
        let ok = within_cap(cut.surplus, b.ub_surp_quarter, s.tol) && b.certificate_diag_ok;
        (Some(b), ok)
    } else {
        (None, true)
    };
    let cert_failed = cut.certificates.iter().any(|r| r.verdict == eigenclique::Verdict::Fails);
    let report = json!({ "cut": cut, "bounds": bounds, "cap_holds": cap_ok });
    let mut resolved = BTreeMap::new();
    resolved.insert("c".into(), json!(c));
    resolved.insert("cutoff".into(), json!(cutoff));
    Ok(Outcome { report, resolved, failed: !cap_ok || cert_failed })
}

fn cmd_decompose(cli: &Cli, params: &Params) -> CliResult<Outcome> {
    let g = read_graph(cli)?;
    let d = DecomposeParams::default();
    let p = DecomposeParams {
        size_floor: params.get("size_floor")?.or(d.size_floor),
        merge_threshold: params.get("merge_threshold")?.or(d.merge_threshold),
        refine: params.get("refine")?.unwrap_or(d.refine),
        like_threshold: params.get("like_threshold")?.unwrap_or(d.like_threshold),
    };
    let dec = clique_union_decompose(&g, &p);
    let mut resolved = BTreeMap::new();
    resolved.insert("size_floor".into(), json!(dec.size_floor));
    resolved.insert("merge_threshold".into(), json!(dec.merge_threshold));
    resolved.insert("refine".into(), json!(p.refine));
    resolved.insert("like_threshold".into(), json!(p.like_threshold));
    Ok(Outcome { report: to_value(&dec), resolved, failed: false })
}

fn cmd_bisect(cli: &Cli, params: &Params) -> CliResult<Outcome> {
    let g = read_graph(cli)?;
    let cutoff: usize = params.get("cutoff")?.unwrap_or(EXACT_CUTOFF);
    let disc_cutoff: usize = params.get("disc_cutoff")?.unwrap_or(DISCREPANCY_CUTOFF);
    let b = bisection_exact_with_cutoff(&g, cutoff)?;
    let d = if g.n() <= disc_cutoff { Some(discrepancy(&g, cli.seed)) } else { None };
    let tol = cli.tol.unwrap_or_else(|| default_tol(g.n()));
    let failed = b.dfc.is_some_and(|x| x < -tol);
    let report = json!({ "bisection": b, "discrepancy": d });
    let mut resolved = BTreeMap::new();
    resolved.insert("cutoff".into(), json!(cutoff));
    resolved.insert("disc_cutoff".into(), json!(disc_cutoff));
    resolved.insert("tol".into(), json!(tol));
    Ok(Outcome { report, resolved, failed })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for (i, item) in items.iter().enumerate() {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            render_text(item, indent + 2, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {x}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

fn emit(cli: &Cli, body: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let params = Params::parse(&cli.params, cli.command.allowed_params(), cli.command.name())?;
    if let Command::Gen { family } = &cli.command {
        let f: Family = family.parse()?;
        let g = generate(&f)?;
        emit(cli, &write_edge_list(&g))?;
        return Ok(false);
    }
    let outcome = match &cli.command {
        Command::Spectrum => cmd_spectrum(cli, &params)?,
        Command::Clique => cmd_clique(cli, &params)?,
        Command::Chowla { set } => cmd_chowla(cli, set)?,
        Command::Maxcut => cmd_maxcut(cli, &params)?,
        Command::Decompose => cmd_decompose(cli, &params)?,
        Command::Bisect => cmd_bisect(cli, &params)?,
        Command::Gen { .. } => unreachable!("handled above"),
    };
    let config = json!({
        "command": cli.command.name(),
        "input": cli.input.as_ref().map(|p| p.display().to_string()),
        "seed": cli.seed,
        "tol": cli.tol,
        "params": params.raw,
        "resolved": outcome.resolved,
        "format": cli.format,
    });
    let envelope = json!({
        "toolkit": TOOLKIT,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "verdict": if outcome.failed { "fails" } else { "holds" },
        "report": outcome.report,
    });
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&envelope).expect("json") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(&envelope, 0, &mut s);
            s
        }
    };
    emit(cli, &body)?;
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
