//! Command-line front end: integrate / variation / rule / certify / sweep /
//! sharpness with JSON or CSV payloads on stdout and diagnostics on stderr.
//!
//! Exit codes: 0 success (verdicts all holds or equality), 1 at least one
//! violation verdict, 2 invalid input or configuration, 3 oracle
//! non-convergence.

use crate::bounds::TheoremId;
use crate::catalog::{parse_id, CatalogEntry};
use crate::certify::{self, GridSpec, Verdict};
use crate::oracle;
use crate::rules::{self, NodeTriple, Preset};
use crate::variation::{self, PExponent};
use crate::{Error, Interval, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "rsquad", version, about = "two-point quadrature for Riemann-Stieltjes integrals with certified error bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the integral oracle for a pair of catalog maps.
    Integrate(Flags),
    /// Compute a p-variation estimate for one catalog map.
    Variation(Flags),
    /// Evaluate the two-point rule and its remainder (composite with --n).
    Rule(Flags),
    /// Produce a single bound certificate.
    Certify(Flags),
    /// Certify a theorem over a node grid; CSV by default via --format.
    Sweep(Flags),
    /// Run the equality-attaining extremal configurations.
    Sharpness(Flags),
}

#[derive(Debug, Args, Default, Clone)]
struct Flags {
    /// JSON config file; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Integrand catalog id, e.g. power:r=0.5
    #[arg(long)]
    f: Option<String>,
    /// Integrator catalog id, e.g. poly:1x
    #[arg(long)]
    u: Option<String>,
    /// Interval left endpoint (default 0).
    #[arg(long)]
    a: Option<f64>,
    /// Interval right endpoint (default 1).
    #[arg(long)]
    b: Option<f64>,
    /// Node triple t0,x,t1
    #[arg(long)]
    nodes: Option<String>,
    /// Node preset name[:params], e.g. quartile or half-nodes:0.5
    #[arg(long)]
    preset: Option<String>,
    /// Theorem id (thm1, thm1-safe, thm2, thm3, thm4, thm4-safe, thm5,
    /// lemma1, lemma2, cor4, eq3.6, eq3.7).
    #[arg(long)]
    thm: Option<String>,
    /// Variation/norm exponent p >= 1 ("inf" allowed for variation).
    #[arg(long)]
    p: Option<f64>,
    /// Explicit Hoelder exponent for eq3.6 style presets.
    #[arg(long)]
    r: Option<f64>,
    /// Composite cell count for the rule subcommand.
    #[arg(long)]
    n: Option<u32>,
    /// Oracle tolerance (default RSQUAD_TOL or 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    /// Grid spec axis:lo:hi:steps,... with axes t0, x, t1.
    #[arg(long)]
    grid: Option<String>,
    /// Write the payload to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json (default) or csv (sweeps only).
    #[arg(long)]
    format: Option<String>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long)]
    dump_config: bool,
}

/// Flat, serializable mirror of the flag set; what --dump-config emits and
/// --config loads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    pub a: f64,
    pub b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm: Option<String>,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    pub format: String,
}

fn env_tol() -> f64 {
    std::env::var("RSQUAD_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

fn effective_config(flags: &Flags) -> Result<ExperimentConfig> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig {
            a: 0.0,
            b: 1.0,
            p: 1.0,
            tol: env_tol(),
            format: "json".into(),
            ..Default::default()
        },
    };
    if flags.f.is_some() {
        cfg.f = flags.f.clone();
    }
    if flags.u.is_some() {
        cfg.u = flags.u.clone();
    }
    if let Some(a) = flags.a {
        cfg.a = a;
    }
    if let Some(b) = flags.b {
        cfg.b = b;
    }
    if flags.nodes.is_some() {
        cfg.nodes = flags.nodes.clone();
    }
    if flags.preset.is_some() {
        cfg.preset = flags.preset.clone();
    }
    if flags.thm.is_some() {
        cfg.thm = flags.thm.clone();
    }
    if let Some(p) = flags.p {
        cfg.p = p;
    }
    if flags.r.is_some() {
        cfg.r = flags.r;
    }
    if flags.n.is_some() {
        cfg.n = flags.n;
    }
    if let Some(t) = flags.tol {
        cfg.tol = t;
    }
    if flags.grid.is_some() {
        cfg.grid = flags.grid.clone();
    }
    if let Some(fm) = &flags.format {
        cfg.format = fm.clone();
    }
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidConfig(format!("tol must be positive, got {}", cfg.tol)));
    }
    if cfg.format != "json" && cfg.format != "csv" {
        return Err(Error::InvalidConfig(format!("format must be json or csv, got {}", cfg.format)));
    }
    Ok(cfg)
}

fn interval_of(cfg: &ExperimentConfig) -> Result<Interval> {
    Interval::new(cfg.a, cfg.b)
}

fn entry_of(id: &Option<String>, which: &str, iv: Interval) -> Result<CatalogEntry> {
    let id = id
        .as_deref()
        .ok_or_else(|| Error::MissingInput(format!("--{which} is required")))?;
    parse_id(id, iv)
}

fn nodes_of(cfg: &ExperimentConfig, iv: Interval) -> Result<NodeTriple> {
    if let Some(raw) = &cfg.nodes {
        let parts: Vec<f64> = raw
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidConfig(format!("--nodes: {e}")))?;
        if parts.len() != 3 {
            return Err(Error::InvalidConfig("--nodes needs t0,x,t1".into()));
        }
        return NodeTriple::new(parts[0], parts[1], parts[2], iv);
    }
    if let Some(p) = &cfg.preset {
        return Preset::parse(p)?.nodes(iv);
    }
    Err(Error::MissingInput("either --nodes or --preset is required".into()))
}

fn theorem_of(cfg: &ExperimentConfig) -> Result<TheoremId> {
    cfg.thm
        .as_deref()
        .ok_or_else(|| Error::MissingInput("--thm is required".into()))?
        .parse()
}

fn grid_of(cfg: &ExperimentConfig, iv: Interval) -> Result<GridSpec> {
    let Some(raw) = &cfg.grid else {
        return Ok(GridSpec::cube(iv, 21));
    };
    let mut grid = GridSpec::cube(iv, 21);
    for part in raw.split(',') {
        let fields: Vec<&str> = part.split(':').collect();
        if fields.len() != 4 {
            return Err(Error::InvalidConfig(format!(
                "grid axis {part} must be axis:lo:hi:steps"
            )));
        }
        let lo: f64 = fields[1].parse().map_err(|e| Error::InvalidConfig(format!("{part}: {e}")))?;
        let hi: f64 = fields[2].parse().map_err(|e| Error::InvalidConfig(format!("{part}: {e}")))?;
        let steps: u32 = fields[3].parse().map_err(|e| Error::InvalidConfig(format!("{part}: {e}")))?;
        if !(lo <= hi) || steps == 0 {
            return Err(Error::InvalidConfig(format!("grid axis {part}: need lo <= hi, steps >= 1")));
        }
        let ax = certify::AxisSpec { lo, hi, steps };
        match fields[0] {
            "t0" => grid.t0 = ax,
            "x" => grid.x = ax,
            "t1" => grid.t1 = ax,
            other => return Err(Error::InvalidConfig(format!("unknown grid axis {other}"))),
        }
    }
    Ok(grid)
}

fn emit(cfg: &ExperimentConfig, out: &Option<PathBuf>, payload: &str) -> Result<()> {
    let _ = cfg;
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => println!("{payload}"),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable payload")
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonConvergence { .. } => 3,
        _ => 2,
    }
}

fn verdict_exit(verdicts: impl Iterator<Item = Verdict>) -> i32 {
    let mut any_violation = false;
    for v in verdicts {
        if v == Verdict::Violated {
            any_violation = true;
        }
    }
    if any_violation {
        1
    } else {
        0
    }
}

fn run_command(cmd: &Command) -> Result<i32> {
    let flags = match cmd {
        Command::Integrate(f)
        | Command::Variation(f)
        | Command::Rule(f)
        | Command::Certify(f)
        | Command::Sweep(f)
        | Command::Sharpness(f) => f,
    };
    let cfg = effective_config(flags)?;
    if flags.dump_config {
        emit(&cfg, &flags.out, &json(&cfg))?;
        return Ok(0);
    }
    let iv = interval_of(&cfg)?;
    match cmd {
        Command::Integrate(_) => {
            let f = entry_of(&cfg.f, "f", iv)?;
            let u = entry_of(&cfg.u, "u", iv)?;
            let res = oracle::rs_integral(&f.map, &u.map, iv.a, iv.b, cfg.tol)?;
            emit(&cfg, &flags.out, &json(&res))?;
            Ok(0)
        }
        Command::Variation(_) => {
            let f = entry_of(&cfg.f, "f", iv)?;
            let p = PExponent::finite(cfg.p).map_err(|_| Error::InvalidConfig(format!("p = {}", cfg.p)))?;
            let est = variation::p_variation(&f.map, p, iv.a, iv.b)?;
            emit(&cfg, &flags.out, &json(&est))?;
            Ok(0)
        }
        Command::Rule(_) => {
            let f = entry_of(&cfg.f, "f", iv)?;
            let u = entry_of(&cfg.u, "u", iv)?;
            match cfg.n {
                Some(n) if n > 1 => {
                    let preset = Preset::parse(
                        cfg.preset
                            .as_deref()
                            .ok_or_else(|| Error::MissingInput("composite rule needs --preset".into()))?,
                    )?;
                    let res = rules::composite_rule(&f.map, &u.map, iv, n, preset, cfg.tol)?;
                    emit(&cfg, &flags.out, &json(&res))?;
                }
                _ => {
                    let nodes = nodes_of(&cfg, iv)?;
                    let res = rules::remainder(&f.map, &u.map, &nodes, cfg.tol)?;
                    emit(&cfg, &flags.out, &json(&res))?;
                }
            }
            Ok(0)
        }
        Command::Certify(_) => {
            let f = entry_of(&cfg.f, "f", iv)?;
            let u = entry_of(&cfg.u, "u", iv)?;
            let nodes = nodes_of(&cfg, iv)?;
            let thm = theorem_of(&cfg)?;
            let cert = certify::certify_one(&f, &u, &nodes, thm, cfg.p, cfg.tol)?;
            let code = verdict_exit(std::iter::once(cert.verdict));
            emit(&cfg, &flags.out, &json(&cert))?;
            Ok(code)
        }
        Command::Sweep(_) => {
            let f = entry_of(&cfg.f, "f", iv)?;
            let u = entry_of(&cfg.u, "u", iv)?;
            let thm = theorem_of(&cfg)?;
            let grid = grid_of(&cfg, iv)?;
            let report = certify::sweep(&f, &u, iv, thm, &grid, cfg.p, cfg.tol)?;
            let payload = if cfg.format == "csv" {
                certify::sweep_csv(&report)
            } else {
                json(&report)
            };
            let code = verdict_exit(report.certificates.iter().map(|c| c.verdict));
            emit(&cfg, &flags.out, &payload)?;
            Ok(code)
        }
        Command::Sharpness(_) => {
            let records = certify::sharpness_suite(cfg.tol)?;
            let code = verdict_exit(records.iter().map(|r| r.verdict));
            emit(&cfg, &flags.out, &json(&records))?;
            Ok(code)
        }
    }
}

/// Parses argv, runs one subcommand, returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
