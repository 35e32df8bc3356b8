//! Command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::Config;
use crate::enumerate::{self, CandidateFilter, Checkpoint, EnumerateError, QuarticTorsionMode};
use crate::families::{self, FamilyError, FamilyReport, ReportStatus};
use crate::graphs::{self, ArithmeticGraph};
use crate::parity;
use crate::polyz::{self, IntPoly};
use crate::rank1::{self, CertKind, Filter, FundamentalStatus, SearchBounds};
use crate::report::{Provenance, RunReport};
use crate::verify;

pub const WORKERS_ENV: &str = "UNITSUM_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Refused(String),
    #[error("{0} claim(s) failed")]
    Suite(usize),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Suite(_) => 1,
            CliError::Domain(_) | CliError::Io(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Refused(_) => 4,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "unitsum", version, about = "Smallest vanishing sums of units in orders Z[e] of small degree")]
pub struct Cli {
    /// worker threads (default: UNITSUM_WORKERS, else all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// key = value file with default caps
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ell, od and ev of Z[e] with certificates
    Ell(EllArgs),
    /// parity of e or of a power of e
    Parity(ParityArgs),
    /// a parametric family instance, or a sweep over one parameter
    Family(FamilyArgs),
    /// enumerate unit polynomials up to a length cap (JSON lines)
    Enumerate(EnumerateArgs),
    /// unit-difference graphs and cycles
    Graph(GraphArgs),
    /// closed-form bounds
    Bounds(BoundsArgs),
    /// run the claims suite
    VerifyClaims(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EllArgs {
    pub poly: String,
    #[arg(long)]
    pub max_k: Option<u32>,
    #[arg(long)]
    pub window: Option<u32>,
    /// include the parity report of e
    #[arg(long)]
    pub parity: bool,
    /// recorded when fundamentality cannot be decided
    #[arg(long)]
    pub citation: Option<String>,
}

#[derive(Debug, Args)]
pub struct ParityArgs {
    pub poly: String,
    /// parity of e^n
    #[arg(long)]
    pub power: Option<u64>,
    /// find n = 2^m - 1 with e^n even
    #[arg(long)]
    pub even_power: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// quad, cubic, cubic-t, od-infinite, ev4, cyclotomic-odd, special-values
    pub id: String,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long = "A")]
    pub a: Option<String>,
    /// comma-separated intermediate roots
    #[arg(long)]
    pub gaps: Option<String>,
    #[arg(long = "N")]
    pub big_n: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    /// sampled powers for od-infinite
    #[arg(long)]
    pub powers: Option<String>,
    #[arg(long)]
    pub citation: Option<String>,
    /// sweep one parameter: name=lo..hi
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Option<String>,
    /// CSV table instead of JSON
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub k: u32,
    /// length cap; the effective cap is min(16k, cap)
    #[arg(long)]
    pub cap: u64,
    #[arg(long, default_value = "2,3,4", value_delimiter = ',')]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub window: Option<u32>,
    /// classify fields containing i instead of excluding them
    #[arg(long)]
    pub gaussian: bool,
    #[arg(long)]
    pub max_candidates: Option<u128>,
    /// file recording the last emitted candidate
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// continue after the candidate recorded in --checkpoint
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// print graphs in DOT format
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: GraphCommand,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// odd cycle on the partial sums of a smallest odd vanishing sum
    Cycle {
        poly: String,
        #[arg(long, default_value_t = 9)]
        max_k: u32,
    },
    /// the cycle {0, 1, 1 + u, u}
    FourCycle {
        poly: String,
        #[arg(long)]
        scan_cap: Option<u32>,
    },
    /// start from the odd cycle (or the 4-cycle) and extend by two, repeatedly
    Extend {
        poly: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[arg(long)]
        from_four: bool,
        #[arg(long)]
        scan_cap: Option<u32>,
    },
    /// graph on explicit vertices separated by ';'
    Build {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
    },
    /// random vertex sets: no odd cycle shorter than od
    OddGirth {
        poly: String,
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 9)]
        max_k: u32,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long)]
    pub regulator: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub disc: Option<String>,
    /// closed-form lower bounds for multiples of this polynomial
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// run only these claims
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// list claim ids and exit
    #[arg(long)]
    pub list: bool,
}

fn parse_poly(s: &str) -> Result<IntPoly, CliError> {
    polyz::parse_poly(s).map_err(|e| CliError::Parse(format!("{s:?}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn resolve_workers(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(n) = flag {
        if n == 0 {
            return Err(CliError::Parse("--workers must be at least 1".into()));
        }
        return Ok(Some(n));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Parse(format!("{WORKERS_ENV} must be an integer >= 1, got {s:?}"))),
        },
        Err(_) => Ok(None),
    }
}

/// Parses `args` (program name first), runs the command, writes to `out`
/// and `err`, and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => 3,
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| CliError::Parse(e.to_string()))?,
        None => Config::default(),
    };
    let workers = resolve_workers(cli.workers)?;
    let mut buf: Vec<u8> = Vec::new();
    let command = cli.command;
    let result = match workers {
        Some(n) => rank1::with_workers(n, || dispatch(command, &config, &mut buf)),
        None => dispatch(command, &config, &mut buf),
    };
    out.write_all(&buf)?;
    result
}

fn dispatch(command: Command, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    match command {
        Command::Ell(a) => cmd_ell(a, config, out),
        Command::Parity(a) => cmd_parity(a, out),
        Command::Family(a) => cmd_family(a, config, out),
        Command::Enumerate(a) => cmd_enumerate(a, config, out),
        Command::Graph(a) => cmd_graph(a, config, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::VerifyClaims(a) => cmd_verify(a, config, out),
    }
}

fn emit(out: &mut Vec<u8>, r: &RunReport) -> Result<(), CliError> {
    out.write_all(r.to_json().as_bytes())?;
    Ok(())
}

fn search_bounds(max_k: u32, window: Option<u32>, config: &Config) -> Result<SearchBounds, CliError> {
    let mut b = SearchBounds::new(max_k);
    b.exp_window = window.or(config.window).unwrap_or(2 * max_k);
    b.subsum_check_cap = config.subsum_cap;
    b.validate().map_err(domain)?;
    Ok(b)
}

pub fn cmd_ell(a: EllArgs, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    let f = parse_poly(&a.poly)?;
    let citation = a.citation.or_else(|| config.citation.clone());
    let order = rank1::make_order_with(&f, citation.as_deref()).map_err(domain)?;
    let bounds = search_bounds(a.max_k.unwrap_or(config.max_k), a.window, config)?;
    let inv = rank1::invariants_of_order(&order, bounds).map_err(domain)?;
    let mut outputs = json!({"order": order, "invariants": inv});
    if a.parity {
        outputs["parity"] = to_value(&parity::parity_report(&f));
    }
    let provenance = match order.fundamental() {
        FundamentalStatus::Assumed { citation } => Provenance::Assumed {
            citation: citation.clone(),
        },
        _ => Provenance::WithinBounds { bounds },
    };
    let inputs = json!({"poly": f.to_string(), "max_k": bounds.max_k, "window": bounds.exp_window, "subsum_cap": bounds.subsum_check_cap});
    emit(out, &RunReport::new("ell", inputs, provenance, outputs))
}

pub fn cmd_parity(a: ParityArgs, out: &mut Vec<u8>) -> Result<(), CliError> {
    let f = parse_poly(&a.poly)?;
    if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
        return Err(domain("polynomial must be monic and nonconstant"));
    }
    if f.coeff(0).magnitude() != &num_bigint::BigUint::from(1u8) {
        return Err(domain(format!("{f} is not a unit polynomial: f(0) = {}", f.coeff(0))));
    }
    let mut outputs = json!({"unit": parity::parity_report(&f)});
    if let Some(n) = a.power {
        let rep = parity::power_report(&f, n).map_err(domain)?;
        let xn1 = &IntPoly::monomial(1, n as usize) - &IntPoly::one();
        let res = polyz::resultant(&xn1, &f).map_err(domain)?;
        outputs["power"] = json!({
            "n": n,
            "report": rep,
            "resultant_x^n-1": res.to_string(),
            "resultant_even_forces_even": parity::power_even_sufficient(&f, n).map_err(domain)?,
        });
    }
    if a.even_power {
        let (n, mp) = parity::even_power_exponent(&f).map_err(domain)?;
        outputs["even_power"] = json!({"n": n, "minpoly": mp.to_string(), "value_at_one": mp.eval_i64(1).to_string()});
    }
    outputs["norm_two_element"] = to_value(&parity::all_units_even_criterion(&f));
    let inputs = json!({"poly": f.to_string(), "power": a.power, "even_power": a.even_power});
    emit(out, &RunReport::new("parity", inputs, Provenance::Exact, outputs))
}

fn family_error(e: FamilyError) -> CliError {
    domain(e)
}

fn family_provenance(reports: &[FamilyReport]) -> Provenance {
    if reports.iter().any(|r| r.status == ReportStatus::Deviation) {
        return Provenance::Deviation;
    }
    if let Some(c) = reports.iter().find_map(|r| match &r.verification.fundamental {
        Some(FundamentalStatus::Assumed { citation }) => Some(citation.clone()),
        _ => None,
    }) {
        return Provenance::Assumed { citation: c };
    }
    if reports.iter().all(|r| r.verification.lower.is_some() && r.verification.lower == r.verification.upper) {
        Provenance::ClosedForm
    } else {
        Provenance::Exact
    }
}

fn parse_sweep(s: &str) -> Result<(String, i64, i64), CliError> {
    let bad = || CliError::Parse(format!("--sweep expects name=lo..hi, got {s:?}"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || hi - lo > 10_000 {
        return Err(bad());
    }
    Ok((name.trim().to_string(), lo, hi))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    parameter: &'a str,
    value: i64,
    f: String,
    invariant: String,
    claimed: String,
    verified: String,
    lower: String,
    upper: String,
    status: String,
    note: String,
}

fn opt_text<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn cmd_family(a: FamilyArgs, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    for (key, v) in [
        ("k", &a.k),
        ("t", &a.t),
        ("d", &a.d),
        ("A", &a.a),
        ("gaps", &a.gaps),
        ("N", &a.big_n),
        ("n", &a.n),
        ("field", &a.field),
        ("powers", &a.powers),
    ] {
        if let Some(v) = v {
            params.insert(key.into(), v.clone());
        }
    }
    if !families::FAMILY_IDS.contains(&a.id.as_str()) {
        return Err(CliError::Parse(format!(
            "unknown family {:?}; expected one of {}",
            a.id,
            families::FAMILY_IDS.join(", ")
        )));
    }
    let citation = a.citation.clone().or_else(|| config.citation.clone());
    let inputs = json!({"family": a.id, "parameters": params, "sweep": a.sweep});
    let Some(sweep) = &a.sweep else {
        let reports = families::run_family(&a.id, &params, citation.as_deref()).map_err(family_error)?;
        let prov = family_provenance(&reports);
        return emit(out, &RunReport::new("family", inputs, prov, to_value(&reports)));
    };
    let (name, lo, hi) = parse_sweep(sweep)?;
    let mut rows: Vec<Value> = Vec::new();
    let mut all = Vec::new();
    let mut csv_rows = Vec::new();
    for v in lo..=hi {
        let mut p = params.clone();
        p.insert(name.clone(), v.to_string());
        match families::run_family(&a.id, &p, citation.as_deref()) {
            Ok(reports) => {
                for r in &reports {
                    csv_rows.push(CsvRow {
                        family: &a.id,
                        parameter: &name,
                        value: v,
                        f: opt_text(&r.f_text),
                        invariant: to_value(&r.claimed.invariant).as_str().unwrap_or("").to_string(),
                        claimed: r.claimed.value.to_string(),
                        verified: opt_text(&r.verification.value),
                        lower: opt_text(&r.verification.lower),
                        upper: opt_text(&r.verification.upper),
                        status: to_value(&r.status).as_str().unwrap_or("").to_string(),
                        note: r.notes.join("; "),
                    });
                }
                rows.push(json!({"value": v, "reports": reports}));
                all.extend(reports);
            }
            Err(e) => {
                csv_rows.push(CsvRow {
                    family: &a.id,
                    parameter: &name,
                    value: v,
                    f: String::new(),
                    invariant: String::new(),
                    claimed: String::new(),
                    verified: String::new(),
                    lower: String::new(),
                    upper: String::new(),
                    status: "skipped".into(),
                    note: e.to_string(),
                });
                rows.push(json!({"value": v, "skipped": e.to_string()}));
            }
        }
    }
    if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &csv_rows {
            w.serialize(r).map_err(|e| domain(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| domain(e.to_string()))?;
        out.write_all(&bytes)?;
        return Ok(());
    }
    let prov = family_provenance(&all);
    emit(out, &RunReport::new("family", inputs, prov, Value::Array(rows)))
}

pub fn cmd_enumerate(a: EnumerateArgs, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    let mut filter = CandidateFilter::new(a.k, a.degrees.clone(), a.cap);
    if let Some(w) = a.window.or(config.window) {
        filter.window = w;
    }
    filter.max_candidates = a.max_candidates.unwrap_or(config.max_candidates);
    if a.gaussian || config.gaussian_branch {
        filter.quartic_torsion_mode = QuarticTorsionMode::GaussianBranch {
            max_k: config.gaussian_max_k,
            window: config.gaussian_window,
        };
    }
    filter.validate().map_err(domain)?;
    let resume = match (&a.checkpoint, a.resume) {
        (Some(p), true) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?;
            Some(serde_json::from_str::<Checkpoint>(&text).map_err(|e| CliError::Parse(format!("checkpoint: {e}")))?)
        }
        _ => None,
    };
    let header = json!({
        "command": "enumerate",
        "inputs": filter,
        "coverage": format!("all monic f of degree {:?} with |f(0)| = 1 and L(f) <= {}", filter.degrees, filter.length_cap),
        "estimate": enumerate::candidate_count(&filter).to_string(),
        "resumed_after": resume.as_ref().map(|c| c.index),
        "tool_version": crate::report::TOOL_VERSION,
    });
    let mut lines: Vec<u8> = Vec::new();
    writeln!(lines, "{}", serde_json::to_string(&header).expect("json"))?;
    let (mut included, mut hits) = (0usize, 0usize);
    let checkpoint = a.checkpoint.clone();
    let emitted = enumerate::run_enumeration(&filter, resume.as_ref(), |r, cp| {
        included += r.included as usize;
        hits += r.ell_at_most_k() as usize;
        writeln!(lines, "{}", serde_json::to_string(r).expect("json")).map_err(|e| e.to_string())?;
        if let Some(p) = &checkpoint {
            std::fs::write(p, serde_json::to_string(cp).expect("json")).map_err(|e| e.to_string())?;
        }
        Ok(())
    });
    let emitted = match emitted {
        Ok(n) => n,
        Err(e @ EnumerateError::Refused { .. }) => return Err(CliError::Refused(e.to_string())),
        Err(e @ EnumerateError::Checkpoint(_)) => return Err(CliError::Parse(e.to_string())),
        Err(e) => return Err(domain(e)),
    };
    writeln!(
        lines,
        "{}",
        json!({"summary": {"emitted": emitted, "included": included, "ell_at_most_k": hits}})
    )?;
    out.write_all(&lines)?;
    Ok(())
}

fn graph_output(out: &mut Vec<u8>, dot: bool, report: RunReport, g: &ArithmeticGraph) -> Result<(), CliError> {
    if dot {
        out.write_all(g.to_dot().as_bytes())?;
        Ok(())
    } else {
        emit(out, &report)
    }
}

fn od_cycle(order: &rank1::Rank1Order, max_k: u32) -> Result<(rank1::Certificate, ArithmeticGraph), CliError> {
    if let Some(w) = parity::all_units_even_criterion(order.f()) {
        return Err(domain(format!(
            "f({}) = {}: every unit is even, so there is no odd vanishing sum and no odd cycle",
            w.shift, w.value
        )));
    }
    let c = rank1::min_vanishing_length(order, SearchBounds::new(max_k), Filter::OddOnly).map_err(domain)?;
    let Some(terms) = c.terms.clone() else {
        return Err(domain(format!("no odd vanishing sum with at most {max_k} terms")));
    };
    let g = graphs::cycle_from_vanishing_sum(order, &terms).map_err(domain)?;
    Ok((c, g))
}

pub fn cmd_graph(a: GraphArgs, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    let order_of = |s: &str| -> Result<rank1::Rank1Order, CliError> { rank1::make_order(&parse_poly(s)?).map_err(domain) };
    match a.command {
        GraphCommand::Cycle { poly, max_k } => {
            let order = order_of(&poly)?;
            let (c, g) = od_cycle(&order, max_k)?;
            let r = RunReport::new(
                "graph cycle",
                json!({"poly": order.f().to_string(), "max_k": max_k}),
                Provenance::WithinBounds { bounds: SearchBounds::new(max_k) },
                json!({"sum": c, "length": g.len(), "graph": g}),
            );
            graph_output(out, a.dot, r, &g)
        }
        GraphCommand::FourCycle { poly, scan_cap } => {
            let order = order_of(&poly)?;
            let cap = scan_cap.unwrap_or(config.scan_cap);
            let (u, g) = graphs::four_cycle(&order, cap).map_err(domain)?;
            let r = RunReport::new(
                "graph four-cycle",
                json!({"poly": order.f().to_string(), "scan_cap": cap}),
                Provenance::Exact,
                json!({"unit": u.to_string(), "graph": g}),
            );
            graph_output(out, a.dot, r, &g)
        }
        GraphCommand::Extend {
            poly,
            times,
            from_four,
            scan_cap,
        } => {
            let order = order_of(&poly)?;
            let cap = scan_cap.unwrap_or(config.scan_cap);
            let mut g = if from_four {
                graphs::four_cycle(&order, cap).map_err(domain)?.1
            } else {
                od_cycle(&order, 9)?.1
            };
            let mut lengths = vec![g.len()];
            for _ in 0..times {
                g = graphs::extend_cycle_by_two(&order, &g, cap).map_err(domain)?;
                lengths.push(graphs::verify_cycle(&g).map_err(domain)?.len());
            }
            let r = RunReport::new(
                "graph extend",
                json!({"poly": order.f().to_string(), "times": times, "from_four": from_four, "scan_cap": cap}),
                Provenance::Exact,
                json!({"lengths": lengths, "graph": g}),
            );
            graph_output(out, a.dot, r, &g)
        }
        GraphCommand::Build { poly, vertices } => {
            let order = order_of(&poly)?;
            let vs: Vec<IntPoly> = vertices.split(';').map(|s| parse_poly(s.trim())).collect::<Result<_, _>>()?;
            let g = graphs::build_graph(&order, &vs).map_err(domain)?;
            let cycle = graphs::verify_cycle(&g).ok();
            let r = RunReport::new(
                "graph build",
                json!({"poly": order.f().to_string(), "vertices": vs.iter().map(|v| v.to_string()).collect::<Vec<_>>()}),
                Provenance::Exact,
                json!({"graph": g, "is_cycle": cycle.is_some(), "odd_girth": graphs::odd_girth(&g)}),
            );
            graph_output(out, a.dot, r, &g)
        }
        GraphCommand::OddGirth {
            poly,
            trials,
            max_vertices,
            seed,
            max_k,
        } => {
            let order = order_of(&poly)?;
            let bounds = SearchBounds::new(max_k);
            let od = if parity::all_units_even_criterion(order.f()).is_some() {
                None
            } else {
                let c = rank1::min_vanishing_length(&order, bounds, Filter::OddOnly).map_err(domain)?;
                match c.kind {
                    CertKind::ExceedsSearch => c.at_least,
                    _ => c.k,
                }
            };
            let seed = seed.unwrap_or(config.seed);
            let rep = graphs::odd_girth_report(
                &order,
                od,
                seed,
                trials.unwrap_or(config.trials),
                max_vertices.unwrap_or(config.max_vertices),
            )
            .map_err(domain)?;
            let r = RunReport::new(
                "graph odd-girth",
                json!({"poly": order.f().to_string(), "max_k": max_k}),
                Provenance::WithinBounds { bounds },
                to_value(&rep),
            )
            .with_seed(seed);
            emit(out, &r)
        }
    }
}

pub fn cmd_bounds(a: BoundsArgs, out: &mut Vec<u8>) -> Result<(), CliError> {
    let mut outputs = serde_json::Map::new();
    if let Some(reg) = a.regulator {
        let d = a.d.ok_or_else(|| CliError::Parse("--regulator needs --d".into()))?;
        let c = rank1::bounds::upper_bound_constant(d, a.r).map_err(domain)?;
        let v = rank1::min_sum_upper_bound(d, a.r, reg).map_err(domain)?;
        outputs.insert("exponent_constant".into(), json!(c));
        outputs.insert("ell_upper_bound".into(), json!(v));
    }
    if let Some(disc) = &a.disc {
        let d = a.d.ok_or_else(|| CliError::Parse("--disc needs --d".into()))?;
        let disc: num_bigint::BigInt = disc.parse().map_err(|_| CliError::Parse(format!("--disc: {disc:?}")))?;
        let v = rank1::regulator_upper_bound(&disc, d).map_err(domain)?;
        outputs.insert("regulator_upper_bound".into(), json!(v));
    }
    if let Some(p) = &a.poly {
        let f = parse_poly(p)?;
        outputs.insert("closed_form_lower_bound".into(), json!(rank1::closed_form_lower_bound(&f)));
        outputs.insert("length_ratio_lower_bound".into(), json!(rank1::mignotte_lower_bound(&f).to_string()));
        outputs.insert("length".into(), json!(f.length().to_string()));
    }
    if outputs.is_empty() {
        return Err(CliError::Parse("bounds needs --regulator, --disc or --poly".into()));
    }
    let inputs = json!({"d": a.d, "r": a.r, "regulator": a.regulator, "disc": a.disc, "poly": a.poly});
    emit(out, &RunReport::new("bounds", inputs, Provenance::Exact, Value::Object(outputs)))
}

pub fn cmd_verify(a: VerifyArgs, config: &Config, out: &mut Vec<u8>) -> Result<(), CliError> {
    if a.list {
        for (id, desc, _) in verify::CLAIMS {
            writeln!(out, "{id}\t{desc}")?;
        }
        return Ok(());
    }
    let seed = a.seed.unwrap_or(config.seed);
    let suite = verify::run_claims(&a.only, seed).map_err(CliError::Parse)?;
    let prov = if suite.deviations > 0 {
        Provenance::Deviation
    } else {
        Provenance::Exact
    };
    let failed = suite.failed;
    let r = RunReport::new("verify-claims", json!({"only": a.only}), prov, to_value(&suite)).with_seed(seed);
    emit(out, &r)?;
    if failed > 0 {
        return Err(CliError::Suite(failed));
    }
    Ok(())
}
