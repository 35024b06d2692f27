//! Command-line front end for the `movingcurves` library.
//!
//! [`execute`] runs one invocation in-process and returns the exit code with
//! everything that would go to stdout and stderr, so the binary is a thin
//! wrapper and tests need not spawn processes.

pub mod bench;
mod error;
pub mod input;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use movingcurves::implicit::{implicitize, implicitize_moving_lines, tracing_index, ImplicitResult, Method};
use movingcurves::rees::{minimal_generators_with, survey, ScanOptions};
use movingcurves::syzygy::{moving_space, mu_basis};
use movingcurves::ScalarMode;
use serde_json::{json, Value};

pub use error::CliError;
use input::{read_input, stdin_expressions, InputSpec};

#[derive(Debug, Parser)]
#[command(name = "movingcurves", version, about = "Exact implicitization of rational plane curves")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `rational` or `prime:P` for an odd prime P.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for scans and surveys.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Three forms u0 u1 u2 in t0, t1 (or two rational functions of t with
    /// --affine). Read from stdin, one per line, when omitted.
    #[arg(allow_hyphen_values = true)]
    pub exprs: Vec<String>,
    /// Treat the input as x(t) y(t) and homogenize.
    #[arg(long)]
    pub affine: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the input is a parametrization.
    Validate(InputArgs),
    /// Compute the implicit equation.
    Implicitize {
        #[command(flatten)]
        input: InputArgs,
        /// resultant, mubasis, movinglines or all.
        #[arg(long, default_value = "mubasis")]
        method: String,
        /// Also write F(1, x, y) = 0 to this file for a plotting tool.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Compute a mu-basis.
    Mubasis(InputArgs),
    /// Basis of the moving curves of one bidegree.
    MovingSpace {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        tdeg: usize,
        #[arg(long, default_value_t = 1)]
        xdeg: usize,
    },
    /// Minimal generators of the moving-curve ideal in a bidegree box.
    Rees {
        #[command(flatten)]
        input: InputArgs,
        /// Largest t-degree scanned (default d).
        #[arg(long)]
        tmax: Option<usize>,
        /// Largest X-degree scanned (default d).
        #[arg(long)]
        xmax: Option<usize>,
        /// Rescan a box widened by this much and compare.
        #[arg(long)]
        rescan: Option<usize>,
        /// Skip building explicit generator forms.
        #[arg(long)]
        no_representatives: bool,
    },
    /// Estimate the generic fiber size.
    TracingIndex(InputArgs),
    /// Betti profiles of random proper parametrizations.
    Survey {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Keep only samples with this mu.
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Time the three implicitization routes over a degree sweep.
    Bench {
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name) and runs the command. `stdin`
/// is consulted only when a command needs input and none was given.
pub fn execute<I, S>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("movingcurves".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    let mut notes = Vec::new();
    match run(&cli, stdin, &mut notes) {
        Ok(report) => {
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
                Format::Text => report.text.unwrap_or_else(|| render::text(&report.json)),
            };
            Outcome { code: 0, stdout, stderr: note_lines(&notes) }
        }
        Err(e) => {
            let body = match format {
                Format::Json => serde_json::to_string(&e.to_json()).expect("serializable") + "\n",
                Format::Text => format!("error [{}]: {e}\n", e.code()),
            };
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: note_lines(&notes) + &body }
        }
    }
}

/// A command's result: the JSON document, plus a text rendering when the
/// generic one does not fit.
struct Report {
    json: Value,
    text: Option<String>,
}

impl From<Value> for Report {
    fn from(json: Value) -> Self {
        Report { json, text: None }
    }
}

fn note_lines(notes: &[String]) -> String {
    notes.iter().map(|n| format!("note: {n}\n")).collect()
}

fn input_args(cmd: &Command) -> Option<&InputArgs> {
    match cmd {
        Command::Validate(a) | Command::Mubasis(a) | Command::TracingIndex(a) => Some(a),
        Command::Implicitize { input, .. } | Command::MovingSpace { input, .. } | Command::Rees { input, .. } => {
            Some(input)
        }
        Command::Survey { .. } | Command::Bench { .. } => None,
    }
}

fn run(cli: &Cli, stdin: impl FnOnce() -> std::io::Result<String>, notes: &mut Vec<String>) -> Result<Report, CliError> {
    let mode: ScalarMode = cli.field.parse()?;
    let exprs = match input_args(&cli.command) {
        Some(a) if a.exprs.is_empty() => stdin_expressions(&stdin()?),
        Some(a) => a.exprs.clone(),
        None => Vec::new(),
    };
    let input_of = |args: &InputArgs, notes: &mut Vec<String>| -> Result<InputSpec, CliError> {
        let spec = read_input(&exprs, args.affine, mode)?;
        notes.extend(spec.notes.iter().cloned());
        Ok(spec)
    };
    with_jobs(cli.jobs, notes, |notes| dispatch(cli, mode, input_of, notes))
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, notes: &mut Vec<String>, f: impl FnOnce(&mut Vec<String>) -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| f(notes)),
            Err(e) => {
                notes.push(format!("could not build a {n}-thread pool ({e}); using the default"));
                f(notes)
            }
        },
        None => f(notes),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T>(jobs: Option<usize>, notes: &mut Vec<String>, f: impl FnOnce(&mut Vec<String>) -> T) -> T {
    if jobs.is_some() {
        notes.push("built without the parallel feature; --jobs ignored".into());
    }
    f(notes)
}

fn dispatch(
    cli: &Cli,
    mode: ScalarMode,
    input_of: impl Fn(&InputArgs, &mut Vec<String>) -> Result<InputSpec, CliError>,
    notes: &mut Vec<String>,
) -> Result<Report, CliError> {
    let seed = cli.seed;
    let json = match &cli.command {
        Command::Validate(args) => {
            let spec = input_of(args, notes)?;
            json!({
                "valid": true,
                "d": spec.phi.degree(),
                "field": mode.to_string(),
                "u": render::components(&spec.phi),
            })
        }
        Command::Implicitize { input, method, plot } => {
            let spec = input_of(input, notes)?;
            let phi = &spec.phi;
            let methods: Vec<Method> = if method == "all" { Method::ALL.to_vec() } else { vec![method.parse()?] };
            let mut results = Vec::new();
            for m in &methods {
                let (r, size) = match m {
                    Method::MovingLines => {
                        let (mat, r) = implicitize_moving_lines(phi, seed)?;
                        (r, mat.nrows())
                    }
                    _ => {
                        let r = implicitize(phi, *m, seed)?;
                        let size = movingcurves::implicit::route_sizes(phi)?[if *m == Method::Resultant { 0 } else { 1 }];
                        (r, size)
                    }
                };
                results.push((r, size));
            }
            if let Some(path) = plot {
                std::fs::write(path, render::plot_equation(&results[0].0.f) + "\n")?;
                notes.push(format!("wrote F(1, x, y) = 0 to {}", path.display()));
            }
            let docs: Vec<Value> = results.iter().map(|(r, size)| implicit_json(phi.degree(), r, *size)).collect();
            if docs.len() == 1 {
                docs.into_iter().next().unwrap()
            } else {
                let agree = results.windows(2).all(|w| w[0].0.f == w[1].0.f && w[0].0.beta == w[1].0.beta);
                json!({ "d": phi.degree(), "results": docs, "agree": agree })
            }
        }
        Command::Mubasis(args) => {
            let spec = input_of(args, notes)?;
            let b = mu_basis(&spec.phi)?;
            json!({
                "d": spec.phi.degree(),
                "mu": b.mu(),
                "P": b.p().to_string(),
                "Q": b.q().to_string(),
                "P_coeffs": b.p_coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "Q_coeffs": b.q_coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "cross_constant": b.cross_constant().to_string(),
            })
        }
        Command::MovingSpace { input, tdeg, xdeg } => {
            let spec = input_of(input, notes)?;
            let basis = moving_space(&spec.phi, *tdeg, *xdeg);
            json!({
                "d": spec.phi.degree(),
                "tdeg": tdeg,
                "xdeg": xdeg,
                "dim": basis.len(),
                "basis": basis.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            })
        }
        Command::Rees { input, tmax, xmax, rescan, no_representatives } => {
            let spec = input_of(input, notes)?;
            let d = spec.phi.degree();
            let (tmax, xmax) = (tmax.unwrap_or(d), xmax.unwrap_or(d));
            notes.push(format!("scanning bidegrees (t-degree, X-degree) up to ({tmax}, {xmax})"));
            let opts = ScanOptions { rescan: *rescan, representatives: !no_representatives, seed };
            let p = minimal_generators_with(&spec.phi, tmax, xmax, opts)?;
            json!({
                "d": p.d,
                "mu": p.mu,
                "D": p.implicit_degree,
                "box": [tmax, xmax],
                "betti": p.betti.iter().map(|(&(a, b), &k)| json!([a, b, k])).collect::<Vec<_>>(),
                "n0": p.n0(),
                "truncated": p.truncated,
                "t_certified": p.t_certified,
                "rescan_found_more": p.rescan_found_more,
                "generators": p.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            })
        }
        Command::TracingIndex(args) => {
            let spec = input_of(args, notes)?;
            json!({ "d": spec.phi.degree(), "beta": tracing_index(&spec.phi, seed)?, "seed": seed })
        }
        Command::Survey { degree, count, mu } => {
            if !mode.is_rational() {
                return Err(CliError::Usage("survey runs over the rationals only".into()));
            }
            let r = survey(*degree, *count, seed, *mu)?;
            json!({
                "d": r.d,
                "seed": r.seed,
                "count": r.samples.len(),
                "rejected": r.rejected,
                "table": r.table.iter().map(|((n0, b), c)| json!({ "n0": n0, "betti": b, "count": c })).collect::<Vec<_>>(),
                "flagged": r.flagged,
                "samples": r.samples.iter().map(|s| json!({
                    "index": s.index,
                    "u": render::components(&s.phi),
                    "mu": s.mu,
                    "n0": s.n0,
                    "betti": s.betti,
                    "truncated": s.truncated,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Bench { min_degree, max_degree, csv } => {
            let rows = bench::sweep(*min_degree, *max_degree, seed)?;
            if let Some(path) = csv {
                std::fs::write(path, bench::csv(&rows))?;
                notes.push(format!("wrote {} rows to {}", rows.len(), path.display()));
            }
            let json = json!({ "seed": seed, "rows": rows.iter().map(bench::Row::to_json).collect::<Vec<_>>() });
            return Ok(Report { json, text: Some(bench::table(&rows)) });
        }
    };
    Ok(json.into())
}

fn implicit_json(d: usize, r: &ImplicitResult, size: usize) -> Value {
    json!({
        "d": d,
        "method": r.method.to_string(),
        "F": r.f.to_string(),
        "D": r.degree,
        "beta": r.beta,
        "alpha": r.alpha,
        "constant": r.constant.to_string(),
        "raw": r.raw.to_string(),
        "matrix_size": size,
        "checks": {
            "vanishes": r.vanishes,
            "alpha_eq_d": r.alpha.map(|a| a == d),
        },
    })
}
