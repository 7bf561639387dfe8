use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swkb::catalog::{self, presets, Params};
use swkb_cli::{curves, parse_checks, parse_levels, run, write_report, ConfigError, Curve, Format, RunConfig};

#[derive(Parser)]
#[command(name = "swkb", version, about = "Semiclassical exactness checks for shape-invariant superpotentials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog entries with their default parameters.
    List,
    /// Run one or more comma-separated checks (`all` for every check).
    Check {
        suite: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Shorthand for `check oracle`.
    Oracle {
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Two-column table of W, V-, V+ or eta on a uniform grid.
    Curves {
        #[arg(long)]
        potential: String,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value = "W")]
        what: String,
        /// Grid start; defaults to the entry's sampling window.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recorded reference tables.
    Fixtures {
        #[command(subcommand)]
        cmd: FixtureCmd,
    },
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// Recompute and overwrite the tables.
    Regenerate {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunOpts {
    /// Comma-separated catalog names, or `all`.
    #[arg(long, default_value = "all")]
    potential: String,
    /// k=v[,k=v]; requires a single potential.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Level or inclusive range, e.g. 3 or 1..8.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Comma-separated λ values for the extended check.
    #[arg(long, default_value = "3")]
    lambda: String,
    /// Fill runtime_ms; makes reports differ between runs.
    #[arg(long)]
    timings: bool,
}

fn build_config(suite: &str, o: RunOpts) -> Result<RunConfig, ConfigError> {
    let potentials: Vec<String> = o
        .potential
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let mut cfg = RunConfig {
        checks: parse_checks(suite)?,
        hbar: o.hbar,
        n_range: o.n.as_deref().map(parse_levels).transpose()?,
        tol: o.tol,
        output: o.format.parse::<Format>()?,
        out_path: o.out,
        seed: o.seed,
        workers: o.workers,
        timings: o.timings,
        lambdas: o
            .lambda
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| ConfigError::Invalid(format!("bad lambda `{s}`"))))
            .collect::<Result<_, _>>()?,
        ..RunConfig::default()
    };
    if let Some(p) = o.params {
        let [name] = potentials.as_slice() else {
            return Err(ConfigError::BadParams("--params needs exactly one --potential".into()));
        };
        if name == "all" {
            return Err(ConfigError::BadParams("--params needs a named potential".into()));
        }
        let params: Params = p.parse().map_err(|e: swkb::Error| ConfigError::BadParams(e.to_string()))?;
        cfg.params.insert(name.clone(), params);
    }
    cfg.potentials = potentials;
    Ok(cfg)
}

fn check(suite: &str, opts: RunOpts) -> ExitCode {
    let cfg = match build_config(suite, opts) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    if let Err(e) = write_report(&report, &cfg) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    let s = report.summary;
    eprintln!("{} records: {} passed, {} failed", s.total, s.passed, s.failed);
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn short(x: f64) -> String {
    if x.fract() == 0.0 || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:.4}")
    }
}

fn list() -> ExitCode {
    println!("{:<22} {:<6} {:<26} {:<28} default", "name", "class", "domain", "params");
    for name in catalog::names() {
        let sp = catalog::lookup(name).expect("listed names resolve");
        let d = sp.domain();
        let schema: Vec<String> = sp
            .param_schema()
            .iter()
            .map(|r| if r.rule == "any" { format!("{} any", r.name) } else { r.rule.to_string() })
            .collect();
        let default = presets::default_params(name).map(|p| p.to_string()).unwrap_or_default();
        println!(
            "{:<22} {:<6} {:<26} {:<28} {}",
            name,
            sp.kernel().si_class.to_string(),
            format!("({}, {})", short(d.lo), short(d.hi)),
            schema.join("; "),
            default
        );
    }
    ExitCode::SUCCESS
}

#[allow(clippy::too_many_arguments)]
fn curves_cmd(
    potential: &str,
    params: Option<String>,
    hbar: f64,
    what: &str,
    from: Option<f64>,
    to: Option<f64>,
    points: usize,
    out: Option<PathBuf>,
) -> ExitCode {
    let what: Curve = match what.parse() {
        Ok(w) => w,
        Err(e) => return config_error(e),
    };
    let params: Params = match params {
        Some(p) => match p.parse() {
            Ok(p) => p,
            Err(e) => return config_error(e),
        },
        None => presets::default_params(potential).unwrap_or_default(),
    };
    let window = match (what, catalog::lookup(potential)) {
        (Curve::Eta, _) => (0.2, 8.0),
        (_, Ok(sp)) => sp.kernel().window,
        (_, Err(e)) => return config_error(e),
    };
    let grid = curves::linspace(from.unwrap_or(window.0), to.unwrap_or(window.1), points);
    let table = match curves::emit_curves(potential, &params, hbar, what, &grid) {
        Ok(t) => t,
        Err(e) => return config_error(e),
    };
    let written = match out {
        Some(p) => std::fs::write(p, table),
        None => {
            print!("{table}");
            Ok(())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => config_error(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::List => list(),
        Cmd::Check { suite, opts } => check(&suite, opts),
        Cmd::Oracle { opts } => check("oracle", opts),
        Cmd::Curves { potential, params, hbar, what, from, to, points, out } => {
            curves_cmd(&potential, params, hbar, &what, from, to, points, out)
        }
        Cmd::Fixtures { cmd: FixtureCmd::Regenerate { dir } } => {
            let dir = dir.unwrap_or_else(swkb::fixtures::fixture_dir);
            match swkb::fixtures::regenerate(&dir) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
