//! The `bk` command-line tool.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use bochner::measures::{root_measure, ArcsineLaw};
use bochner::poly::parse_decimal;
use bochner::report::{self, parse_complex, Analysis, Settings};
use bochner::roots::DEFAULT_PRECISION_CEILING;
use bochner::{Degeneracy, DiffOperator, Error, Family};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

mod svg;

pub const PRECISION_ENV: &str = "BK_PRECISION_CEILING";
pub const DEFAULT_PROBES: &str = "2,1+i,-3,10";

#[derive(Debug, Parser)]
#[command(
    name = "bk",
    version,
    about = "Eigenpolynomials of polynomial-coefficient differential operators and their zeros"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check deg a_k <= k and report spectral growth.
    Validate(OpArgs),
    /// Print the monic degree-n eigenpolynomial.
    Eigen {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_degenerate: bool,
    },
    /// Roots, KS distance, max radius and Cauchy residuals per degree.
    Zerodist(RunArgs),
    /// Rescaled-measure convergence over a list of degrees.
    Sweep(RunArgs),
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// Catalog tag such as `hermite` or `jacobi:alpha=1,beta=2`, or inline JSON.
    #[arg(long, conflicts_with = "op_file", required_unless_present = "op_file")]
    pub op: Option<String>,
    /// JSON operator file: {"terms":[{"k":2,"coeffs":["1","0","-1"]}, ...]}.
    #[arg(long)]
    pub op_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub op: OpArgs,
    /// Strictly increasing degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    /// Arcsine law bounds `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub law: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Probe points as `re+imi`, comma separated.
    #[arg(long, default_value = DEFAULT_PROBES, allow_hyphen_values = true)]
    pub probes: String,
    #[arg(long, default_value = "bk-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub allow_degenerate: bool,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const NOT_ADMISSIBLE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const NOT_CERTIFIED: i32 = 4;
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotAdmissible(_) => exit::NOT_ADMISSIBLE,
            Error::DegenerateSpectrum { .. } => exit::DEGENERATE,
            Error::NoConvergence { .. } => exit::NOT_CERTIFIED,
            _ => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<bochner::ParseError> for Failure {
    fn from(e: bochner::ParseError) -> Self {
        Failure::usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs a parsed command, writing human output to `out`.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> CliResult<i32> {
    match cli.command {
        Command::Validate(op) => validate(&op, out),
        Command::Eigen {
            op,
            n,
            allow_degenerate,
        } => eigen(&op, n, allow_degenerate, out),
        Command::Zerodist(args) => zerodist(&args, out),
        Command::Sweep(args) => sweep(&args, out),
    }
}

fn write_line(out: &mut dyn std::io::Write, s: &str) -> CliResult<()> {
    writeln!(out, "{s}").map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

/// Resolves the operator and a description of where it came from.
pub fn load_operator(args: &OpArgs) -> CliResult<(DiffOperator, String)> {
    if let Some(path) = &args.op_file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let op = DiffOperator::from_json(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        return Ok((op, format!("file:{}", path.display())));
    }
    let tag = args
        .op
        .as_deref()
        .ok_or_else(|| Failure::usage("need --op or --op-file"))?;
    if tag.trim_start().starts_with('{') {
        return Ok((DiffOperator::from_json(tag)?, "inline".to_string()));
    }
    let family: Family = tag.parse()?;
    Ok((family.bochner_operator()?, family.to_string()))
}

fn validate(args: &OpArgs, out: &mut dyn std::io::Write) -> CliResult<i32> {
    let (op, _) = load_operator(args)?;
    let report = op.validate();
    write_line(
        out,
        &serde_json::to_string(&report).expect("report serializes"),
    )?;
    Ok(if report.admissible {
        exit::OK
    } else {
        exit::NOT_ADMISSIBLE
    })
}

#[derive(Serialize)]
struct EigenOutput {
    n: usize,
    eigenvalue: String,
    coeffs: bochner::Poly,
    display: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    free_indices: Vec<usize>,
}

fn eigen(
    args: &OpArgs,
    n: usize,
    allow_degenerate: bool,
    out: &mut dyn std::io::Write,
) -> CliResult<i32> {
    let (op, _) = load_operator(args)?;
    let mode = if allow_degenerate {
        Degeneracy::ZeroFree
    } else {
        Degeneracy::Reject
    };
    let e = op.eigenpolynomial_with(n, mode)?;
    let display = e.poly.to_string();
    write_line(out, &display)?;
    let json = EigenOutput {
        n,
        eigenvalue: e.eigenvalue.to_string(),
        coeffs: e.poly,
        display,
        free_indices: e.free_indices,
    };
    write_line(
        out,
        &serde_json::to_string(&json).expect("eigen output serializes"),
    )?;
    Ok(exit::OK)
}

/// The resolved configuration embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub op_source: String,
    pub n_list: Vec<usize>,
    pub target_digits: u32,
    pub precision_ceiling: u32,
    pub probes: Vec<String>,
    pub law: Option<ArcsineLaw>,
    pub law_source: String,
    pub allow_degenerate: bool,
    pub realness_scale: String,
}

struct Prepared {
    op: DiffOperator,
    config: ExperimentConfig,
    settings: Settings,
}

fn precision_ceiling() -> CliResult<u32> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&c| c >= 64)
            .ok_or_else(|| {
                Failure::usage(format!(
                    "{PRECISION_ENV} must be an integer >= 64, got {v:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_PRECISION_CEILING),
    }
}

fn parse_law(s: &str) -> CliResult<ArcsineLaw> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Failure::usage(format!("--law expects a,b, got {s:?}")))?;
    let (a, b) = (parse_decimal(a)?, parse_decimal(b)?);
    ArcsineLaw::new(a, b).map_err(|_| Failure::usage(format!("--law needs a < b, got {s:?}")))
}

fn prepare(command: &str, args: &RunArgs, min_len: usize) -> CliResult<Prepared> {
    let (op, op_source) = load_operator(&args.op)?;
    if !op.is_admissible() {
        return Err(Failure {
            code: exit::NOT_ADMISSIBLE,
            message: format!("operator is not admissible: {:?}", op.validate()),
        });
    }
    let ns = &args.n_list;
    if ns.len() < min_len {
        return Err(Failure::usage(format!(
            "--n-list needs at least {min_len} degrees, got {}",
            ns.len()
        )));
    }
    if ns.contains(&0) {
        return Err(Failure::usage("--n-list degrees must be positive"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Failure::usage("--n-list must be strictly increasing"));
    }
    if args.digits == 0 {
        return Err(Failure::usage("--digits must be positive"));
    }
    let (law, law_source) = match &args.law {
        Some(s) => (Some(parse_law(s)?), "flag".to_string()),
        None => match op.leading_interval() {
            Some((_, a, b)) => (
                Some(ArcsineLaw::new(a, b)?),
                "leading coefficient".to_string(),
            ),
            None => (None, "none".to_string()),
        },
    };
    let probes = args
        .probes
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_complex(s, 128))
        .collect::<Result<Vec<_>, _>>()?;
    let mut settings = Settings::new(args.digits);
    settings.roots = settings.roots.with_ceiling(precision_ceiling()?);
    settings.probes = probes;
    settings.law = law.clone();
    settings.allow_degenerate = args.allow_degenerate;
    let config = ExperimentConfig {
        command: command.to_string(),
        op_source,
        n_list: ns.clone(),
        target_digits: args.digits,
        precision_ceiling: settings.roots.precision_ceiling,
        probes: settings.probes.iter().map(report::format_complex).collect(),
        law,
        law_source,
        allow_degenerate: args.allow_degenerate,
        realness_scale: settings.realness_scale.to_string(),
    };
    Ok(Prepared {
        op,
        config,
        settings,
    })
}

fn analyze_all(p: &Prepared, jobs: Option<usize>) -> CliResult<Vec<Analysis>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure::usage("--jobs must be positive"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        p.config
            .n_list
            .par_iter()
            .map(|&n| report::analyze(&p.op, n, &p.settings))
            .collect()
    });
    results
        .into_iter()
        .zip(&p.config.n_list)
        .map(|(r, n)| {
            r.map_err(|e| {
                let mut f = Failure::from(e);
                f.message = format!("n = {n}: {}", f.message);
                f
            })
        })
        .collect()
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn write_per_degree(dir: &Path, analyses: &[Analysis], digits: usize) -> CliResult<()> {
    for a in analyses {
        write_file(dir, &format!("roots_{}.csv", a.n), &a.roots.to_csv())?;
        if a.roots.all_real() {
            let csv = root_measure(&a.roots)?.cdf_csv(digits)?;
            write_file(dir, &format!("dist_{}.csv", a.n), &csv)?;
        }
    }
    Ok(())
}

fn create_out(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))
}

fn zerodist(args: &RunArgs, out: &mut dyn std::io::Write) -> CliResult<i32> {
    let p = prepare("zerodist", args, 1)?;
    let analyses = analyze_all(&p, args.jobs)?;
    create_out(&args.out)?;
    write_per_degree(&args.out, &analyses, p.config.target_digits as usize)?;
    let law = p.config.law.clone();
    let report = report::convergence_report(p.config, &p.op, law, &analyses);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_file(&args.out, "report.json", &(json + "\n"))?;
    for row in &report.rows {
        write_line(
            out,
            &format!(
                "n={} ks={} max_radius={} residual_x2={}",
                row.n,
                row.ks.as_deref().unwrap_or("-"),
                row.max_radius,
                row.residual_x2.as_deref().unwrap_or("-")
            ),
        )?;
    }
    Ok(exit::OK)
}

fn sweep(args: &RunArgs, out: &mut dyn std::io::Write) -> CliResult<i32> {
    let p = prepare("sweep", args, 5)?;
    let analyses = analyze_all(&p, args.jobs)?;
    create_out(&args.out)?;
    write_per_degree(&args.out, &analyses, p.config.target_digits as usize)?;
    let last = analyses.last().expect("nonempty n_list");
    let reference = p.op.leading_interval().map(|(_, a, b)| (a, b));
    let plot = svg::histogram(last, reference.as_ref())?;
    write_file(&args.out, "hist.svg", &plot)?;
    let report = report::sweep_report(p.config, &p.op, &analyses)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_file(&args.out, "report.json", &(json + "\n"))?;
    for s in &report.successive_ks {
        write_line(
            out,
            &format!(
                "{} -> {}: ks={}",
                s.from,
                s.to,
                s.ks.as_deref().unwrap_or("-")
            ),
        )?;
    }
    write_line(out, &format!("growth_exponent={}", report.growth_exponent))?;
    Ok(exit::OK)
}
