use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lab::config::{RunConfig, Suite};
use lab::error::{CliError, Result};
use lab::report::{PlotKind, SuiteReport};

#[derive(Parser)]
#[command(
    name = "lab",
    version,
    about = "Seeded verification suites for contractive inclusions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight sequences, divisor functions and the monotone sequence A_k.
    Coeff(RunArgs),
    /// Known norm values and the Hardy–Stein identity.
    Norms(RunArgs),
    /// Extremal search for C_{p,n} and the strict inequality on random polynomials.
    Cpn(RunArgs),
    /// Bergman-space inequality on the balanced line, with kernel equality cases.
    Kulikov(RunArgs),
    /// The area-integral chain I ≤ H ≤ K and its coefficient identity.
    Keychain(RunArgs),
    /// Riesz projection into weighted Bergman spaces and the ε scan.
    Riesz(RunArgs),
    /// Sharp L^q bound for the Riesz projection.
    Hv(RunArgs),
    /// Dirichlet polynomials through the Bohr lift.
    Dirichlet(RunArgs),
    /// Helson's inequality at desk scale.
    Helson(RunArgs),
    /// Every suite in sequence.
    All(RunArgs),
    /// Export plot columns from a saved report.
    Plot(PlotArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Relative quadrature tolerance.
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Corpus size per parameter set.
    #[arg(long)]
    cases: Option<usize>,
    /// JSON report path; the CSV summary goes next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Report written by a suite run.
    #[arg(long)]
    report: PathBuf,
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Output directory.
    #[arg(long, default_value = "plots")]
    dir: PathBuf,
}

impl RunArgs {
    fn into_config(self, suite: Suite) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::from_toml_file(path)?,
            None => RunConfig::default(),
        };
        let over = RunConfig {
            suite,
            seed: self.seed.unwrap_or(base.seed),
            p: self.p,
            q: self.q,
            alpha: self.alpha,
            beta: self.beta,
            n: self.n,
            tol: self.tol,
            cases: self.cases,
            out: self.out,
        };
        Ok(base.merged(&over))
    }
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| CliError::Invalid {
            field: "LAB_THREADS".into(),
            reason: format!("must be a positive integer, got {raw:?}"),
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invalid {
            field: "LAB_THREADS".into(),
            reason: e.to_string(),
        })
}

fn run(config: RunConfig) -> Result<bool> {
    config.validate()?;
    let out = config.out.clone().unwrap_or_else(|| lab::default_out(config.suite));
    // fail on an unwritable destination before spending minutes on the suite
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let report = lab::run_suite(&config)?;
    let csv = report.write(&out)?;
    for (suite, secs) in &report.timings {
        eprintln!("time {} {secs:.2}s", suite.name());
    }
    let s = &report.summary;
    println!(
        "{}: {} cases, {} failures, worst margin {} ({})",
        config.suite.name(),
        s.count,
        s.failure_count,
        s.worst_margin.map_or("n/a".into(), |m| format!("{m:e}")),
        s.worst_case.as_deref().unwrap_or("-"),
    );
    for id in s.failures.iter().take(20) {
        println!("  FAIL {id}");
    }
    println!("report {} summary {}", out.display(), csv.display());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Plot(args) => {
            let report = SuiteReport::from_json_file(&args.report)?;
            let path = lab::emit_plotdata(&report, args.kind, &args.dir)?;
            println!("{}", path.display());
            Ok(true)
        }
        Command::Coeff(a) => run(a.into_config(Suite::Coeff)?),
        Command::Norms(a) => run(a.into_config(Suite::Norms)?),
        Command::Cpn(a) => run(a.into_config(Suite::Cpn)?),
        Command::Kulikov(a) => run(a.into_config(Suite::Kulikov)?),
        Command::Keychain(a) => run(a.into_config(Suite::Keychain)?),
        Command::Riesz(a) => run(a.into_config(Suite::Riesz)?),
        Command::Hv(a) => run(a.into_config(Suite::Hv)?),
        Command::Dirichlet(a) => run(a.into_config(Suite::Dirichlet)?),
        Command::Helson(a) => run(a.into_config(Suite::Helson)?),
        Command::All(a) => run(a.into_config(Suite::All)?),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
